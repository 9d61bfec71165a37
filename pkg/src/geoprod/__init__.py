"""Closed-form geodesics on homogeneous spaces as products of one-parameter subgroups."""
from .errors import GeoprodError
from .geodesic import (GeneratorSet, LiftSample, ProductCurve, energy, gelan_residual, generators_from_velocity,
                       geodesic, lax_residual, maurer_cartan, transport)
from .homogeneous import (ChainMetric, ReductiveSplit, SubalgebraChain, apply_A, apply_A_inv, base_inner,
                          build_chain_metric, check_bracket_condition, check_lem2, check_natural_reductivity,
                          metric_inner, project_i, reductive_split)
from .liealgebra import (InvariantForm, LieAlgebra, catalog_so, catalog_so_block, catalog_trivial, so3_generators,
                         trace_form)
from .oracle import OdeConfig, OdePath, OrbitMap, bench, compare_paths, integrate_horizontal
from .spaces import SpaceSpec, build_space, load_spec, parse_spec

__version__ = "0.1.0"
