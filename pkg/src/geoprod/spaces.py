"""Declarative space specifications: SO(n) with a chain of lower-right SO(k) blocks.

A specification is a JSON object::

    {"group": {"family": "SO", "n": 4},
     "chain": [{"family": "trivial"}, {"family": "SO", "k": 2}, {"family": "SO", "k": 3}],
     "lambdas": [0.5, 2, 3],
     "form": "negative_trace"}

``chain`` lists h_0 < ... < h_{N-1}; h_N = so(n) is implicit.
"""
import json
from dataclasses import dataclass

from .errors import DegenerateMetricError, SpecError
from .homogeneous import SubalgebraChain, build_chain_metric
from .liealgebra import catalog_so, catalog_so_block, catalog_trivial, trace_form

FORMS = ("negative_trace",)


@dataclass(frozen=True)
class SpaceSpec:
    n: int
    chain: tuple  # block sizes; 0 means the trivial subgroup
    lambdas: tuple
    form: str = "negative_trace"

    @property
    def N(self):
        return len(self.chain)

    def to_dict(self):
        chain = [{"family": "trivial"} if k == 0 else {"family": "SO", "k": k} for k in self.chain]
        return {"group": {"family": "SO", "n": self.n}, "chain": chain,
                "lambdas": list(self.lambdas), "form": self.form}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @property
    def label(self):
        h = "{e}" if self.chain[0] == 0 else f"SO({self.chain[0]})"
        return f"SO({self.n})/{h}"


def _int(value, what):
    if isinstance(value, bool) or not isinstance(value, int):
        raise SpecError(f"{what} must be an integer, got {value!r}")
    return value


def spec_from_dict(doc):
    if not isinstance(doc, dict):
        raise SpecError("specification must be a JSON object")
    unknown = set(doc) - {"group", "chain", "lambdas", "form"}
    if unknown:
        raise SpecError(f"unknown keys: {sorted(unknown)}")
    group = doc.get("group")
    if not isinstance(group, dict) or group.get("family") != "SO":
        raise SpecError('group must be {"family": "SO", "n": <int>}')
    n = _int(group.get("n"), "group.n")
    if n < 2:
        raise SpecError("group.n must be >= 2")

    chain = doc.get("chain")
    if not isinstance(chain, list) or not chain:
        raise SpecError("chain must be a non-empty list")
    ks = []
    for pos, item in enumerate(chain):
        fam = item.get("family") if isinstance(item, dict) else None
        if fam == "trivial":
            if pos != 0:
                raise SpecError("the trivial subgroup can only start the chain")
            ks.append(0)
        elif fam == "SO":
            k = _int(item.get("k"), f"chain[{pos}].k")
            if k < 2:
                raise SpecError(f"chain[{pos}]: SO(k) blocks need k >= 2 (use trivial for k < 2)")
            ks.append(k)
        else:
            raise SpecError(f"chain[{pos}]: family must be 'SO' or 'trivial'")
    for a, b in zip(ks, ks[1:]):
        if b <= a:
            raise SpecError(f"chain block sizes must be strictly increasing, got {ks}")
    if ks[-1] >= n:
        raise SpecError(f"chain blocks must be proper subgroups of SO({n})")

    lambdas = doc.get("lambdas")
    if not isinstance(lambdas, list) or not all(
            isinstance(x, (int, float)) and not isinstance(x, bool) for x in lambdas):
        raise SpecError("lambdas must be a list of numbers")
    if len(lambdas) != len(ks):
        raise SpecError(f"chain has {len(ks)} levels, so {len(ks)} lambdas are required (got {len(lambdas)})")
    if any(float(x) == 0.0 for x in lambdas):
        raise DegenerateMetricError("degenerate metric: lambdas must be nonzero")

    form = doc.get("form", "negative_trace")
    if form not in FORMS:
        raise SpecError(f"form must be one of {FORMS}")
    return SpaceSpec(n, tuple(ks), tuple(lambdas), form)


def parse_spec(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return spec_from_dict(doc)


def load_spec(path):
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read())


def build_space(spec):
    """(chain, Q, chain metric) for a specification."""
    g = catalog_so(spec.n)
    levels = [catalog_trivial(spec.n) if k == 0 else catalog_so_block(spec.n, k) for k in spec.chain]
    levels.append(list(range(g.dim)))
    chain = SubalgebraChain(g, levels)
    Q = trace_form(g)
    return chain, Q, build_chain_metric(chain, Q, spec.lambdas)


EXAMPLES = {
    "so3_e": SpaceSpec(3, (0, 2), (1, 2)),
    "so4_so2": SpaceSpec(4, (2, 3), (1, 2)),
    "so4_e": SpaceSpec(4, (0, 2, 3), (0.5, 2, 3)),
}
