"""Vertex sets of the LHV, NS and LF polytopes in Collins-Gisin coordinates."""
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .dd import dd_facets, dd_vertices, is_facet
from .errors import CapExceeded, ValidationError
from .reps import HRepresentation, VRepresentation
from .scenario import Behavior, Scenario, to_collins_gisin

log = logging.getLogger(__name__)

DEFAULT_CAP = 10_000


@dataclass(frozen=True)
class LFVertexSpec:
    """Friend records ``c``, ``d`` (0-based labels) and NS box index ``j``."""

    c: int
    d: int
    j: int


@dataclass(frozen=True)
class DeterministicStrategy:
    alice: tuple
    bob: tuple

    def behavior(self, scenario):
        return Behavior.deterministic(scenario, self.alice, self.bob)


def deterministic_strategies(s):
    local = list(itertools.product(range(s.outcomes), repeat=s.settings))
    return [DeterministicStrategy(a, b) for a in local for b in local]


def lhv_vertices(s):
    """All products of local deterministic strategies."""
    verts = [to_collins_gisin(st.behavior(s)) for st in deterministic_strategies(s)]
    return VRepresentation(sorted(set(verts)), s.cg_dimension)


def ns_facets(s):
    """Positivity rows in Collins-Gisin coordinates; normalization and
    no-signalling are built into the coordinates."""
    return HRepresentation(s.positivity_rows(), s.cg_dimension)


def ns_vertices(s):
    return dd_vertices(ns_facets(s))


def ns_boxes(s):
    """NS extreme points as exact behaviors, in sorted CG order."""
    return [Behavior.from_collins_gisin(s, v, exact=True) for v in ns_vertices(s).vertices]


def is_deterministic(v, s):
    table = Behavior.from_collins_gisin(s, v, exact=True).table
    return all(p in (0, 1) for p in table.ravel())


def lf_behavior(s, spec, box):
    """The LF extreme point for records ``(c, d)`` and NS box ``box``.

    Box setting ``k`` sits at scenario setting ``k + 1``; setting 0 reveals the
    friend's record.
    """
    O, N = s.outcomes, s.settings
    box_a = box.alice_marginals()[:, :, 0]   # [a, x]
    box_b = box.bob_marginals()[:, 0, :]     # [b, y]
    zero, one = Fraction(0), Fraction(1)
    table = np.full(s.table_shape, zero, dtype=object)
    for a, b, x, y in itertools.product(range(O), range(O), range(N), range(N)):
        da = one if a == spec.c else zero
        db = one if b == spec.d else zero
        if x == 0 and y == 0:
            val = da * db
        elif x == 0:
            val = da * box_b[b, y - 1]
        elif y == 0:
            val = box_a[a, x - 1] * db
        else:
            val = box.table[a, b, x - 1, y - 1]
        table[a, b, x, y] = val
    return Behavior(s, table, exact=True)


@dataclass(frozen=True)
class LFVertices:
    vrep: VRepresentation
    specs: dict = field(compare=False)   # vertex -> list of LFVertexSpec

    @property
    def vertices(self):
        return self.vrep.vertices

    def __len__(self):
        return len(self.vrep)


def lf_vertices(s):
    if s.settings < 2:
        raise ValidationError("LF polytope needs at least two settings")
    boxes = ns_boxes(Scenario(s.settings - 1, s.outcomes))
    specs = {}
    for c, d in itertools.product(range(s.outcomes), repeat=2):
        for j, box in enumerate(boxes):
            spec = LFVertexSpec(c, d, j)
            v = to_collins_gisin(lf_behavior(s, spec, box))
            specs.setdefault(v, []).append(spec)
    vrep = VRepresentation(sorted(specs), s.cg_dimension)
    return LFVertices(vrep, specs)


def expected_vertex_bound(kind, s):
    if kind == "lhv":
        return s.outcomes ** (2 * s.settings)
    if kind == "lf":
        # NS vertex count of the smaller scenario is unknown a priori; use the
        # LHV count of the smaller scenario as a cheap lower estimate
        return s.outcomes ** 2 * s.outcomes ** (2 * (s.settings - 1))
    return s.outcomes ** (2 * s.settings)


@dataclass(frozen=True)
class Polytope:
    kind: str
    scenario: Scenario
    vertices: VRepresentation
    facets: HRepresentation
    specs: dict = field(default=None, compare=False)


def vertices_for(kind, s):
    if kind == "lhv":
        return lhv_vertices(s), None
    if kind == "ns":
        return ns_vertices(s), None
    if kind == "lf":
        lf = lf_vertices(s)
        return lf.vrep, lf.specs
    raise ValidationError(f"unknown model kind {kind!r}")


def cross_validate(vrep, hrep):
    """Every vertex satisfies every facet and every facet is facet-defining."""
    verts = vrep.vertices
    for row in hrep.rows:
        coeffs, bound = row
        if any(sum(c * x for c, x in zip(coeffs, p) if c) > bound for p in verts):
            raise AssertionError(f"row {row} cuts off a vertex")
        if not is_facet(row, verts, vrep.dimension):
            raise AssertionError(f"row {row} is not facet-defining")


def build_polytope(kind, s, cap=DEFAULT_CAP, validate=True):
    if expected_vertex_bound(kind, s) > cap:
        raise CapExceeded(f"{kind}{(s.settings, s.outcomes)} would exceed the vertex cap {cap}")
    vrep, specs = vertices_for(kind, s)
    if len(vrep) > cap:
        raise CapExceeded(f"{len(vrep)} vertices exceed the cap {cap}")
    log.info("%s%s: %d vertices, enumerating facets", kind, (s.settings, s.outcomes), len(vrep))
    hrep = dd_facets(vrep).sorted()
    if validate:
        cross_validate(vrep, hrep)
    return Polytope(kind, s, vrep, hrep, specs)
