"""Two-dimensional affine slices of the (3, 2) correlation space.

The default plane passes through the uniform behavior, the PR-box based LF
extreme point and a rounded maximal quantum violation of Genuine LF facet 1.
Membership is decided exactly from the H-representations: every grid value
is an affine function of ``(s, t)`` with rational coefficients, evaluated in
scaled integer arithmetic.
"""
import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from .errors import DegeneratePlane
from .inequalities import LIBRARY, evaluate
from .rational import rank, vector
from .reps import HRepresentation
from .scenario import Behavior, Scenario, to_collins_gisin

S32 = Scenario(3, 2)

# rounded Collins-Gisin table of the Genuine-LF-1 quantum optimum
QUANTUM_MAX_CG = (
    ["0.554", "0.409", "0.537"]
    + ["0.554", "0.409", "0.537"]
    + ["0.197", "0.021", "0.150",
       "0.021", "0.311", "0.040",
       "0.150", "0.040", "0.109"]
)


def uniform_point():
    return to_collins_gisin(Behavior.uniform(S32))


def lf_extreme_point():
    """Friend records ``c = -1``, ``d = +1``; a PR box on settings 2, 3."""
    table = np.full(S32.table_shape, Fraction(0), dtype=object)
    sign = (1, -1)
    for a, b, x, y in itertools.product(range(2), range(2), range(3), range(3)):
        A, B = sign[a], sign[b]
        X, Y = x + 1, y + 1
        val = Fraction(0)
        if X == 1 and Y == 1:
            val = Fraction(int(A == -1 and B == 1))
        elif X == 1:
            val = Fraction(int(A == -1), 2)
        elif Y == 1:
            val = Fraction(int(B == 1), 2)
        else:
            val = Fraction(1 + (-1) ** (X * Y - X - Y) * A * B, 4)
        table[a, b, x, y] = val
    return to_collins_gisin(Behavior(S32, table, exact=True))


def quantum_max_point():
    return vector(QUANTUM_MAX_CG)


@dataclass(frozen=True)
class SlicePlane:
    origin: tuple
    first: tuple
    second: tuple
    resolution: int = 201
    low: Fraction = Fraction(-1, 2)
    high: Fraction = Fraction(3, 2)

    def __post_init__(self):
        d1 = [a - b for a, b in zip(self.first, self.origin)]
        d2 = [a - b for a, b in zip(self.second, self.origin)]
        if rank([d1, d2]) < 2:
            raise DegeneratePlane("spanning points are affinely dependent")
        if self.resolution < 2:
            raise DegeneratePlane("resolution must be at least 2")

    @classmethod
    def default(cls, resolution=201, low=Fraction(-1, 2), high=Fraction(3, 2)):
        return cls(uniform_point(), lf_extreme_point(), quantum_max_point(),
                   resolution, Fraction(low), Fraction(high))

    def point(self, s, t):
        s, t = Fraction(s), Fraction(t)
        return tuple(o + s * (f - o) + t * (g - o)
                     for o, f, g in zip(self.origin, self.first, self.second))

    def grid(self):
        step = (self.high - self.low) / (self.resolution - 1)
        return [self.low + k * step for k in range(self.resolution)]


def _affine_parts(plane, row):
    """``coeffs . point(s, t) = c0 + s c1 + t c2``."""
    coeffs, _ = row
    dot = lambda p: sum(c * x for c, x in zip(coeffs, p) if c)  # noqa: E731
    c0 = dot(plane.origin)
    return c0, dot(plane.first) - c0, dot(plane.second) - c0


def _inside_mask(plane, hrep, values):
    """Boolean grid ``[i, j]`` (s = values[i], t = values[j]) for ``hrep``."""
    den_grid = lcm(*(v.denominator for v in values))
    S = np.array([int(v * den_grid) for v in values], dtype=np.int64)
    inside = np.ones((len(values), len(values)), dtype=bool)
    for row in hrep.rows:
        c0, c1, c2 = _affine_parts(plane, row)
        bound = Fraction(row[1])
        den = lcm(c0.denominator, c1.denominator, c2.denominator, bound.denominator)
        C0, C1, C2, B = (int(v * den) for v in (c0, c1, c2, bound))
        lhs = C0 * den_grid + C1 * S[:, None] + C2 * S[None, :]
        inside &= lhs <= B * den_grid
    return inside


def correlator_lhs(ineq, cg):
    return evaluate(ineq, Behavior.from_collins_gisin(S32, cg, exact=True))


def _parallel_mask(plane, hrep, values, threads):
    if threads <= 1:
        return _inside_mask(plane, hrep, values)
    # chunks are AND-ed back together, so scheduling order cannot matter
    chunks = [HRepresentation(hrep.rows[k::threads], hrep.dimension) for k in range(threads)]
    with ThreadPoolExecutor(threads) as pool:
        parts = list(pool.map(lambda h: _inside_mask(plane, h, values), chunks))
    return np.logical_and.reduce(parts)


def run_slice(plane, lhv_facets, lf_facets, ns_facets, threads=1):
    """Grid rows ``(s, t, x_axis, y_axis, in_lhv, in_lf, in_ns)`` in row-major (s, t) order.

    ``x_axis`` is the Genuine LF facet 1 LHS, ``y_axis`` minus the
    Semi-Brukner LHS; both are affine in ``(s, t)`` so they are computed from
    three exact evaluations.
    """
    values = plane.grid()
    masks = {name: _parallel_mask(plane, h, values, threads)
             for name, h in (("lhv", lhv_facets), ("lf", lf_facets), ("ns", ns_facets))}
    axes = []
    for ineq, sign in ((LIBRARY["genuine-lf-1"], 1), (LIBRARY["semi-brukner"], -1)):
        e0 = correlator_lhs(ineq, plane.origin)
        e1 = correlator_lhs(ineq, plane.first) - e0
        e2 = correlator_lhs(ineq, plane.second) - e0
        axes.append((sign * e0, sign * e1, sign * e2))
    rows = []
    for i, s in enumerate(values):
        for j, t in enumerate(values):
            x = axes[0][0] + s * axes[0][1] + t * axes[0][2]
            y = axes[1][0] + s * axes[1][1] + t * axes[1][2]
            rows.append((s, t, x, y, bool(masks["lhv"][i, j]), bool(masks["lf"][i, j]),
                         bool(masks["ns"][i, j])))
    return rows


SLICE_COLUMNS = ["s", "t", "x_axis", "y_axis", "valid", "in_lhv", "in_lf", "in_ns", "in_quantum"]


def slice_csv_lines(rows):
    """CSV text; ``valid`` means a nonnegative table (same as NS here) and
    ``in_quantum`` is left empty."""
    out = [",".join(SLICE_COLUMNS)]
    for s, t, x, y, lhv, lf, ns in rows:
        out.append(f"{float(s):.6g},{float(t):.6g},{float(x):.9g},{float(y):.9g},"
                   f"{int(ns)},{int(lhv)},{int(lf)},{int(ns)},")
    return out
