"""Exact rational simplex (Bland's rule) and membership certificates."""
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DimensionMismatch
from .rational import normalize_row, vector

ZERO = Fraction(0)
ONE = Fraction(1)


class _Tableau:
    """Dense tableau for ``min c.x  s.t.  A x = b, x >= 0`` with ``b >= 0``.

    Artificial columns ``n .. n+m-1`` form the starting basis.
    """

    def __init__(self, A, b):
        self.m = len(A)
        self.n = len(A[0]) if A else 0
        self.flipped = [bi < 0 for bi in b]
        self.T = []
        for i, (row, bi) in enumerate(zip(A, b)):
            s = -1 if self.flipped[i] else 1
            art = [ZERO] * self.m
            art[i] = ONE
            self.T.append([Fraction(s * x) for x in row] + art + [Fraction(s * bi)])
        self.basis = [self.n + i for i in range(self.m)]
        self.width = self.n + self.m

    def pivot(self, r, c):
        T = self.T
        p = T[r][c]
        T[r] = [x / p for x in T[r]]
        pr = T[r]
        for i in range(self.m):
            if i != r:
                f = T[i][c]
                if f:
                    T[i] = [x - f * y for x, y in zip(T[i], pr)]
        self.basis[r] = c

    def reduced_costs(self, cost, allowed):
        cb = [cost[j] for j in self.basis]
        out = {}
        for j in allowed:
            z = sum(cb[i] * self.T[i][j] for i in range(self.m) if cb[i] and self.T[i][j])
            out[j] = cost[j] - z
        return out

    def run(self, cost, allowed, max_iter=100_000):
        """Bland's rule. Returns ``"optimal"`` or ``"unbounded"``."""
        for _ in range(max_iter):
            rc = self.reduced_costs(cost, allowed)
            enter = next((j for j in sorted(allowed) if rc[j] < 0), None)
            if enter is None:
                return "optimal"
            best = None
            for i in range(self.m):
                a = self.T[i][enter]
                if a > 0:
                    ratio = self.T[i][-1] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return "unbounded"
            self.pivot(best[1], enter)
        raise RuntimeError("simplex iteration cap reached")

    def value(self, cost):
        return sum(cost[j] * self.T[i][-1] for i, j in enumerate(self.basis))

    def solution(self):
        x = [ZERO] * self.n
        for i, j in enumerate(self.basis):
            if j < self.n:
                x[j] = self.T[i][-1]
        return x


def solve_standard(A, b, c):
    """Solve ``min c.x  s.t.  A x = b, x >= 0`` exactly.

    Returns ``(status, x, farkas)`` where status is ``"optimal"``,
    ``"infeasible"`` or ``"unbounded"``.  For infeasible problems ``farkas`` is
    a vector ``y`` with ``y.A <= 0`` and ``y.b > 0``.
    """
    m = len(A)
    tab = _Tableau(A, b)
    n = tab.n
    cost1 = [ZERO] * n + [ONE] * m
    tab.run(cost1, range(tab.width))
    if tab.value(cost1) > 0:
        # phase-one duals: w_i = c_B . B^{-1} e_i, read from the artificial columns
        cb = [cost1[j] for j in tab.basis]
        w = [sum(cb[k] * tab.T[k][n + i] for k in range(m)) for i in range(m)]
        y = [-wi if tab.flipped[i] else wi for i, wi in enumerate(w)]
        return "infeasible", None, y
    # drive artificials out of the basis; rows where that is impossible are redundant
    for r in range(m):
        if tab.basis[r] >= n:
            col = next((j for j in range(n) if tab.T[r][j] != 0), None)
            if col is not None:
                tab.pivot(r, col)
    cost2 = [Fraction(x) for x in c] + [ZERO] * m
    allowed = [j for j in range(n)]
    # artificials stuck at zero in redundant rows stay basic but never re-enter
    status = tab.run(cost2, allowed)
    if status == "unbounded":
        return "unbounded", None, None
    return "optimal", tab.solution(), None


def maximize(c, A_ub, b_ub):
    """``max c.x  s.t.  A_ub x <= b_ub`` over free ``x``; returns (status, value, x)."""
    m = len(A_ub)
    d = len(c)
    A = []
    for i, row in enumerate(A_ub):
        slack = [ZERO] * m
        slack[i] = ONE
        A.append([Fraction(x) for x in row] + [-Fraction(x) for x in row] + slack)
    cost = [-Fraction(x) for x in c] + [Fraction(x) for x in c] + [ZERO] * m
    status, sol, _ = solve_standard(A, [Fraction(x) for x in b_ub], cost)
    if status != "optimal":
        return status, None, None
    x = [sol[k] - sol[d + k] for k in range(d)]
    return status, sum(ci * xi for ci, xi in zip(c, x)), x


def is_redundant(row, others):
    """True iff ``row`` is implied by the rows in ``others``."""
    coeffs, bound = row
    status, value, _ = maximize(coeffs, [r[0] for r in others], [r[1] for r in others])
    return status == "optimal" and value <= bound


@dataclass(frozen=True)
class LPCertificate:
    """Outcome of a membership query.

    ``weights`` maps vertex index to a convex weight (inside); ``separator`` is
    a primitive integer row ``(coeffs, bound)`` valid on all vertices and
    violated by the point (outside).
    """

    verdict: str
    weights: dict = field(default_factory=dict)
    separator: tuple = None
    rounding_radius: float = 0.0

    @property
    def inside(self):
        return self.verdict == "inside"

    def to_json(self):
        from .rational import format_fraction

        out = {"verdict": self.verdict, "rounding_radius": self.rounding_radius}
        if self.inside:
            out["weights"] = {str(k): format_fraction(w) for k, w in sorted(self.weights.items())}
        else:
            coeffs, bound = self.separator
            out["separator"] = {"coeffs": [str(c) for c in coeffs], "bound": str(bound)}
        return out


def lp_membership(point, vertices, facets=None):
    """Decide exactly whether ``point`` lies in the convex hull of ``vertices``.

    When ``facets`` (an H-representation of the same polytope) is given and
    the point is outside, the most violated facet is returned as separator.
    """
    verts = list(getattr(vertices, "vertices", vertices))
    point = vector(point)
    dim = len(point)
    if any(len(v) != dim for v in verts):
        raise DimensionMismatch(f"point has dimension {dim}, vertices {len(verts[0])}")
    n = len(verts)
    A = [[v[k] for v in verts] for k in range(dim)] + [[ONE] * n]
    b = list(point) + [ONE]
    status, x, y = solve_standard(A, b, [ZERO] * n)
    if status == "optimal":
        return LPCertificate("inside", {i: w for i, w in enumerate(x) if w})
    if facets is not None:
        slacks = facets.slacks(point)
        worst = min(range(len(slacks)), key=lambda i: (slacks[i], i))
        if slacks[worst] < 0:
            return LPCertificate("outside", separator=facets.rows[worst])
    coeffs, y0 = y[:dim], y[dim]
    return LPCertificate("outside", separator=normalize_row(coeffs, -y0))


def verify_certificate(cert, point, vertices):
    """Check a certificate with plain arithmetic, independent of the solver."""
    verts = list(getattr(vertices, "vertices", vertices))
    point = vector(point)
    if cert.verdict == "inside":
        ws = cert.weights
        if any(w < 0 for w in ws.values()) or sum(ws.values()) != 1:
            return False
        combo = [sum(w * verts[i][k] for i, w in ws.items()) for k in range(len(point))]
        return combo == list(point)
    if cert.verdict == "outside":
        coeffs, bound = cert.separator
        def lhs(p):
            return sum(Fraction(c) * x for c, x in zip(coeffs, p))
        return all(lhs(v) <= bound for v in verts) and lhs(point) > bound
    return False
