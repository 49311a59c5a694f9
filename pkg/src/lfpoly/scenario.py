"""Bipartite Bell scenarios and behaviors.

A behavior is the table ``p(a, b | x, y)`` stored as an array indexed
``[a, b, x, y]`` with 0-based labels.  For two outcomes label 0 is the
``+1`` outcome and label 1 is ``-1``.

Collins-Gisin coordinates, in order: Alice's ``p(a|x)`` for ``a < O-1``
(x-major), Bob's ``p(b|y)`` likewise, then the joints ``p(a b|x y)`` with
rows ``(x, a)`` and columns ``(y, b)`` flattened row-major.
"""
import itertools
import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DimensionMismatch, NotNoSignalling, ValidationError
from .rational import common_denominator, round_to_denominator, to_fraction

FLOAT_TOL = 1e-10


@dataclass(frozen=True, order=True)
class Scenario:
    settings: int
    outcomes: int = 2

    def __post_init__(self):
        if self.settings < 1 or self.outcomes < 2:
            raise ValidationError(f"invalid scenario ({self.settings}, {self.outcomes})")

    @property
    def cg_dimension(self):
        n, k = self.settings, self.outcomes - 1
        return 2 * n * k + (n * k) ** 2

    @property
    def table_shape(self):
        return (self.outcomes, self.outcomes, self.settings, self.settings)

    def cg_labels(self):
        n, k = self.settings, self.outcomes - 1
        labels = [f"pA({a + 1}|{x + 1})" for x in range(n) for a in range(k)]
        labels += [f"pB({b + 1}|{y + 1})" for y in range(n) for b in range(k)]
        labels += [f"p({a + 1}{b + 1}|{x + 1}{y + 1})"
                   for x in range(n) for a in range(k) for y in range(n) for b in range(k)]
        return labels

    def _alice(self, x, a):
        return x * (self.outcomes - 1) + a

    def _bob(self, y, b):
        return self.settings * (self.outcomes - 1) + y * (self.outcomes - 1) + b

    def _joint(self, x, a, y, b):
        k = self.outcomes - 1
        n = self.settings
        return 2 * n * k + (x * k + a) * (n * k) + (y * k + b)

    def cg_to_table_map(self):
        """Integer ``M`` and ``m0`` with ``table.ravel() = M @ cg + m0``."""
        O, N = self.outcomes, self.settings
        last = O - 1
        M = np.zeros((O * O * N * N, self.cg_dimension), dtype=np.int64)
        m0 = np.zeros(O * O * N * N, dtype=np.int64)
        idx = np.arange(O * O * N * N).reshape(self.table_shape)
        for a, b, x, y in itertools.product(range(O), range(O), range(N), range(N)):
            row = idx[a, b, x, y]
            if a < last and b < last:
                M[row, self._joint(x, a, y, b)] = 1
            elif a < last:
                M[row, self._alice(x, a)] = 1
                for bb in range(last):
                    M[row, self._joint(x, a, y, bb)] -= 1
            elif b < last:
                M[row, self._bob(y, b)] = 1
                for aa in range(last):
                    M[row, self._joint(x, aa, y, b)] -= 1
            else:
                m0[row] = 1
                for aa in range(last):
                    M[row, self._alice(x, aa)] -= 1
                for bb in range(last):
                    M[row, self._bob(y, bb)] -= 1
                for aa in range(last):
                    for bb in range(last):
                        M[row, self._joint(x, aa, y, bb)] += 1
        return M, m0

    def positivity_rows(self):
        """Rows ``coeffs . cg <= bound`` expressing ``p(ab|xy) >= 0``."""
        M, m0 = self.cg_to_table_map()
        return [(tuple(int(-c) for c in M[i]), int(m0[i])) for i in range(len(m0))]


class Behavior:
    """Conditional probability table, exact (Fractions) or float."""

    def __init__(self, scenario, table, exact=None):
        table = np.asarray(table, dtype=object if exact else None)
        if table.shape != scenario.table_shape:
            raise DimensionMismatch(f"table shape {table.shape} != {scenario.table_shape}")
        if exact is None:
            exact = table.dtype == object
        if exact:
            table = np.vectorize(to_fraction, otypes=[object])(table)
        else:
            table = table.astype(float)
        self.scenario = scenario
        self.table = table
        self.exact = bool(exact)

    def __repr__(self):
        mode = "exact" if self.exact else "float"
        return f"Behavior({self.scenario.settings},{self.scenario.outcomes},{mode})"

    def __eq__(self, other):
        return (isinstance(other, Behavior) and self.scenario == other.scenario
                and bool(np.all(self.table == other.table)))

    def __hash__(self):
        return hash((self.scenario, tuple(self.table.ravel())))

    def to_float(self):
        return Behavior(self.scenario, self.table.astype(float), exact=False)

    def mix(self, other, alpha):
        """``alpha * self + (1 - alpha) * other``."""
        if other.scenario != self.scenario:
            raise DimensionMismatch("scenarios differ")
        exact = self.exact and other.exact and isinstance(alpha, (int, Fraction))
        table = alpha * self.table + (1 - alpha) * other.table
        return Behavior(self.scenario, table, exact=exact)

    # constructors

    @classmethod
    def uniform(cls, scenario):
        O = scenario.outcomes
        return cls(scenario, np.full(scenario.table_shape, Fraction(1, O * O), dtype=object), exact=True)

    @classmethod
    def deterministic(cls, scenario, alice, bob):
        """``alice[x]`` and ``bob[y]`` are 0-based outcome labels."""
        table = np.full(scenario.table_shape, Fraction(0), dtype=object)
        for x, y in itertools.product(range(scenario.settings), repeat=2):
            table[alice[x], bob[y], x, y] = Fraction(1)
        return cls(scenario, table, exact=True)

    @classmethod
    def from_collins_gisin(cls, scenario, cg, exact=None):
        cg = list(cg)
        if len(cg) != scenario.cg_dimension:
            raise DimensionMismatch(f"expected {scenario.cg_dimension} coordinates, got {len(cg)}")
        if exact is None:
            exact = all(isinstance(v, (int, Fraction, str)) for v in cg)
        M, m0 = scenario.cg_to_table_map()
        if exact:
            # integer matmul on a common denominator; much faster than Fractions
            vec = [to_fraction(v) for v in cg]
            den = common_denominator(vec)
            ints = np.array([int(v * den) for v in vec], dtype=object)
            flat_int = M.astype(object) @ ints + m0.astype(object) * den
            flat = np.array([Fraction(int(x), den) for x in flat_int], dtype=object)
        else:
            flat = M @ np.asarray(cg, dtype=float) + m0
        return cls(scenario, flat.reshape(scenario.table_shape), exact=exact)

    @classmethod
    def from_correlators(cls, form):
        """Inverse of :func:`to_correlators` (two outcomes)."""
        N = len(form.A)
        s = Scenario(N, 2)
        entries = list(form.A) + list(form.B) + [v for row in form.AB for v in row]
        exact = all(isinstance(v, (int, np.integer, Fraction)) for v in entries)
        one = Fraction(1) if exact else 1.0
        table = np.empty(s.table_shape, dtype=object if exact else float)
        for a, b, x, y in itertools.product(range(2), range(2), range(N), range(N)):
            sa, sb = 1 - 2 * a, 1 - 2 * b
            table[a, b, x, y] = (one + sa * form.A[x] + sb * form.B[y] + sa * sb * form.AB[x][y]) / 4
        return cls(s, table, exact=exact)

    # marginals

    def alice_marginals(self):
        """``p(a|x,y)`` indexed ``[a, x, y]``."""
        return self.table.sum(axis=1)

    def bob_marginals(self):
        return self.table.sum(axis=0)


@dataclass(frozen=True)
class NoSignallingReport:
    ok: bool
    deviation: object


def check_no_signalling(b):
    """Exact pass/fail (rational) or max marginal deviation against ``1e-10`` (float)."""
    pa = b.alice_marginals()   # [a, x, y]
    pb = b.bob_marginals()     # [b, x, y]
    dev_a = pa - pa[:, :, :1]
    dev_b = pb - pb[:, :1, :]
    devs = np.concatenate([np.ravel(dev_a), np.ravel(dev_b)])
    dev = max((abs(d) for d in devs), default=0)
    if b.exact:
        return NoSignallingReport(dev == 0, dev)
    dev = float(dev)
    return NoSignallingReport(dev <= FLOAT_TOL, dev)


def check_normalized(b, tol=FLOAT_TOL):
    sums = b.table.sum(axis=(0, 1))
    if b.exact:
        return bool(np.all(sums == 1)) and bool(np.all(b.table >= 0))
    return bool(np.all(np.abs(sums - 1) <= tol)) and bool(np.all(b.table >= -tol))


def to_collins_gisin(b, tol=FLOAT_TOL):
    """Collins-Gisin vector of a no-signalling behavior.

    Float behaviors within ``tol`` of no-signalling are accepted; their
    marginals are averaged over the other party's settings.
    """
    report = check_no_signalling(b)
    if not (report.ok or (not b.exact and report.deviation <= tol)):
        raise NotNoSignalling(f"marginal deviation {report.deviation}")
    s = b.scenario
    k = s.outcomes - 1
    pa = b.alice_marginals()
    pb = b.bob_marginals()
    N = s.settings
    out = []
    for x in range(N):
        for a in range(k):
            vals = pa[a, x, :]
            out.append(vals[0] if b.exact else float(np.mean(vals)))
    for y in range(N):
        for bb in range(k):
            vals = pb[bb, :, y]
            out.append(vals[0] if b.exact else float(np.mean(vals)))
    for x in range(N):
        for a in range(k):
            for y in range(N):
                for bb in range(k):
                    out.append(b.table[a, bb, x, y])
    if b.exact:
        return tuple(Fraction(v) for v in out)
    return tuple(float(v) for v in out)


def to_exact_collins_gisin(b, denominator=10**9):
    """Promote to an exact CG vector; returns (vector, rounding radius)."""
    cg = to_collins_gisin(b)
    if b.exact:
        return cg, 0.0
    return round_to_denominator(cg, denominator)


@dataclass(frozen=True)
class CorrelatorForm:
    A: tuple
    B: tuple
    AB: tuple


def to_correlators(b):
    s = b.scenario
    if s.outcomes != 2:
        raise ValidationError("correlators need two outcomes")
    report = check_no_signalling(b)
    if not (report.ok or (not b.exact and report.deviation <= FLOAT_TOL)):
        raise NotNoSignalling(f"marginal deviation {report.deviation}")
    t = b.table
    N = s.settings
    sign = np.array([1, -1])
    pa = t.sum(axis=1)  # [a, x, y]
    pb = t.sum(axis=0)  # [b, x, y]

    def avg(vals):
        return vals[0] if b.exact else float(np.mean(vals))

    A = tuple(avg([pa[0, x, y] - pa[1, x, y] for y in range(N)]) for x in range(N))
    B = tuple(avg([pb[0, x, y] - pb[1, x, y] for x in range(N)]) for y in range(N))
    AB = tuple(
        tuple(sum(int(sign[a] * sign[bb]) * t[a, bb, x, y] for a in range(2) for bb in range(2))
              for y in range(N))
        for x in range(N)
    )
    if not b.exact:
        AB = tuple(tuple(float(v) for v in row) for row in AB)
    return CorrelatorForm(A, B, AB)


# -- files ------------------------------------------------------------------

def behavior_to_json(b):
    s = b.scenario
    flat = [b.table[a, bb, x, y] for x in range(s.settings) for y in range(s.settings)
            for a in range(s.outcomes) for bb in range(s.outcomes)]
    if b.exact:
        flat = [str(Fraction(v)) for v in flat]
    else:
        flat = [float(v) for v in flat]
    return {"scenario": [s.settings, s.outcomes], "table": flat}


def behavior_from_json(obj):
    """Load ``{"scenario": [N, O], "table": [...]}`` or ``{"collins_gisin": [...]}``.

    ``table`` is ordered ``x, y, a, b`` (row-major).  Strings are exact
    rationals, numbers are floats.
    """
    s = Scenario(*obj["scenario"])
    if "collins_gisin" in obj:
        vals = obj["collins_gisin"]
        exact = all(isinstance(v, (str, int)) for v in vals)
        vals = [to_fraction(v) if exact else float(v) for v in vals]
        return Behavior.from_collins_gisin(s, vals, exact=exact)
    vals = obj["table"]
    O, N = s.outcomes, s.settings
    if len(vals) != O * O * N * N:
        raise DimensionMismatch(f"table needs {O * O * N * N} entries")
    exact = all(isinstance(v, (str, int)) for v in vals)
    arr = np.array([to_fraction(v) if exact else float(v) for v in vals],
                   dtype=object if exact else float)
    table = arr.reshape(N, N, O, O).transpose(2, 3, 0, 1)
    return Behavior(s, table, exact=exact)


def load_behavior(path):
    with open(path) as fh:
        return behavior_from_json(json.load(fh))


def save_behavior(b, path):
    with open(path, "w") as fh:
        json.dump(behavior_to_json(b), fh, indent=1)
