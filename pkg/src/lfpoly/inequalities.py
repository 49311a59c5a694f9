"""Two-outcome Bell-type inequalities in correlator form.

An inequality reads ``sum_x A[x] <A_x> + sum_y B[y] <B_y>
+ sum_xy AB[x][y] <A_x B_y> <= bound``.  Conversion to Collins-Gisin rows is
lossless: substitute ``<A_x> = 2 pA_x - 1``, ``<B_y> = 2 pB_y - 1`` and
``<A_x B_y> = 4 p(11|xy) - 2 pA_x - 2 pB_y + 1``.
"""
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd

from .errors import ScenarioMismatch, ValidationError
from .rational import normalize_row
from .scenario import Scenario, to_correlators


@dataclass(frozen=True)
class Inequality:
    A: tuple
    B: tuple
    AB: tuple
    bound: int
    label: str = ""

    def __post_init__(self):
        n = len(self.A)
        object.__setattr__(self, "A", tuple(int(v) for v in self.A))
        object.__setattr__(self, "B", tuple(int(v) for v in self.B))
        object.__setattr__(self, "AB", tuple(tuple(int(v) for v in row) for row in self.AB))
        object.__setattr__(self, "bound", int(self.bound))
        if len(self.B) != n or len(self.AB) != n or any(len(r) != n for r in self.AB):
            raise ValidationError("coefficient arrays must all have N settings")

    @property
    def settings(self):
        return len(self.A)

    @property
    def scenario(self):
        return Scenario(self.settings, 2)

    def coefficients(self):
        """Flat vector: A marginals, B marginals, joints row-major."""
        return self.A + self.B + tuple(v for row in self.AB for v in row)

    @classmethod
    def from_coefficients(cls, vec, bound, label=""):
        n = _settings_from_length(len(vec))
        A = vec[:n]
        B = vec[n:2 * n]
        AB = [vec[2 * n + i * n: 2 * n + (i + 1) * n] for i in range(n)]
        return cls(A, B, AB, bound, label)

    def key(self):
        return self.coefficients() + (self.bound,)

    def relabel(self, label):
        return Inequality(self.A, self.B, self.AB, self.bound, label)

    def primitive(self):
        g = reduce(gcd, self.key(), 0)
        if g <= 1:
            return self
        return Inequality.from_coefficients(tuple(v // g for v in self.coefficients()),
                                            self.bound // g, self.label)

    def to_collins_gisin(self):
        """Primitive Collins-Gisin row ``(coeffs, bound)``."""
        n = self.settings
        cA = [2 * self.A[x] - 2 * sum(self.AB[x]) for x in range(n)]
        cB = [2 * self.B[y] - 2 * sum(self.AB[x][y] for x in range(n)) for y in range(n)]
        cJ = [4 * self.AB[x][y] for x in range(n) for y in range(n)]
        const = -sum(self.A) - sum(self.B) + sum(sum(r) for r in self.AB)
        return normalize_row(cA + cB + cJ, self.bound - const)

    @classmethod
    def from_collins_gisin(cls, row, settings, label=""):
        """Inverse of :meth:`to_collins_gisin` (two outcomes), primitive."""
        coeffs, bound = row
        n = settings
        cA = coeffs[:n]
        cB = coeffs[n:2 * n]
        cJ = [coeffs[2 * n + x * n: 2 * n + (x + 1) * n] for x in range(n)]
        A = [2 * cA[x] + sum(cJ[x]) for x in range(n)]
        B = [2 * cB[y] + sum(cJ[x][y] for x in range(n)) for y in range(n)]
        const = 2 * sum(cA) + 2 * sum(cB) + sum(sum(r) for r in cJ)
        return cls(A, B, cJ, 4 * bound - const, label).primitive()

    def evaluate(self, behavior):
        return evaluate(self, behavior)

    def to_json(self):
        return {"label": self.label, "scenario": [self.settings, 2], "A": list(self.A),
                "B": list(self.B), "AB": [list(r) for r in self.AB], "bound": self.bound}

    @classmethod
    def from_json(cls, obj):
        n, o = obj.get("scenario", [len(obj["A"]), 2])
        if o != 2 or len(obj["A"]) != n:
            raise ValidationError("inequality file needs two outcomes and N coefficients")
        return cls(obj["A"], obj["B"], obj["AB"], obj["bound"], obj.get("label", ""))

    def __str__(self):
        terms = []
        n = self.settings
        for x in range(n):
            terms.append((self.A[x], f"<A{x + 1}>"))
        for y in range(n):
            terms.append((self.B[y], f"<B{y + 1}>"))
        for x in range(n):
            for y in range(n):
                terms.append((self.AB[x][y], f"<A{x + 1}B{y + 1}>"))
        parts = []
        for c, name in terms:
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else str(abs(c))
            parts.append(f"{sign} {mag}{name}")
        lhs = " ".join(parts) or "0"
        if lhs.startswith("+ "):
            lhs = lhs[2:]
        elif lhs.startswith("- "):
            lhs = "-" + lhs[2:]
        return f"{lhs} <= {self.bound}"


def _settings_from_length(length):
    n = 1
    while 2 * n + n * n < length:
        n += 1
    if 2 * n + n * n != length:
        raise ValidationError(f"{length} is not 2N + N^2 for any N")
    return n


def evaluate(ineq, behavior):
    """Left-hand side on ``behavior``; exact for exact behaviors."""
    if behavior.scenario != ineq.scenario:
        raise ScenarioMismatch(f"{ineq.scenario} vs {behavior.scenario}")
    c = to_correlators(behavior)
    n = ineq.settings
    total = sum(ineq.A[x] * c.A[x] for x in range(n) if ineq.A[x])
    total += sum(ineq.B[y] * c.B[y] for y in range(n) if ineq.B[y])
    total += sum(ineq.AB[x][y] * c.AB[x][y] for x in range(n) for y in range(n) if ineq.AB[x][y])
    return Fraction(total) if behavior.exact else float(total)


def violates(ineq, behavior):
    return evaluate(ineq, behavior) > ineq.bound


def load_inequality(path):
    with open(path) as fh:
        return Inequality.from_json(json.load(fh))


def save_inequality(ineq, path):
    with open(path, "w") as fh:
        json.dump(ineq.to_json(), fh)


def _ineq(label, A, B, AB, bound):
    return Inequality(A, B, AB, bound, label)


# (3, 2) facet-class representatives, plus the example inequalities used in
# the mu-sweep.  Positivity rows are ``1 + <A> + <B> + <AB> >= 0`` flipped to
# ``<=`` orientation.
LIBRARY = {
    "genuine-lf-1": _ineq("Genuine LF facet 1", [-1, -1, 0], [-1, -1, 0],
                          [[-1, -2, 0], [-2, 2, -1], [0, -1, -1]], 6),
    "genuine-lf-2": _ineq("Genuine LF facet 2", [-1, -1, -1], [-1, 0, 0],
                          [[-1, -2, 0], [-1, 1, -1], [-1, 1, 1]], 5),
    "i3322-12": _ineq("I3322 (marginals 1,2)", [-1, 1, 0], [1, -1, 0],
                      [[1, -1, -1], [-1, 1, -1], [-1, -1, 0]], 4),
    "i3322-23": _ineq("I3322 (marginals 2,3)", [0, -1, -1], [0, -1, -1],
                      [[0, -1, 1], [-1, -1, -1], [1, -1, -1]], 4),
    "brukner": _ineq("Brukner", [0, 0, 0], [0, 0, 0],
                     [[1, 1, 0], [1, -1, 0], [0, 0, 0]], 2),
    "semi-brukner": _ineq("Semi-Brukner", [0, 0, 0], [0, 0, 0],
                          [[0, 0, 0], [1, 1, 0], [1, -1, 0]], 2),
    "positivity-11": _ineq("Positivity (1,1)", [-1, 0, 0], [-1, 0, 0],
                           [[-1, 0, 0], [0, 0, 0], [0, 0, 0]], 1),
    "positivity-12": _ineq("Positivity (1,2)", [-1, 0, 0], [0, -1, 0],
                           [[0, -1, 0], [0, 0, 0], [0, 0, 0]], 1),
    "positivity-22": _ineq("Positivity (2,2)", [0, -1, 0], [0, -1, 0],
                           [[0, 0, 0], [0, -1, 0], [0, 0, 0]], 1),
    # example forms from the sweep
    "brukner-sweep": _ineq("Brukner", [0, 0, 0], [0, 0, 0],
                           [[1, 0, -1], [-1, 0, -1], [0, 0, 0]], 2),
    "semi-brukner-sweep": _ineq("Semi-Brukner", [0, 0, 0], [0, 0, 0],
                                [[0, -1, 1], [0, 0, 0], [0, -1, -1]], 2),
    "bell-non-lf": _ineq("Bell non-LF", [0, 0, 0], [0, 0, 0],
                         [[0, 0, 0], [0, 1, -1], [0, -1, -1]], 2),
    # LHV(3,2) orbit of I3322 with mixed marginals; not an LF facet
    "i3322-mixed": _ineq("I3322 (mixed marginals)", [-1, -1, 0], [0, -1, -1],
                         [[-1, -1, -1], [1, -1, -1], [0, -1, 1]], 4),
    "chsh-23": _ineq("Bell-CHSH on settings 2,3", [0, 0, 0], [0, 0, 0],
                     [[0, 0, 0], [0, 1, 1], [0, 1, -1]], 2),
}

# the nine LF(3,2) classes in listed order, with their multiplicities
LF_CLASSES = [
    ("genuine-lf-1", 256),
    ("genuine-lf-2", 256),
    ("i3322-12", 256),
    ("i3322-23", 64),
    ("brukner", 32),
    ("semi-brukner", 32),
    ("positivity-11", 4),
    ("positivity-12", 16),
    ("positivity-22", 16),
]

# inequalities plotted against mu, keyed by display label
SWEEP_SET = [
    ("Genuine LF", "genuine-lf-1"),
    ("I3322", "i3322-12"),
    ("Brukner", "brukner-sweep"),
    ("Semi-Brukner", "semi-brukner-sweep"),
    ("Bell non-LF", "bell-non-lf"),
]


def get(name):
    try:
        return LIBRARY[name]
    except KeyError:
        raise ValidationError(f"unknown inequality {name!r}; known: {', '.join(LIBRARY)}") from None
