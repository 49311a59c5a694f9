"""Exact rational helpers built on :class:`fractions.Fraction`.

``Fraction`` already keeps ``gcd(num, den) == 1`` and ``den > 0`` after every
operation, so a rational vector here is simply a tuple of Fractions.
"""
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

RationalVector = tuple


def to_fraction(value):
    """Parse ints, Fractions, ``"p/q"`` strings or floats (exactly) into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def vector(values):
    return tuple(to_fraction(v) for v in values)


def format_fraction(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def common_denominator(values):
    return reduce(lcm, (Fraction(v).denominator for v in values), 1)


def scale_to_integers(values):
    """Multiply by the lcm of denominators; returns a list of ints."""
    den = common_denominator(values)
    return [int(Fraction(v) * den) for v in values]


def primitive(values):
    """Divide an integer vector by the gcd of its entries (positive factor only)."""
    values = [int(v) for v in values]
    g = reduce(gcd, values, 0)
    if g <= 1:
        return values
    return [v // g for v in values]


def normalize_row(coeffs, bound):
    """Primitive integer form of ``coeffs . p <= bound``.

    Only positive rescaling is allowed, since negating an inequality changes
    the half-space.
    """
    ints = scale_to_integers(list(coeffs) + [bound])
    ints = primitive(ints)
    return tuple(ints[:-1]), ints[-1]


def rank(rows):
    """Exact rank of an integer or rational matrix (fraction-free elimination)."""
    mat = [scale_to_integers(r) for r in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        p = mat[r][c]
        for i in range(r + 1, len(mat)):
            mi = mat[i]
            f = mi[c]
            mi[:] = [(p * mi[k] - f * mat[r][k]) // prev for k in range(ncols)]
        prev = p
        r += 1
        if r == len(mat):
            break
    return r


def affine_rank(points):
    """Dimension of the affine hull of ``points``."""
    points = list(points)
    if not points:
        return -1
    base = points[0]
    return rank([[a - b for a, b in zip(p, base)] for p in points[1:]]) if len(points) > 1 else 0


def solve(matrix, rhs):
    """Solve a square nonsingular rational system exactly (Gauss-Jordan)."""
    n = len(matrix)
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for c in range(n):
        piv = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[-1] for row in aug]


def inverse(matrix):
    n = len(matrix)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(matrix)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def round_to_denominator(values, denominator=10**9):
    """Round floats to the nearest ``k/denominator``; returns (vector, max rounding error)."""
    out = []
    radius = 0.0
    for v in values:
        q = Fraction(round(float(v) * denominator), denominator)
        radius = max(radius, abs(float(v) - float(q)))
        out.append(q)
    return tuple(out), radius
