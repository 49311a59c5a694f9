"""V- and H-representations of polytopes in exact arithmetic."""
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch
from .rational import normalize_row, vector


@dataclass(frozen=True)
class VRepresentation:
    """Duplicate-free vertex list. Order is preserved from construction."""

    vertices: tuple
    dimension: int

    def __init__(self, vertices, dimension=None):
        seen = {}
        for v in vertices:
            v = vector(v)
            seen.setdefault(v, None)
        verts = tuple(seen)
        if dimension is None:
            if not verts:
                raise ValueError("dimension required for an empty vertex list")
            dimension = len(verts[0])
        if any(len(v) != dimension for v in verts):
            raise DimensionMismatch("all vertices must have the same dimension")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "dimension", dimension)

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def as_set(self):
        return frozenset(self.vertices)

    def sorted(self):
        return VRepresentation(sorted(self.vertices), self.dimension)


@dataclass(frozen=True)
class HRepresentation:
    """Rows ``coeffs . p <= bound`` in primitive integer form, no row repeated."""

    rows: tuple
    dimension: int

    def __init__(self, rows, dimension=None):
        seen = {}
        for coeffs, bound in rows:
            row = normalize_row(coeffs, bound)
            seen.setdefault(row, None)
        rows = tuple(seen)
        if dimension is None:
            if not rows:
                raise ValueError("dimension required for an empty row list")
            dimension = len(rows[0][0])
        if any(len(c) != dimension for c, _ in rows):
            raise DimensionMismatch("all rows must have the same dimension")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "dimension", dimension)

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def as_set(self):
        return frozenset(self.rows)

    def sorted(self):
        return HRepresentation(sorted(self.rows), self.dimension)

    def slacks(self, point):
        """``bound - coeffs . point`` for every row (exact when ``point`` is rational)."""
        return [b - sum(c * x for c, x in zip(coeffs, point) if c) for coeffs, b in self.rows]

    def contains(self, point):
        return all(s >= 0 for s in self.slacks(point))

    def violated(self, point):
        return [i for i, s in enumerate(self.slacks(point)) if s < 0]


def is_tight(row, point):
    coeffs, bound = row
    return sum(c * Fraction(x) for c, x in zip(coeffs, point) if c) == bound
