"""Relabelings that fix setting 1, canonical forms and facet classification."""
import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import ScenarioMismatch, UnmatchedFacet, ValidationError
from .inequalities import LF_CLASSES, LIBRARY, Inequality
from .scenario import Behavior, to_collins_gisin


@dataclass(frozen=True)
class RelabelingOp:
    """Outcome flips and setting permutations per party, then an optional swap.

    ``perm_A[x]`` is the new index of Alice's setting ``x`` (0-based, with
    ``perm_A[0] == 0``); ``flips_A[x]`` exchanges her two outcomes for that
    setting.  The party swap acts last.
    """

    swap: bool
    perm_A: tuple
    perm_B: tuple
    flips_A: tuple
    flips_B: tuple

    def __post_init__(self):
        if self.perm_A[0] != 0 or self.perm_B[0] != 0:
            raise ValidationError("relabelings must fix setting 1")

    @property
    def settings(self):
        return len(self.perm_A)

    @classmethod
    def identity(cls, n):
        return cls(False, tuple(range(n)), tuple(range(n)), (False,) * n, (False,) * n)

    def apply(self, ineq):
        return apply(self, ineq)

    def then(self, other):
        """The relabeling that applies ``self`` first and ``other`` second."""
        return compose(self, other)


def relabeling_group(s):
    """Every relabeling for a two-outcome scenario; order ``2 ((N-1)!)^2 4^N``."""
    if s.outcomes != 2:
        raise ValidationError("outcome flips are defined for two outcomes")
    n = s.settings
    perms = [(0,) + p for p in itertools.permutations(range(1, n))]
    flips = list(itertools.product((False, True), repeat=n))
    return [RelabelingOp(sw, pa, pb, fa, fb)
            for sw in (False, True) for pa in perms for pb in perms for fa in flips for fb in flips]


def apply(op, ineq):
    n = ineq.settings
    if op.settings != n:
        raise ScenarioMismatch(f"relabeling for N={op.settings} applied to N={n}")
    sa = [-1 if f else 1 for f in op.flips_A]
    sb = [-1 if f else 1 for f in op.flips_B]
    A = [0] * n
    B = [0] * n
    AB = [[0] * n for _ in range(n)]
    for x in range(n):
        A[op.perm_A[x]] = sa[x] * ineq.A[x]
        B[op.perm_B[x]] = sb[x] * ineq.B[x]
    for x in range(n):
        for y in range(n):
            AB[op.perm_A[x]][op.perm_B[y]] = sa[x] * sb[y] * ineq.AB[x][y]
    if op.swap:
        A, B = B, A
        AB = [list(col) for col in zip(*AB)]
    return Inequality(A, B, AB, ineq.bound, ineq.label)


def apply_to_behavior(op, b):
    """Action on behaviors, compatible with :func:`apply`:
    ``evaluate(apply(op, I), apply_to_behavior(op, p)) == evaluate(I, p)``."""
    n = b.scenario.settings
    inv_A = np.argsort(op.perm_A)
    inv_B = np.argsort(op.perm_B)
    fa = np.asarray(op.flips_A, dtype=int)[inv_A]
    fb = np.asarray(op.flips_B, dtype=int)[inv_B]
    a = np.arange(2)[:, None, None, None]
    bb = np.arange(2)[None, :, None, None]
    X = np.arange(n)[None, None, :, None]
    Y = np.arange(n)[None, None, None, :]
    # new[a, b, X, Y] = old[a ^ flip, b ^ flip, source setting of X, source setting of Y]
    out = b.table[a ^ fa[X], bb ^ fb[Y], inv_A[X], inv_B[Y]]
    if op.swap:
        out = out.transpose(1, 0, 3, 2)
    return Behavior(b.scenario, out, exact=b.exact)


def apply_to_cg(op, v, s):
    return to_collins_gisin(apply_to_behavior(op, Behavior.from_collins_gisin(s, v, exact=True)))


def compose(first, second):
    """Decode ``second . first`` by acting on a probe inequality."""
    n = first.settings
    probe = Inequality(range(1, n + 1), range(n + 1, 2 * n + 1), [[0] * n] * n, 0)
    r = apply(second, apply(first, probe))
    swap = abs(r.A[0]) > n
    alice_side, bob_side = (r.B, r.A) if swap else (r.A, r.B)
    perm_A = [0] * n
    perm_B = [0] * n
    flips_A = [False] * n
    flips_B = [False] * n
    for k, v in enumerate(alice_side):
        perm_A[abs(v) - 1] = k
        flips_A[abs(v) - 1] = v < 0
    for k, v in enumerate(bob_side):
        perm_B[abs(v) - n - 1] = k
        flips_B[abs(v) - n - 1] = v < 0
    return RelabelingOp(swap, tuple(perm_A), tuple(perm_B), tuple(flips_A), tuple(flips_B))


def signed_permutation(op, n):
    """``(src, sign)`` with ``apply(op, I).coefficients()[j] == sign[j] * I.coefficients()[src[j]]``."""
    length = 2 * n + n * n
    probe = Inequality.from_coefficients(tuple(range(1, length + 1)), 0)
    r = np.array(apply(op, probe).coefficients())
    return np.abs(r) - 1, np.sign(r)


class GroupTable:
    """Signed-permutation table of a relabeling group, for bulk orbit work."""

    def __init__(self, group, n):
        self.group = list(group)
        self.n = n
        perms = [signed_permutation(op, n) for op in self.group]
        self.src = np.array([p[0] for p in perms])
        self.sign = np.array([p[1] for p in perms])

    def __len__(self):
        return len(self.group)

    def orbit_vectors(self, coeffs):
        c = np.asarray(coeffs, dtype=np.int64)
        return c[self.src] * self.sign

    def orbit(self, ineq):
        vecs = {tuple(int(v) for v in row) for row in self.orbit_vectors(ineq.coefficients())}
        return {Inequality.from_coefficients(v, ineq.bound, ineq.label) for v in vecs}

    def canonical(self, ineq):
        vecs = self.orbit_vectors(ineq.coefficients())
        order = np.lexsort(vecs.T[::-1])
        best = tuple(int(v) for v in vecs[order[0]])
        return Inequality.from_coefficients(best, ineq.bound, ineq.label)


def canonical_form(ineq, group=None):
    """Lexicographically smallest coefficient vector over the orbit."""
    if group is None:
        group = relabeling_group(ineq.scenario)
    table = group if isinstance(group, GroupTable) else GroupTable(group, ineq.settings)
    return table.canonical(ineq)


@dataclass(frozen=True)
class FacetClass:
    label: str
    representative: Inequality
    multiplicity: int
    members: tuple = field(default=(), compare=False)
    reference: str = ""

    def to_json(self):
        return {"label": self.label, "reference": self.reference,
                "canonical": self.representative.to_json(),
                "multiplicity": self.multiplicity, "members": list(self.members)}


def classify(facets, s, references=None, strict=True, group=None):
    """Partition a two-outcome H-representation into relabeling orbits.

    ``references`` is a list of library keys whose canonical forms name the
    classes (default: the nine LF(3,2) classes, the mixed-marginal I3322 and the Bell non-LF CHSH).
    Orbits matching no reference raise :class:`UnmatchedFacet` when
    ``strict``; otherwise they are reported as ``unmatched-k``.
    """
    if s.outcomes != 2:
        raise ValidationError("classification is implemented for two outcomes")
    if group is None:
        group = relabeling_group(s)
    table = GroupTable(group, s.settings)
    if references is None:
        references = [k for k, _ in LF_CLASSES] + ["i3322-mixed", "bell-non-lf"]
    ref_keys = {}
    for name in references:
        ineq = LIBRARY[name]
        if ineq.settings != s.settings:
            continue
        ref_keys.setdefault(table.canonical(ineq).key(), name)

    orbits = {}
    for idx, row in enumerate(facets.rows):
        ineq = Inequality.from_collins_gisin(row, s.settings)
        key = table.canonical(ineq).key()
        orbits.setdefault(key, []).append(idx)

    classes = []
    unmatched = []
    for key, members in orbits.items():
        name = ref_keys.get(key)
        rep = Inequality.from_coefficients(key[:-1], key[-1])
        if name is None:
            unmatched.append((rep, members))
            continue
        classes.append(FacetClass(LIBRARY[name].label, rep.relabel(LIBRARY[name].label),
                                  len(members), tuple(members), name))
    if unmatched and strict:
        raise UnmatchedFacet(f"{len(unmatched)} orbits match no reference class, e.g. {unmatched[0][0]}")
    order = {name: i for i, name in enumerate(references)}
    classes.sort(key=lambda c: order[c.reference])
    unmatched.sort(key=lambda t: (-len(t[1]), t[0].key()))
    for k, (rep, members) in enumerate(unmatched, 1):
        label = f"unmatched-{k}"
        classes.append(FacetClass(label, rep.relabel(label), len(members), tuple(members)))
    return classes
