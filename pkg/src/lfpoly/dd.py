"""Double description method in exact integer arithmetic.

Both conversions reduce to one primitive: the extreme rays of a pointed cone
``{y : M y >= 0}``.  Rays are kept as primitive integer vectors; incidence sets
are bitmasks packed into ``uint64`` words so the combinatorial adjacency test
runs vectorised.
"""
import logging
import random
from fractions import Fraction

import numpy as np

from .errors import DegenerateInput, Empty, Unbounded
from .lp import is_redundant
from .rational import affine_rank, inverse, primitive, rank, scale_to_integers
from .reps import HRepresentation, VRepresentation

log = logging.getLogger(__name__)

_INT64_SAFE = 2**62


class NotPointed(Exception):
    pass


def _independent_rows(rows, dim):
    """Greedy pick of ``dim`` linearly independent row indices, in the given order."""
    basis = []      # reduced rows (Fractions), each with a pivot column
    pivots = []
    chosen = []
    for idx, row in enumerate(rows):
        r = [Fraction(x) for x in row]
        for b, p in zip(basis, pivots):
            if r[p]:
                f = r[p] / b[p]
                r = [x - f * y for x, y in zip(r, b)]
        p = next((k for k, x in enumerate(r) if x), None)
        if p is None:
            continue
        basis.append(r)
        pivots.append(p)
        chosen.append(idx)
        if len(chosen) == dim:
            break
    return chosen


def _pack(bits_list, words):
    out = np.zeros((len(bits_list), words), dtype=np.uint64)
    for i, bits in enumerate(bits_list):
        for w in range(words):
            out[i, w] = (bits >> (64 * w)) & 0xFFFFFFFFFFFFFFFF
    return out


def _popcount(arr):
    return np.bitwise_count(arr).sum(axis=-1, dtype=np.int64)


def _adjacent(masks, nconstraints, p_idx, n_idx, common):
    """Combinatorial adjacency test for candidate ray pairs.

    ``common`` holds the shared zero sets.  A pair is adjacent iff no third
    ray is zero on all of them.  For each constraint we keep the set of rays
    tight on it as a Python int, so the test is a chain of big-int ANDs.
    """
    nrays = len(masks)
    tight = []
    for t in range(nconstraints):
        col = (masks[:, t // 64] >> np.uint64(t % 64)) & np.uint64(1)
        tight.append(int.from_bytes(np.packbits(col.astype(np.uint8), bitorder="little").tobytes(),
                                    "little"))
    everyone = (1 << nrays) - 1
    keep = np.zeros(len(common), dtype=bool)
    for k in range(len(common)):
        target = (1 << int(p_idx[k])) | (1 << int(n_idx[k]))
        z = 0
        for w in range(common.shape[1]):
            z |= int(common[k, w]) << (64 * w)
        acc = everyone
        while z:
            low = z & -z
            acc &= tight[low.bit_length() - 1]
            if acc == target:
                break
            z ^= low
        keep[k] = acc == target
    return keep


def _incidence_order(rows, seed=0, samples=64):
    """Order rows by how many of a random sample of rows lie near them.

    For ``dd_facets`` the rows are homogenised vertices; a vertex that is close
    to few sampled directions tends to create fewer intermediate rays, so it
    goes first.  Ties keep the lexicographic order, which is deterministic.
    """
    arr = np.array([[float(x) for x in r] for r in rows])
    rng = np.random.default_rng(seed)
    probe = rng.standard_normal((samples, arr.shape[1]))
    scores = arr @ probe.T
    # incidence estimate: how often a row attains the extreme value along a probe
    top = np.isclose(scores, scores.max(axis=0, keepdims=True))
    counts = top.sum(axis=1)
    return sorted(range(len(rows)), key=lambda i: (counts[i], tuple(rows[i])))


def extreme_rays(matrix, order="lex", seed=0):
    """Extreme rays of the pointed cone ``{y : matrix @ y >= 0}``.

    ``matrix`` is a list of integer rows.  Returns a list of primitive integer
    tuples.  Raises :class:`NotPointed` if the rows do not span the space.
    """
    rows = [tuple(int(x) for x in r) for r in matrix]
    m = len(rows)
    dim = len(rows[0])
    if order == "lex":
        perm = sorted(range(m), key=lambda i: rows[i])
    elif order == "incidence":
        perm = _incidence_order(rows, seed=seed)
    elif order == "random":
        perm = list(range(m))
        random.Random(seed).shuffle(perm)
    else:
        perm = list(range(m))
    rows = [rows[i] for i in perm]

    basis_idx = _independent_rows(rows, dim)
    if len(basis_idx) < dim:
        raise NotPointed(f"rows span only {len(basis_idx)} of {dim} dimensions")
    rest = [i for i in range(m) if i not in set(basis_idx)]
    rows = [rows[i] for i in basis_idx] + [rows[i] for i in rest]
    words = (m + 63) // 64

    inv = inverse([rows[i] for i in range(dim)])
    rays = []
    for k in range(dim):
        col = [inv[i][k] for i in range(dim)]
        rays.append(primitive(scale_to_integers(col)))
    full = (1 << dim) - 1
    masks = _pack([full ^ (1 << k) for k in range(dim)], words)
    big = max(abs(x) for r in rays for x in r) >= _INT64_SAFE
    R = np.array(rays, dtype=object if big else np.int64)

    for t in range(dim, m):
        row = np.array(rows[t], dtype=R.dtype)
        if R.dtype == np.int64 and int(np.abs(R).max()) * int(np.abs(row).max()) * dim >= _INT64_SAFE:
            R = R.astype(object)
            row = row.astype(object)
        vals = R @ row
        pos = np.flatnonzero(vals > 0)
        neg = np.flatnonzero(vals < 0)
        zer = np.flatnonzero(vals == 0)
        bit = np.zeros(words, dtype=np.uint64)
        bit[t // 64] = np.uint64(1) << np.uint64(t % 64)

        new_rays = []
        new_masks = []
        if len(pos) and len(neg):
            Z = masks[pos][:, None, :] & masks[neg][None, :, :]
            cnt = _popcount(Z)
            pi, ni = np.nonzero(cnt >= dim - 2)
            cand = Z[pi, ni]
            keep = _adjacent(masks, t, pos[pi], neg[ni], cand)
            pi, ni, cand = pi[keep], ni[keep], cand[keep]
            if len(pi):
                P = R[pos[pi]]
                N = R[neg[ni]]
                vp = vals[pos[pi]][:, None]
                vn = vals[neg[ni]][:, None]
                if R.dtype == np.int64 and (
                    int(np.abs(vp).max()) * int(np.abs(N).max()) + int(np.abs(vn).max()) * int(np.abs(P).max())
                    >= _INT64_SAFE
                ):
                    R = R.astype(object)
                    P, N, vp, vn = (a.astype(object) for a in (P, N, vp, vn))
                new = vp * N - vn * P
                g = np.gcd.reduce(new, axis=1)
                if new.dtype == object:
                    g = np.array([int(x) for x in g], dtype=object)
                new = new // g[:, None]
                new_rays.append(new)
                new_masks.append(cand | bit)
        masks[zer] |= bit
        keep_idx = np.concatenate([pos, zer])
        R = R[keep_idx]
        masks = masks[keep_idx]
        if new_rays:
            R = np.concatenate([R] + [n.astype(R.dtype) for n in new_rays])
            masks = np.concatenate([masks] + new_masks)
        log.debug("dd step %d/%d: %d rays", t + 1, m, len(R))
    return [tuple(int(x) for x in r) for r in R]


def dd_facets(v, order="lex"):
    """Irredundant facet list of the convex hull of ``v``.

    Facets ``c . p <= b`` are the extreme rays ``(c, b)`` of the cone
    ``{(c, b) : b - c . v >= 0 for every vertex v}``.
    """
    if isinstance(v, VRepresentation):
        verts = v.vertices
        dim = v.dimension
    else:
        verts = VRepresentation(v).vertices
        dim = len(verts[0])
    if not verts:
        raise ValueError("empty vertex list")
    aff = affine_rank(verts)
    if aff < dim:
        raise DegenerateInput(aff, dim)
    mat = []
    for p in verts:
        # homogenised vertex: b * den - (den * p) . c >= 0
        q = scale_to_integers(list(p) + [1])
        mat.append([-x for x in q[:-1]] + [q[-1]])
    rays = extreme_rays(mat, order=order)
    return HRepresentation([(r[:-1], r[-1]) for r in rays], dim)


def dd_vertices(h, order="lex"):
    """Vertex list of the bounded polytope ``h``.

    Vertices are the extreme rays ``(x, t)`` with ``t > 0`` of
    ``{(x, t) : b t - a . x >= 0, t >= 0}``; a ray with ``t = 0`` is a
    recession direction.
    """
    dim = h.dimension
    mat = [list(-c for c in coeffs) + [b] for coeffs, b in h.rows]
    mat.append([0] * dim + [1])
    if rank(mat) < dim + 1:
        raise Unbounded("constraint matrix has a lineality space")
    try:
        rays = extreme_rays(mat, order=order)
    except NotPointed as exc:  # pragma: no cover - rank checked above
        raise Unbounded(str(exc)) from exc
    verts = []
    for r in rays:
        if r[-1] == 0:
            raise Unbounded(f"recession direction {r[:-1]}")
        verts.append(tuple(Fraction(x, r[-1]) for x in r[:-1]))
    if not verts:
        raise Empty("no feasible point")
    return VRepresentation(sorted(verts), dim)


def tight_vertices(row, verts):
    coeffs, bound = row
    return [p for p in verts if sum(c * x for c, x in zip(coeffs, p) if c) == bound]


def is_facet(row, verts, dim):
    """A valid row is a facet iff it is tight on ``dim`` affinely independent vertices."""
    tight = tight_vertices(row, verts)
    return len(tight) >= dim and affine_rank(tight) == dim - 1


def remove_redundant(h, vertices=None):
    """Drop scalar duplicates and rows implied by the others.

    With ``vertices`` given, rows are judged against that polytope: a row is
    kept iff it is valid on all vertices and facet-defining there.  Without
    vertices, an exact LP decides whether each row is implied by the rest.
    """
    rows = list(HRepresentation(h.rows, h.dimension).rows)
    if vertices is not None:
        verts = list(vertices.vertices if isinstance(vertices, VRepresentation) else vertices)
        kept = [
            r for r in rows
            if all(sum(c * x for c, x in zip(r[0], p) if c) <= r[1] for p in verts)
            and is_facet(r, verts, h.dimension)
        ]
        return HRepresentation(kept, h.dimension)
    kept = list(rows)
    i = 0
    while i < len(kept):
        others = kept[:i] + kept[i + 1:]
        if others and is_redundant(kept[i], others):
            kept = others
        else:
            i += 1
    return HRepresentation(kept, h.dimension)
