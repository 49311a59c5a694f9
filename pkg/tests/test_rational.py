from fractions import Fraction
from math import gcd
from functools import reduce

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lfpoly.rational import (
    affine_rank, format_fraction, inverse, normalize_row, primitive, rank,
    round_to_denominator, solve, to_fraction, vector,
)

fractions = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 1000)
small_ints = st.integers(-6, 6)


@given(fractions)
def test_format_parse_round_trip(q):
    assert to_fraction(format_fraction(q)) == q
    text = format_fraction(q)
    assert "." not in text and (q.denominator != 1) == ("/" in text)


@given(st.lists(fractions, min_size=1, max_size=8), st.lists(st.sampled_from("+-*"), min_size=1, max_size=20))
def test_canonical_form_survives_operation_chains(values, ops):
    acc = Fraction(1)
    for op, v in zip(ops, values * len(ops)):
        if op == "+":
            acc = acc + v
        elif op == "-":
            acc = acc - v
        else:
            acc = acc * v
        assert acc.denominator > 0
        assert gcd(acc.numerator, acc.denominator) == 1


@given(st.lists(small_ints, min_size=2, max_size=7), st.integers(1, 9))
def test_normalize_row_is_primitive_and_scale_invariant(row, k):
    if not any(row):
        return
    coeffs, bound = row[:-1], row[-1]
    base = normalize_row(coeffs, bound)
    scaled = normalize_row([Fraction(c * k, 7) for c in coeffs], Fraction(bound * k, 7))
    assert base == scaled
    entries = list(base[0]) + [base[1]]
    assert reduce(gcd, entries, 0) == 1
    # positive scaling keeps the half-space orientation
    nz = next(i for i, v in enumerate(row) if v)
    assert (entries[nz] > 0) == (row[nz] > 0)


def test_primitive_examples():
    assert primitive([2, 4, -6]) == [1, 2, -3]
    assert primitive([0, 0]) == [0, 0]


@settings(max_examples=60)
@given(st.integers(1, 5), st.integers(1, 5), st.data())
def test_rank_matches_numpy(nrows, ncols, data):
    m = data.draw(st.lists(st.lists(small_ints, min_size=ncols, max_size=ncols), min_size=nrows, max_size=nrows))
    assert rank(m) == np.linalg.matrix_rank(np.array(m, dtype=float))


@settings(max_examples=40)
@given(st.integers(1, 4), st.data())
def test_solve_and_inverse(n, data):
    m = data.draw(st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=n, max_size=n))
    if rank(m) < n:
        return
    inv = inverse(m)
    for i in range(n):
        for j in range(n):
            assert sum(Fraction(m[i][k]) * inv[k][j] for k in range(n)) == (i == j)
    rhs = data.draw(st.lists(small_ints, min_size=n, max_size=n))
    x = solve(m, rhs)
    assert [sum(Fraction(m[i][k]) * x[k] for k in range(n)) for i in range(n)] == [Fraction(r) for r in rhs]


def test_affine_rank():
    assert affine_rank([(0, 0), (1, 0), (0, 1)]) == 2
    assert affine_rank([(0, 0), (1, 1), (2, 2)]) == 1
    assert affine_rank([(3, 3)]) == 0


def test_round_to_denominator_reports_radius():
    vec, radius = round_to_denominator([0.1, 1 / 3], 10 ** 9)
    assert vec == (Fraction(1, 10), Fraction(333333333, 10 ** 9))
    assert radius == pytest.approx(1 / 3 - 0.333333333, abs=1e-15)


def test_vector_parses_strings_and_ints():
    assert vector(["1/2", 3, Fraction(1, 3)]) == (Fraction(1, 2), Fraction(3), Fraction(1, 3))
