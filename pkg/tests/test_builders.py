import itertools
from fractions import Fraction

import pytest

from lfpoly.builders import (
    LFVertexSpec, build_polytope, is_deterministic, lf_vertices, lhv_vertices, ns_facets, ns_vertices,
)
from lfpoly.errors import CapExceeded, ValidationError
from lfpoly.inequalities import LIBRARY, evaluate
from lfpoly.lp import lp_membership, verify_certificate
from lfpoly.scenario import Behavior, Scenario, check_no_signalling, to_collins_gisin
from lfpoly.slice import lf_extreme_point

S12, S22, S32 = Scenario(1, 2), Scenario(2, 2), Scenario(3, 2)


@pytest.mark.parametrize("s,count", [(S22, 16), (S32, 64), (Scenario(2, 3), 81)])
def test_lhv_vertex_counts(s, count):
    v = lhv_vertices(s)
    assert len(v) == count
    assert all(check_no_signalling(Behavior.from_collins_gisin(s, p)).ok for p in v.vertices)


def test_ns_vertices_small_scenarios():
    assert len(ns_vertices(S12)) == 4
    assert all(is_deterministic(v, S12) for v in ns_vertices(S12).vertices)
    ns22 = ns_vertices(S22)
    det = [v for v in ns22.vertices if is_deterministic(v, S22)]
    assert (len(ns22), len(det)) == (24, 16)
    assert lhv_vertices(S22).as_set() <= ns22.as_set()


def test_lf_vertex_counts_and_collapse():
    assert len(lf_vertices(S32)) == 96
    assert lf_vertices(S22).vrep.as_set() == lhv_vertices(S22).as_set()


def test_lf_needs_two_settings():
    with pytest.raises(ValidationError):
        lf_vertices(S12)


def test_lf_vertex_count_bound():
    for s in (S22, S32, Scenario(2, 3)):
        smaller = ns_vertices(Scenario(s.settings - 1, s.outcomes))
        assert len(lf_vertices(s)) <= s.outcomes ** 2 * len(smaller)


def test_lf_vertices_are_deterministic_on_setting_one():
    lf = lf_vertices(S32)
    for v, specs in lf.specs.items():
        b = Behavior.from_collins_gisin(S32, v)
        assert check_no_signalling(b).ok
        for spec in specs:
            for y in range(3):
                assert b.alice_marginals()[spec.c, 0, y] == 1
            for x in range(3):
                assert b.bob_marginals()[spec.d, x, 0] == 1


def test_extreme_point_is_the_pr_box_vertex():
    specs = lf_vertices(S32).specs[lf_extreme_point()]
    assert [(s.c, s.d) for s in specs] == [(1, 0)]


def test_lf_inside_ns():
    h = ns_facets(S32)
    assert all(h.contains(v) for v in lf_vertices(S32).vertices)


def test_lhv_inside_lf_by_certified_lp():
    lf = lf_vertices(S32).vrep
    for v in lhv_vertices(S32).vertices:
        cert = lp_membership(v, lf)
        assert cert.inside and verify_certificate(cert, v, lf)


def test_strictness_at_three_settings():
    values = [evaluate(LIBRARY["bell-non-lf"], Behavior.from_collins_gisin(S32, v))
              for v in lf_vertices(S32).vertices]
    assert max(values) == 4


def test_uniform_inside_lhv_with_valid_certificate():
    u = to_collins_gisin(Behavior.uniform(S32))
    lhv = lhv_vertices(S32)
    cert = lp_membership(u, lhv)
    assert cert.inside and verify_certificate(cert, u, lhv)
    equal = {i: Fraction(1, 64) for i in range(64)}
    assert verify_certificate(type(cert)("inside", equal), u, lhv)


def test_build_polytope_small_and_cap():
    p = build_polytope("lf", S22)
    q = build_polytope("lhv", S22)
    assert p.facets.as_set() == q.facets.as_set() and len(p.facets) == 24
    with pytest.raises(CapExceeded):
        build_polytope("lhv", Scenario(4, 3), cap=100)


def test_lhv32_contains_bell_facets(lhv32):
    rows = lhv32.facets.as_set()
    for name in ("i3322-12", "i3322-23", "brukner", "semi-brukner", "bell-non-lf"):
        assert LIBRARY[name].to_collins_gisin() in rows


def test_lf32_facets_cross_validated(lf32):
    assert (len(lf32.vertices), len(lf32.facets)) == (96, 932)
    assert LFVertexSpec(0, 0, 0) in itertools.chain.from_iterable(lf32.specs.values())
