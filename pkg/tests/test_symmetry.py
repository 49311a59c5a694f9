import random

import pytest

from lfpoly.builders import lf_vertices
from lfpoly.errors import ScenarioMismatch, UnmatchedFacet
from lfpoly.inequalities import LF_CLASSES, LIBRARY, Inequality, evaluate
from lfpoly.reps import HRepresentation
from lfpoly.scenario import Behavior, Scenario, to_collins_gisin
from lfpoly.symmetry import (
    GroupTable, RelabelingOp, apply, apply_to_behavior, apply_to_cg, canonical_form, classify, compose,
    relabeling_group,
)

S32 = Scenario(3, 2)
GROUP = relabeling_group(S32)
TABLE = GroupTable(GROUP, 3)


def test_group_order_and_identity():
    assert len(GROUP) == 512 == len(set(GROUP))
    ident = RelabelingOp.identity(3)
    assert ident in GROUP
    for ineq in LIBRARY.values():
        assert apply(ident, ineq) == ineq


def test_closure_on_samples():
    members = set(GROUP)
    rng = random.Random(0)
    for _ in range(300):
        f, g = rng.choice(GROUP), rng.choice(GROUP)
        h = compose(f, g)
        assert h in members
        ineq = LIBRARY["genuine-lf-1"]
        assert apply(h, ineq) == apply(g, apply(f, ineq))


def test_party_swap_on_brukner():
    swap = RelabelingOp(True, (0, 1, 2), (0, 1, 2), (False,) * 3, (False,) * 3)
    out = apply(swap, LIBRARY["brukner"])
    assert out.bound == 2
    assert [list(r) for r in out.AB] == [list(c) for c in zip(*LIBRARY["brukner"].AB)]


def test_outcome_flip_negates_setting_two():
    flip = RelabelingOp(False, (0, 1, 2), (0, 1, 2), (False, True, False), (False,) * 3)
    ineq = LIBRARY["genuine-lf-2"]
    out = apply(flip, ineq)
    assert out.A[1] == -ineq.A[1] and out.AB[1] == tuple(-v for v in ineq.AB[1])
    assert out.A[0] == ineq.A[0] and out.AB[0] == ineq.AB[0]


def test_relabelings_must_fix_setting_one():
    with pytest.raises(Exception):
        RelabelingOp(False, (1, 0, 2), (0, 1, 2), (False,) * 3, (False,) * 3)


def test_action_is_compatible_with_evaluation():
    rng = random.Random(1)
    verts = lf_vertices(S32).vertices
    for _ in range(40):
        op = rng.choice(GROUP)
        b = Behavior.from_collins_gisin(S32, rng.choice(verts))
        ineq = LIBRARY[rng.choice(sorted(LIBRARY))]
        assert evaluate(apply(op, ineq), apply_to_behavior(op, b)) == evaluate(ineq, b)


def test_group_preserves_lf_vertices():
    verts = lf_vertices(S32).vrep.as_set()
    # exact path on a sample
    for op in GROUP[::32]:
        assert {apply_to_cg(op, v, S32) for v in verts} == verts
    # whole group on float tables; LF entries are multiples of 1/4, so scaling by 4 is exact
    def key(b):
        return tuple(int(round(4 * x)) for x in to_collins_gisin(b))

    floats = [Behavior.from_collins_gisin(S32, v).to_float() for v in verts]
    target = {key(b) for b in floats}
    for op in GROUP:
        assert {key(apply_to_behavior(op, b)) for b in floats} == target


def test_canonical_form_properties():
    chsh = LIBRARY["brukner"]
    a, b = apply(GROUP[77], chsh), apply(GROUP[401], chsh)
    assert canonical_form(a, TABLE).key() == canonical_form(b, TABLE).key()
    c = canonical_form(chsh, TABLE)
    assert canonical_form(c, TABLE).key() == c.key()
    assert canonical_form(LIBRARY["brukner"], TABLE).key() != canonical_form(LIBRARY["semi-brukner"], TABLE).key()


def test_orbit_sizes_divide_group_order():
    for name, mult in LF_CLASSES:
        size = len(TABLE.orbit(LIBRARY[name]))
        assert 512 % size == 0 and size == mult


def test_scenario_mismatch():
    with pytest.raises(ScenarioMismatch):
        apply(RelabelingOp.identity(2), LIBRARY["brukner"])


def test_classify_lf32(lf32):
    classes = classify(lf32.facets, S32)
    assert [c.reference for c in classes] == [k for k, _ in LF_CLASSES]
    assert [c.multiplicity for c in classes] == [m for _, m in LF_CLASSES]
    members = sorted(i for c in classes for i in c.members)
    assert members == list(range(932))


def test_lf_group_maps_facets_to_facets(lf32):
    rows = lf32.facets.as_set()
    for key, _ in LF_CLASSES:
        for image in TABLE.orbit(LIBRARY[key]):
            assert image.to_collins_gisin() in rows


def test_classify_lhv32_has_bell_non_lf_class(lhv32):
    classes = classify(lhv32.facets, S32)
    labels = {c.reference: c.multiplicity for c in classes}
    assert labels["bell-non-lf"] == 8 and labels["i3322-mixed"] == 256
    assert sum(labels.values()) == len(lhv32.facets) == 684
    lf_refs = {k for k, _ in LF_CLASSES}
    assert "bell-non-lf" not in lf_refs


def test_unmatched_orbit_surfaces():
    odd = Inequality([1, 0, 0], [0, 0, 0], [[0, 0, 0], [0, 0, 0], [0, 0, 1]], 2)
    h = HRepresentation([odd.to_collins_gisin()])
    with pytest.raises(UnmatchedFacet):
        classify(h, S32)
    assert classify(h, S32, strict=False)[0].label == "unmatched-1"
