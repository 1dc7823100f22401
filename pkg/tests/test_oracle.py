import json

import numpy as np
import pytest

from homotheties._ambient import ambient
from homotheties.errors import ResourceError
from homotheties.gl2 import gl2_order
from homotheties.oracle import (
    FULL_LATTICE,
    GEN_PAIRS,
    EnumerationResult,
    build_lattice,
    conjugates,
    enumerate_subgroups,
    lattice,
    verify_classification,
    verify_homothety_props,
)
from homotheties.subgroups import NAMED_BUILDERS, classify, generate

# full_lattice counts are checked against the join closure below;
# gen_pairs at 11 and 13 are frozen from the enumeration itself.
EXPECTED_COUNTS = {
    (5, FULL_LATTICE): (466, 48),
    (7, FULL_LATTICE): (1704, 84),
    (5, GEN_PAIRS): (461, 47),
    (7, GEN_PAIRS): (1704, 84),
    (11, GEN_PAIRS): (6428, 114),
    (13, GEN_PAIRS): (16794, 213),
}


def all_keys(p, mode):
    return {k.key for h in enumerate_subgroups(p, mode) for k in conjugates(h)}


def join_closure(p):
    """Every subgroup, as the fixpoint of joining known subgroups with cyclic ones."""
    amb = ambient(p)
    cyclic = {}
    for g in range(amb.n):
        c = amb.cyclic(g)
        cyclic.setdefault(c.tobytes(), (g, c))
    found = {np.array([amb.identity]).tobytes(): ([], np.array([amb.identity]))}
    found.update({k: ([g], c) for k, (g, c) in cyclic.items()})
    frontier = list(found.values())
    while frontier:
        nxt = []
        for gens, elems in frontier:
            mask = amb.mask_of(elems)
            for g, _ in cyclic.values():
                if mask[g]:
                    continue
                k = amb.closure(gens + [g], base=elems, new=[g])
                key = k.tobytes()
                if key not in found:
                    found[key] = (gens + [g], k)
                    nxt.append(found[key])
        frontier = nxt
    return {np.asarray(e, dtype=np.int32).tobytes() for _, e in found.values()}


@pytest.mark.parametrize("p", [5, pytest.param(7, marks=pytest.mark.slow)])
def test_full_lattice_matches_join_closure(p):
    assert all_keys(p, FULL_LATTICE) == join_closure(p)


def test_gen_pairs_is_every_two_generated_subgroup():
    p = 5
    amb = ambient(p)
    # each pair (g, h) is conjugate to one with g a conjugacy-class representative
    reps = {}
    for g in range(amb.n):
        reps.setdefault((int(amb.class_id[g])), g)
    keys = set()
    for g in reps.values():
        for h in range(amb.n):
            group = generate(p, [amb.mat(g), amb.mat(h)])
            if group.key not in keys:
                keys.update(k.key for k in conjugates(group))
    assert keys == all_keys(p, GEN_PAIRS)
    assert len(keys) == EXPECTED_COUNTS[(p, GEN_PAIRS)][0]


@pytest.mark.parametrize("p, mode", sorted(EXPECTED_COUNTS))
def test_counts(p, mode):
    lat = lattice(p, mode)
    assert (lat.subgroup_count, lat.conjugacy_class_count) == EXPECTED_COUNTS[(p, mode)]


@pytest.mark.parametrize("p", [5, 7])
def test_conjugate_counts_add_up(p):
    assert len(all_keys(p, FULL_LATTICE)) == EXPECTED_COUNTS[(p, FULL_LATTICE)][0]


def test_enumeration_examples():
    orders5 = {h.order for h in enumerate_subgroups(5)}
    assert 480 in orders5 and 1 in orders5
    assert gl2_order(7) in {h.order for h in enumerate_subgroups(7)}


def test_determinism():
    a, b = build_lattice(5, FULL_LATTICE), build_lattice(5, FULL_LATTICE)
    assert a.subgroup_count == b.subgroup_count
    assert [h.key for h in a.representatives()] == [h.key for h in b.representatives()]


@pytest.mark.parametrize("p", [5, 7])
@pytest.mark.parametrize("name", sorted(NAMED_BUILDERS))
def test_named_groups_are_enumerated(p, name):
    assert NAMED_BUILDERS[name](p).key in all_keys(p, FULL_LATTICE)


def test_exceptional_types_present():
    assert "A5" in {classify(h).exceptional for h in enumerate_subgroups(5)}
    assert "S4" in {classify(h).exceptional for h in enumerate_subgroups(7)}


def test_reports_are_conjugation_invariant_at_5():
    for h in enumerate_subgroups(5):
        r = classify(h)
        for k in conjugates(h):
            assert classify(k) == r


@pytest.mark.parametrize("p, mode", [(5, FULL_LATTICE), (7, FULL_LATTICE), (11, GEN_PAIRS), (13, GEN_PAIRS)])
def test_verify_zero_failures(p, mode):
    for check in (verify_classification, verify_homothety_props):
        result = check(p, mode)
        assert result.ok, result.failures
        assert result.subgroup_count == EXPECTED_COUNTS[(p, mode)][0]
        assert all(v > 0 for v in result.checked.values())


def test_hypotheses_are_exercised():
    result = verify_homothety_props(7, FULL_LATTICE)
    for name in ("sl2_homothety_order", "split_normalizer_homotheties", "split_normalizer_homotheties_strict", "nonsplit_normalizer_homotheties", "sl2_det_pullback"):
        assert result.checked[name] > 0


@pytest.mark.parametrize("p, mode", [(11, FULL_LATTICE), (17, GEN_PAIRS), (3, GEN_PAIRS)])
def test_unsupported(p, mode):
    with pytest.raises((ResourceError, ValueError)):
        enumerate_subgroups(p, mode)


def test_result_merge_and_json():
    a = EnumerationResult(5, FULL_LATTICE, 466, 48, [(["1 0 0 1"], "x")], {"x": 2})
    b = EnumerationResult(5, FULL_LATTICE, 466, 48, [], {"x": 1, "y": 1})
    m = a.merge(b)
    assert m.checked == {"x": 3, "y": 1} and not m.ok
    assert b.merge(a).to_dict()["checked"] == m.to_dict()["checked"]
    text = m.to_json()
    assert json.dumps(json.loads(text), sort_keys=True, indent=2) == text
