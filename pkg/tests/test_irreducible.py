from fractions import Fraction

import pytest

from homotheties.errors import DomainError
from homotheties.fp import divisors, is_prime
from homotheties.irreducible import (
    MAZUR_REDUCIBLE_PRIMES,
    Q_THEOREM_EXCLUDED,
    FieldProfile,
    HomothetyGuarantee,
    exceptional_excluded,
    exceptional_exclusion_threshold,
    homothety_order_cartan_case,
    homothety_order_sl2_case,
    irreducible_theorem_I,
    irreducible_theorem_II,
    pgl_order_lower_bound,
    q_theorem,
)

PRIMES_TO_1000 = [p for p in range(5, 1001) if is_prime(p)]


def test_sl2_case_examples():
    assert homothety_order_sl2_case(12, 13) == 12
    assert homothety_order_sl2_case(3, 13) == 6
    for p in (5, 7, 11, 13):
        assert homothety_order_sl2_case(1, p) == 2
    with pytest.raises(DomainError):
        homothety_order_sl2_case(5, 13)


@pytest.mark.parametrize("p", [p for p in PRIMES_TO_1000 if p <= 100])
def test_surjective_determinant_gives_all_homotheties(p):
    assert homothety_order_sl2_case(p - 1, p) == p - 1
    assert homothety_order_cartan_case(p - 1) >= (p - 1) / 2
    for delta in divisors(p - 1):
        assert (p - 1) % homothety_order_sl2_case(delta, p) == 0


def test_cartan_case_examples():
    assert homothety_order_cartan_case(12) == 6
    assert homothety_order_cartan_case(7) == 7
    assert homothety_order_cartan_case(1) == 1


def test_exclusion_thresholds():
    assert exceptional_exclusion_threshold(1) == 21
    assert exceptional_exclusion_threshold(2) == 41
    assert not exceptional_excluded(13, 1)
    assert exceptional_excluded(17, 1)
    assert not exceptional_excluded(41, 2)
    assert exceptional_excluded(43, 2)


def test_pgl_lower_bound_examples():
    assert pgl_order_lower_bound(101, 1) == 25
    assert pgl_order_lower_bound(23, 1) == Fraction(11, 2)
    assert pgl_order_lower_bound(21, 1) == 5


@pytest.mark.parametrize("e", range(1, 11))
def test_pgl_lower_bound_pivot(e):
    for p in PRIMES_TO_1000:
        assert (pgl_order_lower_bound(p, e) > 5) == (p > exceptional_exclusion_threshold(e))


def test_theorem_I_examples():
    assert irreducible_theorem_I(FieldProfile(1), 23) == HomothetyGuarantee.order_at_least(11)
    # 61 = 20*3 + 1 sits on the threshold, which must be exceeded strictly
    assert irreducible_theorem_I(FieldProfile(3), 61).kind == "none"
    assert irreducible_theorem_I(FieldProfile(3), 67) == HomothetyGuarantee.order_at_least(11)
    assert irreducible_theorem_I(FieldProfile(1), 19).kind == "none"


def test_theorem_II_examples():
    # 17 = 1 mod 4: squares and, beyond that, every homothety
    assert irreducible_theorem_II(17, True).kind == "all"
    assert irreducible_theorem_II(19, True) == HomothetyGuarantee.squares(19)
    assert irreducible_theorem_II(29, True) == HomothetyGuarantee.all(29)
    assert irreducible_theorem_II(13, True).kind == "none"
    assert irreducible_theorem_II(29, False).kind == "none"


def test_q_theorem_examples():
    assert q_theorem(37).kind == "none"
    assert q_theorem(29).kind == "all"
    assert q_theorem(23).kind == "squares"
    assert MAZUR_REDUCIBLE_PRIMES == {2, 3, 5, 7, 11, 13, 17, 19, 37, 43, 67, 163}


def test_q_theorem_consistent_with_theorem_II():
    for p in PRIMES_TO_1000:
        g = q_theorem(p)
        if g.kind == "all":
            assert irreducible_theorem_II(p, True).kind == "all"
        if g.kind != "none":
            assert p not in Q_THEOREM_EXCLUDED and p >= 23
            assert g.witness_order >= (p - 1) // 2


def test_guarantee_witnesses():
    assert HomothetyGuarantee.squares(23).witness_order == 11
    assert HomothetyGuarantee.all(29).witness_order == 28
    assert HomothetyGuarantee.none().to_dict() == {"kind": "none", "witness_order": None}


@pytest.mark.parametrize("kwargs", [dict(d=0), dict(d=2, h=0), dict(d=2, e=3), dict(d=2, e=2, p_unramified=True)])
def test_field_profile_validation(kwargs):
    with pytest.raises(DomainError):
        FieldProfile(**kwargs)
