"""Homothety guarantees when the mod-p representation is irreducible."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, gcd

from .errors import DomainError

# Exceptional images are excluded from p >= 17 on when some place above p has e = 1.
UNRAMIFIED_EXCEPTIONAL_BOUND = 17
# Primes outside this set give an irreducible representation over Q.
MAZUR_REDUCIBLE_PRIMES = frozenset({2, 3, 5, 7, 13, 11, 17, 19, 37, 43, 67, 163})
Q_THEOREM_BOUND = 23
Q_THEOREM_EXCLUDED = frozenset({37, 43, 67, 163})


@dataclass(frozen=True)
class FieldProfile:
    """Degree d, class number h and least ramification index e above p of a number field."""

    d: int
    h: int = 1
    e: int = 1
    p_unramified: bool = False

    def __post_init__(self):
        if self.d < 1 or self.h < 1:
            raise DomainError(f"degree and class number must be >= 1, got d={self.d}, h={self.h}")
        if not 1 <= self.e <= self.d:
            raise DomainError(f"ramification index must satisfy 1 <= e <= d, got e={self.e}")
        if self.p_unramified and self.e != 1:
            raise DomainError("an unramified p forces e = 1")


@dataclass(frozen=True)
class HomothetyGuarantee:
    """What the theorems promise about the homotheties in the image.

    ``kind`` is one of ``none``, ``order_at_least``, ``squares``, ``all``;
    ``witness_order`` is the guaranteed order of the homothety subgroup.
    """

    kind: str
    witness_order: int | None = None

    @classmethod
    def none(cls) -> HomothetyGuarantee:
        return cls("none")

    @classmethod
    def order_at_least(cls, n: int) -> HomothetyGuarantee:
        return cls("order_at_least", n)

    @classmethod
    def squares(cls, p: int) -> HomothetyGuarantee:
        return cls("squares", (p - 1) // 2)

    @classmethod
    def all(cls, p: int) -> HomothetyGuarantee:
        return cls("all", p - 1)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "witness_order": self.witness_order}


def _check_divides(delta: int, p: int) -> None:
    if delta < 1 or (p - 1) % delta:
        raise DomainError(f"{delta} does not divide p-1 = {p - 1}")


def homothety_order_sl2_case(delta: int, p: int) -> int:
    """Order of the homotheties forced into a group containing SL_2 with det image of order delta."""
    _check_divides(delta, p)
    return 2 * gcd(delta, (p - 1) // 2)


def homothety_order_cartan_case(delta: int) -> int:
    """delta / gcd(2, delta): homotheties forced in a Cartan-normaliser image."""
    if delta < 1:
        raise DomainError(f"delta must be >= 1, got {delta}")
    return delta // gcd(2, delta)


def exceptional_exclusion_threshold(e: int) -> int:
    """20e + 1; primes strictly above it cannot have an exceptional image."""
    if e < 1:
        raise DomainError(f"ramification index must be >= 1, got {e}")
    return 20 * e + 1


def pgl_order_lower_bound(p: int, e: int) -> Fraction:
    """(p-1)/(4e), the guaranteed PGL element order coming from inertia above p."""
    if e < 1:
        raise DomainError(f"ramification index must be >= 1, got {e}")
    return Fraction(p - 1, 4 * e)


def exceptional_excluded(p: int, e: int) -> bool:
    if p > exceptional_exclusion_threshold(e):
        return True
    return e == 1 and p >= UNRAMIFIED_EXCEPTIONAL_BOUND


def irreducible_theorem_I(fp: FieldProfile, p: int) -> HomothetyGuarantee:
    """Bound depending only on the degree: order >= (p-1)/(2d) once p > 20d + 1."""
    if p > exceptional_exclusion_threshold(fp.d):
        return HomothetyGuarantee.order_at_least(ceil(Fraction(p - 1, 2 * fp.d)))
    return HomothetyGuarantee.none()


def irreducible_theorem_II(p: int, p_unramified: bool) -> HomothetyGuarantee:
    """p unramified and p >= 17: squares; all homotheties if moreover p = 1 mod 4."""
    if not p_unramified or p < UNRAMIFIED_EXCEPTIONAL_BOUND:
        return HomothetyGuarantee.none()
    if p % 4 == 1:
        return HomothetyGuarantee.all(p)
    return HomothetyGuarantee.squares(p)


def q_theorem(p: int) -> HomothetyGuarantee:
    """Guarantee over the rationals, where irreducibility holds outside the Mazur set."""
    if p < Q_THEOREM_BOUND or p in Q_THEOREM_EXCLUDED:
        return HomothetyGuarantee.none()
    if p % 4 == 1:
        return HomothetyGuarantee.all(p)
    return HomothetyGuarantee.squares(p)
