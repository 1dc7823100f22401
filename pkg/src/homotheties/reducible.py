"""Homothety guarantees when the mod-p representation is reducible.

Characters are tracked only through their exponent on the cyclotomic
character: on inertia above an unramified p the cyclotomic character is onto
F_p^x, so every statement reduces to exponent arithmetic modulo p - 1.
"""

from __future__ import annotations

import json
import warnings
from collections import Counter
from dataclasses import dataclass
from math import gcd
from typing import Iterable

from .errors import DomainError
from .fp import check_modulus
from .irreducible import FieldProfile

E_RAM_VALUES = (1, 2, 3, 4, 6)
A_VALUES = (0, 4, 6, 8, 12)
INVALID = "×"

CONGRUENCE_NONE = "none"
P_2_MOD_3 = "p=2 mod 3"
P_3_MOD_4 = "p=3 mod 4"

_CONGRUENCE_HOLDS = {
    CONGRUENCE_NONE: lambda p: True,
    P_2_MOD_3: lambda p: p % 3 == 2,
    P_3_MOD_4: lambda p: p % 4 == 3,
}
_CONGRUENCE_TEXT = {CONGRUENCE_NONE: "—", P_2_MOD_3: "p≡2[3]", P_3_MOD_4: "p≡3[4]"}


class HypothesisWarning(UserWarning):
    """A formula was evaluated outside the hypotheses it was proved under."""


@dataclass(frozen=True)
class ApEntry:
    """One (e, r) cell: the inertia exponent a = 12 r / e and its side condition on p."""

    e_ram: int
    r: int
    a: int | None
    congruence: str | None

    @property
    def valid(self) -> bool:
        return self.a is not None

    def holds_at(self, p: int) -> bool:
        return self.valid and _CONGRUENCE_HOLDS[self.congruence](p)

    def to_dict(self) -> dict:
        return {
            "e_ram": self.e_ram,
            "r": self.r,
            "a": self.a,
            "valid": self.valid,
            "congruence": self.congruence if self.valid else INVALID,
        }


def ap_from_table(e_ram: int, r: int) -> ApEntry:
    if e_ram not in E_RAM_VALUES:
        raise DomainError(f"e_ram must be one of {E_RAM_VALUES}, got {e_ram}")
    if not 0 <= r <= e_ram:
        raise DomainError(f"r must satisfy 0 <= r <= e_ram = {e_ram}, got {r}")
    if e_ram % 2 == 0 and r % 2 == 1:
        return ApEntry(e_ram, r, None, None)
    if e_ram % 3 == 0 and r % 3:
        congruence = P_2_MOD_3
    elif e_ram == 4 and r % 4:
        congruence = P_3_MOD_4
    else:
        congruence = CONGRUENCE_NONE
    return ApEntry(e_ram, r, 12 * r // e_ram, congruence)


def ap_table() -> list[ApEntry]:
    return [ap_from_table(e, r) for e in E_RAM_VALUES for r in range(e + 1)]


def solve_star_congruence(e_ram: int, r: int, p: int) -> int | None:
    """Smallest a' >= 0 with e_ram * a' = r (mod p - 1), or None if unsolvable."""
    ap_from_table(e_ram, r)
    p = check_modulus(p)
    m = p - 1
    g = gcd(e_ram, m)
    if r % g:
        return None
    m //= g
    return (r // g) * pow(e_ram // g, -1, m) % m if m > 1 else 0


def render_ap_table_text() -> str:
    """The table as two aligned blocks (e = 1, 2, 3 and e = 4, 6)."""
    lines = []
    for block in ((1, 2, 3), (4, 6)):
        cells = [c for c in ap_table() if c.e_ram in block]
        rows = {
            "e_p": [str(c.e_ram) for c in cells],
            "r_p": [str(c.r) for c in cells],
            "a_p = 12 r_p / e_p": [str(c.a) if c.valid else INVALID for c in cells],
            "p": [_CONGRUENCE_TEXT[c.congruence] if c.valid else INVALID for c in cells],
        }
        label_w = max(len(k) for k in rows)
        col_w = [max(len(v[i]) for v in rows.values()) for i in range(len(cells))]
        for label, values in rows.items():
            body = " | ".join(v.rjust(w) for v, w in zip(values, col_w))
            lines.append(f"{label.ljust(label_w)} | {body}")
        lines.append("")
    return "\n".join(lines)


def render_ap_table_json() -> str:
    return json.dumps({"cells": [c.to_dict() for c in ap_table()]}, sort_keys=True, indent=2)


@dataclass(frozen=True)
class ApFamily:
    """The inertia exponents a, one per prime of K above p."""

    values: tuple[int, ...]

    def __post_init__(self):
        values = tuple(int(v) for v in self.values)
        if not values:
            raise DomainError("a family needs at least one coefficient")
        bad = [v for v in values if v not in A_VALUES]
        if bad:
            raise DomainError(f"coefficients must lie in {A_VALUES}, got {bad}")
        object.__setattr__(self, "values", values)

    @classmethod
    def parse(cls, text: str) -> ApFamily:
        try:
            return cls(tuple(int(s) for s in text.split(",")))
        except ValueError as exc:
            raise DomainError(f"cannot parse family {text!r}: {exc}") from None

    def check_congruences(self, p: int) -> None:
        """Each a must be producible at p: 4 and 8 need p = 2 mod 3, 6 needs p = 3 mod 4."""
        present = set(self.values)
        if present & {4, 8} and p % 3 != 2:
            raise DomainError(f"a in {{4, 8}} requires p = 2 mod 3, but p = {p}")
        if 6 in present and p % 4 != 3:
            raise DomainError(f"a = 6 requires p = 3 mod 4, but p = {p}")


@dataclass(frozen=True)
class FrobeniusData:
    """Trace t and norm n of a Frobenius at a good-reduction place, plus the class number h."""

    t: int
    n: int
    h: int = 1

    def __post_init__(self):
        if self.n < 2:
            raise DomainError(f"the norm must be >= 2, got {self.n}")
        if self.h < 1:
            raise DomainError(f"class number must be >= 1, got {self.h}")
        if self.t * self.t > 4 * self.n:
            raise DomainError(
                f"t^2 = {self.t * self.t} > 4n = {4 * self.n}: roots would not have modulus sqrt(n)"
            )


@dataclass(frozen=True)
class ReducibleOutcome:
    """``homothety_exponent`` (k-th powers of homotheties), ``squares``, or ``prime_bounded``."""

    kind: str
    exponent: int | None = None
    bound: int | None = None

    @classmethod
    def homothety_exponent(cls, k: int) -> ReducibleOutcome:
        return cls("homothety_exponent", exponent=k)

    @classmethod
    def squares(cls) -> ReducibleOutcome:
        return cls("squares", exponent=2)

    @classmethod
    def prime_bounded(cls, bound: int) -> ReducibleOutcome:
        return cls("prime_bounded", bound=bound)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "exponent": self.exponent,
            "bound": None if self.bound is None else str(self.bound),
        }


def lemma37_scalar_exponent(p: int) -> tuple[int, ReducibleOutcome]:
    """Exponent 1 + (p-1)/2 carried by the diagonal of the squared representation when a = 6.

    Raising every element of F_p^x to this power yields exactly the squares.
    """
    p = check_modulus(p)
    if p % 4 != 3:
        raise DomainError(f"a = 6 only occurs for p = 3 mod 4, got p = {p}")
    return 1 + (p - 1) // 2, ReducibleOutcome.squares()


def power_image(k: int, p: int) -> frozenset[int]:
    return frozenset(pow(y, k, p) for y in range(1, p))


# For each pair: two elements diag(u^a, u^(12-a)) with u = x^k, as (a, k),
# whose product is the homothety x^s, and the power of homotheties that yields.
PAIR_CASES = {
    (0, 4): ((0, -1), (4, 3), 12, 4),
    (8, 12): ((12, -1), (8, 3), 12, 4),
    (4, 8): ((4, 1), (8, 1), 12, 4),
    (0, 8): ((0, 1), (8, 3), 24, 8),
    (4, 12): ((12, 1), (4, 3), 24, 8),
    (0, 12): ((0, 1), (12, 1), 12, 12),
}


def combine_ap_pair(a1: int, a2: int, p: int) -> ReducibleOutcome:
    """Two distinct exponents (none equal to 6) above p force k-th powers of homotheties."""
    p = check_modulus(p)
    if a1 == a2:
        raise DomainError("equal coefficients: this is the uniform-family case")
    pair = tuple(sorted((a1, a2)))
    if pair not in PAIR_CASES:
        raise DomainError(f"pair {set(pair)} is not a pair of distinct values in {{0, 4, 8, 12}}")
    ApFamily(pair).check_congruences(p)
    return ReducibleOutcome.homothety_exponent(PAIR_CASES[pair][3])


def pair_witnesses(a1: int, a2: int, p: int, x: int) -> tuple[tuple[int, int], tuple[int, int], int]:
    """The two witness diagonals (as entry pairs) for generator x and the exponent s of their product x^s."""
    (ea, ka), (eb, kb), s, _ = PAIR_CASES[tuple(sorted((a1, a2)))]

    def diag(a: int, k: int) -> tuple[int, int]:
        u = pow(x, k, p)
        return pow(u, a, p), pow(u, 12 - a, p)

    return diag(ea, ka), diag(eb, kb), s


def oesterle_torsion_bound(D: int) -> int:
    """(1 + 3^(D/2))^2 bounds a prime order of a torsion point over a field of degree D."""
    if D < 2 or D % 2:
        raise DomainError(f"the degree must be a positive even integer, got {D}")
    return (1 + 3 ** (D // 2)) ** 2


def lucas_sequence(t: int, n: int, k: int) -> int:
    """s_k = beta^k + conj(beta)^k for the roots of X^2 - tX + n."""
    s_prev, s = 2, t
    if k == 0:
        return 2
    for _ in range(k - 1):
        s_prev, s = s, t * s - n * s_prev
    return s


def frobenius_norm_divisor(fd: FrobeniusData) -> int:
    """N(beta^(12h) - n^(4h)) = n^(12h) - n^(4h) s_(12h) + n^(8h), computed exactly."""
    t, n, h = fd.t, fd.n, fd.h
    return n ** (12 * h) - n ** (4 * h) * lucas_sequence(t, n, 12 * h) + n ** (8 * h)


def frobenius_norm_envelope(fd: FrobeniusData) -> int:
    return (fd.n ** (6 * fd.h) + fd.n ** (4 * fd.h)) ** 2


def lemma39_bound(d: int, h: int) -> int:
    if d < 1 or h < 1:
        raise DomainError(f"d and h must be >= 1, got d={d}, h={h}")
    return (2 ** (6 * d * h) + 2 ** (4 * d * h)) ** 2


def classify_ap_family(fam: ApFamily | Iterable[int], p: int, fp: FieldProfile) -> ReducibleOutcome:
    """What the family of inertia exponents above p forces on the homotheties."""
    p = check_modulus(p)
    if not isinstance(fam, ApFamily):
        fam = ApFamily(tuple(fam))
    fam.check_congruences(p)
    present = set(fam.values)
    if 6 in present:
        return lemma37_scalar_exponent(p)[1]
    if len(present) >= 2:
        pairs = sorted(
            (PAIR_CASES[(a1, a2)][3], a1, a2)
            for a1 in present for a2 in present if a1 < a2
        )
        _, a1, a2 = pairs[0]
        return combine_ap_pair(a1, a2, p)
    (a,) = present
    if a in (0, 12):
        return ReducibleOutcome.prime_bounded(oesterle_torsion_bound(12 * fp.d * fp.h))
    return ReducibleOutcome.prime_bounded(lemma39_bound(fp.d, fp.h))


def uniform_bound_reducible(d: int, h: int) -> int:
    """(1 + 3^(6dh))^2, the larger of the two obstruction bounds."""
    if d < 1 or h < 1:
        raise DomainError(f"d and h must be >= 1, got d={d}, h={h}")
    if d < 2:
        warnings.warn("the reducible-case bound is proved for K != Q (d >= 2)", HypothesisWarning, stacklevel=2)
    return max(oesterle_torsion_bound(12 * d * h), lemma39_bound(d, h))


def corollary_threshold(d: int, h: int | None = None) -> int:
    """(1 + 3^(6d))^2 as the orbit corollary states it; pass h for the (1 + 3^(6dh))^2 variant."""
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    return (1 + 3 ** (6 * d * (1 if h is None else h))) ** 2


def orbit_lower_bound(p: int) -> int:
    """ceil((p-1)/12): multiples of a point of order p that are also Galois conjugates of it."""
    if p < 5:
        raise DomainError(f"p must be >= 5, got {p}")
    return -(-(p - 1) // 12)


@dataclass(frozen=True)
class NonramifiedData:
    """Local facts at primes q not above p used by the uniform-family bounds."""

    inertia_order_divisors: tuple[int, ...] = (1, 2, 3, 4, 6)
    lambda2_unramified_multiplicative: bool = True
    lambda12_unramified_away_from_p: bool = True

    @staticmethod
    def multiplicative_frobenius_values(n: int, p: int) -> frozenset[int]:
        """Possible values of lambda^2(Frob_q) mod p at potentially multiplicative q of norm n."""
        return frozenset({1, n * n % p})

    def inertia_order_allowed(self, k: int) -> bool:
        """Whether k can be the order of lambda(I_q) at potentially good q (k | 4 or k | 6)."""
        return k in self.inertia_order_divisors


def nonramified_character_orders() -> NonramifiedData:
    return NonramifiedData()


def outcome_counts(families: Iterable[Iterable[int]], p: int, fp: FieldProfile) -> Counter:
    return Counter(classify_ap_family(f, p, fp).kind for f in families)
