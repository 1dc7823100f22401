"""Arithmetic in the prime field F_p and the cyclic group F_p^x."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError

# Group-element code paths (matrices, enumeration) refuse larger moduli.
MAX_GROUP_PRIME = 2**31

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeModulus(int):
    """A prime p >= 5, usable anywhere an ``int`` is."""

    def __new__(cls, p):
        if isinstance(p, PrimeModulus):
            return p
        if isinstance(p, bool) or not isinstance(p, int):
            raise DomainError(f"modulus must be an integer, got {p!r}")
        if p < 5 or not is_prime(p):
            raise DomainError(f"modulus must be a prime >= 5, got {p}")
        return super().__new__(cls, p)

    def __repr__(self):
        return f"PrimeModulus({int(self)})"

    def __str__(self):
        return int.__repr__(self)


@lru_cache(maxsize=None)
def check_modulus(p: int) -> PrimeModulus:
    return PrimeModulus(p)


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorisation of n >= 1 by trial division, as ((q, k), ...)."""
    if n < 1:
        raise DomainError(f"cannot factor {n}")
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            k = 0
            while n % q == 0:
                n //= q
                k += 1
            out.append((q, k))
        q += 1 if q == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def divisors(n: int) -> list[int]:
    divs = [1]
    for q, k in factorize(n):
        divs = [d * q**i for d in divs for i in range(k + 1)]
    return sorted(divs)


@dataclass(frozen=True)
class Scalar:
    """A residue in [0, p-1]."""

    value: int
    p: int

    def __post_init__(self):
        p = check_modulus(self.p)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "value", self.value % p)

    def __int__(self):
        return self.value

    def __mul__(self, other):
        other = self._coerce(other)
        return Scalar(self.value * other.value, self.p)

    __rmul__ = __mul__

    def __add__(self, other):
        other = self._coerce(other)
        return Scalar(self.value + other.value, self.p)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.value, self.p)

    def __pow__(self, k: int):
        if self.value == 0 and k < 0:
            raise DomainError("zero is not invertible")
        return Scalar(pow(self.value, k, self.p), self.p)

    def inverse(self) -> Scalar:
        return self ** -1

    def _coerce(self, other) -> Scalar:
        if isinstance(other, Scalar):
            if other.p != self.p:
                raise DomainError(f"mixed moduli {self.p} and {other.p}")
            return other
        return Scalar(other, self.p)


def _residue(x, p: int | None) -> tuple[int, int]:
    if isinstance(x, Scalar):
        return x.value, x.p
    if p is None:
        raise DomainError("a bare integer needs an explicit modulus")
    p = check_modulus(p)
    return x % p, p


def mult_order(x, p: int | None = None) -> int:
    """Multiplicative order of x in F_p^x.

    ``x`` is a :class:`Scalar`, or an integer together with ``p``.
    """
    v, p = _residue(x, p)
    if v == 0:
        raise DomainError("0 has no multiplicative order")
    k = p - 1
    for q, _ in factorize(p - 1):
        while k % q == 0 and pow(v, k // q, p) == 1:
            k //= q
    return k


def is_quadratic_residue(x, p: int | None = None) -> bool:
    v, p = _residue(x, p)
    if v == 0:
        raise DomainError("0 is excluded from the residue test")
    return pow(v, (p - 1) // 2, p) == 1


@lru_cache(maxsize=None)
def primitive_root(p: int) -> Scalar:
    """Smallest positive generator of F_p^x."""
    p = check_modulus(p)
    qs = [q for q, _ in factorize(p - 1)]
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return Scalar(g, p)
    raise AssertionError("unreachable: F_p^x is cyclic")


def minus_gamma_order(delta: int, p: int) -> int:
    """Order of -gamma where gamma in F_p^x has order ``delta``."""
    p = check_modulus(p)
    if delta < 1 or (p - 1) % delta:
        raise DomainError(f"{delta} does not divide p-1 = {p - 1}")
    if delta % 2:
        return 2 * delta
    if delta % 4:
        return delta // 2
    return delta


def sqrt_mod(x: int, p: int) -> int | None:
    """A square root of x modulo the odd prime p (Tonelli-Shanks), or None."""
    x %= p
    if x == 0:
        return 0
    if pow(x, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(x, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(x, q, p), pow(x, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def smallest_nonresidue(p: int) -> int:
    p = check_modulus(p)
    return next(a for a in range(2, p) if pow(a, (p - 1) // 2, p) == p - 1)
