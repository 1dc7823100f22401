"""Elements of GL_2(F_p): arithmetic, orders, lines and projective classes."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError, InputError
from .fp import MAX_GROUP_PRIME, check_modulus, factorize, sqrt_mod


def gl2_order(p: int) -> int:
    return (p * p - 1) * (p * p - p)


def sl2_order(p: int) -> int:
    return p * (p * p - 1)


def pgl2_order(p: int) -> int:
    return p * (p * p - 1)


@lru_cache(maxsize=None)
def _order_primes(n: int) -> tuple[int, ...]:
    return tuple(q for q, _ in factorize(n))


def _checked_prime(p: int) -> int:
    p = check_modulus(p)
    if p >= MAX_GROUP_PRIME:
        raise DomainError(f"p = {p} exceeds the matrix-arithmetic cap 2^31")
    return p


@dataclass(frozen=True, slots=True)
class Mat2:
    """Invertible 2x2 matrix [[a, b], [c, d]] over F_p, entries reduced."""

    a: int
    b: int
    c: int
    d: int
    p: int

    def __post_init__(self):
        p = _checked_prime(self.p)
        a, b, c, d = self.a % p, self.b % p, self.c % p, self.d % p
        if (a * d - b * c) % p == 0:
            raise InputError(f"singular matrix [[{a}, {b}], [{c}, {d}]] mod {p}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    @classmethod
    def identity(cls, p: int) -> Mat2:
        return cls(1, 0, 0, 1, p)

    @classmethod
    def scalar(cls, lam: int, p: int) -> Mat2:
        return cls(lam, 0, 0, lam, p)

    @classmethod
    def diag(cls, x: int, y: int, p: int) -> Mat2:
        return cls(x, 0, 0, y, p)

    @classmethod
    def parse(cls, text: str, p: int) -> Mat2:
        """Parse the row-major literal ``"a b c d"`` (decimal residues)."""
        parts = text.split(" ")
        if len(parts) != 4 or not all(s.isdigit() for s in parts):
            raise InputError(f"expected four decimal residues 'a b c d', got {text!r}")
        vals = [int(s) for s in parts]
        if any(v >= p for v in vals):
            raise InputError(f"residue out of range [0, {p - 1}] in {text!r}")
        return cls(*vals, p)

    def literal(self) -> str:
        return f"{self.a} {self.b} {self.c} {self.d}"

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.p

    def trace(self) -> int:
        return (self.a + self.d) % self.p

    def is_scalar(self) -> bool:
        return self.b == 0 and self.c == 0 and self.a == self.d

    def __matmul__(self, other: Mat2) -> Mat2:
        if other.p != self.p:
            raise DomainError(f"mixed moduli {self.p} and {other.p}")
        a, b, c, d, p = self.a, self.b, self.c, self.d, self.p
        e, f, g, h = other.a, other.b, other.c, other.d
        return Mat2(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h, p)

    __mul__ = __matmul__

    def inverse(self) -> Mat2:
        p = self.p
        di = pow(self.det(), -1, p)
        return Mat2(self.d * di, -self.b * di, -self.c * di, self.a * di, p)

    def __pow__(self, k: int) -> Mat2:
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = Mat2.identity(self.p)
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def scale(self, lam: int) -> Mat2:
        return Mat2(lam * self.a, lam * self.b, lam * self.c, lam * self.d, self.p)

    def apply(self, u: int, v: int) -> tuple[int, int]:
        """Image of the column vector (u, v)."""
        p = self.p
        return ((self.a * u + self.b * v) % p, (self.c * u + self.d * v) % p)


def element_order(m: Mat2) -> int:
    """Order of m in GL_2(F_p), found by descending from the group order."""
    one = Mat2.identity(m.p)
    k = gl2_order(m.p)
    for q in _order_primes(k):
        while k % q == 0 and m ** (k // q) == one:
            k //= q
    return k


def pgl_order(m: Mat2) -> int:
    """Order of the image of m in PGL_2(F_p)."""
    k = pgl2_order(m.p)
    for q in _order_primes(k):
        while k % q == 0 and (m ** (k // q)).is_scalar():
            k //= q
    return k


def char_poly(m: Mat2) -> tuple[int, int]:
    """(t, n) such that the characteristic polynomial is X^2 - tX + n."""
    return m.trace(), m.det()


@dataclass(frozen=True, slots=True)
class ProjLine:
    """A line of F_p^2, spanned by (u, v) with first nonzero coordinate 1."""

    u: int
    v: int
    p: int

    def __post_init__(self):
        p = self.p
        u, v = self.u % p, self.v % p
        if u == 0 and v == 0:
            raise DomainError("the zero vector spans no line")
        inv = pow(u if u else v, -1, p)
        object.__setattr__(self, "u", u * inv % p)
        object.__setattr__(self, "v", v * inv % p)


def all_lines(p: int) -> list[ProjLine]:
    """The p + 1 lines, ordered (1, 0), (1, 1), ..., (1, p-1), (0, 1)."""
    p = check_modulus(p)
    return [ProjLine(1, t, p) for t in range(p)] + [ProjLine(0, 1, p)]


def act_on_line(m: Mat2, line: ProjLine) -> ProjLine:
    return ProjLine(*m.apply(line.u, line.v), m.p)


def stable_lines(m: Mat2) -> frozenset[ProjLine]:
    """Lines L with m L = L, read off from the eigenvalues of m."""
    p = m.p
    if m.is_scalar():
        return frozenset(all_lines(p))
    t, n = char_poly(m)
    root = sqrt_mod(t * t - 4 * n, p)
    if root is None:
        return frozenset()
    half = pow(2, -1, p)
    out = set()
    for lam in {(t + root) * half % p, (t - root) * half % p}:
        # kernel of m - lam: not both rows vanish since m is not scalar
        if m.b or (m.a - lam) % p:
            out.add(ProjLine(m.b, lam - m.a, p))
        else:
            out.add(ProjLine(lam - m.d, m.c, p))
    return frozenset(out)


@dataclass(frozen=True, slots=True)
class PglClass:
    """Class of a matrix modulo scalars, keyed by its normalised representative."""

    rep: Mat2

    @classmethod
    def of(cls, m: Mat2) -> PglClass:
        lead = next(x for x in m.entries if x)
        return cls(m.scale(pow(lead, -1, m.p)))

    def __mul__(self, other: PglClass) -> PglClass:
        return PglClass.of(self.rep @ other.rep)
