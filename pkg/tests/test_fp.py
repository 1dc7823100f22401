import pytest
from hypothesis import given, strategies as st

from homotheties.errors import DomainError
from homotheties.fp import (
    PrimeModulus,
    Scalar,
    divisors,
    factorize,
    is_prime,
    is_quadratic_residue,
    minus_gamma_order,
    mult_order,
    primitive_root,
    smallest_nonresidue,
    sqrt_mod,
)

from conftest import SMALL_PRIMES


def brute_order(x, p):
    k, y = 1, x % p
    while y != 1:
        y = y * x % p
        k += 1
    return k


def test_is_prime_matches_trial_division():
    for n in range(-3, 3000):
        expected = n >= 2 and all(n % q for q in range(2, int(n**0.5) + 1))
        assert is_prime(n) == expected, n


def test_is_prime_large():
    assert is_prime(2**61 - 1)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7
    assert not is_prime((2**31 - 1) * (2**61 - 1))


@pytest.mark.parametrize("bad", [2, 3, 4, 9, 1, 0, -7, 5.0, True, "7"])
def test_prime_modulus_rejects(bad):
    with pytest.raises(DomainError):
        PrimeModulus(bad)


def test_prime_modulus_is_an_int():
    p = PrimeModulus(13)
    assert p == 13 and p + 1 == 14 and str(p) == "13"


def test_mult_order_examples():
    assert mult_order(1, 13) == 1
    assert mult_order(12, 13) == 2
    assert mult_order(2, 13) == 12
    assert mult_order(Scalar(2, 13)) == 12


def test_mult_order_zero_and_bare_int():
    with pytest.raises(DomainError):
        mult_order(0, 7)
    with pytest.raises(DomainError):
        mult_order(3)


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_mult_order_brute(p):
    for x in range(1, p):
        k = mult_order(x, p)
        assert k == brute_order(x, p)
        assert (p - 1) % k == 0


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_residues_match_squares(p):
    squares = {y * y % p for y in range(1, p)}
    for x in range(1, p):
        assert is_quadratic_residue(x, p) == (x in squares)


def test_residue_examples():
    assert is_quadratic_residue(2, 7)
    for p in SMALL_PRIMES:
        assert is_quadratic_residue(4, p)
        assert not is_quadratic_residue(primitive_root(p))
    with pytest.raises(DomainError):
        is_quadratic_residue(0, 11)


def test_primitive_root_examples():
    assert int(primitive_root(5)) == 2
    assert int(primitive_root(7)) == 3
    assert int(primitive_root(13)) == 2


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_primitive_root_is_smallest_generator(p):
    g = int(primitive_root(p))
    assert brute_order(g, p) == p - 1
    assert all(brute_order(x, p) < p - 1 for x in range(2, g))


def test_minus_gamma_examples():
    assert minus_gamma_order(5, 11) == 10
    assert minus_gamma_order(6, 13) == 3
    assert minus_gamma_order(8, 17) == 8
    with pytest.raises(DomainError):
        minus_gamma_order(5, 13)


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_minus_gamma_against_direct_order(p):
    g = int(primitive_root(p))
    for delta in divisors(p - 1):
        if delta % 2 and (p - 1) % (2 * delta):
            continue  # -gamma would need order 2 delta, not dividing p - 1
        gamma = pow(g, (p - 1) // delta, p)
        assert minus_gamma_order(delta, p) == brute_order(-gamma % p, p)


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_sqrt_mod(p):
    for x in range(p):
        r = sqrt_mod(x, p)
        if x and not is_quadratic_residue(x, p):
            assert r is None
        else:
            assert r * r % p == x
    n = smallest_nonresidue(p)
    assert not is_quadratic_residue(n, p)
    assert all(is_quadratic_residue(x, p) for x in range(1, n))


@given(st.integers(min_value=1, max_value=10**7))
def test_factorize_roundtrip(n):
    prod = 1
    for q, k in factorize(n):
        assert is_prime(q)
        prod *= q**k
    assert prod == n
    assert all(n % d == 0 for d in divisors(n))


@given(st.sampled_from(SMALL_PRIMES), st.integers(), st.integers())
def test_scalar_field_ops(p, x, y):
    a, b = Scalar(x, p), Scalar(y, p)
    assert 0 <= a.value < p
    assert (a * b).value == x * y % p
    assert (a + b).value == (x + y) % p
    assert (-a).value == -x % p
    if a.value:
        assert (a * a.inverse()).value == 1
    else:
        with pytest.raises(DomainError):
            a.inverse()


def test_scalar_mixed_moduli():
    with pytest.raises(DomainError):
        Scalar(1, 5) * Scalar(1, 7)
