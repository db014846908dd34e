import random

import pytest
from hypothesis import given, settings, strategies as st

from triplecong.arith import Residue, binomial, binomial_mod, is_prime, primes_upto

import oracle


@pytest.mark.parametrize(
    "n, k, expected",
    [(4, 2, 6), (-7, 0, 1), (1, -1, 0), (-3, 1, -3), (0, 0, 1), (3, 5, 0), (-1, 5, -1)],
)
def test_binomial_examples(n, k, expected):
    assert binomial(n, k) == expected


def test_upper_negation_example():
    assert binomial(-3, 1) == (-1) ** 1 * binomial(3, 1)


def test_matches_fraction_oracle():
    for n in range(-30, 31):
        for k in range(-3, 31):
            assert binomial(n, k) == oracle.binom(n, k), (n, k)


def test_pascal_rule():
    for n in range(-60, 61):
        for k in range(0, 61):
            assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)


def test_upper_negation():
    for n in range(41):
        for k in range(41):
            assert binomial(-n, k) == (-1) ** k * binomial(n + k - 1, k)


def test_vandermonde():
    for m in range(26):
        for q in range(26):
            for s in range(m + q + 1):
                lhs = sum(binomial(m, j) * binomial(q, s - j) for j in range(0, s + 1))
                assert lhs == binomial(m + q, s)


def test_symmetry():
    for n in range(61):
        for k in range(n + 1):
            assert binomial(n, k) == binomial(n, n - k)


@given(st.integers(-10**4, 10**4), st.integers(0, 40))
def test_falling_factorial_definition(n, k):
    num = 1
    for i in range(k):
        num *= n - i
    den = 1
    for i in range(2, k + 1):
        den *= i
    assert num % den == 0
    assert binomial(n, k) == num // den


@pytest.mark.parametrize("n, k, p, expected", [(4, 1, 5, 4), (7, 1, 7, 0), (10, 3, 7, 120 % 7)])
def test_binomial_mod_examples(n, k, p, expected):
    assert binomial_mod(n, k, p) == Residue(expected, p)


def test_binomial_mod_rejects_negative():
    with pytest.raises(ValueError):
        binomial_mod(-1, 2, 5)
    with pytest.raises(ValueError):
        binomial_mod(4, -1, 5)


def test_binomial_mod_near_2p():
    rng = random.Random(7)
    for _ in range(2000):
        p = rng.choice([2, 3, 5, 7, 11, 13, 17, 19, 23])
        c = rng.randint(1, p)
        k = rng.randint(0, c)
        n = 2 * p - 1
        assert binomial_mod(n, c - k, p).value == binomial(n, c - k) % p


@settings(deadline=None, max_examples=60)
@given(st.integers(0, 10**5), st.integers(0, 10**5), st.sampled_from([2, 3, 5, 7, 11, 13, 101, 1009]))
def test_binomial_mod_property(n, k, p):
    assert binomial_mod(n, k, p).value == binomial(n, k) % p


def test_is_prime_examples():
    assert is_prime(5)
    assert not is_prime(1)
    assert not is_prime(91)


def test_is_prime_against_trial_division():
    for n in range(1, 5000):
        assert is_prime(n) == oracle.is_prime_trial(n), n


@pytest.mark.parametrize(
    "n, expected",
    [
        (2**61 - 1, True),
        (2**64 - 59, True),  # largest prime below 2^64
        (3215031751, False),  # strong pseudoprime to bases 2, 3, 5, 7
        (3825123056546413051, False),  # strong pseudoprime to bases up to 23
        (4294967297, False),  # F5 = 641 * 6700417
    ],
)
def test_is_prime_large(n, expected):
    assert is_prime(n) is expected


def test_primes_upto():
    assert primes_upto(23) == [2, 3, 5, 7, 11, 13, 17, 19, 23]


class TestResidue:
    def test_normalizes(self):
        assert Residue(-1, 5).value == 4
        assert Residue.of(12, 5) == Residue(2, 5)

    def test_arithmetic(self):
        a, b = Residue(3, 7), Residue(5, 7)
        assert a + b == Residue(1, 7)
        assert a - b == Residue(5, 7)
        assert a * b == Residue(1, 7)
        assert -a == Residue(4, 7)
        assert 2 * a == Residue(6, 7)

    def test_mixed_moduli_rejected(self):
        with pytest.raises(ValueError):
            Residue(1, 5) + Residue(1, 7)

    def test_modulus_must_be_prime(self):
        with pytest.raises(ValueError):
            Residue(1, 6)

    def test_signed(self):
        assert Residue(4, 5).signed() == -1
        assert Residue(2, 5).signed() == 2
        assert not Residue(0, 5)
