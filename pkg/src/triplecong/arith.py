"""Exact integer arithmetic: generalized binomials, residues mod p, primality.

Python ints are already arbitrary precision, so exact values are plain ``int``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb as _comb

import gmpy2

__all__ = ["Residue", "binomial", "binomial_mod", "is_prime", "primes_upto"]

# math.comb on 3.10 is quadratic for huge arguments; GMP is not
_GMP_THRESHOLD = 2000


def comb(n: int, k: int) -> int:
    if n > _GMP_THRESHOLD:
        return int(gmpy2.comb(n, k))
    return _comb(n, k)


def binomial(n: int, k: int) -> int:
    """Generalized binomial coefficient, total on all integer pairs.

    Zero for ``k < 0``.  For ``k >= 0`` this is the falling factorial
    ``n(n-1)...(n-k+1)/k!``, so negative ``n`` is allowed and
    ``0 <= n < k`` gives zero.

    >>> binomial(4, 2), binomial(-3, 1), binomial(1, -1)
    (6, -3, 0)
    """
    if k < 0:
        return 0
    if n >= 0:
        return comb(n, k)
    # upper negation: C(n, k) = (-1)^k C(k - n - 1, k)
    value = comb(k - n - 1, k)
    return -value if k & 1 else value


@lru_cache(maxsize=64)
def _small_table(p: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(comb(a, b) % p for b in range(p)) for a in range(p))


def binomial_mod(n: int, k: int, p: int) -> "Residue":
    """``binomial(n, k) mod p`` via Lucas' theorem (base-p digits).

    Only nonnegative arguments are accepted; for a negative upper index
    compute :func:`binomial` exactly and reduce.
    """
    if n < 0 or k < 0:
        raise ValueError(f"binomial_mod needs n, k >= 0, got n={n}, k={k}")
    if k > n:
        return Residue(0, p)
    table = _small_table(p) if p <= 128 else None
    acc = 1
    while k:
        ni, ki = n % p, k % p
        if ki > ni:
            return Residue(0, p)
        acc = acc * (table[ni][ki] if table is not None else comb(ni, ki)) % p
        n //= p
        k //= p
    return Residue(acc, p)


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for every n < 3.3e24 (covers 2**64)."""
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


@lru_cache(maxsize=256)
def _prime_modulus(m: int) -> bool:
    return is_prime(m)


def primes_upto(limit: int) -> list[int]:
    return [q for q in range(2, limit + 1) if is_prime(q)]


@dataclass(frozen=True)
class Residue:
    """An element of GF(p), stored as its representative in ``[0, p)``."""

    value: int
    modulus: int

    def __post_init__(self) -> None:
        if not _prime_modulus(self.modulus):
            raise ValueError(f"modulus must be prime, got {self.modulus}")
        if not 0 <= self.value < self.modulus:
            object.__setattr__(self, "value", self.value % self.modulus)

    @classmethod
    def of(cls, value: int, modulus: int) -> "Residue":
        return cls(value % modulus, modulus)

    def _other(self, other: "Residue | int") -> int:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ValueError(
                    f"residues of different moduli: {self.modulus} vs {other.modulus}"
                )
            return other.value
        if isinstance(other, int):
            return other
        raise TypeError(f"cannot combine Residue with {type(other).__name__}")

    def __add__(self, other: "Residue | int") -> "Residue":
        return Residue.of(self.value + self._other(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other: "Residue | int") -> "Residue":
        return Residue.of(self.value - self._other(other), self.modulus)

    def __rsub__(self, other: int) -> "Residue":
        return Residue.of(self._other(other) - self.value, self.modulus)

    def __mul__(self, other: "Residue | int") -> "Residue":
        return Residue.of(self.value * self._other(other), self.modulus)

    __rmul__ = __mul__

    def __neg__(self) -> "Residue":
        return Residue.of(-self.value, self.modulus)

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def signed(self) -> int:
        """Representative of least absolute value (for display only)."""
        v = self.value
        return v - self.modulus if 2 * v > self.modulus else v

    def __repr__(self) -> str:
        return f"Residue({self.value} mod {self.modulus})"
