"""Linear algebra over GF(p): rank and Jordan types of nilpotent operators."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .arith import is_prime

__all__ = ["FpMatrix", "JordanType", "NotNilpotentError", "rank", "jordan_type"]

# entries stay below p, so products of two entries fit int64 comfortably
_MAX_P = 2**31 - 1


class NotNilpotentError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FpMatrix:
    """Dense matrix over GF(p) backed by an int64 array with entries in [0, p)."""

    modulus: int
    data: np.ndarray

    def __post_init__(self) -> None:
        if not is_prime(self.modulus) or self.modulus > _MAX_P:
            raise ValueError(f"modulus must be a prime below 2^31, got {self.modulus}")
        arr = np.asarray(self.data, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError("FpMatrix needs a 2-d array")
        object.__setattr__(self, "data", np.mod(arr, self.modulus))

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "FpMatrix":
        return cls(p, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, n: int, p: int) -> "FpMatrix":
        return cls(p, np.eye(n, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape  # type: ignore[return-value]

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        if other.modulus != self.modulus:
            raise ValueError("moduli differ")
        return FpMatrix(self.modulus, _matmul_mod(self.data, other.data, self.modulus))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return self.modulus == other.modulus and np.array_equal(self.data, other.data)

    def __repr__(self) -> str:
        return f"FpMatrix({self.rows}x{self.cols} over GF({self.modulus}))"


def _matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # float64 BLAS is exact while every partial sum stays below 2^53
    if (p - 1) ** 2 * a.shape[1] < 2**53:
        out = a.astype(np.float64) @ b.astype(np.float64)
        return np.mod(out, p).astype(np.int64)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for i in range(a.shape[1]):
        out = (out + np.outer(a[:, i], b[i, :])) % p
    return out


def rank(m: FpMatrix) -> int:
    """Rank over GF(p) by Gaussian elimination with modular inverses."""
    p = m.modulus
    a = m.data.copy()
    nrows, ncols = a.shape
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, col])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, col]), -1, p)
        a[r] = a[r] * inv % p
        below = r + 1 + np.flatnonzero(a[r + 1 :, col])
        if below.size:
            a[below] = (a[below] - np.outer(a[below, col], a[r])) % p
        r += 1
    return r


@dataclass(frozen=True)
class JordanType:
    """Multiset of Jordan block sizes, stored in decreasing order."""

    blocks: tuple[int, ...]
    ambient_dim: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "blocks", tuple(sorted(self.blocks, reverse=True)))
        if any(b <= 0 for b in self.blocks):
            raise ValueError("block sizes must be positive")
        if sum(self.blocks) != self.ambient_dim:
            raise ValueError(
                f"blocks sum to {sum(self.blocks)}, ambient dimension is {self.ambient_dim}"
            )

    def multiplicities(self) -> dict[int, int]:
        return dict(sorted(Counter(self.blocks).items(), reverse=True))

    def __add__(self, other: "JordanType") -> "JordanType":
        """Jordan type of the direct sum."""
        return JordanType(self.blocks + other.blocks, self.ambient_dim + other.ambient_dim)


PowerOracle = Callable[[int], FpMatrix]


def jordan_type(n_apply: Union[FpMatrix, PowerOracle], dim: int) -> JordanType:
    """Jordan type of a nilpotent operator from its rank profile.

    ``n_apply`` is either the operator itself or a callable returning the
    matrix of its t-th power.  The number of blocks of size >= t is
    rank(N^(t-1)) - rank(N^t).
    """
    if isinstance(n_apply, FpMatrix):
        op = n_apply
        if op.shape != (dim, dim):
            raise ValueError(f"operator shape {op.shape} does not match dim {dim}")
        cache = {1: op}

        def power(t: int) -> FpMatrix:
            if t not in cache:
                cache[t] = power(t - 1) @ op
            return cache[t]
    else:
        power = n_apply

    ranks = [dim]
    t = 0
    while ranks[-1] > 0:
        t += 1
        if t > dim:
            raise NotNilpotentError(f"rank chain stalls at {ranks[-1]} after {dim} powers")
        r = rank(power(t))
        if r >= ranks[-1]:
            raise NotNilpotentError(
                f"rank chain not strictly decreasing: rank(N^{t}) = {r} >= {ranks[-1]}"
            )
        ranks.append(r)
    ranks.append(0)
    # at_least[t] = #blocks of size >= t
    at_least = [ranks[t - 1] - ranks[t] for t in range(1, len(ranks))]
    blocks: list[int] = []
    for size in range(1, len(at_least) + 1):
        exact = at_least[size - 1] - (at_least[size] if size < len(at_least) else 0)
        blocks.extend([size] * exact)
    return JordanType(tuple(blocks), dim)
