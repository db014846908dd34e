"""The module V_{p+c} (x) V_{p+d} over GF(p) and the generator y_{c+d+1-k}.

Vectors are sparse maps on the grid basis v_{i,j} (1 <= i <= m, 1 <= j <= n),
on which Delta = g - 1 acts by v_{i,j} -> v_{i-1,j} + v_{i,j-1}, with any
index 0 meaning zero.  The group itself is never built; everything depends
only on this operator.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Iterable, Mapping, Optional

import numpy as np

from .arith import Residue, binomial
from .errors import BudgetExceeded
from .gfp import FpMatrix, JordanType, jordan_type, rank
from .triplesums import Params, f_eval

__all__ = [
    "TensorVector",
    "DecompositionSpec",
    "GeneratorReport",
    "basis_vector",
    "delta_apply",
    "delta_power",
    "norman_entry",
    "norman_matrix",
    "generator_terms",
    "build_generator",
    "alt_vector",
    "check_generator",
    "decompose_closed",
    "decompose_rank",
    "tensor_jordan_type",
    "nice_delta_matrix",
    "DEFAULT_DIM_BUDGET",
]

DEFAULT_DIM_BUDGET = 4096

Pos = tuple[int, int]


@dataclass(frozen=True)
class TensorVector:
    modulus: int
    m: int
    n: int
    coeffs: Mapping[Pos, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        p = self.modulus
        clean: dict[Pos, int] = {}
        for (i, j), v in self.coeffs.items():
            if not (1 <= i <= self.m and 1 <= j <= self.n):
                raise ValueError(f"position ({i},{j}) outside {self.m}x{self.n} grid")
            v %= p
            if v:
                clean[(i, j)] = v
        object.__setattr__(self, "coeffs", MappingProxyType(dict(sorted(clean.items()))))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TensorVector):
            return NotImplemented
        return (self.modulus, self.m, self.n, dict(self.coeffs)) == (
            other.modulus,
            other.m,
            other.n,
            dict(other.coeffs),
        )

    def __hash__(self) -> int:
        return hash((self.modulus, self.m, self.n, tuple(self.coeffs.items())))

    def _like(self, coeffs: Mapping[Pos, int]) -> "TensorVector":
        return TensorVector(self.modulus, self.m, self.n, coeffs)

    def __add__(self, other: "TensorVector") -> "TensorVector":
        if (other.modulus, other.m, other.n) != (self.modulus, self.m, self.n):
            raise ValueError("vectors live in different spaces")
        out = Counter(self.coeffs)
        for pos, v in other.coeffs.items():
            out[pos] += v
        return self._like(out)

    def __neg__(self) -> "TensorVector":
        return self._like({pos: -v for pos, v in self.coeffs.items()})

    def __sub__(self, other: "TensorVector") -> "TensorVector":
        return self + (-other)

    def __rmul__(self, scalar: "int | Residue") -> "TensorVector":
        s = int(scalar)
        return self._like({pos: s * v for pos, v in self.coeffs.items()})

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, pos: Pos) -> int:
        return self.coeffs.get(pos, 0)

    @property
    def support(self) -> list[Pos]:
        return list(self.coeffs)

    def antidiagonals(self) -> set[int]:
        return {i + j for i, j in self.coeffs}

    def dense(self) -> np.ndarray:
        """Coordinates in row-major grid order (index (i-1)*n + (j-1))."""
        out = np.zeros(self.m * self.n, dtype=np.int64)
        for (i, j), v in self.coeffs.items():
            out[(i - 1) * self.n + (j - 1)] = v
        return out

    def to_dict(self) -> dict[str, Any]:
        return {
            "modulus": self.modulus,
            "m": self.m,
            "n": self.n,
            "terms": [[i, j, v] for (i, j), v in self.coeffs.items()],
        }


def basis_vector(p: int, m: int, n: int, i: int, j: int) -> TensorVector:
    return TensorVector(p, m, n, {(i, j): 1})


def delta_apply(v: TensorVector) -> TensorVector:
    out: Counter[Pos] = Counter()
    for (i, j), a in v.coeffs.items():
        if i > 1:
            out[(i - 1, j)] += a
        if j > 1:
            out[(i, j - 1)] += a
    return v._like(out)


def delta_power(v: TensorVector, t: int) -> TensorVector:
    if t < 0:
        raise ValueError(f"power must be >= 0, got {t}")
    for _ in range(t):
        if not v:
            break
        v = delta_apply(v)
    return v


# --- Norman's matrix and the generator -----------------------------------


def norman_entry(c: int, d: int, p: int, i: int, j: int) -> Residue:
    """(i, j)-entry C(c-i, c+d-i-j+1) C(i+j-2, i-1) of B(c, d; p), reduced mod p."""
    if not (1 <= i <= p and 1 <= j <= p):
        raise ValueError(f"entry ({i},{j}) outside the {p}x{p} matrix")
    return Residue.of(binomial(c - i, c + d - i - j + 1) * binomial(i + j - 2, i - 1), p)


def norman_matrix(c: int, d: int, p: int) -> FpMatrix:
    return FpMatrix(
        p,
        np.array(
            [[norman_entry(c, d, p, i, j).value for j in range(1, p + 1)] for i in range(1, p + 1)],
            dtype=np.int64,
        ),
    )


def generator_terms(params: Params) -> list[tuple[Pos, int]]:
    """Exact integer coefficients of y_{c+d+1-k}, before reduction mod p.

    The first c+1-k terms come from the first sum, the remaining d+1-k from
    the signed second sum.
    """
    p, c, d, k = params.p, params.c, params.d, params.k
    terms = []
    for j in range(1, c + 2 - k):
        coeff = binomial(k + j - 2, k - 1) * binomial(c + d - k, d + j - 1)
        terms.append(((p + k + j - 1, p + 1 - j), coeff))
    sign = -1 if k & 1 else 1
    for j in range(1, d + 2 - k):
        coeff = sign * binomial(d - j, k - 1) * binomial(c + d - k, j - 1)
        terms.append(((p + k + j - d - 1, p + d + 1 - j), coeff))
    return terms


def build_generator(params: Params) -> TensorVector:
    p, c, d = params.p, params.c, params.d
    coeffs: Counter[Pos] = Counter()
    for pos, coeff in generator_terms(params):
        coeffs[pos] += coeff
    return TensorVector(p, p + c, p + d, coeffs)


def alt_vector(params: Params) -> TensorVector:
    """sum over l of (-1)^(l-1) v_{l, c+d+2-k-l}, l = 1..c+d+1-k."""
    p, c, d, k = params.p, params.c, params.d, params.k
    top = c + d + 2 - k
    return TensorVector(
        p, p + c, p + d, {(ell, top - ell): (1 if ell % 2 else -1) for ell in params.ells}
    )


def _lambda(c: int, d: int, k: int) -> int:
    return c + d - 2 * k + 1


@dataclass(frozen=True)
class GeneratorReport:
    params: Params
    f1_residue: int
    expected_dim: int
    image_matches: bool  # Delta^(2p-lambda-1) y == f(1) * alt_vector
    annihilated: bool  # Delta^(2p-lambda) y == 0
    last_nonzero: bool  # Delta^(2p-lambda-1) y != 0
    span_dim: int
    vanished_terms: tuple[Pos, ...]
    alt_annihilated: bool
    note: str = (
        "target anti-diagonal taken as v_{l, c+d+2-k-l}; Delta lowers i+j by one, "
        "so 2p+k - (2p-lambda_k-1) = c+d+2-k"
    )

    @property
    def span_ok(self) -> bool:
        return self.span_dim == self.expected_dim

    @property
    def passed(self) -> bool:
        return (
            self.image_matches
            and self.annihilated
            and self.last_nonzero
            and self.span_ok
            and self.alt_annihilated
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "params": self.params.as_dict(),
            "f1_residue": self.f1_residue,
            "expected_dim": self.expected_dim,
            "image_matches": self.image_matches,
            "annihilated": self.annihilated,
            "last_nonzero": self.last_nonzero,
            "span_dim": self.span_dim,
            "span_ok": self.span_ok,
            "alt_annihilated": self.alt_annihilated,
            "vanished_terms": [list(t) for t in self.vanished_terms],
            "passed": self.passed,
            "note": self.note,
        }


def _cyclic_span_dim(y: TensorVector, limit: int) -> int:
    rows = []
    v = y
    for _ in range(limit + 1):
        if not v:
            break
        rows.append(v.dense())
        v = delta_apply(v)
    if not rows:
        return 0
    return rank(FpMatrix(y.modulus, np.vstack(rows)))


def check_generator(params: Params, f1: Optional[int] = None) -> GeneratorReport:
    """Check that y_{c+d+1-k} generates a cyclic summand of dimension 2p - lambda_k.

    ``f1`` defaults to f(1) computed exactly by the sum evaluators.
    """
    p, c, d, k = params.p, params.c, params.d, params.k
    dim = 2 * p - _lambda(c, d, k)
    if f1 is None:
        f1 = f_eval(params, 1, "rewritten")
    f1 %= p

    y = build_generator(params)
    vanished = tuple(pos for pos, coeff in generator_terms(params) if coeff % p == 0)
    top = delta_power(y, dim - 1)
    alt = alt_vector(params)
    return GeneratorReport(
        params=params,
        f1_residue=f1,
        expected_dim=dim,
        image_matches=top == f1 * alt,
        annihilated=not delta_apply(top),
        last_nonzero=bool(top),
        span_dim=_cyclic_span_dim(y, y.m + y.n),
        vanished_terms=vanished,
        alt_annihilated=not delta_apply(alt),
    )


# --- decompositions -------------------------------------------------------


@dataclass(frozen=True)
class DecompositionSpec:
    """Summands V_dim with multiplicity, sorted by decreasing dimension."""

    summands: tuple[tuple[int, int], ...]

    @classmethod
    def from_blocks(cls, blocks: Iterable[int]) -> "DecompositionSpec":
        counts = Counter(b for b in blocks)
        return cls(tuple(sorted(((dim, mult) for dim, mult in counts.items() if mult), reverse=True)))

    @property
    def blocks(self) -> tuple[int, ...]:
        return tuple(dim for dim, mult in self.summands for _ in range(mult))

    @property
    def total_dim(self) -> int:
        return sum(dim * mult for dim, mult in self.summands)

    def multiplicity(self, dim: int) -> int:
        return dict(self.summands).get(dim, 0)

    def to_dict(self) -> dict[str, Any]:
        return {
            "summands": [{"dim": dim, "mult": mult} for dim, mult in self.summands],
            "blocks": list(self.blocks),
            "total_dim": self.total_dim,
        }


def _check_pcd(p: int, c: int, d: int) -> None:
    Params(p, c, d, 1)  # validates prime and 1 <= c <= d < c+d <= p


def decompose_closed(p: int, c: int, d: int) -> DecompositionSpec:
    _check_pcd(p, c, d)
    lams = [_lambda(c, d, k) for k in range(1, c + 1)]
    blocks = (
        [2 * p + lam for lam in lams]
        + [2 * p] * (d - c)
        + [2 * p - lam for lam in lams]
        + [p] * (p - c - d)
        + lams
    )
    return DecompositionSpec.from_blocks(blocks)


def _jordan_block(size: int) -> np.ndarray:
    """Full Jordan block with eigenvalue 1: g v_1 = v_1, g v_i = v_{i-1} + v_i."""
    return np.eye(size, dtype=np.int64) + np.eye(size, k=1, dtype=np.int64)


def tensor_jordan_type(
    m: int, n: int, p: int, *, budget: int = DEFAULT_DIM_BUDGET
) -> JordanType:
    """Jordan type of g (x) g - 1 on V_m (x) V_n, built as a Kronecker product.

    This uses the standard tensor basis, not the grid basis, so it does not
    depend on the shape of :func:`delta_apply`.
    """
    dim = m * n
    if dim > budget:
        raise BudgetExceeded(f"V_{m} (x) V_{n}", dim, budget)
    g = np.kron(_jordan_block(m), _jordan_block(n)) - np.eye(dim, dtype=np.int64)
    return jordan_type(FpMatrix(p, g), dim)


def nice_delta_matrix(p: int, m: int, n: int) -> FpMatrix:
    """Matrix of Delta in the grid basis, columns in row-major grid order."""
    dim = m * n
    a = np.zeros((dim, dim), dtype=np.int64)
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            col = (i - 1) * n + (j - 1)
            if i > 1:
                a[(i - 2) * n + (j - 1), col] += 1
            if j > 1:
                a[(i - 1) * n + (j - 2), col] += 1
    return FpMatrix(p, a)


def decompose_rank(
    p: int, c: int, d: int, *, budget: int = DEFAULT_DIM_BUDGET
) -> DecompositionSpec:
    _check_pcd(p, c, d)
    jt = tensor_jordan_type(p + c, p + d, p, budget=budget)
    return DecompositionSpec.from_blocks(jt.blocks)
