"""Exact evaluators for the triple-binomial sums C, D, f, F and G.

Every sum runs over exactly the index range of its defining formula;
terms outside the support vanish through :func:`~triplecong.arith.binomial`
returning 0, so no bound is clamped by hand.  The defining and the
rewritten (signed, k-term) forms of C and D are written out separately on
purpose: their agreement is checked, never assumed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Literal

from .arith import Residue, binomial as B, is_prime

__all__ = [
    "Params",
    "SumTable",
    "C_def",
    "C_alt",
    "D_def",
    "D_alt",
    "f_eval",
    "f_table",
    "F_direct",
    "G_direct",
    "F_closed",
    "G_closed",
    "lemma_c1_check",
    "lemma_lk_check",
    "lemma_lk_applied_check",
    "lemma_lk_inner",
    "lemma_lk_value",
    "lemma_d1_check",
    "enumerate_params",
    "count_params",
]

Form = Literal["defining", "rewritten"]


def _sign(e: int) -> int:
    return -1 if e & 1 else 1


@dataclass(frozen=True, order=True)
class Params:
    """An admissible tuple: p prime and 1 <= k <= c <= d < c+d <= p."""

    p: int
    c: int
    d: int
    k: int

    def __post_init__(self) -> None:
        p, c, d, k = self.p, self.c, self.d, self.k
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if not (1 <= k <= c <= d < c + d <= p):
            raise ValueError(
                f"need 1 <= k <= c <= d < c+d <= p, got p={p} c={c} d={d} k={k}"
            )

    @property
    def ell_max(self) -> int:
        """Upper end c+d+1-k of the range of l."""
        return self.c + self.d + 1 - self.k

    @property
    def ells(self) -> range:
        return range(1, self.ell_max + 1)

    def as_dict(self) -> dict[str, int]:
        return {"p": self.p, "c": self.c, "d": self.d, "k": self.k}


def _check_ell(params: Params, ell: int, exploratory: bool) -> None:
    if not exploratory and not 1 <= ell <= params.ell_max:
        raise ValueError(
            f"ell={ell} outside [1, {params.ell_max}]; pass exploratory=True to "
            "evaluate off the strict domain"
        )


# --- defining forms -------------------------------------------------------


def C_def(params: Params, ell: int, *, exploratory: bool = False) -> int:
    _check_ell(params, ell, exploratory)
    p, c, d, k = params.p, params.c, params.d, params.k
    top = p - c - d + 2 * k - 2
    return sum(
        B(k + j - 2, k - 1) * B(c + d - k, d + j - 1) * B(top, k + j - 1 - ell)
        for j in range(1, c + 2 - k)
    )


def D_def(params: Params, ell: int, *, exploratory: bool = False) -> int:
    _check_ell(params, ell, exploratory)
    p, c, d, k = params.p, params.c, params.d, params.k
    top = p - c - d + 2 * k - 2
    return sum(
        B(d - j, k - 1) * B(c + d - k, j - 1) * B(top, p + k + j - d - 1 - ell)
        for j in range(1, d + 2 - k)
    )


# --- rewritten forms ------------------------------------------------------


def C_alt(params: Params, ell: int, *, exploratory: bool = False) -> int:
    _check_ell(params, ell, exploratory)
    p, c, d, k = params.p, params.c, params.d, params.k
    total = 0
    for r in range(k):
        term = B(c - 1 - r, k - 1 - r) * B(c + d - k, r) * B(p + k - r - 2, c - ell - r)
        total += -term if r & 1 else term
    return total


def D_alt(params: Params, ell: int, *, exploratory: bool = False) -> int:
    _check_ell(params, ell, exploratory)
    p, c, d, k = params.p, params.c, params.d, params.k
    total = 0
    for j in range(k):
        term = (
            B(d - 1 - j, k - 1 - j)
            * B(c + d - k, j)
            * B(p + k - 2 - j, ell + k - 2 - c - j)
        )
        total += -term if j & 1 else term
    return total


def f_eval(
    params: Params, ell: int, form: Form = "rewritten", *, exploratory: bool = False
) -> int:
    """f(l) = C(l) + (-1)^k D(l) in the requested form."""
    if form == "defining":
        cv, dv = C_def(params, ell, exploratory=exploratory), D_def(
            params, ell, exploratory=exploratory
        )
    elif form == "rewritten":
        cv, dv = C_alt(params, ell, exploratory=exploratory), D_alt(
            params, ell, exploratory=exploratory
        )
    else:
        raise ValueError(f"unknown form {form!r}")
    return cv + _sign(params.k) * dv


@dataclass(frozen=True)
class SumTable:
    """f(1), ..., f(c+d+1-k) with their residues mod p."""

    params: Params
    values: tuple[int, ...]
    residues: tuple[Residue, ...] = field(repr=False)

    def __post_init__(self) -> None:
        if len(self.values) != self.params.ell_max:
            raise ValueError("table length must be c+d+1-k")

    def __getitem__(self, ell: int) -> int:
        """1-based access, matching the index l."""
        if not 1 <= ell <= len(self.values):
            raise IndexError(ell)
        return self.values[ell - 1]

    def residue(self, ell: int) -> Residue:
        return self.residues[ell - 1]


def f_table(params: Params, form: Form = "rewritten") -> SumTable:
    values = tuple(f_eval(params, ell, form) for ell in params.ells)
    return SumTable(params, values, tuple(Residue.of(v, params.p) for v in values))


# --- F and G (no prime involved) -----------------------------------------


def _check_fg(c: int, d: int, k: int, ell: int) -> None:
    if not (1 <= k <= c <= d):
        raise ValueError(f"need 1 <= k <= c <= d, got c={c} d={d} k={k}")
    if not 1 <= ell <= c + d - k:
        raise ValueError(f"ell={ell} outside [1, {c + d - k}]")


def F_direct(c: int, d: int, k: int, ell: int) -> int:
    _check_fg(c, d, k, ell)
    return sum(
        _sign(r) * B(c - 1 - r, k - 1 - r) * B(c + d - k, r) * B(k - 1 - r, k + ell - c - 1)
        for r in range(k)
    )


def G_direct(c: int, d: int, k: int, ell: int) -> int:
    _check_fg(c, d, k, ell)
    return sum(
        _sign(r) * B(d - 1 - r, k - 1 - r) * B(c + d - k, r) * B(k - 1 - r, c - ell)
        for r in range(k)
    )


def F_closed(c: int, d: int, k: int, ell: int) -> int:
    _check_fg(c, d, k, ell)
    return _sign(ell - c) * B(ell - 1, c - k) * B(c + d - k - ell, d - k)


def G_closed(c: int, d: int, k: int, ell: int) -> int:
    _check_fg(c, d, k, ell)
    return _sign(ell + k - c - 1) * B(ell - 1, c - k) * B(c + d - k - ell, d - k)


# --- lemma-level identities ----------------------------------------------


def lemma_c1_check(c: int, k: int, j: int) -> bool:
    """C(c-1,k-1) - C(k-1+j,k-1) against its signed expansion, 0 <= j <= c-k."""
    if not (1 <= k <= c and 0 <= j <= c - k):
        raise ValueError(f"need 1 <= k <= c and 0 <= j <= c-k, got c={c} k={k} j={j}")
    lhs = B(c - 1, k - 1) - B(k - 1 + j, k - 1)
    rhs = sum(
        _sign(r - 1) * B(c - k - j, r) * B(c - 1 - r, k - 1 - r) for r in range(1, k)
    )
    return lhs == rhs


def _lk_double_sum(params: Params, ell: int) -> int:
    p, c, d, k = params.p, params.c, params.d, params.k
    top = p - c - d + 2 * k - 2
    total = 0
    for r in range(k):
        inner = sum(
            B(c + d - k - r, c - k - j - r) * B(top, k + j - ell)
            for j in range(ell - k, 0)
        )
        total += _sign(r + 1) * B(c - 1 - r, k - 1 - r) * B(c + d - k, r) * inner
    return total


def lemma_lk_value(params: Params, ell: int) -> int:
    """The double sum itself, for any integer l (no domain check)."""
    return _lk_double_sum(params, ell)


def lemma_lk_check(params: Params, ell: int) -> bool:
    """The double sum over r and j in [l-k, -1] vanishes, for l in [1-k, -1].

    Vacuously true when k = 1 (the l-range is empty).  Note that this range
    is where the identity is *claimed*; it does not actually hold there for
    k >= 2 (e.g. p=7, c=d=3, k=2, l=-1 gives 14).  See
    :func:`lemma_lk_applied_check` for the range where it is used.
    """
    k = params.k
    if k == 1:
        return True
    if not 1 - k <= ell <= -1:
        raise ValueError(f"ell={ell} outside [{1 - k}, -1]")
    return _lk_double_sum(params, ell) == 0


def lemma_lk_applied_check(params: Params, ell: int) -> bool:
    """Same double sum, for l in [1, c+d+1-k]: there every j lies in [1-k, -1]."""
    if not 1 <= ell <= params.ell_max:
        raise ValueError(f"ell={ell} outside [1, {params.ell_max}]")
    return _lk_double_sum(params, ell) == 0


def lemma_lk_inner(params: Params, j: int) -> int:
    """Per-j inner sum over r; vanishes for j in [1-k, -1]."""
    c, d, k = params.c, params.d, params.k
    return sum(
        _sign(r + 1) * B(c - 1 - r, k - 1 - r) * B(c + d - k, r) * B(c + d - k - r, c - k - j - r)
        for r in range(k)
    )


def lemma_d1_check(d: int, k: int, j: int) -> bool:
    """C(d-1,k-1) - C(d-1-j,k-1) against its signed expansion, 0 <= j <= k-1."""
    if not (1 <= k <= d and 0 <= j <= k - 1):
        raise ValueError(f"need 1 <= k <= d and 0 <= j <= k-1, got d={d} k={k} j={j}")
    lhs = B(d - 1, k - 1) - B(d - 1 - j, k - 1)
    rhs = sum(
        _sign(r - 1) * B(d - 1 - r, k - 1 - r) * B(j, r) for r in range(1, k)
    )
    return lhs == rhs


# --- enumeration ----------------------------------------------------------


def _raw_tuples(p_max: int) -> Iterator[tuple[int, int, int, int]]:
    for p in range(2, p_max + 1):
        if not is_prime(p):
            continue
        for c in range(1, p // 2 + 1):
            for d in range(c, p - c + 1):
                for k in range(1, c + 1):
                    yield p, c, d, k


def enumerate_params(p_max: int) -> Iterator[Params]:
    """Every admissible tuple with p <= p_max, in lexicographic (p, c, d, k) order."""
    if p_max < 2:
        raise ValueError(f"p_max must be >= 2, got {p_max}")
    for t in _raw_tuples(p_max):
        yield Params(*t)


def count_params(p_max: int) -> int:
    return sum(1 for _ in _raw_tuples(p_max))
