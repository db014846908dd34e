"""Check the alternation congruence f(l) = (-1)^(l-1) f(1) (mod p) and f(1) != 0.

A single tuple is checked by :func:`verify_theorem`; :func:`sweep` runs it over
every admissible tuple up to a bound, optionally across worker processes.
"""
from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Optional

from .arith import Residue, binomial, binomial_mod
from .errors import BudgetExceeded
from .triplesums import (
    C_alt,
    C_def,
    D_alt,
    D_def,
    F_closed,
    F_direct,
    G_closed,
    G_direct,
    Params,
    count_params,
    enumerate_params,
    f_table,
    lemma_c1_check,
    lemma_d1_check,
    lemma_lk_applied_check,
    lemma_lk_check,
    lemma_lk_inner,
)

log = logging.getLogger(__name__)

DEFAULT_TUPLE_BUDGET = 10**6


@dataclass(frozen=True)
class TheoremReport:
    params: Params
    f1_residue: Residue
    nonzero_ok: bool
    alternation_ok: bool
    first_failure_ell: Optional[int]
    closed_form_c1_ok: bool
    # cross-checks beyond the two claims themselves
    d1_zero_ok: bool = True
    forms_agree: bool = True
    fast_path_ok: bool = True
    values: tuple[int, ...] = field(default=(), repr=False)

    @property
    def passed(self) -> bool:
        return (
            self.nonzero_ok
            and self.alternation_ok
            and self.closed_form_c1_ok
            and self.d1_zero_ok
            and self.forms_agree
            and self.fast_path_ok
        )

    def to_dict(self, include_values: bool = False) -> dict[str, Any]:
        out: dict[str, Any] = {
            "params": self.params.as_dict(),
            "f1_residue": self.f1_residue.value,
            "nonzero_ok": self.nonzero_ok,
            "alternation_ok": self.alternation_ok,
            "first_failure_ell": self.first_failure_ell,
            "closed_form_c1_ok": self.closed_form_c1_ok,
            "d1_zero_ok": self.d1_zero_ok,
            "forms_agree": self.forms_agree,
            "fast_path_ok": self.fast_path_ok,
            "passed": self.passed,
        }
        if include_values:
            out["values"] = [str(v) for v in self.values]
            out["residues_signed"] = [
                Residue.of(v, self.params.p).signed() for v in self.values
            ]
        return out


def c1_closed_residue(params: Params) -> Residue:
    """(-1)^(k-1) C(c+d-k, k-1) C(p-1, c-k) mod p, the predicted residue of C(1)."""
    p, c, d, k = params.p, params.c, params.d, params.k
    v = binomial(c + d - k, k - 1) * binomial(p - 1, c - k)
    return Residue.of(-v if (k - 1) & 1 else v, p)


def f_residues_fast(params: Params) -> list[Residue]:
    """f(l) mod p for every l, using Lucas binomials on the rewritten forms.

    All upper indices in the rewritten forms are nonnegative; a negative
    lower index contributes zero.
    """
    p, c, d, k = params.p, params.c, params.d, params.k

    def bm(n: int, r: int) -> int:
        return 0 if r < 0 else binomial_mod(n, r, p).value

    out = []
    for ell in params.ells:
        cv = dv = 0
        for r in range(k):
            t = bm(c - 1 - r, k - 1 - r) * bm(c + d - k, r) * bm(p + k - r - 2, c - ell - r)
            cv += -t if r & 1 else t
        for j in range(k):
            t = bm(d - 1 - j, k - 1 - j) * bm(c + d - k, j) * bm(
                p + k - 2 - j, ell + k - 2 - c - j
            )
            dv += -t if j & 1 else t
        out.append(Residue.of(cv + (-dv if k & 1 else dv), p))
    return out


def verify_theorem(params: Params) -> TheoremReport:
    p = params.p
    table = f_table(params, "rewritten")
    f1 = table.residue(1)

    first_failure = None
    for ell in params.ells:
        expected = f1 if ell % 2 == 1 else -f1
        if table.residue(ell) != expected:
            first_failure = ell
            break

    defining = f_table(params, "defining")
    fast = f_residues_fast(params)

    return TheoremReport(
        params=params,
        f1_residue=f1,
        nonzero_ok=bool(f1),
        alternation_ok=first_failure is None,
        first_failure_ell=first_failure,
        closed_form_c1_ok=Residue.of(C_alt(params, 1), p) == c1_closed_residue(params),
        d1_zero_ok=D_def(params, 1) == 0,
        forms_agree=defining.values == table.values,
        fast_path_ok=list(table.residues) == fast,
        values=table.values,
    )


@dataclass
class SweepSummary:
    p_max: int
    tuples_checked: int
    failures: list[TheoremReport]
    wall_time: float

    @property
    def passed(self) -> bool:
        return not self.failures

    def payload(self) -> dict[str, Any]:
        """Deterministic content only (no timing)."""
        return {
            "p_max": self.p_max,
            "tuples_checked": self.tuples_checked,
            "failure_count": len(self.failures),
            "failures": [r.to_dict(include_values=True) for r in self.failures],
        }


def check_budget(p_max: int, budget: int = DEFAULT_TUPLE_BUDGET, force: bool = False) -> int:
    n = count_params(p_max)
    if n > budget and not force:
        raise BudgetExceeded(f"sweep up to p={p_max}", n, budget)
    return n


def sweep(
    p_max: int,
    jobs: int = 1,
    *,
    budget: int = DEFAULT_TUPLE_BUDGET,
    force: bool = False,
) -> SweepSummary:
    """Verify every admissible tuple with p <= p_max.

    Reports come back in enumeration order whatever ``jobs`` is, so the
    summary is identical for any worker count.
    """
    if p_max < 2:
        raise ValueError(f"p_max must be >= 2, got {p_max}")
    n = check_budget(p_max, budget, force)
    start = time.perf_counter()
    tuples = list(enumerate_params(p_max))
    if jobs <= 1:
        reports = [verify_theorem(t) for t in tuples]
    else:
        chunk = max(1, n // (jobs * 8))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(verify_theorem, tuples, chunksize=chunk))
    failures = [r for r in reports if not r.passed]
    elapsed = time.perf_counter() - start
    log.info("checked %d tuples up to p=%d in %.2fs, %d failures", n, p_max, elapsed, len(failures))
    return SweepSummary(p_max, len(reports), failures, elapsed)


# --- identity grids -------------------------------------------------------


_INDEX_KEYS = frozenset({"p", "c", "d", "k", "j", "ell"})


def _jsonable(key: str, v: Any) -> Any:
    # sum values travel as decimal strings; small indices stay numbers
    if key not in _INDEX_KEYS and isinstance(v, int) and not isinstance(v, bool):
        return str(v)
    return v


@dataclass
class CheckResult:
    """Outcome of one identity checked over a grid of arguments."""

    name: str
    checked: int = 0
    failures: list[dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, **case: Any) -> None:
        self.checked += 1
        if not ok:
            self.failures.append({k: _jsonable(k, v) for k, v in case.items()})

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "checked": self.checked,
            "failure_count": len(self.failures),
            "failures": self.failures,
        }


def check_rewrites(p_max: int) -> list[CheckResult]:
    """C_def == C_alt and D_def == D_alt exactly, every tuple and every strict l."""
    c_res, d_res = CheckResult("C_def=C_alt"), CheckResult("D_def=D_alt")
    for prm in enumerate_params(p_max):
        for ell in prm.ells:
            a, b = C_def(prm, ell), C_alt(prm, ell)
            c_res.record(a == b, **prm.as_dict(), ell=ell, defining=a, rewritten=b)
            a, b = D_def(prm, ell), D_alt(prm, ell)
            d_res.record(a == b, **prm.as_dict(), ell=ell, defining=a, rewritten=b)
    return [c_res, d_res]


def check_proof_residues(p_max: int) -> list[CheckResult]:
    """D(1) = 0 and the predicted residue of C(1), for every tuple."""
    d1, c1 = CheckResult("D_def(1)=0"), CheckResult("C(1) residue")
    for prm in enumerate_params(p_max):
        v = D_def(prm, 1)
        d1.record(v == 0, **prm.as_dict(), value=v)
        got, want = Residue.of(C_def(prm, 1), prm.p), c1_closed_residue(prm)
        c1.record(got == want, **prm.as_dict(), got=got.value, want=want.value)
    return [d1, c1]


def check_lemmas(max_cd: int, p_max: int) -> list[CheckResult]:
    """Every lemma-level identity on its full precondition grid."""
    c1 = CheckResult("lemma_c1")
    for c in range(1, max_cd + 1):
        for k in range(1, c + 1):
            for j in range(c - k + 1):
                c1.record(lemma_c1_check(c, k, j), c=c, k=k, j=j)

    d1 = CheckResult("lemma_d1")
    for d in range(1, max_cd + 1):
        for k in range(1, d + 1):
            for j in range(k):
                d1.record(lemma_d1_check(d, k, j), d=d, k=k, j=j)

    lk = CheckResult("lemma_lk")
    for prm in enumerate_params(p_max):
        if prm.c > max_cd or prm.d > max_cd:
            continue
        if prm.k == 1:
            lk.record(lemma_lk_check(prm, -1), **prm.as_dict(), ell=None)
        for ell in range(1 - prm.k, 0):
            lk.record(lemma_lk_check(prm, ell), **prm.as_dict(), ell=ell)

    # where the proof of the C rewrite actually uses the identity
    lk_applied, lk_inner = CheckResult("lemma_lk_applied"), CheckResult("lemma_lk_inner")
    for prm in enumerate_params(p_max):
        if prm.c > max_cd or prm.d > max_cd:
            continue
        for ell in prm.ells:
            lk_applied.record(lemma_lk_applied_check(prm, ell), **prm.as_dict(), ell=ell)
        for j in range(1 - prm.k, 0):
            v = lemma_lk_inner(prm, j)
            lk_inner.record(v == 0, **prm.as_dict(), j=j, value=v)

    f_eq, g_eq, cancel = CheckResult("F_direct=F_closed"), CheckResult("G_direct=G_closed"), CheckResult("F+(-1)^k G=0")
    for c in range(1, max_cd + 1):
        for d in range(c, max_cd + 1):
            for k in range(1, c + 1):
                for ell in range(1, c + d - k + 1):
                    fd, fc = F_direct(c, d, k, ell), F_closed(c, d, k, ell)
                    gd, gc = G_direct(c, d, k, ell), G_closed(c, d, k, ell)
                    f_eq.record(fd == fc, c=c, d=d, k=k, ell=ell, direct=fd, closed=fc)
                    g_eq.record(gd == gc, c=c, d=d, k=k, ell=ell, direct=gd, closed=gc)
                    s = fc + (-gc if k & 1 else gc)
                    cancel.record(s == 0, c=c, d=d, k=k, ell=ell, value=s)
    return [c1, d1, lk, lk_applied, lk_inner, f_eq, g_eq, cancel]
