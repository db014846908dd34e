"""Command-line entry point ``tcl``.

Exit codes: 0 verified/evaluated, 1 mathematical failure found, 2 usage or
validation error, 3 resource budget exceeded.
"""
from __future__ import annotations

import argparse
import csv
import fcntl
import io
import json
import logging
import sys
import time
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Optional, Sequence

from . import tensorrep, triplesums
from .config import Settings, load_file
from .errors import BudgetExceeded
from .theoremcheck import (
    check_budget,
    check_lemmas,
    check_proof_residues,
    check_rewrites,
    sweep,
)
from .triplesums import Params

log = logging.getLogger("triplecong")

SCHEMA_VERSION = 1

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

_PARAM_SUMS = {
    "C": triplesums.C_def,
    "C_alt": triplesums.C_alt,
    "D": triplesums.D_def,
    "D_alt": triplesums.D_alt,
}
_FG_SUMS = {
    "F": triplesums.F_direct,
    "G": triplesums.G_direct,
    "F_closed": triplesums.F_closed,
    "G_closed": triplesums.G_closed,
}
EVAL_CHOICES = ["C", "C_alt", "D", "D_alt", "f", "F", "G", "F_closed", "G_closed"]


class UsageError(Exception):
    pass


@dataclass
class Report:
    command: str
    params: dict[str, Any]
    verdict: str  # "pass" | "fail" | "evaluated"
    payload: dict[str, Any]
    rows: list[dict[str, Any]]  # flat projection for csv/text

    def to_json(self) -> str:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "params": self.params,
            "verdict": self.verdict,
            "payload": self.payload,
        }
        return json.dumps(doc, indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        if self.rows:
            fields = list(dict.fromkeys(k for row in self.rows for k in row))
            writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
            writer.writeheader()
            writer.writerows(self.rows)
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"{self.command}: {self.verdict}"]
        lines += [f"  {k} = {v}" for k, v in self.params.items() if v is not None]
        for row in self.rows:
            lines.append("  " + "  ".join(f"{k}={v}" for k, v in row.items()))
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        return {"json": self.to_json, "csv": self.to_csv, "text": self.to_text}[fmt]()

    @property
    def exit_code(self) -> int:
        return EXIT_FAIL if self.verdict == "fail" else EXIT_OK


# --- history -------------------------------------------------------------


def append_history(path: str, report: Report, duration: float) -> None:
    """Append one RunRecord as a JSON line, holding an exclusive lock."""
    record = {
        "schema_version": SCHEMA_VERSION,
        "command": report.command,
        "parameters": report.params,
        "verdict": report.verdict,
        "payload": report.payload,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "duration": round(duration, 6),
    }
    line = json.dumps(record, separators=(",", ":")) + "\n"
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "a", encoding="utf-8") as fh:
        fcntl.flock(fh, fcntl.LOCK_EX)
        try:
            fh.write(line)
        finally:
            fcntl.flock(fh, fcntl.LOCK_UN)


# --- commands ------------------------------------------------------------


def _require(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"missing required option(s): {', '.join(missing)}")


def cmd_eval(args: argparse.Namespace, cfg: Settings) -> Report:
    which = args.which
    _require(args, "c", "d", "k", "ell")
    params: dict[str, Any] = {"which": which, "p": args.p, "c": args.c, "d": args.d,
                              "k": args.k, "ell": args.ell, "exploratory": args.exploratory}
    if which in _FG_SUMS:
        value = _FG_SUMS[which](args.c, args.d, args.k, args.ell)
        residue = value % args.p if args.p is not None else None
    else:
        _require(args, "p")
        prm = Params(args.p, args.c, args.d, args.k)
        if which == "f":
            value = triplesums.f_eval(prm, args.ell, exploratory=args.exploratory)
        else:
            value = _PARAM_SUMS[which](prm, args.ell, exploratory=args.exploratory)
        residue = value % prm.p
    payload = {"which": which, "value": str(value),
               "residue": None if residue is None else residue}
    rows = [{"which": which, "value": value, "residue": "" if residue is None else residue}]
    return Report("eval", params, "evaluated", payload, rows)


def cmd_verify(args: argparse.Namespace, cfg: Settings) -> Report:
    scope = args.scope
    p_max = cfg.get("p_max")
    max_cd = cfg.get("max_cd")
    jobs = cfg.get("jobs")
    budget = cfg.get("tuple_budget")
    if p_max < 2:
        raise UsageError(f"--p-max must be >= 2, got {p_max}")
    n_tuples = check_budget(p_max, budget, args.force_budget)

    params: dict[str, Any] = {"scope": scope, "p_max": p_max}
    if scope in ("lemmas", "all"):
        params["max_cd"] = max_cd
    payload: dict[str, Any] = {"scope": scope}
    rows: list[dict[str, Any]] = []
    ok = True

    if scope in ("theorem", "all"):
        summary = sweep(p_max, jobs, budget=budget, force=args.force_budget)
        payload["theorem"] = summary.payload()
        ok &= summary.passed
        rows.append({"check": "theorem", "checked": summary.tuples_checked,
                     "failures": len(summary.failures)})
        for f in summary.failures:
            rows.append({"check": "theorem", "counterexample": json.dumps(f.to_dict())})

    checks = []
    if scope in ("rewrites", "all"):
        checks += check_rewrites(p_max)
    if scope in ("lemmas", "all"):
        checks += check_lemmas(max_cd, p_max) + check_proof_residues(p_max)
    if checks:
        payload["checks"] = [c.to_dict() for c in checks]
        for c in checks:
            ok &= c.passed
            rows.append({"check": c.name, "checked": c.checked, "failures": len(c.failures)})
            for f in c.failures[:20]:
                rows.append({"check": c.name, "counterexample": json.dumps(f)})
    log.info("verify %s over %d tuples", scope, n_tuples)
    return Report("verify", params, "pass" if ok else "fail", payload, rows)


def cmd_rep(args: argparse.Namespace, cfg: Settings) -> Report:
    _require(args, "p", "c", "d")
    p, c, d = args.p, args.c, args.d
    if args.action == "decompose":
        method = args.method
        params = {"action": "decompose", "p": p, "c": c, "d": d, "method": method}
        payload: dict[str, Any] = {}
        results = {}
        if method in ("closed", "both"):
            results["closed"] = tensorrep.decompose_closed(p, c, d)
        if method in ("rank", "both"):
            results["rank"] = tensorrep.decompose_rank(p, c, d, budget=cfg.get("dim_budget"))
        for name, spec in results.items():
            payload[name] = spec.to_dict()
        payload["expected_total_dim"] = (p + c) * (p + d)
        ok = all(s.total_dim == (p + c) * (p + d) for s in results.values())
        if method == "both":
            payload["match"] = results["closed"] == results["rank"]
            ok &= payload["match"]
        rows = [{"method": name, "blocks": " ".join(map(str, s.blocks)), "total_dim": s.total_dim}
                for name, s in results.items()]
        if not ok:
            verdict = "fail"
        else:
            verdict = "pass" if method == "both" else "evaluated"
        return Report("rep", params, verdict, payload, rows)

    _require(args, "k")
    prm = Params(p, c, d, args.k)
    report = tensorrep.check_generator(prm)
    params = {"action": "generator", "p": p, "c": c, "d": d, "k": args.k}
    payload = report.to_dict()
    payload["generator"] = tensorrep.build_generator(prm).to_dict()
    rows = [{k: v for k, v in payload.items() if k not in ("params", "generator", "vanished_terms")}]
    return Report("rep", params, "pass" if report.passed else "fail", payload, rows)


# --- argument parsing ----------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "text"], default=None)
    common.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--history", metavar="PATH",
                        help="append-only run log (default runs.jsonl; empty string disables)")
    common.add_argument("--config", metavar="PATH", help="settings file (default ./tcl.toml)")
    common.add_argument("-v", "--verbose", action="store_true")

    tup = argparse.ArgumentParser(add_help=False)
    for name in ("p", "c", "d", "k"):
        tup.add_argument(f"--{name}", type=int)

    parser = argparse.ArgumentParser(
        prog="tcl", description="Triple-binomial sums, their mod-p alternation, and Jordan-block checks."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", parents=[common, tup], help="evaluate one sum exactly")
    ev.add_argument("which", choices=EVAL_CHOICES)
    ev.add_argument("--ell", type=int)
    ev.add_argument("--exploratory", action="store_true",
                    help="allow l outside [1, c+d+1-k]")
    ev.set_defaults(func=cmd_eval)

    ve = sub.add_parser("verify", parents=[common], help="exhaustive identity and theorem checks")
    ve.add_argument("scope", choices=["theorem", "rewrites", "lemmas", "all"])
    ve.add_argument("--p-max", type=int, dest="p_max")
    ve.add_argument("--max-cd", type=int, dest="max_cd")
    ve.add_argument("--jobs", type=int)
    ve.add_argument("--force-budget", action="store_true")
    ve.set_defaults(func=cmd_verify)

    rp = sub.add_parser("rep", parents=[common, tup], help="tensor-product module checks")
    rp.add_argument("action", choices=["decompose", "generator"])
    rp.add_argument("--method", choices=["closed", "rank", "both"], default="both")
    rp.add_argument("--force-budget", action="store_true")
    rp.set_defaults(func=cmd_rep)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)

    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    start = time.perf_counter()
    try:
        flags = {k: getattr(args, k, None)
                 for k in ("format", "history", "jobs", "p_max", "max_cd")}
        if getattr(args, "force_budget", False):
            flags["dim_budget"] = sys.maxsize
        cfg = Settings(flags, file_values=load_file(args.config))
        report: Report = args.func(args, cfg)
    except BudgetExceeded as exc:
        print(f"tcl: budget exceeded: {exc} (use --force-budget)", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, ValueError, OSError) as exc:
        print(f"tcl: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    duration = time.perf_counter() - start

    text = report.render(cfg.get("format"))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"{report.command}: {report.verdict} -> {args.out}")
    else:
        sys.stdout.write(text)

    history = cfg.get("history")
    if history:
        append_history(history, report, duration)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
