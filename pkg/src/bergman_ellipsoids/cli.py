"""Command-line interface.

Exit codes: 0 success, 1 a verification failed, 2 usage or configuration
error (nothing is written in that case).  Output layouts are documented in
``docs/output_schema.md``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from .commutators import decay_profiles, eigenvalue_arrays
from .config import RunConfig, parse_shells
from .domain import ConfigError, DomainSpec, NormTable, load_domain, monte_carlo_log_norm
from .ideals import Box, MonomialIdeal, box_cover, load_ideal, staircase_complement
from .indices import BudgetError, ball_array
from .quotient import quotient_self_commutator_diagnostic
from .resolution import build_complex, check_chain_condition, index_certificate, verify_exactness

SCHEMA_VERSION = 1
GLOBAL_CHAIN_MAX_N = 3

COMMANDS = (
    "norms",
    "oracle",
    "commutators",
    "decay",
    "staircase",
    "boxes",
    "resolve",
    "verify",
    "certificate",
    "report",
)


@dataclass
class Result:
    document: dict
    columns: list[str]
    rows: list[list] = field(default_factory=list)
    exit_code: int = 0


def _fmt(value) -> str:
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (np.integer,)):
        return str(int(value))
    return str(value)


def render(result: Result, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(result.document, indent=2, allow_nan=True) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(result.columns)
    for row in result.rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _require_domain(cfg: RunConfig) -> DomainSpec:
    if cfg.domain is None:
        raise ConfigError("--domain: required for this command")
    return load_domain(cfg.domain)


def _require_ideal(cfg: RunConfig, m: int | None = None) -> MonomialIdeal:
    if cfg.ideal is None:
        raise ConfigError("--ideal: required for this command")
    return load_ideal(cfg.ideal, m)


def _header(command: str, **extra) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, **extra}


def cmd_norms(cfg: RunConfig) -> Result:
    spec = _require_domain(cfg)
    table = NormTable(spec, cfg.truncation)
    names = spec.variable_names()
    rows = [list(n) + [value] for n, value in table.rows()]
    doc = _header(
        "norms",
        domain=spec.to_dict(),
        truncation=cfg.truncation,
        variables=names,
        rows=[{"n": list(n), "log_omega": value} for n, value in table.rows()],
    )
    return Result(doc, names + ["log_omega"], rows)


def cmd_oracle(cfg: RunConfig) -> Result:
    spec = _require_domain(cfg)
    table = NormTable(spec, cfg.truncation)
    names = spec.variable_names()
    rows, records = [], []
    worst = 0.0
    for i, (n, formula) in enumerate(table.rows()):
        # independent stream per multi-index, fixed by (seed, position)
        row_seed = int(np.random.SeedSequence([cfg.seed, i]).generate_state(1)[0])
        try:
            estimate, stderr = monte_carlo_log_norm(spec, n, cfg.samples, row_seed)
            estimate, stderr = float(estimate), float(stderr)
            z = (estimate - formula) / stderr if stderr > 0 else math.inf
        except ArithmeticError:
            estimate, stderr, z = math.nan, math.inf, math.inf
        worst = max(worst, abs(z))
        rows.append(list(n) + [formula, estimate, stderr, z])
        records.append(
            {
                "n": list(n),
                "log_omega_formula": formula,
                "log_omega_mc": estimate,
                "stderr": stderr,
                "z_score": z,
            }
        )
    passed = bool(worst <= cfg.tolerance)
    doc = _header(
        "oracle",
        domain=spec.to_dict(),
        truncation=cfg.truncation,
        samples=cfg.samples,
        seed=cfg.seed,
        tolerance=cfg.tolerance,
        passed=passed,
        rows=records,
    )
    columns = names + ["log_omega_formula", "log_omega_mc", "stderr", "z_score"]
    return Result(doc, columns, rows, 0 if passed else 1)


def cmd_commutators(cfg: RunConfig) -> Result:
    spec = _require_domain(cfg)
    names = spec.variable_names()
    idx = ball_array(spec.m, cfg.truncation)
    rows, records = [], []
    for var in range(spec.m):
        lp, lpp, lam = eigenvalue_arrays(spec, idx, var)
        for n, a, b, c in zip(idx, lp, lpp, lam):
            n = [int(v) for v in n]
            rows.append(n + [names[var], float(a), float(b), float(c)])
            records.append(
                {
                    "n": n,
                    "var": names[var],
                    "lambda_prime": float(a),
                    "lambda_double_prime": float(b),
                    "lambda": float(c),
                }
            )
    doc = _header("commutators", domain=spec.to_dict(), truncation=cfg.truncation, rows=records)
    return Result(doc, names + ["var", "lambda_prime", "lambda_double_prime", "lambda"], rows)


def cmd_decay(cfg: RunConfig) -> Result:
    spec = _require_domain(cfg)
    names = spec.variable_names()
    profiles = decay_profiles(spec, cfg.shells)
    rows = [[N, names[p.var], value] for p in profiles for N, value in p.shells]
    doc = _header(
        "decay",
        domain=spec.to_dict(),
        shells=list(cfg.shells),
        profiles=[
            {"var": names[p.var], "shells": [{"N": N, "max_abs_lambda": v} for N, v in p.shells]}
            for p in profiles
        ],
    )
    return Result(doc, ["shell", "var", "max_abs_lambda"], rows)


def cmd_staircase(cfg: RunConfig) -> Result:
    ideal = _require_ideal(cfg)
    points = staircase_complement(ideal, cfg.truncation)
    doc = _header(
        "staircase", ideal=ideal.to_dict(), truncation=cfg.truncation, points=[list(p) for p in points]
    )
    return Result(doc, [f"n{j}" for j in range(ideal.m)], [list(p) for p in points])


def _cover(cfg: RunConfig, ideal: MonomialIdeal) -> list[Box]:
    if ideal.l == 0:
        raise ConfigError("generators: the zero ideal has no box cover (its complement is everything)")
    return box_cover(ideal, minimize=cfg.minimize)


def _box_rows(boxes: list[Box], m: int) -> list[list]:
    rows = []
    for i, box in enumerate(boxes):
        bounds = box.bound_map
        rows.append([i] + [bounds.get(j, "") for j in range(m)])
    return rows


def _box_records(boxes: list[Box]) -> list[dict]:
    return [{"index": i, "bounds": {str(j): b for j, b in box.bounds}} for i, box in enumerate(boxes)]


def cmd_boxes(cfg: RunConfig) -> Result:
    ideal = _require_ideal(cfg)
    boxes = _cover(cfg, ideal)
    doc = _header("boxes", ideal=ideal.to_dict(), minimized=cfg.minimize, boxes=_box_records(boxes))
    return Result(doc, ["box"] + [f"b{j}" for j in range(ideal.m)], _box_rows(boxes, ideal.m))


def _resolution(cfg: RunConfig, ideal: MonomialIdeal) -> dict:
    boxes = _cover(cfg, ideal)
    if not boxes:
        return {
            "boxes": [],
            "k": 0,
            "level_sizes": [1],
            "staircase_empty": True,
            "note": "C(I) is empty (unit ideal); the complex is A_0 only",
            "verification": None,
            "certificate": [],
            "passed": True,
        }
    complex_ = build_complex(boxes)
    report = verify_exactness(complex_, ideal, cfg.truncation)
    chain_n = min(cfg.truncation, GLOBAL_CHAIN_MAX_N)
    chain_ok = check_chain_condition(complex_, chain_n)
    cert = index_certificate(complex_)
    return {
        "boxes": _box_records(boxes),
        "k": complex_.k,
        "level_sizes": complex_.level_sizes(),
        "staircase_empty": False,
        "verification": report.to_dict(),
        "global_chain_condition": {"N": chain_n, "passed": chain_ok},
        "certificate": cert.to_list(),
        "passed": report.passed and chain_ok,
    }


def _summary_rows(res: dict) -> list[list]:
    ver = res.get("verification") or {}
    rows = [
        ["k", res["k"]],
        ["level_sizes", ";".join(str(s) for s in res["level_sizes"])],
        ["staircase_empty", res["staircase_empty"]],
        ["fibers_checked", ver.get("fibers_checked", 0)],
        ["fibers_in_ideal", ver.get("fibers_in_ideal", 0)],
        ["fibers_in_complement", ver.get("fibers_in_complement", 0)],
        ["failures", len(ver.get("failures", []))],
        ["global_chain_condition", res.get("global_chain_condition", {}).get("passed", True)],
        ["certificate_entries", len(res["certificate"])],
        ["passed", res["passed"]],
    ]
    return rows


def cmd_resolve(cfg: RunConfig) -> Result:
    ideal = _require_ideal(cfg)
    res = _resolution(cfg, ideal)
    doc = _header("resolve", ideal=ideal.to_dict(), truncation=cfg.truncation, **res)
    return Result(doc, ["key", "value"], _summary_rows(res), 0 if res["passed"] else 1)


def cmd_verify(cfg: RunConfig) -> Result:
    ideal = _require_ideal(cfg)
    res = _resolution(cfg, ideal)
    doc = _header(
        "verify",
        ideal=ideal.to_dict(),
        truncation=cfg.truncation,
        k=res["k"],
        verification=res["verification"],
        global_chain_condition=res.get("global_chain_condition"),
        passed=res["passed"],
    )
    failures = (res["verification"] or {}).get("failures", [])
    rows = [
        [";".join(str(v) for v in f["n"]), "" if f["level"] is None else f["level"], f["kind"]]
        for f in failures
    ]
    return Result(doc, ["n", "level", "kind"], rows, 0 if res["passed"] else 1)


def cmd_certificate(cfg: RunConfig) -> Result:
    ideal = _require_ideal(cfg)
    boxes = _cover(cfg, ideal)
    entries = index_certificate(build_complex(boxes)).to_list() if boxes else []
    doc = _header("certificate", ideal=ideal.to_dict(), k=len(boxes), entries=entries)
    rows = [
        [
            "+" if e["sign"] > 0 else "-",
            e["q"],
            ";".join(str(i) for i in e["shuffle"]),
            ";".join(f"{j}:{b}" for j, b in e["bounds"].items()),
            e["empty"],
        ]
        for e in entries
    ]
    return Result(doc, ["sign", "q", "shuffle", "bounds", "empty"], rows)


def cmd_report(cfg: RunConfig) -> Result:
    spec = _require_domain(cfg)
    names = spec.variable_names()
    ideal = _require_ideal(cfg, spec.m) if cfg.ideal is not None else None
    table = NormTable(spec, cfg.truncation)
    profiles = decay_profiles(spec, cfg.shells)
    doc = _header(
        "report",
        domain=spec.to_dict(),
        variables=names,
        truncation=cfg.truncation,
        shells=list(cfg.shells),
        norms={"count": len(table), "log_omega_at_zero": table[(0,) * spec.m]},
        decay=[{"var": names[p.var], "max_abs_lambda": p.values} for p in profiles],
    )
    rows = [["norms", "count", len(table)], ["norms", "log_omega_at_zero", table[(0,) * spec.m]]]
    for p in profiles:
        rows += [[f"decay:{names[p.var]}", f"shell_{N}", v] for N, v in p.shells]
    exit_code = 0
    if ideal is not None:
        quotient = [quotient_self_commutator_diagnostic(ideal, spec, v, cfg.shells) for v in range(spec.m)]
        doc["ideal"] = ideal.to_dict()
        doc["quotient_decay"] = [{"var": names[p.var], "max_abs_entry": p.values} for p in quotient]
        for p in quotient:
            rows += [[f"quotient:{names[p.var]}", f"shell_{N}", v] for N, v in p.shells]
        if ideal.l > 0:
            res = _resolution(cfg, ideal)
            doc["resolution"] = res
            rows += [["resolution", key, value] for key, value in _summary_rows(res)]
            exit_code = 0 if res["passed"] else 1
    return Result(doc, ["section", "key", "value"], rows, exit_code)


HANDLERS: dict[str, Callable[[RunConfig], Result]] = {
    "norms": cmd_norms,
    "oracle": cmd_oracle,
    "commutators": cmd_commutators,
    "decay": cmd_decay,
    "staircase": cmd_staircase,
    "boxes": cmd_boxes,
    "resolve": cmd_resolve,
    "verify": cmd_verify,
    "certificate": cmd_certificate,
    "report": cmd_report,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bergman-ellipsoids",
        description="Bergman-space numerics for ellipsoid intersections and monomial ideals.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--domain", type=Path)
        p.add_argument("--ideal", type=Path)
        p.add_argument("--truncation", type=int, default=4)
        p.add_argument("--shells", default="10,20,40,80")
        p.add_argument("--samples", type=int, default=100_000)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tolerance", type=float, default=3.0)
        p.add_argument("--output", type=Path)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument(
            "--no-minimize", dest="minimize", action="store_false", help="keep the raw m^l box enumeration"
        )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            domain=args.domain,
            ideal=args.ideal,
            truncation=args.truncation,
            shells=parse_shells(args.shells),
            samples=args.samples,
            seed=args.seed,
            tolerance=args.tolerance,
            output=args.output,
            format=args.format,
            minimize=args.minimize,
        )
        result = HANDLERS[args.command](cfg)
    except (ConfigError, BudgetError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = render(result, cfg.format)
    if cfg.output is None:
        sys.stdout.write(text)
    else:
        cfg.output.write_text(text)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
