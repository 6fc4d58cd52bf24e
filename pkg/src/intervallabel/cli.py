"""Command line interface.

Subcommands:

- ``gen``     write seeded instance files
- ``label``   label one instance, write the labeling and its bound report
- ``check``   re-validate a labeling file against its instance
- ``oracle``  exact minimum span for a small instance
- ``bench``   sweep a class over a (p, q) grid, emit CSV or JSON rows
- ``claims``  sweep structural claims over seeded instances

The base seed comes from --seed or, failing that, the INTERVALLABEL_SEED
environment variable; commands that generate instances refuse to run
without one so results stay reproducible.

Exit status: 0 on success, 1 when a validity violation, a failed
non-report-only bound, or a claim violation was found, 2 on usage or
input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

from .graph import CapExceededError
from .instances import (
    InstanceFormatError,
    gen_instance,
    parse_instance,
    serialize_instance,
)
from .labeling import (
    LabelingFormatError,
    LpqParams,
    label_instance,
    labeling_to_dict,
    parse_labeling,
    serialize_labeling,
)
from .reps import REP_KINDS, RepError, derive_graph
from .verify import (
    CLAIMS_BY_KIND,
    ClaimReport,
    bound_report,
    check_structural_claims,
    exact_lambda,
    validate,
)

ENV_SEED = "INTERVALLABEL_SEED"

BENCH_COLUMNS = (
    "class",
    "seed",
    "n",
    "p",
    "q",
    "max_degree",
    "multiplicity",
    "omega",
    "span",
    "bound",
    "holds",
    "lambda_exact",
    "runtime_us",
)


class CliError(Exception):
    """Input or usage error; message goes to stderr, exit status 2."""


@dataclass(frozen=True)
class RunConfig:
    """Generator arguments shared by gen, bench and claims."""

    kind: str
    n: int
    seed: int
    count: int
    endpoint_range: tuple[int, int] | None = None
    k: int = 3
    circumference: int | None = None
    density: float | None = None

    def instance(self, index: int):
        return gen_instance(
            self.kind,
            self.n,
            self.seed + index,
            endpoint_range=self.endpoint_range,
            k=self.k,
            circumference=self.circumference,
            density=self.density,
        )


def _resolve_seed(args: argparse.Namespace) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(ENV_SEED)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise CliError(f"{ENV_SEED}={env!r} is not an integer") from None
    raise CliError(f"no seed: pass --seed or set {ENV_SEED}")


def _run_config(args: argparse.Namespace, count: int) -> RunConfig:
    return RunConfig(
        kind=args.cls,
        n=args.n,
        seed=_resolve_seed(args),
        count=count,
        endpoint_range=tuple(args.endpoint_range) if args.endpoint_range else None,
        k=args.k,
        circumference=args.circumference,
        density=args.density,
    )


def _write_or_print(payload: str, out: str | None) -> None:
    if out:
        Path(out).write_text(payload, encoding="utf-8")
    else:
        sys.stdout.write(payload)


def cmd_gen(args: argparse.Namespace) -> int:
    cfg = _run_config(args, args.count)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for idx in range(cfg.count):
        rep = cfg.instance(idx)
        path = out_dir / f"{cfg.kind}-{cfg.seed}-{idx}.json"
        path.write_bytes(serialize_instance(rep))
        print(path)
    return 0


def _load_instance(path: str):
    try:
        return parse_instance(Path(path).read_bytes())
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    except (InstanceFormatError, RepError) as exc:
        raise CliError(f"{path}: {exc}") from exc


def cmd_label(args: argparse.Namespace) -> int:
    rep = _load_instance(args.infile)
    params = LpqParams(args.p, args.q)
    lab = label_instance(rep, params)
    report = bound_report(rep, lab, params, omega_cap=args.omega_cap)
    if args.out:
        Path(args.out).write_bytes(serialize_labeling(lab))
    report_json = json.dumps([report.to_dict()], indent=2) + "\n"
    if args.report:
        Path(args.report).write_text(report_json, encoding="utf-8")
    if not args.out and not args.report:
        sys.stdout.write(
            json.dumps(
                {"labeling": labeling_to_dict(lab), "report": report.to_dict()},
                indent=2,
            )
            + "\n"
        )
    g = derive_graph(rep)
    if validate(g, lab):
        print("labeler produced an invalid labeling", file=sys.stderr)
        return 1
    if not report.holds and not report.report_only:
        print(
            f"bound violated: span {report.achieved_span} > {report.formula_value}",
            file=sys.stderr,
        )
        return 1
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    rep = _load_instance(args.infile)
    try:
        lab = parse_labeling(Path(args.labeling).read_bytes())
    except OSError as exc:
        raise CliError(f"cannot read {args.labeling}: {exc}") from exc
    except LabelingFormatError as exc:
        raise CliError(f"{args.labeling}: {exc}") from exc
    g = derive_graph(rep)
    if len(lab.labels) != g.n:
        raise CliError(
            f"labeling covers {len(lab.labels)} vertices, instance has {g.n}"
        )
    if (args.p is None) != (args.q is None):
        raise CliError("--p and --q must be given together")
    if args.p is not None:
        params = LpqParams(args.p, args.q)
    else:
        params = LpqParams(lab.p, lab.q)
    violations = validate(g, lab, params, variant=args.variant)
    report = bound_report(rep, lab, params, omega_cap=args.omega_cap)
    doc = {
        "violations": [v.to_dict() for v in violations],
        "report": report.to_dict(),
    }
    _write_or_print(json.dumps(doc, indent=2) + "\n", args.out)
    if violations:
        return 1
    if not report.holds and not report.report_only:
        return 1
    return 0


def cmd_oracle(args: argparse.Namespace) -> int:
    rep = _load_instance(args.infile)
    params = LpqParams(args.p, args.q)
    g = derive_graph(rep)
    try:
        lam = exact_lambda(g, params, n_cap=args.cap)
    except CapExceededError as exc:
        raise CliError(f"{exc}; raise --cap to allow larger instances") from exc
    lab = label_instance(rep, params)
    doc = {
        "class": rep.kind,
        "n": g.n,
        "p": params.p,
        "q": params.q,
        "lambda": lam,
        "greedy_span": lab.span,
    }
    _write_or_print(json.dumps(doc, indent=2) + "\n", args.out)
    return 0


def _parse_pq(values: Sequence[str] | None) -> list[tuple[int, int]]:
    pairs = []
    for item in values or ():
        try:
            a, b = item.split(",")
            pairs.append((int(a), int(b)))
        except ValueError:
            raise CliError(f"bad --pq value {item!r}; expected P,Q") from None
    return pairs


def _bench_instance(task: tuple) -> list[dict[str, Any]]:
    cfg, index, pairs, cap, omega_cap = task
    rep = cfg.instance(index)
    g = derive_graph(rep)
    rows = []
    for p, q in pairs:
        params = LpqParams(p, q)
        t0 = time.perf_counter_ns()
        lab = label_instance(rep, params)
        report = bound_report(rep, lab, params, omega_cap=omega_cap)
        runtime_us = (time.perf_counter_ns() - t0) // 1000
        bad = bool(validate(g, lab))
        lam = exact_lambda(g, params, n_cap=cap) if g.n <= cap else None
        rows.append(
            {
                "class": cfg.kind,
                "seed": cfg.seed + index,
                "n": g.n,
                "p": p,
                "q": q,
                "max_degree": report.stats.max_degree,
                "multiplicity": report.stats.multiplicity,
                "omega": report.stats.omega,
                "span": lab.span,
                "bound": report.formula_value,
                "holds": report.holds,
                "lambda_exact": lam,
                "runtime_us": runtime_us,
                "_invalid": bad,
                "_report_only": report.report_only,
            }
        )
    return rows


def _map_tasks(worker, tasks: list, jobs: int) -> list:
    if jobs <= 1:
        return [worker(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(worker, tasks, chunksize=8))


def cmd_bench(args: argparse.Namespace) -> int:
    cfg = _run_config(args, args.count)
    pairs = _parse_pq(args.pq)
    tasks = [(cfg, idx, pairs, args.cap, args.omega_cap) for idx in range(cfg.count)]
    results = _map_tasks(_bench_instance, tasks, args.jobs)
    rows = [row for chunk in results for row in chunk]
    failed = any(r["_invalid"] or (not r["holds"] and not r["_report_only"]) for r in rows)
    for row in rows:
        row.pop("_invalid")
        row.pop("_report_only")
    if args.format == "json":
        payload = json.dumps(rows, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=BENCH_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            out = dict(row)
            out["holds"] = "true" if row["holds"] else "false"
            if out["omega"] is None:
                out["omega"] = ""
            if out["lambda_exact"] is None:
                out["lambda_exact"] = ""
            writer.writerow(out)
        payload = buf.getvalue()
    _write_or_print(payload, args.out)
    return 1 if failed else 0


def _claims_instance(task: tuple) -> list[dict[str, Any]]:
    cfg, index, claims = task
    rep = cfg.instance(index)
    checks = check_structural_claims(rep, claims)
    return [
        {
            "claim": c.claim,
            "applicable": c.applicable,
            "witnesses": [list(w) for w in c.witnesses],
            "seed": cfg.seed + index,
        }
        for c in checks
    ]


def cmd_claims(args: argparse.Namespace) -> int:
    if args.claim:
        for name in args.claim:
            if name not in CLAIMS_BY_KIND.get(args.cls, ()):
                raise CliError(
                    f"claim {name!r} not applicable to class {args.cls!r}"
                )
    cfg = _run_config(args, args.count)
    claims = tuple(args.claim) if args.claim else None
    tasks = [(cfg, idx, claims) for idx in range(cfg.count)]
    results = _map_tasks(_claims_instance, tasks, args.jobs)
    agg: dict[str, dict[str, Any]] = {}
    for chunk in results:
        for item in chunk:
            slot = agg.setdefault(
                item["claim"], {"checked": 0, "applicable": 0, "violations": []}
            )
            slot["checked"] += 1
            if item["applicable"]:
                slot["applicable"] += 1
            for w in item["witnesses"]:
                slot["violations"].append((item["seed"], tuple(w)))
    reports = [
        ClaimReport(
            claim=name,
            checked=slot["checked"],
            applicable=slot["applicable"],
            violations=tuple(slot["violations"]),
        )
        for name, slot in sorted(agg.items())
    ]
    payload = json.dumps([r.to_dict() for r in reports], indent=2) + "\n"
    _write_or_print(payload, args.out)
    return 1 if any(r.violations for r in reports) else 0


def _add_gen_flags(sub: argparse.ArgumentParser, *, with_n: bool = True) -> None:
    sub.add_argument(
        "--class",
        dest="cls",
        required=True,
        choices=REP_KINDS,
        help="representation family",
    )
    if with_n:
        sub.add_argument("--n", type=int, required=True, help="vertices per instance")
    sub.add_argument("--count", type=int, default=1, help="number of instances")
    sub.add_argument("--seed", type=int, default=None, help="base seed")
    sub.add_argument(
        "--endpoint-range",
        type=int,
        nargs=2,
        metavar=("A", "B"),
        default=None,
        help="endpoint range (default 0 4n)",
    )
    sub.add_argument("--k", type=int, default=3, help="class count for interval_k")
    sub.add_argument(
        "--circumference", type=int, default=None, help="circle size for circular_arc"
    )
    sub.add_argument(
        "--density",
        type=float,
        default=None,
        help="cap interval length at this fraction of the range",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="intervallabel",
        description="Greedy L(p,q) labelings of interval-type representations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="write seeded instance files")
    _add_gen_flags(p_gen)
    p_gen.add_argument("--out", required=True, help="output directory")
    p_gen.set_defaults(func=cmd_gen)

    p_label = sub.add_parser("label", help="label one instance file")
    p_label.add_argument("--in", dest="infile", required=True)
    p_label.add_argument("--p", type=int, required=True)
    p_label.add_argument("--q", type=int, required=True)
    p_label.add_argument("--out", default=None, help="labeling output path")
    p_label.add_argument("--report", default=None, help="bound report output path")
    p_label.add_argument("--omega-cap", type=int, default=64)
    p_label.set_defaults(func=cmd_label)

    p_check = sub.add_parser("check", help="validate a labeling file")
    p_check.add_argument("--in", dest="infile", required=True)
    p_check.add_argument("--labeling", required=True)
    p_check.add_argument("--p", type=int, default=None, help="override labeling p")
    p_check.add_argument("--q", type=int, default=None, help="override labeling q")
    p_check.add_argument("--variant", choices=("L1", "L2", "L3"), default="L1")
    p_check.add_argument("--omega-cap", type=int, default=64)
    p_check.add_argument("--out", default=None)
    p_check.set_defaults(func=cmd_check)

    p_oracle = sub.add_parser("oracle", help="exact minimum span (small n)")
    p_oracle.add_argument("--in", dest="infile", required=True)
    p_oracle.add_argument("--p", type=int, required=True)
    p_oracle.add_argument("--q", type=int, required=True)
    p_oracle.add_argument("--cap", type=int, default=12, help="max n for exact search")
    p_oracle.add_argument("--out", default=None)
    p_oracle.set_defaults(func=cmd_oracle)

    p_bench = sub.add_parser("bench", help="sweep a class over a (p,q) grid")
    _add_gen_flags(p_bench)
    p_bench.add_argument(
        "--pq",
        action="append",
        metavar="P,Q",
        help="grid point, repeatable; no occurrences = empty grid",
    )
    p_bench.add_argument("--cap", type=int, default=12, help="exact oracle cap")
    p_bench.add_argument("--omega-cap", type=int, default=64)
    p_bench.add_argument("--jobs", type=int, default=1)
    p_bench.add_argument("--format", choices=("json", "csv"), default="csv")
    p_bench.add_argument("--out", default=None)
    p_bench.set_defaults(func=cmd_bench)

    p_claims = sub.add_parser("claims", help="sweep structural claims")
    _add_gen_flags(p_claims)
    p_claims.add_argument(
        "--claim", action="append", default=None, help="claim tag, repeatable"
    )
    p_claims.add_argument("--jobs", type=int, default=1)
    p_claims.add_argument("--out", default=None)
    p_claims.set_defaults(func=cmd_claims)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RepError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
