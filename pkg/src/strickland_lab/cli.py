"""Command-line verification harness.

    strickland-lab verify rank --p 2 --k 2 --d 2
    strickland-lab verify all --grid grid.toml --serial
    strickland-lab enumerate subgroups --G 4,4 --order 4

Reports are JSON lines ``{check, params, lhs, rhs, pass, elapsed_ms}``.
Exit codes: 0 all passed, 1 some check failed, 2 bad configuration,
3 a resource bound was hit.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor, as_completed
from importlib import resources
from math import factorial
from pathlib import Path
from typing import Any, Iterable

try:
    import tomllib as tomli
except ModuleNotFoundError:  # Python < 3.11
    import tomli

from . import actions, divisors
from .abelian import enumerate_subgroups
from .checks import CHECKS, CheckReport, parse_group, run_check
from .errors import ResourceBound

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_RESOURCE = 0, 1, 2, 3

DEFAULT_LIMITS = {
    "max_group_order": 10**6,  # |A|^n n! for wreath-product checks
    "max_degree": 8,  # n|A| for brute-force centralizers in Sigma_(n|A|)
    "max_components": 10**6,  # labels printed by `enumerate components`
}

THREADS_ENV = "STRICKLAND_LAB_THREADS"


class ConfigError(Exception):
    pass


def load_grid(path: str | Path | None) -> tuple[list[tuple[str, dict[str, Any]]], dict[str, int]]:
    """Parse a grid file into ``(tasks, limits)``.

    Each ``[[check]]`` table maps parameter names to a value or a list of
    values; the Cartesian product of the lists gives the grid points.
    """
    try:
        if path is None:
            text = resources.files("strickland_lab").joinpath("default_grid.toml").read_text()
        else:
            text = Path(path).read_text()
        doc = tomli.loads(text)
    except (OSError, tomli.TOMLDecodeError) as exc:
        raise ConfigError(f"cannot read grid: {exc}") from exc
    limits = dict(DEFAULT_LIMITS)
    limits.update(doc.pop("limits", {}))
    tasks = []
    for name, entries in doc.items():
        if name not in CHECKS:
            raise ConfigError(f"unknown check {name!r}")
        if isinstance(entries, dict):
            entries = [entries]
        for entry in entries:
            keys = list(entry)
            values = [v if isinstance(v, list) else [v] for v in entry.values()]
            for combo in itertools.product(*values):
                tasks.append((name, dict(zip(keys, combo))))
    return tasks, limits


def enforce_limits(name: str, params: dict[str, Any], limits: dict[str, int]) -> None:
    if name in ("height0", "norm"):
        A = parse_group(params["A"])
        if A.order ** params["n"] * factorial(params["n"]) > limits["max_group_order"]:
            raise ResourceBound(f"{name}: group order over max_group_order for {params}")
    if name == "centralizers":
        if params["n"] * parse_group(params["A"]).order > limits["max_degree"]:
            raise ResourceBound(f"centralizers: n|A| over max_degree for {params}")
    if name == "transfer" and params["n"] > limits["max_degree"]:
        raise ResourceBound(f"transfer: n over max_degree for {params}")


def _task(name: str, params: dict[str, Any]) -> CheckReport:
    return run_check(name, params)


def _worker_count() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ConfigError(f"{THREADS_ENV} must be an integer, got {env!r}")
    return os.cpu_count() or 1


def run(
    tasks: list[tuple[str, dict[str, Any]]],
    limits: dict[str, int] | None = None,
    *,
    serial: bool = True,
    out=None,
    fmt: str = "json",
) -> int:
    """Run checks, stream reports, and return the exit code."""
    out = out or sys.stdout
    limits = limits or dict(DEFAULT_LIMITS)
    for name, params in tasks:
        if name not in CHECKS:
            raise ConfigError(f"unknown check {name!r}")
        enforce_limits(name, params, limits)
    reports: list[CheckReport] = []

    def emit(rep: CheckReport):
        reports.append(rep)
        if fmt == "json":
            out.write(json.dumps(rep.to_json()) + "\n")
            out.flush()

    workers = 1 if serial else _worker_count()
    try:
        if workers == 1:
            for name, params in tasks:
                emit(run_check(name, params))
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                futures = [pool.submit(_task, name, params) for name, params in tasks]
                for fut in as_completed(futures):
                    emit(fut.result())
    except TypeError as exc:
        raise ConfigError(f"bad parameters: {exc}") from exc
    if fmt == "table":
        render_table(reports, out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def render_table(reports: Iterable[CheckReport], out) -> None:
    rows = [("check", "params", "lhs", "rhs", "pass", "ms")]
    for r in reports:
        params = " ".join(f"{k}={v}" for k, v in r.params.items())
        short = lambda v: (s if len(s := json.dumps(v)) <= 40 else s[:37] + "...")
        rows.append((r.check, params, short(r.lhs), short(r.rhs), "PASS" if r.passed else "FAIL", str(r.elapsed_ms)))
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    for row in rows:
        out.write("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() + "\n")


def _emit_lines(items: Iterable[dict], out) -> int:
    for item in items:
        out.write(json.dumps(item) + "\n")
    return EXIT_OK


def enumerate_classes(A: str, h: int, n: int, p: int | None, out) -> int:
    G = parse_group(A)
    for c in actions.enumerate_action_classes(G, h, n, prime=p):
        out.write(
            json.dumps(
                {
                    "types": [
                        {"quotient": list(t.quotient.invariant_factors), "kernel": [list(r) for r in t.kernel], "N": N}
                        for t, N in c.types
                    ],
                    "centralizer_order": actions.centralizer_shape(c).order,
                    "monotypical": actions.is_monotypical(c),
                    "survives_transfer": actions.survives_transfer(c),
                }
            )
            + "\n"
        )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="strickland-lab", description=__doc__.splitlines()[0])
    top = parser.add_subparsers(dest="command", required=True)

    verify = top.add_parser("verify", help="run verification checks")
    vsub = verify.add_subparsers(dest="check", required=True)

    def common(p):
        p.add_argument("--serial", action="store_true", help="run in order in this process")
        p.add_argument("--format", choices=("json", "table"), default="json")
        return p

    p = common(vsub.add_parser("rank"))
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    for name in ("height0", "norm"):
        p = common(vsub.add_parser(name))
        p.add_argument("--A", required=True, help="invariant factors, e.g. 2 or 2,2 (1 = trivial)")
        p.add_argument("--n", type=int, required=True)
    p = common(vsub.add_parser("diagram"))
    p.add_argument("--A", required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p = common(vsub.add_parser("centralizers"))
    p.add_argument("--A", default="1")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p = common(vsub.add_parser("transfer"))
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p = common(vsub.add_parser("appendix"))
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, help="height; omit to run only the Stirling table")
    p = common(vsub.add_parser("fibers"))
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p = common(vsub.add_parser("all"))
    p.add_argument("--grid", help="grid file (TOML); defaults to the shipped acceptance grid")

    enum = top.add_parser("enumerate", help="list combinatorial objects as JSON lines")
    esub = enum.add_subparsers(dest="what", required=True)
    p = esub.add_parser("classes")
    p.add_argument("--A", default="1")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, help="keep only p-power types")
    p = esub.add_parser("subgroups")
    p.add_argument("--G", required=True, help="invariant factors, e.g. 4,4")
    p.add_argument("--order", type=int, required=True)
    p = esub.add_parser("components")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    return parser


def _verify_tasks(args) -> list[tuple[str, dict[str, Any]]]:
    c = args.check
    if c == "rank":
        return [("rank", {"p": args.p, "k": args.k, "d": args.d})]
    if c in ("height0", "norm"):
        return [(c, {"A": args.A, "n": args.n})]
    if c == "diagram":
        return [("diagram", {"A": args.A, "h": args.h, "l": args.l})]
    if c == "centralizers":
        return [("centralizers", {"A": args.A, "h": args.h, "n": args.n})]
    if c == "transfer":
        return [("transfer", {"h": args.h, "n": args.n})]
    if c == "appendix":
        tasks = [("stirling", {"p": args.p})]
        if args.n is not None:
            tasks.append(("appendix", {"p": args.p, "n": args.n}))
        return tasks
    if c == "fibers":
        return [("fibers", {"m": args.m, "h": args.h})]
    raise ConfigError(f"unknown check {c!r}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    out = sys.stdout
    try:
        if args.command == "verify":
            if args.check == "all":
                tasks, limits = load_grid(args.grid)
            else:
                tasks, limits = _verify_tasks(args), dict(DEFAULT_LIMITS)
            return run(tasks, limits, serial=args.serial, out=out, fmt=args.format)
        if args.what == "classes":
            return enumerate_classes(args.A, args.h, args.n, args.p, out)
        if args.what == "subgroups":
            G = parse_group(args.G)
            return _emit_lines(
                ({"generators": [list(g) for g in H.generators], "order": H.order} for H in enumerate_subgroups(G, args.order)),
                out,
            )
        if args.what == "components":
            if divisors.component_count(args.m, args.k, args.h, args.p) > DEFAULT_LIMITS["max_components"]:
                raise ResourceBound("too many components to list")
            return _emit_lines(
                ({"counts": [[list(x), s] for x, s in c.counts]} for c in divisors.iter_components(args.m, args.k, args.h, args.p)),
                out,
            )
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ResourceBound as exc:
        print(f"resource bound: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
