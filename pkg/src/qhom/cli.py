"""Command-line front end: ``qhom homology | verify | point | table``.

Exit codes: 0 when everything checked passes, 1 when a verification finds a
counterexample, 2 for unreadable input or bad usage.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .affine import coefficient_table
from .cyclotomic import is_prime
from .ncomplex import StructuralError, build_point_complex, complex_from_json, homology_report
from .pairs import SimplicialPair, relative_complex
from .simplicial import simplicial_from_json, to_ncomplex
from .verify import SUITES, run_suite

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE = 0, 1, 2


class InputError(Exception):
    """Bad input file or flag combination; carries a JSON-ready payload."""

    def __init__(self, kind: str, message: str, **extra):
        super().__init__(message)
        self.payload = {"kind": kind, "message": message, **extra}


@dataclass(frozen=True)
class RunConfig:
    command: str
    order: int | None = None
    input_path: str | None = None
    max_degree: int | None = None
    amplitude: str = "all"
    suite: str = "all"
    trials: int = 100
    seed: int = 0
    fmt: str = "table"

    def __post_init__(self):
        if self.order is not None and not is_prime(self.order):
            raise InputError("usage", f"N must be prime, got {self.order}")
        if self.trials < 1:
            raise InputError("usage", "trials must be at least 1")
        if self.max_degree is not None and self.max_degree < 0:
            raise InputError("usage", "max degree must be nonnegative")
        if self.fmt not in ("table", "json"):
            raise InputError("usage", f"unknown format {self.fmt!r}")
        if self.amplitude != "all":
            try:
                int(self.amplitude)
            except ValueError:
                raise InputError("usage", f"amplitude must be an integer or 'all', got {self.amplitude!r}") from None

    def amplitudes(self, order: int) -> list[int]:
        if self.amplitude == "all":
            return list(range(1, order))
        m = int(self.amplitude)
        if not 1 <= m <= order - 1:
            raise InputError("usage", f"amplitude must satisfy 1 <= m <= N-1, got {m}")
        return [m]

    def require_order(self) -> int:
        if self.order is None:
            raise InputError("usage", f"--N is required for '{self.command}'")
        return self.order


def dump(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2)


# ---------------------------------------------------------------------------
# input


def load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError("io", f"cannot read {path}: {exc.strerror}", path=path) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("parse", exc.msg, path=path, line=exc.lineno, column=exc.colno) from None


def complex_for_input(data, cfg: RunConfig):
    """Turn a simplicial / pair / complex JSON document into a GradedNComplex."""
    if not isinstance(data, dict):
        raise InputError("schema", "top-level JSON value must be an object")
    try:
        if "cells" in data:
            order = cfg.require_order()
            x = simplicial_from_json(data)
            hi = x.top if cfg.max_degree is None else cfg.max_degree
            if "subcomplex" in data or "base" in data:
                pair = SimplicialPair(x, data.get("subcomplex", ()), data.get("base", ()))
                return relative_complex(pair, order, hi)
            return to_ncomplex(x, order, hi)
        if "ranks" in data:
            c = complex_from_json(data)
            if cfg.order is not None and cfg.order != c.order:
                raise InputError("usage", f"--N {cfg.order} disagrees with N = {c.order} in the input")
            return c
    except StructuralError as exc:
        raise InputError("structure", str(exc)) from None
    raise InputError("schema", "expected a simplicial set (key 'cells') or an N-complex (key 'ranks')")


# ---------------------------------------------------------------------------
# commands


def cmd_homology(cfg: RunConfig, out) -> int:
    if not cfg.input_path:
        raise InputError("usage", "--input is required for 'homology'")
    c = complex_for_input(load_json(cfg.input_path), cfg)
    report = homology_report(c, cfg.amplitudes(c.order))
    if cfg.fmt == "json":
        out.write(dump(report.to_json()) + "\n")
    else:
        out.write(f"amplitude homology dimensions over Q(q), N={c.order}\n")
        out.write(report.table() + "\n")
    return EXIT_OK


def cmd_verify(cfg: RunConfig, out) -> int:
    order = cfg.require_order()
    try:
        reports = run_suite(cfg.suite, order, cfg.trials, cfg.seed)
    except KeyError as exc:
        raise InputError("usage", exc.args[0]) from None
    ok = all(r.passed for r in reports)
    if cfg.fmt == "json":
        out.write(dump({"passed": ok, "suites": [r.to_json() for r in reports]}) + "\n")
    else:
        for r in reports:
            out.write("\n".join(r.lines()) + "\n")
            if r.suite == "coeff-table":
                out.write(coefficient_table(order).render() + "\n")
    return EXIT_OK if ok else EXIT_COUNTEREXAMPLE


def cmd_point(cfg: RunConfig, out) -> int:
    order = cfg.require_order()
    hi = 2 * order if cfg.max_degree is None else cfg.max_degree
    report = homology_report(build_point_complex(order, hi), cfg.amplitudes(order))
    if cfg.fmt == "json":
        out.write(dump(report.to_json()) + "\n")
        return EXIT_OK
    out.write(f"point homology, N={order}, degrees 0..{hi}\n")
    for m in report.amplitudes():
        cells = []
        for n in range(hi + 1):
            if not report.reliable(m, n):
                cells.append("?")
            elif report.dim(m, n):
                cells.append("Z[q]")
            else:
                cells.append("0")
        out.write(f"m={m}: " + " ".join(cells) + "\n")
    out.write("nonzero at (m, n): " + ", ".join(f"({m},{n})" for m, n in report.nonzero()) + "\n")
    return EXIT_OK


def cmd_table(cfg: RunConfig, out) -> int:
    table = coefficient_table(cfg.require_order())
    if cfg.fmt == "json":
        out.write(dump(table.to_json()) + "\n")
    else:
        out.write(table.render() + "\n")
    return EXIT_OK if table.ok() else EXIT_COUNTEREXAMPLE


COMMANDS = {"homology": cmd_homology, "verify": cmd_verify, "point": cmd_point, "table": cmd_table}


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qhom", description="(N,q)-homology computations and identity checks")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--N", dest="order", type=int, help="prime order of the root of unity q")
        p.add_argument("--format", dest="fmt", choices=("table", "json"), default="table")

    p = sub.add_parser("homology", help="amplitude homology of a simplicial set, pair or N-complex")
    common(p)
    p.add_argument("--input", dest="input_path", required=True)
    p.add_argument("--max-degree", type=int)
    p.add_argument("--amplitude", default="all", help="single m or 'all'")

    p = sub.add_parser("verify", help="run a seeded verification suite")
    common(p)
    p.add_argument("--suite", default="all", help=f"one of {', '.join(SUITES)}, all")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("point", help="homology of the point")
    common(p)
    p.add_argument("--max-degree", type=int)
    p.add_argument("--amplitude", default="all")

    p = sub.add_parser("table", help="coefficient table of the homotopy operator")
    common(p)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    fields = {k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__}
    return RunConfig(**fields)


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
        return COMMANDS[cfg.command](cfg, out)
    except InputError as exc:
        if getattr(ns, "fmt", "table") == "json":
            out.write(dump({"error": exc.payload}) + "\n")
        else:
            where = ""
            if "line" in exc.payload:
                where = f" (line {exc.payload['line']}, column {exc.payload['column']})"
            err.write(f"qhom: {exc.payload['kind']} error{where}: {exc.payload['message']}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
