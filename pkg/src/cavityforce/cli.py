"""Command-line front end.

::

    cavityforce run scenario.yaml [--out table.csv] [--format csv|human] [--jobs N]
    cavityforce validate [name ...]
    cavityforce schema

Exit codes: 0 success, 1 invalid input or configuration, 2 a numerical
result did not converge, 3 internal error.
"""
from __future__ import annotations

import argparse
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import yaml

from . import __version__
from ._kernels import BACKEND
from .config import SCHEMA, ConfigError, ScenarioConfig, parse_config
from .errors import CavityForceError, ConfigurationError, DomainError, QuadratureError, SingularityError

__all__ = ["ResultTable", "run_sweep", "emit_table", "main", "COLUMNS", "HBAR", "C_LIGHT"]

EXIT_OK, EXIT_INPUT, EXIT_NONCONVERGED, EXIT_INTERNAL = 0, 1, 2, 3

HBAR = 1.054571817e-34  # J s
C_LIGHT = 299792458.0  # m / s

COLUMNS = (
    "index", "distance", "total", "screened", "assisted",
    "screened_tm", "screened_te", "assisted_tm", "assisted_te",
    "error_estimate", "converged",
)
_FORCE_COLUMNS = COLUMNS[2:10]


@dataclass(frozen=True)
class ResultTable:
    """Rows of a sweep plus the metadata needed to reproduce it."""

    metadata: dict
    rows: tuple[tuple, ...]

    def __post_init__(self):
        if not self.metadata or "config" not in self.metadata:
            raise ValueError("a result table needs metadata carrying the resolved config")

    @property
    def converged(self) -> bool:
        return all(r[-1] for r in self.rows)


def _row(i: int, x: float, res) -> tuple:
    return (
        i, x, res.total, res.screened, res.assisted,
        res.screened_tm, res.screened_te, res.assisted_tm, res.assisted_te,
        res.error_estimate, bool(res.converged),
    )


def _unit_factors(cfg: ScenarioConfig) -> tuple[float, float, str, str]:
    if cfg.output == "natural":
        f = "hbar*omega_ref**4/c**3" if cfg.force_unit == "area" else "hbar*omega_ref**2/c"
        return 1.0, 1.0, "c/omega_ref", f
    w = cfg.omega_ref
    length = C_LIGHT / w
    if cfg.force_unit == "area":
        return length, HBAR * w**4 / C_LIGHT**3, "m", "N/m**2"
    return length, HBAR * w**2 / C_LIGHT, "m", "N"


def _evaluate(task, x):
    return task(x)


def run_sweep(cfg: ScenarioConfig, jobs: int = 1) -> ResultTable:
    """Evaluate every sweep point; rows keep sweep order whatever ``jobs`` is."""
    xs = cfg.distances
    if jobs > 1 and len(xs) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(xs))) as pool:
            results = list(pool.map(_evaluate, [cfg.task] * len(xs), xs))
    else:
        results = [cfg.task(x) for x in xs]
    lf, ff, lu, fu = _unit_factors(cfg)
    rows = []
    for i, (x, res) in enumerate(zip(xs, results)):
        r = _row(i, x, res)
        rows.append((r[0], r[1] * lf) + tuple(v * ff for v in r[2:10]) + (r[10],))
    meta = {
        "config": cfg.resolved,
        "scenario": cfg.kind,
        "variable": cfg.variable,
        "units": {"distance": lu, "force": fu},
        "backend": BACKEND,
        "version": __version__,
    }
    return ResultTable(meta, tuple(rows))


def _echo(doc) -> str:
    # one-line flow YAML: floats round-trip exactly and .inf survives
    return yaml.safe_dump(doc, default_flow_style=True, width=float("inf"), sort_keys=True).strip()


def emit_table(table: ResultTable, fmt: str = "csv") -> str:
    """Render ``table`` as CSV (full precision) or aligned human-readable text."""
    m = table.metadata
    if fmt == "csv":
        out = io.StringIO()
        out.write(f"# cavityforce {m.get('version', '')} backend={m.get('backend', '')}\n")
        out.write(f"# scenario: {m.get('scenario', '')}; distance variable: {m.get('variable', '')}\n")
        u = m.get("units", {})
        out.write(f"# units: distance={u.get('distance', '')} force={u.get('force', '')}\n")
        out.write(f"# config: {_echo(m['config'])}\n")
        out.write(",".join(COLUMNS) + "\n")
        for r in table.rows:
            vals = [str(r[0])] + [repr(float(v)) for v in r[1:10]] + ["true" if r[10] else "false"]
            out.write(",".join(vals) + "\n")
        return out.getvalue()
    if fmt == "human":
        header = list(COLUMNS)
        body = []
        for r in table.rows:
            body.append([str(r[0])] + [f"{float(v):.6g}" for v in r[1:10]] + ["yes" if r[10] else "NO"])
        widths = [max(len(h), *(len(b[j]) for b in body)) if body else len(h) for j, h in enumerate(header)]
        u = m.get("units", {})
        lines = [f"{m.get('scenario', '')}: distance in {u.get('distance', '')}, force in {u.get('force', '')}"]
        lines.append("  ".join(h.rjust(w) for h, w in zip(header, widths)))
        for b in body:
            lines.append("  ".join(c.rjust(w) for c, w in zip(b, widths)))
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def parse_csv_rows(text: str) -> list[tuple]:
    """Read the data rows of a CSV result back into tuples."""
    rows = []
    lines = [l for l in text.splitlines() if l and not l.startswith("#")]
    for line in lines[1:]:
        f = line.split(",")
        rows.append((int(f[0]),) + tuple(float(v) for v in f[1:10]) + (f[10] == "true",))
    return rows


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--format", choices=("csv", "human"), default=None, help="output format")
    p = _Parser(prog="cavityforce", description="Dispersion forces in planar cavities.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    run = sub.add_parser("run", parents=[common], help="run a scenario file (YAML, JSON or an earlier CSV result)")
    run.add_argument("config", help="scenario file, '-' for stdin")
    run.add_argument("--jobs", type=int, default=1, help="worker processes for the sweep")
    val = sub.add_parser("validate", parents=[common], help="run built-in validation checks")
    val.add_argument("names", nargs="*", help="checks to run (default: all)")
    sub.add_parser("schema", parents=[common], help="print the scenario JSON schema")
    return p


def _write(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_run(args) -> int:
    if args.jobs < 1:
        raise _UsageError("--jobs must be >= 1")
    if args.config == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.config, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise _UsageError(f"cannot read {args.config}: {exc.strerror}") from None
    cfg = parse_config(text)
    table = run_sweep(cfg, args.jobs)
    _write(emit_table(table, args.format or "csv"), args.out)
    if not table.converged:
        bad = [r[0] for r in table.rows if not r[10]]
        print(f"cavityforce: rows {bad} did not converge", file=sys.stderr)
        return EXIT_NONCONVERGED
    return EXIT_OK


def _cmd_validate(args) -> int:
    from .validation import CHECKS, format_report, run_checks

    unknown = [n for n in args.names if n not in CHECKS]
    if unknown:
        raise _UsageError(
            f"unknown check(s) {', '.join(unknown)}; available: {', '.join(CHECKS)}"
        )
    results = run_checks(args.names or list(CHECKS))
    _write(format_report(results, args.format or "human"), args.out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_INPUT


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_help(sys.stderr)
            return EXIT_INPUT
        if args.command == "schema":
            _write(json.dumps(SCHEMA, indent=2) + "\n", args.out)
            return EXIT_OK
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_validate(args)
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT
    except (ConfigError, ConfigurationError, DomainError) as exc:
        print(f"cavityforce: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (QuadratureError, SingularityError) as exc:
        print(f"cavityforce: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGED
    except CavityForceError as exc:
        print(f"cavityforce: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001 - anything else is a bug
        print(f"cavityforce: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
