"""Command line front end.

Exit codes: 0 success (measure exists / checks pass), 2 bad input,
3 measure does not exist, 4 undetermined, 5 nonzero residual.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from typing import Optional

import mpmath

from . import conformal, reals
from .shift_core import count_stems, is_renewal, iter_stems, load_matrix, renewal_matrix, word_str
from .transfer import Potential, load_potential, potential_from_json

EXIT_OK, EXIT_BAD_INPUT, EXIT_NOT_EXISTS, EXIT_UNDETERMINED, EXIT_RESIDUAL = 0, 2, 3, 4, 5

_VERDICT_EXIT = {
    conformal.EXISTS: EXIT_OK,
    conformal.NOT_EXISTS: EXIT_NOT_EXISTS,
    conformal.UNDETERMINED: EXIT_UNDETERMINED,
}

COMMANDS = ("enumerate", "solve", "verify", "scan")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    matrix: str = "renewal"
    potential: object = None
    depth: Optional[int] = None
    precision: int = reals.DEFAULT_PRECISION
    out: Optional[str] = None
    format: str = "csv"
    measure: Optional[str] = None
    terminal: int = 1
    beta_lo: Optional[str] = None
    beta_hi: Optional[str] = None
    steps: int = 50
    tol: str = "1e-6"

    def validate(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.depth is not None and int(self.depth) < 1:
            raise UsageError("depth must be >= 1")
        if int(self.precision) < 30:
            raise UsageError("precision must be at least 30 digits")
        if self.format not in ("json", "csv"):
            raise UsageError("format must be json or csv")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--matrix", help='transition matrix JSON file, or "renewal" (default)')
    common.add_argument("--potential", help="potential JSON file")
    common.add_argument("--depth", type=int, help="maximal stem length")
    common.add_argument("--precision", type=int, help="decimal digits for non-exact values (>= 30)")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--format", choices=("json", "csv"))
    common.add_argument("--config", help="JSON run config; its keys override the flags")

    parser = argparse.ArgumentParser(prog="xaconf", description="Atomic conformal measures for the renewal shift on X_A.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("enumerate", parents=[common], help="count and list stems per length")
    p.add_argument("--terminal", type=int, help="last letter of the enumerated words (default 1)")
    sub.add_parser("solve", parents=[common], help="solve for the atomic conformal measure")
    p = sub.add_parser("verify", parents=[common], help="run the four conformality checks on a measure file")
    p.add_argument("--measure", help="measure JSON written by solve")
    p = sub.add_parser("scan", parents=[common], help="scan the inverse temperature")
    p.add_argument("--beta-lo", dest="beta_lo")
    p.add_argument("--beta-hi", dest="beta_hi")
    p.add_argument("--steps", type=int)
    p.add_argument("--tol")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=ns.command)
    for key, value in vars(ns).items():
        if key in ("command", "config") or value is None:
            continue
        setattr(cfg, key, value)
    if ns.config:
        try:
            with open(ns.config) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {ns.config}: {exc}") from None
        if not isinstance(data, dict):
            raise UsageError("config must be a JSON object")
        for key, value in data.items():
            key = key.replace("-", "_")
            if key == "command":
                if value != ns.command:
                    raise UsageError(f"config is for command {value!r}, not {ns.command!r}")
                continue
            if not hasattr(cfg, key):
                raise UsageError(f"unknown config key {key!r}")
            setattr(cfg, key, value)
    if cfg.command == "enumerate" and cfg.depth is None:
        raise UsageError("enumerate needs --depth")
    cfg.validate()
    return cfg


def _matrix(cfg: RunConfig, bound: int):
    if cfg.matrix in (None, "renewal"):
        return renewal_matrix(bound)
    try:
        return load_matrix(cfg.matrix)
    except OSError as exc:
        raise UsageError(f"cannot read matrix file {cfg.matrix}: {exc}") from None
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise UsageError(f"bad matrix file {cfg.matrix}: {exc}") from None


def _potential(cfg: RunConfig, required: bool = True) -> Optional[Potential]:
    if cfg.potential is None:
        if required:
            raise UsageError("--potential is required")
        return None
    try:
        if isinstance(cfg.potential, dict):
            return potential_from_json(cfg.potential)
        return load_potential(cfg.potential)
    except OSError as exc:
        raise UsageError(f"cannot read potential file {cfg.potential}: {exc}") from None
    except (KeyError, TypeError, ValueError, ZeroDivisionError, json.JSONDecodeError) as exc:
        raise UsageError(f"bad potential: {exc}") from None


def _emit(cfg: RunConfig, text: str):
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_text(data) -> str:
    return json.dumps(data, indent=2) + "\n"


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def cmd_enumerate(cfg: RunConfig) -> int:
    depth = int(cfg.depth)
    A = _matrix(cfg, depth + 1)
    if A.alphabet_bound is None:
        raise UsageError("matrix needs an alphabet_bound")
    if not 1 <= cfg.terminal <= A.alphabet_bound:
        raise UsageError(f"terminal letter {cfg.terminal} outside the alphabet 1..{A.alphabet_bound}")
    rows = []
    for n in range(1, depth + 1):
        stems = [word_str(w) for w in iter_stems(A, n, cfg.terminal)]
        assert len(stems) == count_stems(A, n, cfg.terminal)
        rows.append((n, len(stems), 2 ** (n - 1), " ".join(stems)))
    if cfg.format == "json":
        data = {
            "matrix": A.name,
            "terminal": cfg.terminal,
            "rows": [{"length": n, "count": c, "check_2_pow": p, "stems": s.split()} for n, c, p, s in rows],
        }
        _emit(cfg, _json_text(data))
    else:
        _emit(cfg, _csv_text(("length", "count", "check_2_pow", "stems"), rows))
    return EXIT_OK


def _require_renewal(cfg: RunConfig):
    if cfg.matrix not in (None, "renewal"):
        A = _matrix(cfg, 1)
        if not is_renewal(A):
            raise UsageError("the solver handles the renewal shift only")


def cmd_solve(cfg: RunConfig) -> int:
    _require_renewal(cfg)
    P = _potential(cfg)
    depth = int(cfg.depth or 10)
    try:
        mu = conformal.solve_renewal(P, depth, int(cfg.precision))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    data = conformal.measure_to_json(mu, int(cfg.precision))
    data["method"] = mu.series.method
    _emit(cfg, _json_text(data))
    return _VERDICT_EXIT[mu.verdict]


def cmd_verify(cfg: RunConfig) -> int:
    if not cfg.measure:
        raise UsageError("verify needs --measure")
    try:
        with open(cfg.measure) as fh:
            data = json.load(fh)
        mu = conformal.measure_from_json(data)
    except OSError as exc:
        raise UsageError(f"cannot read measure file {cfg.measure}: {exc}") from None
    except (KeyError, TypeError, ValueError, ZeroDivisionError, json.JSONDecodeError) as exc:
        raise UsageError(f"bad measure file: {exc}") from None
    if mu.verdict != conformal.EXISTS:
        raise UsageError(f"measure file has verdict {mu.verdict}; nothing to verify")
    P = _potential(cfg, required=False) or mu.potential
    if P is None:
        raise UsageError("no potential: pass --potential or embed one in the measure file")
    depth = mu.depth if cfg.depth is None else int(cfg.depth)
    if depth > mu.depth:
        raise UsageError(f"measure only materializes depth {mu.depth}")
    precision = int(cfg.precision)
    try:
        report = conformal.verify_measure(mu, P, depth, precision)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = {
        "mode": "exact" if report.exact else "decimal",
        "tolerance": None if report.tolerance is None else reals.format_real(report.tolerance, 20),
        "depth": depth,
        "max_residual": {k: reals.format_real(report.max_residual[k], 20) for k in conformal.CONDITIONS},
        "checked": {k: report.counts[k] for k in conformal.CONDITIONS},
        "passed": report.passed,
        "problems": mu.problems(),
    }
    _emit(cfg, _json_text(out))
    return EXIT_OK if report.passed else EXIT_RESIDUAL


def cmd_scan(cfg: RunConfig) -> int:
    _require_renewal(cfg)
    P = _potential(cfg)
    if cfg.beta_lo is None or cfg.beta_hi is None:
        raise UsageError("scan needs --beta-lo and --beta-hi")
    precision = int(cfg.precision)
    try:
        result = conformal.scan_beta(
            P, str(cfg.beta_lo), str(cfg.beta_hi), int(cfg.steps), int(cfg.depth or 10), str(cfg.tol), precision
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    fmt = lambda v: reals.format_real(v, precision)  # noqa: E731
    rows = [
        (str(r.beta), r.verdict, "divergent" if r.c_empty is None else fmt(r.c_empty), fmt(r.partial_mass), fmt(r.tail_bound))
        for r in result.rows
    ]
    flips = [
        {
            "from": f.verdict_lo,
            "to": f.verdict_hi,
            "beta_lo": str(f.beta_lo),
            "beta_hi": str(f.beta_hi),
            "estimate": mpmath.nstr(reals.as_mpf(f.estimate), 12),
        }
        for f in result.flips
    ]
    if cfg.format == "json":
        header = ("beta", "verdict", "c_empty", "partial_mass", "tail_bound")
        _emit(cfg, _json_text({"rows": [dict(zip(header, r)) for r in rows], "flips": flips}))
    else:
        _emit(cfg, _csv_text(("beta", "verdict", "c_empty", "partial_mass", "tail_bound"), rows))
        for f in flips:
            print(f"flip {f['from']} -> {f['to']} in [{f['beta_lo']}, {f['beta_hi']}], beta_c ~ {f['estimate']}", file=sys.stderr)
    return EXIT_OK


_HANDLERS = {"enumerate": cmd_enumerate, "solve": cmd_solve, "verify": cmd_verify, "scan": cmd_scan}


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        return _HANDLERS[cfg.command](cfg)
    except UsageError as exc:
        print(f"xaconf {ns.command}: error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
