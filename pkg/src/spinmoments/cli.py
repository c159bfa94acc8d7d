"""Command-line interface: criterion evaluation, verification sweeps, tables.

Subcommands
    eval       evaluate one criterion on one state
    verify     oracle-vs-closed-form sweep; exit 1 if any point disagrees
    scan       grid of B values along N (fixed J) or along d (fixed N)
    min-sites  smallest violating N per dimension, optimised amplitudes
    cj-table   uncertainty bound C_J per spin

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 infeasible
(oracle cap).  Output is CSV (default) or JSON with identical values;
floats carry 12 significant digits and rows are emitted in a fixed order,
so output bytes are reproducible for a fixed config and seed.

Spin is given as --j 1/2 style rationals or --twice-j integers.  The env
vars SPINMOMENTS_CAP and SPINMOMENTS_SEED override the defaults; explicit
flags beat both.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, field

from . import __version__, analytic, criteria, kinds, optimizer, oracle
from .spin_algebra import SpinQuantum, cj_bound
from .states import (
    Bosonic,
    CapExceededError,
    Custom,
    DEFAULT_DENSE_CAP,
    GeneralizedGHZ,
    SpinOneR,
    UniformMax,
    dense_vector,
    family_label,
    make_state,
)

VERIFY_TOL = 1e-9


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    """Normalised arguments of one CLI run; round-trips through JSON."""

    command: str
    fmt: str = "csv"
    output: str = "-"
    seed: int = 0
    restarts: int = optimizer.DEFAULT_RESTARTS
    cap: int = DEFAULT_DENSE_CAP
    twice_j: int | None = None
    n_values: list[int] = field(default_factory=list)
    d_values: list[int] = field(default_factory=list)
    family: str | None = None
    theta: float | None = None
    r: float | None = None
    amplitudes: list[float] | None = None
    kind_tokens: list[str] = field(default_factory=list)
    strategy: str = "canonical"
    backend: str | None = None
    axis: str | None = None
    n_max: int | None = None
    max_d: int | None = None
    max_twice_j: int | None = None
    max_size: int | None = None
    corrupt_cj: float | None = None

    def to_dict(self) -> dict:
        return asdict(self)

    @staticmethod
    def from_dict(data: dict) -> "RunConfig":
        return RunConfig(**data)


# ---------------------------------------------------------------------------
# argument parsing


def _parse_spin(j_text: str | None, twice_j: int | None) -> int:
    if (j_text is None) == (twice_j is None):
        raise UsageError("give exactly one of --j and --twice-j")
    if twice_j is not None:
        return twice_j
    text = j_text.strip()
    if "/" in text:
        num, _, den = text.partition("/")
        if den.strip() != "2":
            raise UsageError(f"spin must be an integer or a half like 3/2, got {j_text!r}")
        return int(num)
    return 2 * int(text)


def _parse_range(text: str) -> list[int]:
    """'3' -> [3]; '2..10' -> [2, ..., 10]."""
    if ".." in text:
        lo, _, hi = text.partition("..")
        lo, hi = int(lo), int(hi)
        if hi < lo:
            raise UsageError(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    return [int(text)]


def _parse_amplitudes(text: str) -> list[float]:
    text = text.strip()
    parts = json.loads(text) if text.startswith("[") else text.split(",")
    values = [float(p) for p in parts]
    if not all(math.isfinite(v) for v in values):
        raise UsageError("amplitudes must be finite decimals")
    return values


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    return int(raw) if raw else default


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spinmoments", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", default="-", help="output path, - for stdout")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--restarts", type=int, default=optimizer.DEFAULT_RESTARTS)
    common.add_argument("--cap", type=int, default=None, help="oracle amplitude cap (d^N)")

    spin = argparse.ArgumentParser(add_help=False)
    spin.add_argument("--j", help="spin as 1/2, 1, 3/2, ...")
    spin.add_argument("--twice-j", type=int, dest="twice_j")

    p_eval = sub.add_parser("eval", parents=[common, spin], help="evaluate one criterion")
    p_eval.add_argument("--n", required=True, type=int)
    p_eval.add_argument(
        "--family",
        required=True,
        choices=("uniform-max", "bosonic", "ghz", "spin1r", "custom"),
    )
    p_eval.add_argument("--theta", type=float, help="GHZ angle, radians")
    p_eval.add_argument("--r", type=float, help="spin1r middle amplitude")
    p_eval.add_argument("--amplitudes", help="custom amplitudes: 1,0.5,1 or [1,0.5,1]")
    p_eval.add_argument("--kind", required=True)
    p_eval.add_argument("--strategy", choices=("canonical", "exhaustive"), default="canonical")
    p_eval.add_argument("--backend", choices=("analytic", "oracle"))

    p_verify = sub.add_parser("verify", parents=[common], help="oracle vs closed forms")
    p_verify.add_argument("--max-twice-j", type=int, default=9)
    p_verify.add_argument("--max-size", type=int, help="d^N grid bound (default: cap)")
    p_verify.add_argument(
        "--corrupt-cj",
        type=float,
        help="testing hook: offset the closed forms' C_J to confirm failures are caught",
    )

    p_scan = sub.add_parser("scan", parents=[common, spin], help="B along N or d")
    p_scan.add_argument("--axis", choices=("n", "d"), required=True)
    p_scan.add_argument("--n", help="site count or range, e.g. 10 or 2..10")
    p_scan.add_argument("--d", help="dimension range for axis d, e.g. 2..9")
    p_scan.add_argument("--family", choices=("uniform-max", "bosonic", "ghz", "spin1r", "custom"))
    p_scan.add_argument("--optimized", action="store_true", help="optimise amplitudes per point")
    p_scan.add_argument("--theta", type=float)
    p_scan.add_argument("--r", type=float)
    p_scan.add_argument("--amplitudes")
    p_scan.add_argument("--kinds", required=True, help="comma list: bell,epr1,ent-cj,ent-hz")

    p_min = sub.add_parser("min-sites", parents=[common], help="min N for violation per d")
    p_min.add_argument("--kind", required=True)
    p_min.add_argument("--max-d", type=int, required=True)
    p_min.add_argument("--n-max", type=int, required=True)

    p_cj = sub.add_parser("cj-table", parents=[common], help="C_J per spin")
    p_cj.add_argument("--max-twice-j", type=int, required=True)

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    seed = args.seed if args.seed is not None else _env_int("SPINMOMENTS_SEED", 0)
    cap = args.cap if args.cap is not None else _env_int("SPINMOMENTS_CAP", DEFAULT_DENSE_CAP)
    cfg = {
        "command": args.command,
        "fmt": args.format,
        "output": args.output,
        "seed": seed,
        "restarts": args.restarts,
        "cap": cap,
    }
    if args.command == "eval":
        cfg.update(
            twice_j=_parse_spin(args.j, args.twice_j),
            n_values=[args.n],
            family=args.family,
            theta=args.theta,
            r=args.r,
            amplitudes=_parse_amplitudes(args.amplitudes) if args.amplitudes else None,
            kind_tokens=[args.kind],
            strategy=args.strategy,
            backend=args.backend,
        )
    elif args.command == "verify":
        cfg.update(
            max_twice_j=args.max_twice_j,
            max_size=args.max_size,
            corrupt_cj=args.corrupt_cj,
        )
    elif args.command == "scan":
        if args.axis == "n":
            if args.n is None:
                raise UsageError("scan --axis n needs --n with a range")
            cfg.update(
                twice_j=_parse_spin(args.j, args.twice_j), n_values=_parse_range(args.n)
            )
        else:
            if args.d is None or args.n is None:
                raise UsageError("scan --axis d needs --d with a range and a fixed --n")
            d_values = _parse_range(args.d)
            if min(d_values) < 2:
                raise UsageError("dimensions must be >= 2")
            cfg.update(d_values=d_values, n_values=_parse_range(args.n))
        if args.optimized == (args.family is not None):
            raise UsageError("give exactly one of --family and --optimized")
        cfg.update(
            axis=args.axis,
            family="optimized" if args.optimized else args.family,
            theta=args.theta,
            r=args.r,
            amplitudes=_parse_amplitudes(args.amplitudes) if args.amplitudes else None,
            kind_tokens=[t.strip() for t in args.kinds.split(",") if t.strip()],
        )
    elif args.command == "min-sites":
        cfg.update(kind_tokens=[args.kind], max_d=args.max_d, n_max=args.n_max)
    elif args.command == "cj-table":
        cfg.update(max_twice_j=args.max_twice_j)
    return RunConfig(**cfg)


# ---------------------------------------------------------------------------
# output formatting


def _fmt_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return ""
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.12g}"
    if isinstance(value, tuple):
        return ",".join(_fmt_value(v) for v in value)
    return str(value)


def _json_value(value):
    if isinstance(value, float):
        if math.isnan(value):
            return None
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return float(f"{value:.12g}")
    if isinstance(value, tuple):
        return [_json_value(v) for v in value]
    return value


def render(cfg: RunConfig, columns: list[str], rows: list[dict]) -> str:
    if cfg.fmt == "json":
        doc = {
            "config": cfg.to_dict(),
            "rows": [{c: _json_value(row[c]) for c in columns} for row in rows],
            "tool_version": __version__,
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt_value(row[c]) for c in columns])
    return buf.getvalue()


def emit(cfg: RunConfig, columns: list[str], rows: list[dict]) -> None:
    text = render(cfg, columns, rows)
    if cfg.output == "-":
        sys.stdout.write(text)
    else:
        with open(cfg.output, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)


# ---------------------------------------------------------------------------
# commands


def _build_family(cfg: RunConfig):
    if cfg.family == "uniform-max":
        return UniformMax()
    if cfg.family == "bosonic":
        return Bosonic()
    if cfg.family == "ghz":
        if cfg.theta is None:
            raise UsageError("family ghz needs --theta")
        return GeneralizedGHZ(cfg.theta)
    if cfg.family == "spin1r":
        if cfg.r is None:
            raise UsageError("family spin1r needs --r")
        return SpinOneR(cfg.r)
    if cfg.family == "custom":
        if not cfg.amplitudes:
            raise UsageError("family custom needs --amplitudes")
        return Custom(tuple(cfg.amplitudes))
    raise UsageError(f"unknown family {cfg.family!r}")


def cmd_eval(cfg: RunConfig) -> int:
    j = SpinQuantum(cfg.twice_j)
    n = cfg.n_values[0]
    state = make_state(_build_family(cfg), j, n)
    kind = kinds.parse_kind(cfg.kind_tokens[0])
    backend = None if cfg.backend is None else criteria.Backend(cfg.backend)
    result = criteria.evaluate(state, kind, cfg.strategy, backend=backend, cap=cfg.cap)
    columns = ["twice_j", "n", "family", "kind", "t", "L", "R", "B", "violated", "s_signs", "l_signs", "backend"]
    rows = [
        {
            "twice_j": cfg.twice_j,
            "n": n,
            "family": cfg.family,
            "kind": kinds.kind_token(kind),
            "t": kinds.quantum_sites(kind, n),
            "L": result.lhs,
            "R": result.rhs,
            "B": result.b,
            "violated": result.violated,
            "s_signs": result.signs.s_token(),
            "l_signs": result.signs.l_token(),
            "backend": result.backend.value,
        }
    ]
    emit(cfg, columns, rows)
    return 0


def _rel_diff(a: float, b: float) -> float:
    a_odd = math.isnan(a) or math.isinf(a)
    b_odd = math.isnan(b) or math.isinf(b)
    if a_odd or b_odd:
        same = (math.isnan(a) and math.isnan(b)) or (math.isinf(a) and math.isinf(b) and a == b)
        return 0.0 if same else math.inf
    scale = max(abs(a), abs(b))
    if scale == 0.0:
        return 0.0
    return abs(a - b) / scale


def _verify_points(cfg: RunConfig):
    """Deterministic sweep grid: (label, family, twice_j) with feasible N."""
    max_size = cfg.max_size if cfg.max_size is not None else cfg.cap
    max_size = min(max_size, cfg.cap)
    spins = list(range(1, cfg.max_twice_j + 1))
    specs = [(UniformMax(), spins), (Bosonic(), spins)]
    if 1 in spins:
        specs += [(GeneralizedGHZ(math.pi / 4), [1]), (GeneralizedGHZ(0.7), [1])]
    if 2 in spins:
        specs += [(SpinOneR(0.5), [2]), (SpinOneR(1.0), [2]), (SpinOneR(2.0), [2])]
    for family, tj_list in specs:
        for tj in tj_list:
            d = tj + 1
            n = 2
            while d**n <= max_size:
                yield family, tj, n
                n += 1


def cmd_verify(cfg: RunConfig) -> int:
    kind_list = [kinds.Bell(), kinds.EntanglementHZ(), kinds.EntanglementCJ(), kinds.Steering(1, "cj")]
    columns = ["family", "twice_j", "n", "kind", "b_oracle", "b_analytic", "rel_discrepancy"]
    rows = []
    worst = 0.0
    for family, tj, n in _verify_points(cfg):
        j = SpinQuantum(tj)
        state = make_state(family, j, n)
        vec = dense_vector(state, cap=cfg.cap)
        lhs = abs(oracle.expect_product(vec, oracle.ladder_tags((-1,) * n), j)) ** 2
        for kind in kind_list:
            rhs = oracle.expect_product(vec, oracle.bound_tags(kind, n), j).real
            b_oracle = oracle.b_from_moments(lhs, max(rhs, 0.0))
            c_j = None
            if cfg.corrupt_cj is not None and kinds.uses_cj_bound(kind):
                c_j = cj_bound(j).c_j + cfg.corrupt_cj
            b_analytic = analytic.b_ratio(state, kind, c_j=c_j)
            rel = _rel_diff(b_oracle, b_analytic)
            worst = max(worst, rel)
            rows.append(
                {
                    "family": family_label(family),
                    "twice_j": tj,
                    "n": n,
                    "kind": kinds.kind_token(kind),
                    "b_oracle": b_oracle,
                    "b_analytic": b_analytic,
                    "rel_discrepancy": rel,
                }
            )
    if not rows:
        print("verify: empty grid (cap excludes every point)", file=sys.stderr)
        return 2
    emit(cfg, columns, rows)
    print(f"verify: {len(rows)} points, max relative discrepancy {worst:.3e}", file=sys.stderr)
    return 0 if worst <= VERIFY_TOL else 1


def cmd_scan(cfg: RunConfig) -> int:
    kind_list = [kinds.parse_kind(t) for t in cfg.kind_tokens]
    source = "optimized" if cfg.family == "optimized" else _build_family(cfg)
    if cfg.axis == "n":
        rows = optimizer.scan_curve(
            "n", kind_list, source, cfg.n_values,
            twice_j=cfg.twice_j, restarts=cfg.restarts, seed=cfg.seed,
        )
    else:
        if len(cfg.n_values) != 1:
            raise UsageError("scan --axis d needs a single fixed --n")
        rows = optimizer.scan_curve(
            "d", kind_list, source, [d - 1 for d in cfg.d_values],
            n_sites=cfg.n_values[0], restarts=cfg.restarts, seed=cfg.seed,
        )
    columns = ["twice_j", "n", "t", "family", "kind", "L", "R", "B", "violated", "r_vector"]
    out = [
        {
            "twice_j": r["twice_j"],
            "n": r["n"],
            "t": r["t"],
            "family": r["family"],
            "kind": r["kind"],
            "L": r["lhs"],
            "R": r["rhs"],
            "B": r["b"],
            "violated": r["violated"],
            "r_vector": r["r_vector"],
        }
        for r in rows
    ]
    emit(cfg, columns, out)
    return 0


def cmd_min_sites(cfg: RunConfig) -> int:
    kind = kinds.parse_kind(cfg.kind_tokens[0])
    if cfg.max_d < 2:
        raise UsageError("--max-d must be >= 2")
    columns = ["d", "kind", "min_n", "b_at_min_n"]
    rows = []
    for d in range(2, cfg.max_d + 1):
        res = optimizer.min_sites_for_violation(
            SpinQuantum(d - 1), kind, cfg.n_max, restarts=cfg.restarts, seed=cfg.seed
        )
        rows.append(
            {"d": d, "kind": kinds.kind_token(kind), "min_n": res.min_n, "b_at_min_n": res.b_at_min_n}
        )
    emit(cfg, columns, rows)
    return 0


def cmd_cj_table(cfg: RunConfig) -> int:
    if cfg.max_twice_j < 1:
        raise UsageError("--max-twice-j must be >= 1")
    columns = ["twice_j", "c_j", "source"]
    rows = []
    for tj in range(1, cfg.max_twice_j + 1):
        bound = cj_bound(SpinQuantum(tj))
        rows.append({"twice_j": tj, "c_j": bound.c_j, "source": bound.source.value})
    emit(cfg, columns, rows)
    return 0


_COMMANDS = {
    "eval": cmd_eval,
    "verify": cmd_verify,
    "scan": cmd_scan,
    "min-sites": cmd_min_sites,
    "cj-table": cmd_cj_table,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors, 0 for --help
        return int(exc.code or 0)
    try:
        cfg = config_from_args(args)
        return _COMMANDS[cfg.command](cfg)
    except (CapExceededError, criteria.ExhaustiveSearchError) as exc:
        print(f"spinmoments: {exc}", file=sys.stderr)
        return 3
    except (UsageError, ValueError, TypeError) as exc:
        print(f"spinmoments: {exc}", file=sys.stderr)
        return 2


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
