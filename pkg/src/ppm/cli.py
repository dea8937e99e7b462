"""Command-line front end: one subcommand per experiment.

Exit codes: 0 success, 1 verification mismatch, 2 usage error,
3 resource or range error. All outputs are deterministic for a given
configuration; CSV files are byte-identical across runs.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, fields
from pathlib import Path

from . import golden
from .errors import PpmError
from .models import (
    ModelKind,
    ModelSpec,
    baseline_estimates,
    estimate_pi,
    model_sequence,
    pi_upper_hint,
    prime_upper_bound,
    relative_error_series,
)
from .partitions import (
    GAP_CSV_HEADER,
    enumerate_by_norm,
    enumerate_by_size,
    gap_composition,
    verify_inequalities,
)
from .primes import PrimeTable, build_prime_table, load_prime_table
from .serialize import write_csv
from .stats import co_occurrence, merit_census, p_ratio_series, q_ratio, twin_census
from .svgplot import write_svg

CONFIG_ENV_VAR = "PPM_CONFIG"

_MODEL_SPECS = {
    "1": ModelKind.MODEL1,
    "2": ModelKind.MODEL2,
    "2*": ModelKind.MODEL2_STAR,
}
_MODEL_SLUGS = {"1": "model1", "2": "model2", "2*": "model2star"}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    sieve_limit: int | None = None  # None: size the sieve to the command
    output_dir: Path = Path(".")
    format: str = "both"  # csv | svg | both
    tolerance_pp: float = 0.5
    range_mode: str = "index"  # index | magnitude
    parity_floor: bool = False
    stride: int = 1000
    threads: int = 1
    sieve_cache: Path | None = None

    def validate(self) -> None:
        if self.sieve_limit is not None and self.sieve_limit < 100:
            raise UsageError(f"sieve_limit must be >= 100, got {self.sieve_limit}")
        if self.format not in ("csv", "svg", "both"):
            raise UsageError(f"format must be csv, svg or both, got {self.format!r}")
        if self.tolerance_pp <= 0:
            raise UsageError(f"tolerance_pp must be > 0, got {self.tolerance_pp}")
        if self.range_mode not in ("index", "magnitude"):
            raise UsageError(f"range_mode must be index or magnitude, got {self.range_mode!r}")
        if self.stride < 1:
            raise UsageError(f"stride must be >= 1, got {self.stride}")
        if self.threads < 1:
            raise UsageError(f"threads must be >= 1, got {self.threads}")


_BOOL_STRINGS = {"true": True, "1": True, "yes": True, "on": True,
                 "false": False, "0": False, "no": False, "off": False}


def _coerce(name: str, kind, raw: str):
    try:
        if kind is bool:
            return _BOOL_STRINGS[raw.strip().lower()]
        return kind(raw.strip())
    except (KeyError, ValueError):
        raise UsageError(f"bad value for config key {name}: {raw!r}")


def _parse_config_file(path: Path) -> dict:
    kinds = {
        "sieve_limit": int, "output_dir": Path, "format": str,
        "tolerance_pp": float, "range_mode": str, "parity_floor": bool,
        "stride": int, "threads": int, "sieve_cache": Path,
    }
    if not path.exists():
        raise UsageError(f"config file not found: {path}")
    values: dict = {}
    for lineno, line in enumerate(path.read_text().splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, _, raw = line.partition("=")
        key = key.strip()
        if key not in kinds:
            raise UsageError(f"{path}:{lineno}: unknown config key {key!r}")
        values[key] = _coerce(key, kinds[key], raw)
    return values


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    config_path = args.config or os.environ.get(CONFIG_ENV_VAR)
    if config_path:
        for key, value in _parse_config_file(Path(config_path)).items():
            setattr(cfg, key, value)
    for f in fields(RunConfig):
        cli_value = getattr(args, f.name, None)
        if cli_value is not None:
            setattr(cfg, f.name, cli_value)
    cfg.output_dir = Path(cfg.output_dir)
    if cfg.sieve_cache is not None:
        cfg.sieve_cache = Path(cfg.sieve_cache)
    cfg.validate()
    return cfg


def _get_table(cfg: RunConfig, required_limit: int) -> PrimeTable:
    limit = cfg.sieve_limit if cfg.sieve_limit is not None else required_limit
    if limit < required_limit:
        raise PpmError(
            f"sieve limit {limit} is too small for this run; need at least {required_limit}"
        )
    if cfg.sieve_cache is not None and cfg.sieve_cache.exists():
        table = load_prime_table(cfg.sieve_cache)
        if table.limit >= limit:
            return table
    table = build_prime_table(limit)
    if cfg.sieve_cache is not None:
        table.save_cache(cfg.sieve_cache)
    return table


def _spec(kind: ModelKind, cfg: RunConfig) -> ModelSpec:
    return ModelSpec(kind, parity_floor=cfg.parity_floor)


def _print_table(header: list[str], rows: list[list[str]]) -> None:
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
              for i, h in enumerate(header)]
    print("  ".join(h.rjust(w) for h, w in zip(header, widths)))
    for row in rows:
        print("  ".join(c.rjust(w) for c, w in zip(row, widths)))


# ---------------------------------------------------------------------------
# subcommands


def cmd_pi_table(args: argparse.Namespace, cfg: RunConfig) -> int:
    checkpoints = sorted(set(args.checkpoints))
    if any(x < 2 for x in checkpoints):
        raise UsageError("checkpoints must be >= 2")
    top = max(checkpoints)
    required = max(top + 2, prime_upper_bound(pi_upper_hint(top)))
    t = _get_table(cfg, required)
    specs = {name: _spec(kind, cfg) for name, kind in _MODEL_SPECS.items()}
    rows = []
    for x in checkpoints:
        base = baseline_estimates(x)
        rows.append((x, t.pi(x), base.pnt, base.li,
                     estimate_pi(specs["1"], x),
                     estimate_pi(specs["2"], x, t),
                     estimate_pi(specs["2*"], x)))
    header = ("n", "pi", "n_over_log_n", "li", "model1", "model2", "model2star")
    path = write_csv(cfg.output_dir / "pi_table.csv", header, rows)
    _print_table(list(header),
                 [[f"{v:.6g}" if isinstance(v, float) else str(v) for v in row]
                  for row in rows])
    print(f"wrote {path}")

    if args.verify:
        known = dict(zip(golden.PI_TABLE_CHECKPOINTS,
                         zip(golden.PI_EXACT, golden.PI_ESTIMATES_MODEL1,
                             golden.PI_ESTIMATES_MODEL2, golden.PI_ESTIMATES_MODEL2_STAR)))
        unknown = [x for x in checkpoints if x not in known]
        if unknown:
            raise UsageError(
                f"--verify has reference values only for {golden.PI_TABLE_CHECKPOINTS}, "
                f"not {unknown}"
            )
        mismatches = []
        for row in rows:
            x = row[0]
            expected = known[x]
            got = (row[1], row[4], row[5], row[6])
            for col, e, g in zip(("pi", "model1", "model2", "model2star"), expected, got):
                if e != g:
                    mismatches.append(f"n={x} {col}: expected {e}, computed {g}")
        if mismatches:
            for line in mismatches:
                print(f"VERIFY MISMATCH {line}", file=sys.stderr)
            return 1
        print("verify: all prime-count cells match the reference table")
    return 0


def cmd_gaps(args: argparse.Namespace, cfg: RunConfig) -> int:
    n_max = args.n_max
    if n_max < 1:
        raise UsageError(f"--n-max must be >= 1, got {n_max}")
    t = _get_table(cfg, prime_upper_bound(n_max + 1))
    seq = model_sequence(_spec(ModelKind.MODEL1, cfg), n_max + 1)
    rows = []
    for n in range(1, n_max + 1):
        actual = t.prime_gap(n)
        model = seq.gap(n)
        rows.append((n, t.nth_prime(n), actual, model, actual == model))
    header = ("n", "p_n", "actual_gap", "model1_gap", "match")
    path = write_csv(cfg.output_dir / "gap_table.csv", header, rows)
    _print_table(list(header), [[str(v) if not isinstance(v, bool) else ("yes" if v else "no")
                                 for v in row] for row in rows])
    print(f"wrote {path}")

    if args.verify:
        if n_max < golden.GAP_TABLE_N_MAX:
            raise UsageError(
                f"--verify needs --n-max >= {golden.GAP_TABLE_N_MAX} to cover the reference table"
            )
        mismatches = []
        computed_diff = []
        for n in range(1, golden.GAP_TABLE_N_MAX + 1):
            _, _, actual, model, _ = rows[n - 1]
            if actual != golden.GAP_ACTUAL[n - 1]:
                mismatches.append(f"n={n} actual gap: expected {golden.GAP_ACTUAL[n - 1]}, computed {actual}")
            if model != golden.GAP_MODEL1[n - 1]:
                mismatches.append(f"n={n} model gap: expected {golden.GAP_MODEL1[n - 1]}, computed {model}")
            if actual != model:
                computed_diff.append(n)
        if tuple(computed_diff) != golden.GAP_MISMATCH_INDICES:
            mismatches.append(
                f"gap disagreement indices: expected {golden.GAP_MISMATCH_INDICES}, "
                f"computed {tuple(computed_diff)}"
            )
        if mismatches:
            for line in mismatches:
                print(f"VERIFY MISMATCH {line}", file=sys.stderr)
            return 1
        print(f"verify: gap table matches; model misses exactly at {golden.GAP_MISMATCH_INDICES}")
    return 0


def cmd_merit_census(args: argparse.Namespace, cfg: RunConfig) -> int:
    bound = args.n_max
    if cfg.range_mode == "magnitude":
        required = max(bound + 2, prime_upper_bound(pi_upper_hint(bound) + 2))
        t = _get_table(cfg, required)
        n_max = t.pi(bound)
    else:
        t = _get_table(cfg, prime_upper_bound(bound + 1))
        n_max = bound
    index_filter = "primes_only" if args.filter == "primes" else "all"
    census = merit_census(n_max, t, index_filter)
    path = write_csv(cfg.output_dir / "merit_census.csv", census.csv_header(),
                     [census.csv_row()])
    print(f"census over {census.range_description} ({cfg.range_mode} mode)")
    print(f"  M > 1:  {100 * census.frac_M_gt1:.4f}%   M < 1:  {100 * census.frac_M_lt1:.4f}%")
    print(f"  M1 > 1: {100 * census.frac_M1_gt1:.4f}%   M1 < 1: {100 * census.frac_M1_lt1:.4f}%")
    print(f"  agree:  {100 * census.frac_agree:.4f}%   ties: {census.tie_count}")
    print(f"wrote {path}")
    return 0


def cmd_twin_stats(args: argparse.Namespace, cfg: RunConfig) -> int:
    bound = args.bound
    t = _get_table(cfg, bound + 2)
    census = twin_census(bound, t)
    co = co_occurrence(bound, t)
    p1 = write_csv(cfg.output_dir / "twin_census.csv", census.csv_header(),
                   [census.csv_row()])
    p2 = write_csv(cfg.output_dir / "co_occurrence.csv", co.csv_header(),
                   [co.csv_row()])
    print(f"twin pairs <= {bound}: {census.twin_pairs}; "
          f"prime-indexed: {census.prime_indexed_twin_pairs}")
    print(f"prob1 = {census.prob1:.6g}  prob2 = {census.prob2:.6g}  P = {census.ratio_P:.6g}")
    print(f"{100 * co.frac_prime_indexed_gaps_twin:.4f}% of prime-indexed gaps are twin pairs; "
          f"{100 * co.frac_twins_prime_indexed:.4f}% of twin pairs start prime-indexed")
    print(f"wrote {p1}")
    print(f"wrote {p2}")
    return 0


def _emit_series(cfg: RunConfig, stem: str, header: tuple[str, str],
                 points: list[tuple], title: str) -> None:
    if cfg.format in ("csv", "both"):
        print(f"wrote {write_csv(cfg.output_dir / (stem + '.csv'), header, points)}")
    if cfg.format in ("svg", "both"):
        print(f"wrote {write_svg(cfg.output_dir / (stem + '.svg'), points, title=title, x_label=header[0], y_label=header[1])}")


def cmd_pq(args: argparse.Namespace, cfg: RunConfig) -> int:
    bound = args.bound
    required = bound + 2
    if args.q_bound:
        required = max(required, 2 * args.q_bound + 1)
    t = _get_table(cfg, required)
    series = p_ratio_series(bound, cfg.stride, t)
    _emit_series(cfg, "p_ratio", ("n", "P"), series, "twin-likelihood ratio P(n)")
    if series:
        below = sum(1 for _, v in series if v <= 1.0)
        print(f"P samples: {len(series)}; final P({series[-1][0]}) = {series[-1][1]:.6g}; "
              f"samples <= 1: {below}")
    if args.q_bound:
        q_points = []
        for x in range(cfg.stride, args.q_bound + 1, cfg.stride):
            try:
                q_points.append((x, q_ratio(x, t)))
            except PpmError:
                continue
        _emit_series(cfg, "q_ratio", ("n", "Q"), q_points,
                     "windowed twin-likelihood ratio Q(n)")
        if q_points:
            print(f"Q samples: {len(q_points)}; final Q({q_points[-1][0]}) = {q_points[-1][1]:.6g}")
    return 0


def cmd_relerr(args: argparse.Namespace, cfg: RunConfig) -> int:
    names = ["1", "2", "2*"] if args.model == "all" else [args.model]
    n_max = args.n_max
    t = _get_table(cfg, prime_upper_bound(n_max))
    for name in names:
        series = relative_error_series(_spec(_MODEL_SPECS[name], cfg), n_max, t, cfg.stride)
        slug = _MODEL_SLUGS[name]
        _emit_series(cfg, f"relerr_{slug}", ("n", "relative_error"), series,
                     f"relative error of {slug} vs the primes")
        if series:
            n_last, err = series[-1]
            print(f"{slug}: relative error at n={n_last}: {err:.6g}")
    return 0


def cmd_gap_census(args: argparse.Namespace, cfg: RunConfig) -> int:
    n_from, n_to = args.n_from, args.n_to
    if n_from < 1 or n_to < n_from:
        raise UsageError(f"need 1 <= --n-from <= --n-to, got {n_from}..{n_to}")
    t = _get_table(cfg, prime_upper_bound(n_to + 1))
    rows = []
    predicted = other = even = 0
    for n in range(n_from, n_to + 1):
        comp = gap_composition(n, t)
        if comp.total != t.prime_gap(n):  # bijection identity; never expected
            raise PpmError(f"gap census total {comp.total} != gap {t.prime_gap(n)} at n={n}")
        rows.extend(comp.csv_rows())
        predicted += comp.count_predicted
        other += comp.count_other_odd
        even += comp.count_even
    path = write_csv(cfg.output_dir / "gap_census.csv", GAP_CSV_HEADER, rows)
    total = predicted + other + even
    print(f"gaps {n_from}..{n_to}: {total} integers; "
          f"predicted {predicted}, other odd {other}, even {even}")
    print(f"wrote {path}")
    return 0


def _max_product_for_size(size: int) -> int:
    if size < 2:
        return 1
    q, r = divmod(size, 3)
    if r == 0:
        return 3 ** q
    if r == 1:
        return 4 * 3 ** (q - 1)
    return 2 * 3 ** q


def cmd_verify_inequalities(args: argparse.Namespace, cfg: RunConfig) -> int:
    max_size, max_norm = args.max_size, args.max_norm
    needed_index = max(_max_product_for_size(max_size), max_norm, max_size, 2)
    t = _get_table(cfg, prime_upper_bound(needed_index))
    failures = []
    checked = 0
    for size in range(0, max_size + 1):
        for lam in enumerate_by_size(size):
            report = verify_inequalities(lam, t)
            checked += 1
            if not report.all_pass:
                failures.append((lam, report.failures()))
    for nval in range(1, max_norm + 1):
        for lam in enumerate_by_norm(nval, no_ones=True):
            report = verify_inequalities(lam, t)
            checked += 1
            if not report.all_pass:
                failures.append((lam, report.failures()))
    if failures:
        for lam, names in failures:
            print(f"FAIL {lam}: {', '.join(names)}", file=sys.stderr)
        return 1
    print(f"all inequalities hold for {checked} partitions "
          f"(sizes <= {max_size}, unit-free norms <= {max_norm})")
    return 0


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("configuration")
    g.add_argument("--config", help="key=value config file (or set PPM_CONFIG)")
    g.add_argument("--sieve-limit", type=int, default=None, dest="sieve_limit")
    g.add_argument("--output-dir", type=Path, default=None, dest="output_dir")
    g.add_argument("--format", choices=("csv", "svg", "both"), default=None)
    g.add_argument("--tolerance-pp", type=float, default=None, dest="tolerance_pp")
    g.add_argument("--range-mode", choices=("index", "magnitude"), default=None,
                   dest="range_mode")
    g.add_argument("--parity-floor", action="store_const", const=True, default=None,
                   dest="parity_floor", help="round odd correction terms up to even")
    g.add_argument("--stride", type=int, default=None)
    g.add_argument("--threads", type=int, default=None)
    g.add_argument("--sieve-cache", type=Path, default=None, dest="sieve_cache",
                   help="bitset file to reuse the sieve across runs")

    parser = argparse.ArgumentParser(
        prog="ppm",
        description="Divisor-sum models of prime distribution and prime-gap censuses",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pi-table", parents=[common],
                       help="prime-count comparison table with model estimates")
    p.add_argument("--checkpoints", type=int, nargs="+",
                   default=list(golden.PI_TABLE_CHECKPOINTS))
    p.add_argument("--verify", action="store_true",
                   help="compare against the bundled reference table")
    p.set_defaults(handler=cmd_pi_table)

    p = sub.add_parser("gaps", parents=[common],
                       help="actual vs modeled prime gaps")
    p.add_argument("--n-max", type=int, default=golden.GAP_TABLE_N_MAX, dest="n_max")
    p.add_argument("--verify", action="store_true")
    p.set_defaults(handler=cmd_gaps)

    p = sub.add_parser("merit-census", parents=[common],
                       help="greater/less-than-one census of gap merits")
    p.add_argument("--n-max", type=int, default=1_000_000, dest="n_max")
    p.add_argument("--filter", choices=("all", "primes"), default="all")
    p.set_defaults(handler=cmd_merit_census)

    p = sub.add_parser("twin-stats", parents=[common],
                       help="twin-pair counts and probability ratios")
    p.add_argument("--bound", type=int, default=1_000_000)
    p.set_defaults(handler=cmd_twin_stats)

    p = sub.add_parser("pq", parents=[common],
                       help="cumulative and windowed twin-likelihood ratio series")
    p.add_argument("--bound", type=int, default=1_000_000)
    p.add_argument("--q-bound", type=int, default=0, dest="q_bound")
    p.set_defaults(handler=cmd_pq)

    p = sub.add_parser("relerr", parents=[common],
                       help="relative error of the modeled sequences")
    p.add_argument("--model", choices=("1", "2", "2*", "all"), default="all")
    p.add_argument("--n-max", type=int, default=100_000, dest="n_max")
    p.set_defaults(handler=cmd_relerr)

    p = sub.add_parser("gap-census", parents=[common],
                       help="classify the integers inside each prime gap")
    p.add_argument("--n-from", type=int, default=1, dest="n_from")
    p.add_argument("--n-to", type=int, default=25, dest="n_to")
    p.set_defaults(handler=cmd_gap_census)

    p = sub.add_parser("verify-inequalities", parents=[common],
                       help="run the norm/supernorm inequality suite")
    p.add_argument("--max-size", type=int, default=12, dest="max_size")
    p.add_argument("--max-norm", type=int, default=300, dest="max_norm")
    p.set_defaults(handler=cmd_verify_inequalities)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _resolve_config(args)
        return args.handler(args, cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except PpmError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
