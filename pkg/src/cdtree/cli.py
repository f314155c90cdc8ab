"""Command-line entry point: ``cdtree build|baseline|synth|eval|bench``."""
from __future__ import annotations

import argparse
import csv
import logging
import statistics
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from .baseline import info_gain_tree
from .cdt import DEFAULT_ALPHA, DEFAULT_CAP, DEFAULT_MAX_HEIGHT, build_cdt
from .dataset import DataError, load_csv, load_rules
from .render import FORMATS, audit_report, parse_tree, render
from .synth import GroundTruth, eval_recall, gen_noise, gen_random_bn, gen_single_edge

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2

log = logging.getLogger("cdtree")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    input: Path | None = None
    out: Path | None = None
    outcome: str | None = None
    weight_column: str | None = None
    rules: Path | None = None
    alpha: float = DEFAULT_ALPHA
    h_max: int = DEFAULT_MAX_HEIGHT
    cap: int = DEFAULT_CAP
    min_gain: float = 0.0
    prune: bool = True
    seed: int = 0
    format: str = "text"
    # synth / eval / bench
    kind: str = "single-edge"
    num_vars: int = 20
    n: int = 10_000
    degree: int = 3
    effect: float = 2.0
    truth: Path | None = None
    sizes: list[int] = field(default_factory=lambda: [10_000, 20_000, 40_000])
    reps: int = 3
    criterion: str = "gain"

    def validate(self) -> None:
        if not 0.0 < self.alpha < 1.0:
            raise UsageError("--alpha must lie in (0, 1)")
        if self.h_max < 1:
            raise UsageError("--max-height must be >= 1")
        if self.cap < 1:
            raise UsageError("--max-strat-attrs must be >= 1")
        if self.min_gain < 0:
            raise UsageError("--min-gain must be >= 0")
        if self.format not in FORMATS:
            raise UsageError(f"--format must be one of {FORMATS}")
        if self.command in ("build", "baseline"):
            if self.input is None or not self.outcome:
                raise UsageError(f"{self.command} needs an input file and --outcome")
        if self.command == "eval" and (self.input is None or self.truth is None):
            raise UsageError("eval needs a tree file and --truth")
        if self.command == "synth" and self.out is None:
            raise UsageError("synth needs --out")
        if self.command == "bench" and (not self.sizes or min(self.sizes) < 1 or self.reps < 1):
            raise UsageError("bench needs positive --sizes and --reps")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, help="output path (stdout if omitted)")
    common.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
    common.add_argument("--max-height", dest="h_max", type=int, default=DEFAULT_MAX_HEIGHT)
    common.add_argument("--max-strat-attrs", dest="cap", type=int, default=DEFAULT_CAP)
    common.add_argument("--min-gain", type=float, default=0.0)
    common.add_argument("--no-prune", dest="prune", action="store_false")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", default="text", choices=FORMATS)
    common.add_argument("-v", "--verbose", action="store_true")

    data = argparse.ArgumentParser(add_help=False)
    data.add_argument("input", type=Path)
    data.add_argument("--outcome", required=True)
    data.add_argument("--weight-column")
    data.add_argument("--rules", type=Path)

    p = _Parser(prog="cdtree", description="Causal decision trees for binary data.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("build", parents=[common, data], help="build a causal decision tree")
    b = sub.add_parser("baseline", parents=[common, data], help="build an information-gain tree")
    b.add_argument("--criterion", default="gain", choices=("gain", "discriminative"))

    s = sub.add_parser("synth", parents=[common], help="generate a synthetic dataset")
    s.add_argument("--kind", default="single-edge", choices=("single-edge", "random-bn", "noise"))
    s.add_argument("--num-vars", type=int, default=20)
    s.add_argument("--n", type=int, default=10_000)
    s.add_argument("--degree", type=int, default=3)
    s.add_argument("--effect", type=float, default=2.0)

    e = sub.add_parser("eval", parents=[common], help="score a tree against ground truth")
    e.add_argument("input", type=Path, help="tree JSON written by build --format json")
    e.add_argument("--truth", type=Path, required=True)

    bench = sub.add_parser("bench", parents=[common], help="time construction over a size grid")
    bench.add_argument("--num-vars", type=int, default=40, help="predictive attributes")
    bench.add_argument("--sizes", type=lambda t: [int(x) for x in t.split(",")],
                       default=[10_000, 20_000, 40_000])
    bench.add_argument("--reps", type=int, default=3)
    bench.add_argument("--degree", type=int, default=3)
    return p


def config_from_args(argv=None) -> RunConfig:
    ns = vars(build_parser().parse_args(argv))
    ns.pop("verbose", None)
    return RunConfig(**ns)


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def _load(cfg: RunConfig):
    rules = load_rules(cfg.rules) if cfg.rules else ()
    return load_csv(cfg.input, cfg.outcome, cfg.weight_column, rules)


def run_bench(num_vars: int, sizes, reps: int, seed: int, degree: int = 3,
              alpha: float = DEFAULT_ALPHA, h_max: int = DEFAULT_MAX_HEIGHT,
              cap: int = DEFAULT_CAP) -> list[tuple[int, int, float]]:
    """Median construction wall-clock (ms) per dataset size.

    Each size gets its own sample from one random network fixed by ``seed``;
    data generation is outside the timed region.
    """
    rows = []
    for n in sizes:
        data, _ = gen_random_bn(num_vars + 1, degree, seed, n=n)
        times = []
        for _ in range(reps):
            t0 = time.perf_counter()
            build_cdt(data, alpha, h_max, cap)
            times.append((time.perf_counter() - t0) * 1000.0)
        rows.append((num_vars, n, statistics.median(times)))
    return rows


def run(cfg: RunConfig) -> int:
    cfg.validate()
    if cfg.command == "build":
        data = _load(cfg)
        tree = build_cdt(data, cfg.alpha, cfg.h_max, cfg.cap, cfg.prune)
        _emit(render(tree, cfg.format), cfg.out)
        audit = audit_report(tree)
        if cfg.out is None:
            sys.stderr.write(audit)
        else:
            cfg.out.with_name(cfg.out.name + ".audit.tsv").write_text(audit, encoding="utf-8")
    elif cfg.command == "baseline":
        data = _load(cfg)
        tree = info_gain_tree(data, cfg.h_max, cfg.min_gain, cfg.criterion)
        _emit(render(tree, cfg.format), cfg.out)
    elif cfg.command == "synth":
        truth = None
        if cfg.kind == "single-edge":
            data, truth = gen_single_edge(cfg.num_vars, cfg.effect, cfg.seed, n=cfg.n)
        elif cfg.kind == "random-bn":
            data, truth = gen_random_bn(cfg.num_vars, cfg.degree, cfg.seed, n=cfg.n)
        else:
            data = gen_noise(cfg.num_vars, cfg.n, cfg.seed)
        data.merged().to_csv(cfg.out, weight_column="count")
        if truth is not None:
            truth.save(truth_path(cfg.out))
    elif cfg.command == "eval":
        tree = parse_tree(cfg.input.read_text(encoding="utf-8"))
        report = eval_recall(tree, GroundTruth.load(cfg.truth))
        _emit(report.to_json() + "\n", cfg.out)
    elif cfg.command == "bench":
        rows = run_bench(cfg.num_vars, cfg.sizes, cfg.reps, cfg.seed, cfg.degree,
                         cfg.alpha, cfg.h_max, cfg.cap)
        if cfg.out is None:
            fh = sys.stdout
        else:
            fh = cfg.out.open("w", newline="", encoding="utf-8")
        try:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["num_vars", "n", "wall_ms"])
            for m, n, ms in rows:
                w.writerow([m, n, f"{ms:.3f}"])
        finally:
            if fh is not sys.stdout:
                fh.close()
    return EXIT_OK


def truth_path(data_path: Path) -> Path:
    return data_path.with_name(data_path.stem + ".truth.json")


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    logging.basicConfig(level=logging.INFO if ("-v" in argv or "--verbose" in argv)
                        else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = config_from_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return run(cfg)
    except UsageError as exc:
        print(f"cdtree: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, FileNotFoundError, KeyError, ValueError, OSError) as exc:
        print(f"cdtree: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
