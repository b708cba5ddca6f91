"""Command-line front end.

Exit codes: 0 embedded/success, 1 runtime error, 2 stopped (not alignable),
3 stopped (noise dominated), 64 usage error, 74 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .data_model import center_columns, load_csv, save_csv
from .errors import DuoEmbedError, IoError, ParseError, ShapeError
from .evaluation import MetricReport, jaccard_concordance, overall_rand
from .data_model import LabeledPartition
from .kernel import build_duo_kernel, cross_sq_distances, select_bandwidth
from .pipeline import RunConfig, RunStatus, run, write_run_artifact
from .screening import DEFAULT_K, screen_alignability
from .simulation import (
    sample_negative_control,
    sample_pure_noise_pair,
    sample_setting1,
    sample_setting2,
    sample_torus_pair,
)
from .spectral_diagnostics import detect_noise_regime, scaled_bulk_eigenvalues
from . import bench as bench_mod

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_ALIGNABLE = 2
EXIT_NOISE_DOMINATED = 3
EXIT_USAGE = 64
EXIT_IO = 74


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _parse_index_set(text: str) -> tuple[int, ...]:
    """Accept '2-7' ranges and '1,3,5' lists."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise ValueError(f"empty index set: {text!r}")
    return tuple(out)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="duoembed", description="Joint kernel spectral embeddings of two datasets")
    sub = p.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("embed", help="run the full joint-embedding flow")
    pe.add_argument("--x", required=True)
    pe.add_argument("--y", required=True)
    pe.add_argument("--omega", default="0.5")
    pe.add_argument("--gamma1", type=_parse_index_set, default=tuple(range(2, 8)))
    pe.add_argument("--gamma2", type=_parse_index_set, default=tuple(range(2, 8)))
    pe.add_argument("--out", required=True)
    pe.add_argument("--skip-screening", action="store_true")
    pe.add_argument("--noise-check", action="store_true")
    pe.add_argument("--seed", type=int, default=0)
    pe.add_argument("--has-header", action="store_true")

    ps = sub.add_parser("screen", help="alignability screening only")
    ps.add_argument("--x", required=True)
    ps.add_argument("--y", required=True)
    ps.add_argument("--omega", type=float, default=0.5)
    ps.add_argument("--k", type=int, default=DEFAULT_K)
    ps.add_argument("--out", default=None)
    ps.add_argument("--has-header", action="store_true")

    pn = sub.add_parser("noise-check", help="noise-regime detection only")
    pn.add_argument("--x", required=True)
    pn.add_argument("--y", required=True)
    pn.add_argument("--omega", type=float, default=0.5)
    pn.add_argument("--k-skip", type=int, default=5)
    pn.add_argument("--c1", type=float, default=0.1)
    pn.add_argument("--c2", type=float, default=0.01)
    pn.add_argument("--out", default=None)
    pn.add_argument("--has-header", action="store_true")

    pm = sub.add_parser("simulate", help="write generator outputs")
    pm.add_argument("--setting", required=True, choices=["1", "2", "torus", "noise", "negcontrol"])
    pm.add_argument("--n1", type=int, required=True)
    pm.add_argument("--n2", type=int, required=True)
    pm.add_argument("--p", type=int, default=800)
    pm.add_argument("--tau", type=float, default=0.0)
    pm.add_argument("--kind", default="klein_vs_line")
    pm.add_argument("--seed", type=int, default=0)
    pm.add_argument("--out", required=True)

    pv = sub.add_parser("evaluate", help="score embeddings against labels or clean signals")
    pv.add_argument("--metric", required=True, choices=["rand", "jaccard"])
    pv.add_argument("--est-x"), pv.add_argument("--true-x")
    pv.add_argument("--est-y"), pv.add_argument("--true-y")
    pv.add_argument("--embedding"), pv.add_argument("--clean")
    pv.add_argument("--k", type=int, default=50)
    pv.add_argument("--out", default=None)

    pb = sub.add_parser("bench", help="full experiment loop, long-format results.csv")
    pb.add_argument("--task", required=True, choices=["clustering", "manifold"])
    pb.add_argument("--reps", type=int, required=True)
    pb.add_argument("--tau-grid", default="0,1,2,3")
    pb.add_argument("--n-grid", default="400,600")
    pb.add_argument("--setting", type=int, default=1, choices=[1, 2])
    pb.add_argument("--seed", type=int, default=0)
    pb.add_argument("--out", required=True)
    return p


def _load_pair(args):
    x = center_columns(load_csv(args.x, has_header=getattr(args, "has_header", False)))
    y = center_columns(load_csv(args.y, has_header=getattr(args, "has_header", False)))
    return x, y


def _cmd_embed(args) -> int:
    x, y = _load_pair(args)
    omega = "auto" if args.omega == "auto" else float(args.omega)
    cfg = RunConfig(
        omega=omega,
        gamma1=tuple(args.gamma1),
        gamma2=tuple(args.gamma2),
        skip_screening=args.skip_screening,
        noise_check=args.noise_check,
        seed=args.seed,
    )
    result = run(x, y, cfg)
    write_run_artifact(result, args.out)
    if result.status is RunStatus.STOPPED_NOT_ALIGNABLE:
        return EXIT_NOT_ALIGNABLE
    if result.status is RunStatus.STOPPED_NOISE_DOMINATED:
        return EXIT_NOISE_DOMINATED
    return EXIT_OK


def _cmd_screen(args) -> int:
    x, y = _load_pair(args)
    report = screen_alignability(x, y, omega=args.omega, k=args.k)
    text = report.to_json()
    if args.out:
        Path(args.out).write_text(text)
    else:
        print(text)
    return EXIT_OK if report.alignable else EXIT_NOT_ALIGNABLE


def _cmd_noise_check(args) -> int:
    x, y = _load_pair(args)
    d = cross_sq_distances(x, y)
    k = build_duo_kernel(d, select_bandwidth(d, args.omega))
    w = scaled_bulk_eigenvalues(k, x.p)
    report = detect_noise_regime(w, args.k_skip, args.c1, args.c2)
    text = report.to_json()
    if args.out:
        Path(args.out).write_text(text)
    else:
        print(text)
    return EXIT_NOISE_DOMINATED if report.noise_dominated else EXIT_OK


def _cmd_simulate(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    meta = {
        "setting": args.setting,
        "n1": args.n1,
        "n2": args.n2,
        "p": args.p,
        "tau": args.tau,
        "seed": args.seed,
    }
    labels_x = labels_y = None
    if args.setting == "1":
        x, y, labels_x, labels_y = sample_setting1(args.n1, args.n2, args.p, args.tau, seed=args.seed)
    elif args.setting == "2":
        x, y, labels_x, labels_y = sample_setting2(args.n1, args.n2, args.p, args.tau, seed=args.seed)
    elif args.setting == "torus":
        x, y, y_clean = sample_torus_pair(args.n1, args.n2, args.p, seed=args.seed)
        save_csv(y_clean, out / "y_clean.csv")
    elif args.setting == "noise":
        x, y = sample_pure_noise_pair(args.n1, args.n2, args.p, seed=args.seed)
    else:
        meta["kind"] = args.kind
        x, y = sample_negative_control(args.kind, args.n1, args.n2, seed=args.seed)
    save_csv(x, out / "x.csv")
    save_csv(y, out / "y.csv")
    if labels_x is not None:
        np.savetxt(out / "labels_x.csv", labels_x.assignments, fmt="%d")
        np.savetxt(out / "labels_y.csv", labels_y.assignments, fmt="%d")
    (out / "meta.json").write_text(json.dumps(meta, indent=2))
    return EXIT_OK


def _read_labels(path) -> LabeledPartition:
    return LabeledPartition(np.loadtxt(path, dtype=int, ndmin=1))


def _cmd_evaluate(args) -> int:
    if args.metric == "rand":
        if not all([args.est_x, args.true_x, args.est_y, args.true_y]):
            raise ShapeError("rand metric needs --est-x/--true-x/--est-y/--true-y")
        report = overall_rand(
            _read_labels(args.est_x),
            _read_labels(args.true_x),
            _read_labels(args.est_y),
            _read_labels(args.true_y),
        )
    else:
        if not all([args.embedding, args.clean]):
            raise ShapeError("jaccard metric needs --embedding and --clean")
        embeds = np.loadtxt(args.embedding, delimiter=",", ndmin=2)
        clean = load_csv(args.clean)
        value = jaccard_concordance(embeds, clean, k=args.k)
        report = MetricReport(name="jaccard_concordance", value=value)
    text = report.to_json()
    if args.out:
        Path(args.out).write_text(text)
    else:
        print(text)
    return EXIT_OK


def _cmd_bench(args) -> int:
    if args.reps < 1:
        raise SystemExit(EXIT_USAGE)
    if args.task == "clustering":
        grid = [float(t) for t in args.tau_grid.split(",")]
    else:
        grid = [float(t) for t in args.n_grid.split(",")]
    rows = bench_mod.run_bench(args.task, args.reps, grid, seed=args.seed, setting=args.setting)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    bench_mod.write_rows(rows, out / "results.csv")
    return EXIT_OK


_COMMANDS = {
    "embed": _cmd_embed,
    "screen": _cmd_screen,
    "noise-check": _cmd_noise_check,
    "simulate": _cmd_simulate,
    "evaluate": _cmd_evaluate,
    "bench": _cmd_bench,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except (IoError, OSError) as exc:
        sys.stderr.write(f"i/o error: {exc}\n")
        return EXIT_IO
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except (DuoEmbedError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
