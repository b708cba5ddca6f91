"""Benchmark loops: generate -> embed -> cluster/score for the proposed
method and the pca / j-pca baselines. Emits long-format rows."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .data_model import DataMatrix, LabeledPartition, center_columns
from .evaluation import jaccard_concordance, kmeans, overall_rand, pca_embed
from .pipeline import RunConfig, RunStatus, run
from .simulation import sample_setting1, sample_setting2, sample_torus_pair

CLUSTER_RANK = 6
MANIFOLD_RANK = 3


@dataclass(frozen=True)
class BenchRow:
    method: str
    x_value: float  # tau for clustering, n for manifold
    rep: int
    metric: str
    value: float


def worker_count() -> int:
    """DUO_EMBED_THREADS caps bench workers; 0 or unset means auto."""
    raw = os.environ.get("DUO_EMBED_THREADS", "0")
    try:
        cap = int(raw)
    except ValueError:
        cap = 0
    if cap <= 0:
        return os.cpu_count() or 1
    return cap


def _proposed_embeddings(x: DataMatrix, y: DataMatrix, r: int, seed: int):
    cfg = RunConfig(
        gamma1=tuple(range(2, r + 2)),
        gamma2=tuple(range(2, r + 2)),
        skip_screening=True,  # benchmark measures embedding quality only
        seed=seed,
    )
    result = run(x, y, cfg)
    assert result.status is RunStatus.EMBEDDED
    return result.embedding.ex, result.embedding.ey


def _jpca_embeddings(x: DataMatrix, y: DataMatrix, r: int):
    stacked = DataMatrix(np.vstack([x.values, y.values]))
    scores = pca_embed(stacked, r)
    return scores[: x.n], scores[x.n :]


def clustering_rep(setting: int, tau: float, rep_seed: int, n1=600, n2=600, p=800):
    """One clustering rep: overall Rand index per method."""
    sampler = sample_setting1 if setting == 1 else sample_setting2
    x, y, lx, ly = sampler(n1, n2, p, tau, seed=rep_seed)
    x, y = center_columns(x), center_columns(y)
    kx, ky = lx.k, ly.k
    out = {}

    ex, ey = _proposed_embeddings(x, y, CLUSTER_RANK, rep_seed)
    out["prop"] = overall_rand(
        kmeans(ex, kx, seed=rep_seed), lx, kmeans(ey, ky, seed=rep_seed), ly
    ).value

    px = pca_embed(x, CLUSTER_RANK)
    py = pca_embed(y, CLUSTER_RANK)
    out["pca"] = overall_rand(
        kmeans(px, kx, seed=rep_seed), lx, kmeans(py, ky, seed=rep_seed), ly
    ).value

    jx, jy = _jpca_embeddings(x, y, CLUSTER_RANK)
    out["j-pca"] = overall_rand(
        kmeans(jx, kx, seed=rep_seed), lx, kmeans(jy, ky, seed=rep_seed), ly
    ).value
    return out


def manifold_rep(n: int, rep_seed: int, p=800, k=50):
    """One manifold rep: Jaccard concordance of the y embedding per method."""
    x, y, y_clean = sample_torus_pair(n, n, p, seed=rep_seed)
    x, y = center_columns(x), center_columns(y)
    out = {}
    _, ey = _proposed_embeddings(x, y, MANIFOLD_RANK, rep_seed)
    out["prop"] = jaccard_concordance(ey, y_clean, k=k)
    out["pca"] = jaccard_concordance(pca_embed(y, MANIFOLD_RANK), y_clean, k=k)
    jx, jy = _jpca_embeddings(x, y, MANIFOLD_RANK)
    out["j-pca"] = jaccard_concordance(jy, y_clean, k=k)
    return out


def _clustering_job(args):
    setting, tau, rep, seed = args
    scores = clustering_rep(setting, tau, rep_seed=seed)
    return [BenchRow(m, tau, rep, "rand_index", v) for m, v in scores.items()]


def _manifold_job(args):
    n, rep, seed = args
    scores = manifold_rep(n, rep_seed=seed)
    return [BenchRow(m, float(n), rep, "jaccard_concordance", v) for m, v in scores.items()]


def run_bench(
    task: str,
    reps: int,
    grid: list[float],
    seed: int = 0,
    setting: int = 1,
) -> list[BenchRow]:
    """Run the benchmark loop, parallelizing reps; output order canonical."""
    if task == "clustering":
        jobs = [
            (setting, tau, rep, seed + 1000 * rep + int(round(10 * tau)))
            for tau in grid
            for rep in range(reps)
        ]
        fn = _clustering_job
    elif task == "manifold":
        jobs = [(int(n), rep, seed + 1000 * rep + int(n)) for n in grid for rep in range(reps)]
        fn = _manifold_job
    else:
        raise ValueError(f"unknown task {task!r}")

    workers = min(worker_count(), len(jobs))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(fn, jobs))
    else:
        results = [fn(j) for j in jobs]
    rows = [r for chunk in results for r in chunk]
    rows.sort(key=lambda r: (r.method, r.x_value, r.rep, r.metric))
    return rows


def write_rows(rows: list[BenchRow], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("method,tau_or_n,rep,metric,value\n")
        for r in rows:
            fh.write(f"{r.method},{r.x_value:.17g},{r.rep},{r.metric},{r.value:.17g}\n")
