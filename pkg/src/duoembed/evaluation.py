"""Downstream metrics and baseline clusterers."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
from scipy.cluster.hierarchy import fcluster, linkage
from sklearn.cluster import KMeans

from .data_model import DataMatrix, LabeledPartition
from .errors import InvalidK, ShapeError
from .screening import fix_signs

DEFAULT_JACCARD_K = 50


@dataclass(frozen=True)
class MetricReport:
    name: str
    value: float
    per_dataset: tuple[float, float] | None = None

    def to_json(self) -> str:
        payload = {"name": self.name, "value": self.value}
        if self.per_dataset is not None:
            payload["per_dataset"] = list(self.per_dataset)
        return json.dumps(payload)


def rand_index(a: LabeledPartition, b: LabeledPartition) -> float:
    """Pair-counting agreement between two partitions via the contingency
    table; symmetric and invariant to label permutations."""
    if a.n != b.n:
        raise ShapeError(f"partition lengths differ: {a.n} vs {b.n}")
    n = a.n
    if n < 2:
        raise ShapeError("need at least 2 samples")
    table = np.zeros((a.k, b.k), dtype=np.int64)
    np.add.at(table, (a.assignments, b.assignments), 1)
    comb2 = lambda v: v * (v - 1) // 2
    total = comb2(n)
    same_both = comb2(table).sum()
    same_a = comb2(table.sum(axis=1)).sum()
    same_b = comb2(table.sum(axis=0)).sum()
    agreements = total + 2 * same_both - same_a - same_b
    return float(agreements / total)


def overall_rand(
    est_x: LabeledPartition,
    true_x: LabeledPartition,
    est_y: LabeledPartition,
    true_y: LabeledPartition,
) -> MetricReport:
    """Mean of the per-dataset Rand indices."""
    r1 = rand_index(est_x, true_x)
    r2 = rand_index(est_y, true_y)
    return MetricReport(name="overall_rand", value=(r1 + r2) / 2.0, per_dataset=(r1, r2))


def _knn_sets(points: np.ndarray, k: int) -> np.ndarray:
    """Index sets of the k nearest neighbors per row, self excluded; ties at
    the boundary broken by smaller index."""
    sq = np.einsum("ij,ij->i", points, points)
    d = sq[:, None] + sq[None, :] - 2.0 * (points @ points.T)
    np.fill_diagonal(d, np.inf)
    return np.argsort(d, axis=1, kind="stable")[:, :k]


def jaccard_concordance(embeds: np.ndarray, clean: DataMatrix, k: int = DEFAULT_JACCARD_K) -> float:
    """Mean Jaccard similarity between k-nearest-neighbor sets computed in
    embedding space and in clean-signal space."""
    embeds = np.asarray(embeds, dtype=float)
    if embeds.ndim != 2 or embeds.shape[0] != clean.n:
        raise ShapeError("embedding rows must match the clean dataset")
    n = clean.n
    if k < 1 or k >= n:
        raise InvalidK(f"need 1 <= k < {n}, got {k}")
    s_sets = _knn_sets(clean.values, k)
    w_sets = _knn_sets(embeds, k)
    vals = np.empty(n)
    for j in range(n):
        inter = np.intersect1d(s_sets[j], w_sets[j], assume_unique=True).size
        vals[j] = inter / (2 * k - inter)
    return float(vals.mean())


def kmeans(points: np.ndarray, k: int, seed: int = 0) -> LabeledPartition:
    """k-means++ with 20 restarts; deterministic under the seed."""
    points = np.asarray(points, dtype=float)
    if points.ndim != 2:
        raise ShapeError("points must be 2-d")
    n = points.shape[0]
    if k < 1 or k > n:
        raise InvalidK(f"need 1 <= k <= {n}, got {k}")
    if k == n:
        return LabeledPartition(np.arange(n), k=n)
    model = KMeans(
        n_clusters=k, n_init=20, max_iter=300, tol=1e-6, random_state=seed
    ).fit(points)
    return _relabel_compact(model.labels_, k)


def hierarchical_cluster(points: np.ndarray, k: int) -> LabeledPartition:
    """Agglomerative Ward clustering on Euclidean distances, cut at k."""
    points = np.asarray(points, dtype=float)
    if points.ndim != 2:
        raise ShapeError("points must be 2-d")
    n = points.shape[0]
    if k < 1 or k > n:
        raise InvalidK(f"need 1 <= k <= {n}, got {k}")
    if k == n:
        return LabeledPartition(np.arange(n), k=n)
    z = linkage(points, method="ward")
    labels = fcluster(z, t=k, criterion="maxclust") - 1
    return _relabel_compact(labels, k)


def _relabel_compact(labels: np.ndarray, k: int) -> LabeledPartition:
    """Map labels to 0..k'-1 in order of first appearance (clusterers can
    return fewer than k nonempty clusters on degenerate inputs)."""
    _, first = np.unique(labels, return_index=True)
    order = labels[np.sort(first)]
    remap = {old: new for new, old in enumerate(order)}
    return LabeledPartition(np.array([remap[v] for v in labels]))


def pca_embed(d: DataMatrix, r: int) -> np.ndarray:
    """Scores on the top-r principal components of the centered matrix."""
    if r < 1 or r > min(d.n, d.p):
        raise IndexError(f"need 1 <= r <= {min(d.n, d.p)}, got {r}")
    centered = d.values - d.values.mean(axis=0)
    u, s, _ = np.linalg.svd(centered, full_matrices=False)
    scores = fix_signs(u[:, :r]) * s[:r]
    return scores
