"""Seeded generators for the simulation studies and negative controls.

All generators draw from numpy Generators keyed by (seed, stream id) so that
every (dataset, purpose) pair has its own stream: adding reps or extra draws
never perturbs earlier ones.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data_model import DataMatrix, LabeledPartition
from .errors import ShapeError, UnsupportedKind

# stream ids
_X_LABELS, _X_SIGNAL, _X_NOISE = 1, 2, 3
_Y_LABELS, _Y_SIGNAL, _Y_NOISE = 4, 5, 6
_Y_EXTRA = 7


@dataclass(frozen=True)
class GmmSpec:
    n: int
    p: int
    k: int
    weights: tuple[float, ...]
    center_scale: float = 15.0
    center_offset: int = 0  # centers are center_scale * e_{j + offset}
    cov_scale: float = 9.0
    seed: int = 0

    def __post_init__(self):
        w = np.asarray(self.weights)
        if np.any(w <= 0) or abs(w.sum() - 1.0) > 1e-12:
            raise ShapeError("weights must be positive and sum to 1")
        if self.k + self.center_offset > self.p:
            raise ShapeError("basis-vector centers exceed the dimension")


@dataclass(frozen=True)
class TorusSpec:
    n: int
    p: int
    theta: float
    seed: int = 0

    def __post_init__(self):
        if self.p < 3:
            raise ShapeError("torus needs p >= 3")
        if not self.theta > 0:
            raise ShapeError("theta must be positive")


def _gmm_signal(spec: GmmSpec, rng_labels, rng_coords) -> tuple[np.ndarray, np.ndarray]:
    labels = rng_labels.choice(spec.k, size=spec.n, p=spec.weights)
    signal = np.sqrt(spec.cov_scale) * rng_coords.standard_normal((spec.n, spec.p))
    idx = np.arange(spec.n)
    signal[idx, labels + spec.center_offset] += spec.center_scale
    return signal, labels


def _torus_points(n: int, theta: float, rng) -> np.ndarray:
    u = rng.uniform(0.0, 2.0 * np.pi, size=n)
    v = rng.uniform(0.0, 2.0 * np.pi, size=n)
    ring = theta * (2.0 + 0.8 * np.cos(u))
    return np.column_stack([ring * np.cos(v), ring * np.sin(v), 0.8 * theta * np.sin(u)])


def sample_setting1(
    n1: int,
    n2: int,
    p: int,
    tau: float,
    sigma1_sq: float = 0.25,
    sigma2_sq: float = 1.0,
    seed: int = 0,
):
    """Two 6-cluster Gaussian mixtures with shared centers 15 e_j; the second
    dataset carries an extra uniform perturbation on coordinates 6..25 and
    heavier noise. Returns (x, y, labels_x, labels_y)."""
    if p < 25:
        raise ShapeError(f"setting 1 needs p >= 25, got {p}")
    if tau < 0:
        raise ShapeError("tau must be >= 0")
    gx = GmmSpec(n=n1, p=p, k=6, weights=(1 / 6,) * 6)
    gy = GmmSpec(n=n2, p=p, k=6, weights=(1 / 6,) * 6)
    sx, lx = _gmm_signal(
        gx, np.random.default_rng([seed, _X_LABELS]), np.random.default_rng([seed, _X_SIGNAL])
    )
    sy, ly = _gmm_signal(
        gy, np.random.default_rng([seed, _Y_LABELS]), np.random.default_rng([seed, _Y_SIGNAL])
    )
    w0 = np.zeros((n2, p))
    w0[:, 5:25] = np.random.default_rng([seed, _Y_EXTRA]).uniform(
        -3.0 * tau, tau, size=(n2, 20)
    )
    x = sx + np.sqrt(sigma1_sq) * np.random.default_rng([seed, _X_NOISE]).standard_normal((n1, p))
    y = (
        sy
        + w0
        + np.sqrt(sigma2_sq) * np.random.default_rng([seed, _Y_NOISE]).standard_normal((n2, p))
    )
    return (
        DataMatrix(x, label="setting1_x"),
        DataMatrix(y, label="setting1_y"),
        LabeledPartition(lx, k=6),
        LabeledPartition(ly, k=6),
    )


def sample_setting2(
    n1: int,
    n2: int,
    p: int,
    tau: float,
    sigma1_sq: float = 0.25,
    sigma2_sq: float = 1.0,
    seed: int = 0,
):
    """Like setting 1 but x has only 4 clusters at centers 15 e_{j+2}, so the
    cluster structure is only partially shared with y."""
    if p < 25:
        raise ShapeError(f"setting 2 needs p >= 25, got {p}")
    if tau < 0:
        raise ShapeError("tau must be >= 0")
    gx = GmmSpec(n=n1, p=p, k=4, weights=(1 / 4,) * 4, center_offset=2)
    sx, lx = _gmm_signal(
        gx, np.random.default_rng([seed, _X_LABELS]), np.random.default_rng([seed, _X_SIGNAL])
    )
    x = sx + np.sqrt(sigma1_sq) * np.random.default_rng([seed, _X_NOISE]).standard_normal((n1, p))
    _, y, _, ly = sample_setting1(
        n1, n2, p, tau, sigma1_sq=sigma1_sq, sigma2_sq=sigma2_sq, seed=seed
    )
    return (
        DataMatrix(x, label="setting2_x"),
        DataMatrix(y.values, label="setting2_y"),
        LabeledPartition(lx, k=4),
        ly,
    )


def sample_torus_pair(
    n1: int,
    n2: int,
    p: int,
    sigma1_sq: float = 0.16,
    sigma2_sq: float = 1.0,
    theta: float | None = None,
    seed: int = 0,
):
    """Shared torus in the first 3 coordinates; the y dataset adds an
    orthogonal 20-dim uniform block (coords 4..23) and heavier noise.
    Returns (x, y, y_clean) where y_clean holds the noiseless y signals."""
    if p < 23:
        raise ShapeError(f"torus pair needs p >= 23, got {p}")
    if theta is None:
        theta = 0.2 * np.sqrt(n2)  # signal scale tied to the y sample size
    x0 = np.zeros((n1, p))
    x0[:, :3] = _torus_points(n1, theta, np.random.default_rng([seed, _X_SIGNAL]))
    y0 = np.zeros((n2, p))
    y0[:, :3] = _torus_points(n2, theta, np.random.default_rng([seed, _Y_SIGNAL]))
    y0[:, 3:23] = np.random.default_rng([seed, _Y_EXTRA]).uniform(-8.0, 8.0, size=(n2, 20))
    x = x0 + np.sqrt(sigma1_sq) * np.random.default_rng([seed, _X_NOISE]).standard_normal((n1, p))
    y = y0 + np.sqrt(sigma2_sq) * np.random.default_rng([seed, _Y_NOISE]).standard_normal((n2, p))
    return (
        DataMatrix(x, label="torus_x"),
        DataMatrix(y, label="torus_y"),
        DataMatrix(y0, label="torus_y_clean"),
    )


def sample_pure_noise_pair(
    n1: int, n2: int, p: int, sigma1_sq: float = 1.0, sigma2_sq: float = 1.0, seed: int = 0
):
    """Independent isotropic Gaussian noise with no signal at all."""
    x = np.sqrt(sigma1_sq) * np.random.default_rng([seed, _X_NOISE]).standard_normal((n1, p))
    y = np.sqrt(sigma2_sq) * np.random.default_rng([seed, _Y_NOISE]).standard_normal((n2, p))
    return DataMatrix(x, label="noise_x"), DataMatrix(y, label="noise_y")


def _klein_bottle(n: int, rng, a: float = 2.0, b: float = 1.0) -> np.ndarray:
    # standard non-self-intersecting R^4 embedding of the Klein bottle:
    # a torus-like ring whose tube phase is twisted by u/2
    u = rng.uniform(0.0, 2.0 * np.pi, size=n)
    v = rng.uniform(0.0, 2.0 * np.pi, size=n)
    return np.column_stack(
        [
            (a + b * np.cos(v)) * np.cos(u),
            (a + b * np.cos(v)) * np.sin(u),
            b * np.sin(v) * np.cos(u / 2.0),
            b * np.sin(v) * np.sin(u / 2.0),
        ]
    )


def sample_negative_control(kind: str, n1: int, n2: int, seed: int = 0):
    """Structurally unrelated dataset pairs used to exercise the screen."""
    if kind == "klein_vs_line":
        x = _klein_bottle(n1, np.random.default_rng([seed, _X_SIGNAL]))
        y = np.zeros((n2, 4))
        y[:, 0] = np.random.default_rng([seed, _Y_SIGNAL]).uniform(-1.0, 1.0, size=n2)
        return DataMatrix(x, label="klein"), DataMatrix(y, label="line")
    if kind == "torus_vs_noise":
        # torus scaled well clear of the unit Gaussian cloud
        x = _torus_points(n1, 2.0, np.random.default_rng([seed, _X_SIGNAL]))
        y = np.random.default_rng([seed, _Y_SIGNAL]).standard_normal((n2, 3))
        return DataMatrix(x, label="torus"), DataMatrix(y, label="gauss3")
    raise UnsupportedKind(f"unknown negative control kind {kind!r}")
