"""Noise-regime detection from bulk-spectrum rigidity and its Monte Carlo
reference law (product of two white-noise sample covariance spectra)."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidThreshold, ShapeError
from .kernel import KernelMatrix

DEFAULT_K_SKIP = 5
DEFAULT_C1 = 0.1
DEFAULT_C2 = 0.01

# quantile levels reported by the Monte Carlo oracle
QUANTILE_LEVELS = (0.01, *[round(0.05 * i, 2) for i in range(1, 20)], 0.99)


@dataclass(frozen=True)
class NoiseRegimeReport:
    w: np.ndarray
    gap_ratios: np.ndarray
    bulk_median: float
    noise_dominated: bool
    k_skip: int
    c1: float
    c2: float

    def to_json(self) -> str:
        return json.dumps(
            {
                "noise_dominated": self.noise_dominated,
                "bulk_median": self.bulk_median,
                "k_skip": self.k_skip,
                "c1": self.c1,
                "c2": self.c2,
                "w": self.w.tolist(),
                "gap_ratios": self.gap_ratios.tolist(),
            }
        )


@dataclass(frozen=True)
class MpLaw:
    """Scaled Marchenko-Pastur law with aspect ratio phi = p / n_k."""

    phi: float

    def __post_init__(self):
        if not self.phi > 0:
            raise DomainError(f"aspect ratio must be positive, got {self.phi}")

    @property
    def gamma_minus(self) -> float:
        return mp_edges(self.phi)[0]

    @property
    def gamma_plus(self) -> float:
        return mp_edges(self.phi)[1]


def mp_edges(phi: float) -> tuple[float, float]:
    """Support edges sqrt(phi) + 1/sqrt(phi) -+ 2 of the scaled MP law."""
    if not phi > 0:
        raise DomainError(f"aspect ratio must be positive, got {phi}")
    c = math.sqrt(phi) + 1.0 / math.sqrt(phi)
    return (c - 2.0, c + 2.0)


def scaled_bulk_eigenvalues(k: KernelMatrix, p: int) -> np.ndarray:
    """Nonzero eigenvalues of K K^T / (p * sqrt(n1*n2)), nonincreasing.

    Values below 1e-12 of the leading one are truncated.
    """
    if p < 1:
        raise ShapeError(f"feature count must be >= 1, got {p}")
    s = np.linalg.svd(k.k, compute_uv=False)
    w = s * s / (p * math.sqrt(k.n1 * k.n2))
    if w.size == 0 or w[0] <= 0:
        return np.empty(0)
    return w[w > 1e-12 * w[0]]


def detect_noise_regime(
    w: np.ndarray,
    k_skip: int = DEFAULT_K_SKIP,
    c1: float = DEFAULT_C1,
    c2: float = DEFAULT_C2,
) -> NoiseRegimeReport:
    """Noise-dominated iff every consecutive gap ratio from index k_skip on
    is below 1 + c1 and the bulk median exceeds c2."""
    w = np.asarray(w, dtype=float)
    if w.ndim != 1 or w.size < 2:
        raise ShapeError("need a 1-d eigenvalue vector of length >= 2")
    if np.any(np.diff(w) > 0):
        raise ShapeError("eigenvalues must be nonincreasing")
    if k_skip < 1 or c1 <= 0 or c2 <= 0:
        raise InvalidThreshold("need k_skip >= 1 and c1, c2 > 0")
    # ratios only down to where w stays clear of the numerical null space
    last = int(np.searchsorted(-w, -1e-10 * w[0], side="right"))
    ratios = []
    for i in range(k_skip, last):  # 1-based i: w_i / w_{i+1}
        ratios.append(w[i - 1] / w[i])
    ratios = np.asarray(ratios)
    med = float(np.median(w))
    noise = bool(np.all(ratios < 1.0 + c1)) and med > c2 if ratios.size else med > c2
    return NoiseRegimeReport(
        w=w,
        gap_ratios=ratios,
        bulk_median=med,
        noise_dominated=noise,
        k_skip=k_skip,
        c1=c1,
        c2=c2,
    )


def free_conv_quantiles_mc(
    n1: int, n2: int, p: int, reps: int = 40, seed: int = 0
) -> dict[float, float]:
    """Monte Carlo quantiles of the limiting bulk law for pure noise.

    Per rep, draws white-noise matrices W1 (n1 x p) and W2 (n2 x p) and pools
    the nonzero eigenvalues of W1^T W1 W2^T W2 / (p * sqrt(n1*n2)); these are
    the squared singular values of W1 W2^T under the same scaling.
    """
    if reps < 1:
        raise ShapeError("reps must be >= 1")
    if min(n1, n2, p) < 2:
        raise ShapeError("dimensions must be >= 2")
    pooled = pooled_mc_spectrum(n1, n2, p, reps=reps, seed=seed)
    return {
        q: float(np.quantile(pooled, q, method="inverted_cdf")) for q in QUANTILE_LEVELS
    }


def pooled_mc_spectrum(n1: int, n2: int, p: int, reps: int = 40, seed: int = 0) -> np.ndarray:
    """Sorted pooled Monte Carlo spectrum backing free_conv_quantiles_mc;
    exposed for CDF-level comparisons."""
    pooled = []
    for rep in range(reps):
        rng = np.random.default_rng([seed, rep])
        w1 = rng.standard_normal((n1, p))
        w2 = rng.standard_normal((n2, p))
        s = np.linalg.svd(w1 @ w2.T, compute_uv=False)
        pooled.append(s * s / (p * math.sqrt(n1 * n2)))
    return np.sort(np.concatenate(pooled))
