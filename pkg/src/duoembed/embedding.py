"""Scaled-kernel SVD, joint embeddings, and out-of-sample extension."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .data_model import DataMatrix
from .errors import ConvergenceError, ShapeError, ZeroSingularValue
from .kernel import Bandwidth, KernelMatrix
from .screening import fix_signs

# singular values below this fraction of s_1 are treated as numerically zero
ZERO_SV_REL_TOL = 1e-12


@dataclass(frozen=True)
class ScaledSvd:
    """Thin SVD of K / sqrt(n1*n2): s nonincreasing, u n1 x m, v n2 x m."""

    s: np.ndarray
    u: np.ndarray
    v: np.ndarray

    @property
    def n1(self) -> int:
        return self.u.shape[0]

    @property
    def n2(self) -> int:
        return self.v.shape[0]

    @property
    def m(self) -> int:
        return self.s.size


@dataclass(frozen=True)
class JointEmbedding:
    gamma1: tuple[int, ...]
    gamma2: tuple[int, ...]
    ex: np.ndarray  # sqrt(n1) * U_g1 * diag(s_g1)
    ey: np.ndarray  # sqrt(n2) * V_g2 * diag(s_g2)
    s: np.ndarray  # full singular value vector of the scaled kernel


@dataclass(frozen=True)
class ExtensionContext:
    landmarks_x: DataMatrix
    landmarks_y: DataMatrix
    h: Bandwidth
    svd: ScaledSvd

    def __post_init__(self):
        if self.landmarks_x.n != self.svd.n1 or self.landmarks_y.n != self.svd.n2:
            raise ShapeError("landmark counts inconsistent with the SVD")


def duo_svd(k: KernelMatrix) -> ScaledSvd:
    """Thin SVD of k / sqrt(n1*n2) with a deterministic sign convention."""
    a = k.k / math.sqrt(k.n1 * k.n2)
    try:
        u, s, vt = np.linalg.svd(a, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"SVD failed to converge: {exc}") from exc
    # sign convention fixed on the left factor; the right factor is slaved
    # to it so that a = u diag(s) v^T keeps holding
    u_fixed = fix_signs(u)
    flips = np.einsum("ij,ij->j", u, u_fixed)  # +-1 per column
    v = vt.T * flips
    return ScaledSvd(s=s, u=u_fixed, v=v)


def select_embeddings(svd: ScaledSvd, gamma1, gamma2) -> JointEmbedding:
    """Singular-value-weighted, sample-size-scaled embeddings at 1-based
    index sets (empty sets give zero-column embeddings)."""
    gamma1 = tuple(int(g) for g in gamma1)
    gamma2 = tuple(int(g) for g in gamma2)
    for g in (*gamma1, *gamma2):
        if g < 1 or g > svd.m:
            raise IndexError(f"index {g} outside [1, {svd.m}]")
    c1 = [g - 1 for g in gamma1]
    c2 = [g - 1 for g in gamma2]
    ex = math.sqrt(svd.n1) * svd.u[:, c1] * svd.s[c1]
    ey = math.sqrt(svd.n2) * svd.v[:, c2] * svd.s[c2]
    return JointEmbedding(gamma1=gamma1, gamma2=gamma2, ex=ex, ey=ey, s=svd.s.copy())


def _gauss(a: np.ndarray, b: np.ndarray, h: float) -> np.ndarray:
    """exp(-||a_i - b_j||^2 / h) for row blocks a, b."""
    aa = np.einsum("ij,ij->i", a, a)
    bb = np.einsum("ij,ij->i", b, b)
    d = aa[:, None] + bb[None, :] - 2.0 * (a @ b.T)
    np.maximum(d, 0.0, out=d)
    return np.exp(-d / h)


def khat(side: str, a: np.ndarray, b: np.ndarray, ctx: ExtensionContext) -> float:
    """Empirical convolution kernel: the landmark average of the product of
    two Gaussian affinities routed through the opposite dataset."""
    a = np.atleast_2d(np.asarray(a, dtype=float))
    b = np.atleast_2d(np.asarray(b, dtype=float))
    p = ctx.landmarks_x.p
    if a.shape[1] != p or b.shape[1] != p:
        raise ShapeError(f"points must have {p} coordinates")
    if side == "left":
        lm = ctx.landmarks_y.values
    elif side == "right":
        lm = ctx.landmarks_x.values
    else:
        raise ShapeError(f"side must be 'left' or 'right', got {side!r}")
    ka = _gauss(a, lm, ctx.h.h)
    kb = _gauss(lm, b, ctx.h.h)
    return float((ka @ kb)[0, 0] / lm.shape[0])


def extend(side: str, point: np.ndarray, i: int, ctx: ExtensionContext) -> float:
    """Evaluate the i-th empirical eigenfunction at an out-of-sample point.

    At a training sample this reproduces sqrt(n) times the corresponding
    singular vector entry.
    """
    svd = ctx.svd
    if i < 1 or i > svd.m:
        raise IndexError(f"component index {i} outside [1, {svd.m}]")
    s_i = svd.s[i - 1]
    if s_i <= ZERO_SV_REL_TOL * svd.s[0]:
        raise ZeroSingularValue(f"singular value s_{i} is numerically zero")
    mu = s_i * s_i
    point = np.atleast_2d(np.asarray(point, dtype=float))
    p = ctx.landmarks_x.p
    if point.shape[1] != p:
        raise ShapeError(f"point must have {p} coordinates")
    if side == "left":
        train = ctx.landmarks_x.values
        lm = ctx.landmarks_y.values
        w = svd.u[:, i - 1]
        n = svd.n1
    elif side == "right":
        train = ctx.landmarks_y.values
        lm = ctx.landmarks_x.values
        w = svd.v[:, i - 1]
        n = svd.n2
    else:
        raise ShapeError(f"side must be 'left' or 'right', got {side!r}")
    # batch form of the landmark convolution against every training sample
    ka = _gauss(point, lm, ctx.h.h)  # 1 x n_lm
    kb = _gauss(lm, train, ctx.h.h)  # n_lm x n
    kvec = (ka @ kb)[0] / lm.shape[0]
    return float(kvec @ w / (mu * math.sqrt(n)))
