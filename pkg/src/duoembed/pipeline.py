"""End-to-end orchestration: screen, optionally check the noise regime, then
embed. Produces a single serializable run artifact."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np

from .data_model import DataMatrix, center_columns
from .embedding import JointEmbedding, duo_svd, select_embeddings
from .errors import ConfigError
from .kernel import (
    DEFAULT_OMEGA,
    Bandwidth,
    auto_omega,
    build_duo_kernel,
    cross_sq_distances,
    select_bandwidth,
)
from .screening import DEFAULT_GAMMA, DEFAULT_K, AlignabilityReport, screen_alignability
from .spectral_diagnostics import (
    DEFAULT_C1,
    DEFAULT_C2,
    DEFAULT_K_SKIP,
    NoiseRegimeReport,
    detect_noise_regime,
    scaled_bulk_eigenvalues,
)


class RunStatus(Enum):
    EMBEDDED = "embedded"
    STOPPED_NOT_ALIGNABLE = "stopped_not_alignable"
    STOPPED_NOISE_DOMINATED = "stopped_noise_dominated"


@dataclass(frozen=True)
class RunConfig:
    omega: float | str = DEFAULT_OMEGA  # a percentile in (0,1), or "auto"
    k_screen: int = DEFAULT_K
    gamma1: tuple[int, ...] = tuple(range(2, 8))
    gamma2: tuple[int, ...] = tuple(range(2, 8))
    screen_gamma: tuple[int, ...] = DEFAULT_GAMMA
    skip_screening: bool = False
    noise_check: bool = False
    auto_omega_grid: tuple[float, ...] = (0.2, 0.5, 0.8)
    auto_omega_rank: int = 6
    auto_omega_reps: int = 5
    seed: int = 0


@dataclass(frozen=True)
class RunResult:
    status: RunStatus
    bandwidth: Bandwidth | None
    alignability: AlignabilityReport | None = None
    noise: NoiseRegimeReport | None = None
    embedding: JointEmbedding | None = None
    config: RunConfig = field(default_factory=RunConfig)


def run(x: DataMatrix, y: DataMatrix, cfg: RunConfig = RunConfig()) -> RunResult:
    """Execute the full joint-embedding flow with its stop semantics."""
    if x.p != y.p:
        raise ConfigError(f"feature counts differ: {x.p} vs {y.p}")
    m = min(x.n, y.n)
    for g in (*cfg.gamma1, *cfg.gamma2):
        if g < 1 or g > m:
            raise ConfigError(f"embedding index {g} outside [1, {m}]")
    x = center_columns(x)
    y = center_columns(y)

    if cfg.omega == "auto":
        bw = auto_omega(
            x,
            y,
            grid=list(cfg.auto_omega_grid),
            r=cfg.auto_omega_rank,
            b=cfg.auto_omega_reps,
            seed=cfg.seed,
        )
    else:
        bw = select_bandwidth(cross_sq_distances(x, y), float(cfg.omega))

    alignability = None
    if not cfg.skip_screening:
        alignability = screen_alignability(
            x, y, omega=bw.omega, k=cfg.k_screen, gamma=cfg.screen_gamma
        )
        if not alignability.alignable:
            return RunResult(
                status=RunStatus.STOPPED_NOT_ALIGNABLE,
                bandwidth=bw,
                alignability=alignability,
                config=cfg,
            )

    kern = build_duo_kernel(cross_sq_distances(x, y), bw)

    noise = None
    if cfg.noise_check:
        w = scaled_bulk_eigenvalues(kern, x.p)
        noise = detect_noise_regime(w, DEFAULT_K_SKIP, DEFAULT_C1, DEFAULT_C2)
        if noise.noise_dominated:
            return RunResult(
                status=RunStatus.STOPPED_NOISE_DOMINATED,
                bandwidth=bw,
                alignability=alignability,
                noise=noise,
                config=cfg,
            )

    svd = duo_svd(kern)
    embedding = select_embeddings(svd, cfg.gamma1, cfg.gamma2)
    return RunResult(
        status=RunStatus.EMBEDDED,
        bandwidth=bw,
        alignability=alignability,
        noise=noise,
        embedding=embedding,
        config=cfg,
    )


def write_run_artifact(result: RunResult, out_dir: str | Path) -> Path:
    """Persist a run as config.json, bandwidth.json, alignability.json,
    noise.json (when present) and embedding/singular-value CSVs."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    cfg = result.config
    (out / "config.json").write_text(
        json.dumps(
            {
                "omega": cfg.omega,
                "k_screen": cfg.k_screen,
                "gamma1": list(cfg.gamma1),
                "gamma2": list(cfg.gamma2),
                "screen_gamma": list(cfg.screen_gamma),
                "skip_screening": cfg.skip_screening,
                "noise_check": cfg.noise_check,
                "seed": cfg.seed,
                "status": result.status.value,
            },
            indent=2,
        )
    )
    if result.bandwidth is not None:
        (out / "bandwidth.json").write_text(
            json.dumps(
                {
                    "h": result.bandwidth.h,
                    "omega": result.bandwidth.omega,
                    "source": result.bandwidth.source.value,
                }
            )
        )
    if result.alignability is not None:
        (out / "alignability.json").write_text(result.alignability.to_json())
    if result.noise is not None:
        (out / "noise.json").write_text(result.noise.to_json())
    if result.embedding is not None:
        emb = result.embedding
        np.savetxt(out / "embedding_x.csv", emb.ex, delimiter=",", fmt="%.17g")
        np.savetxt(out / "embedding_y.csv", emb.ey, delimiter=",", fmt="%.17g")
        np.savetxt(out / "singular_values.csv", emb.s, delimiter=",", fmt="%.17g")
        sidecar = {
            "gamma1": list(emb.gamma1),
            "gamma2": list(emb.gamma2),
            "singular_values": emb.s.tolist(),
            "h": result.bandwidth.h if result.bandwidth else None,
            "omega": result.bandwidth.omega if result.bandwidth else None,
        }
        (out / "embedding_meta.json").write_text(json.dumps(sidecar))
    return out
