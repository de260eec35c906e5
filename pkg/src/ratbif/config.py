"""Run-time knobs shared by the pipeline stages."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Tolerances:
    vanish: float = 1e-8   # residual below which a quantity counts as zero
    margin: float = 1e-4   # size above which a quantity counts as nonzero
    dedupe: float = 1e-9   # complex values closer than this are merged


@dataclass(frozen=True)
class ProbeConfig:
    radii: tuple[float, ...] = (10.0, 30.0, 100.0, 300.0)
    starts: int = 64
    seed: int = 0
    accept: float = 1e-8
    cluster_tol: float = 1e-3


@dataclass(frozen=True)
class AnalysisOptions:
    tol: Tolerances = field(default_factory=Tolerances)
    seed: int = 0
    probe: ProbeConfig | None = None
    multistart: int = 48     # starts for heuristic numeric solves (k >= 2, n >= 3)
    random_lines: int = 8
