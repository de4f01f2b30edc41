"""Parameter sweeps over (rho, p0) grids and segment sets, with long-format
CSV/JSON export of per-cell metrics and cross-segment aggregates."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import Disconnected, InsufficientSupport, InvalidParams, PvgError
from .graphs import degree_sequence, height_matrix, probability_matrix, threshold_adjacency
from .metrics import (BaselineConfig, GraphMetrics, avg_path_length,
                      clustering_coefficient, power_law_exponent,
                      small_worldness)
from .series import (AmSignalParams, NormalizedSeries, PreprocessConfig,
                     TimeSeries, generate_am, normalize, preprocess)

METRIC_NAMES = ("L", "C", "density", "mean_degree", "k_max", "sigma", "gamma")


def default_rho_grid(n_points: int = 30) -> list[float]:
    """Log-spaced decay grid spanning the visibility-to-tunnelling range."""
    return [float(v) for v in np.logspace(-1, 4, n_points)]


DEFAULT_P0_GRID = (0.25, 0.5, 0.75, 1.0)


@dataclass
class SweepConfig:
    rho_grid: list[float]
    p0_grid: list[float]
    baseline: BaselineConfig | None = None
    metrics_enabled: tuple[str, ...] = ("L", "C", "density", "mean_degree", "k_max")

    def __post_init__(self):
        for name, grid in (("rho_grid", self.rho_grid), ("p0_grid", self.p0_grid)):
            if not len(grid):
                raise InvalidParams(f"{name} is empty")
            if any(b <= a for a, b in zip(grid, grid[1:])):
                raise InvalidParams(f"{name} must be strictly increasing")
        if self.rho_grid[0] < 0:
            raise InvalidParams("rho values must be >= 0")
        if self.p0_grid[0] < 0 or self.p0_grid[-1] > 1:
            raise InvalidParams("p0 values must lie in [0, 1]")
        unknown = set(self.metrics_enabled) - set(METRIC_NAMES)
        if unknown:
            raise InvalidParams(f"unknown metrics: {sorted(unknown)}")


@dataclass
class SweepResult:
    """Per-cell metrics keyed by (rho, p0, segment_id), failed cells keyed
    the same way in ``errors``, and per-(rho, p0) mean/std aggregates."""

    cells: dict = field(default_factory=dict)
    errors: dict = field(default_factory=dict)
    aggregates: dict = field(default_factory=dict)

    def metric_columns(self) -> list[str]:
        cols = set()
        for gm in self.cells.values():
            cols.update(k for k, v in gm.to_dict().items() if v is not None)
        return [c for c in ("n_nodes", "n_edges", "density", "mean_degree",
                            "k_max", "L", "C", "sigma", "C_rand", "L_rand",
                            "gamma", "gamma_r2") if c in cols]


def _cell_metrics(adj: np.ndarray, cfg: SweepConfig) -> GraphMetrics:
    want = set(cfg.metrics_enabled)
    degs = degree_sequence(adj)
    n = adj.shape[0]
    n_edges = int(degs.sum() // 2)

    l = None
    if "L" in want or "sigma" in want:
        try:
            l = avg_path_length(adj)
        except Disconnected:
            l = None
    c = clustering_coefficient(adj) if ("C" in want or "sigma" in want) else None

    sigma = c_rand = l_rand = None
    if "sigma" in want and cfg.baseline is not None and l is not None:
        try:
            sigma, c_rand, l_rand = small_worldness(adj, cfg.baseline,
                                                    c=c, l=l)
        except PvgError:
            pass

    gamma = gamma_r2 = None
    if "gamma" in want:
        try:
            gamma, gamma_r2 = power_law_exponent(degs)
        except InsufficientSupport:
            pass

    return GraphMetrics(
        n_nodes=n, n_edges=n_edges,
        density=float(2.0 * n_edges / (n * (n - 1))),
        mean_degree=float(degs.mean()), k_max=int(degs.max()),
        avg_path_length=l, clustering=c, sigma=sigma, c_rand=c_rand,
        l_rand=l_rand, gamma=gamma, gamma_r2=gamma_r2)


def run_sweep(segments: list[NormalizedSeries], cfg: SweepConfig) -> SweepResult:
    """Build and measure one PVG per (segment, rho, p0) cell.

    The obstruction-height matrix is computed once per segment and reused
    across the whole (rho, p0) grid.  Failed cells are recorded and the
    sweep continues.
    """
    result = SweepResult()
    for seg_id, seg in enumerate(segments):
        heights = height_matrix(seg)
        for rho in cfg.rho_grid:
            prob = probability_matrix(seg, rho, heights)
            for p0 in cfg.p0_grid:
                key = (rho, p0, seg_id)
                try:
                    adj = threshold_adjacency(prob, p0)
                    result.cells[key] = _cell_metrics(adj, cfg)
                except PvgError as exc:
                    result.errors[key] = str(exc)
    _aggregate(result, cfg)
    return result


def _aggregate(result: SweepResult, cfg: SweepConfig) -> None:
    cols = result.metric_columns()
    by_grid = {}
    for (rho, p0, _seg), gm in result.cells.items():
        by_grid.setdefault((rho, p0), []).append(gm.to_dict())
    for key, records in sorted(by_grid.items()):
        agg = {}
        for col in cols:
            vals = [r[col] for r in records if r[col] is not None]
            if vals:
                a = np.asarray(vals, dtype=np.float64)
                agg[col] = (float(a.mean()), float(a.std()))
            else:
                agg[col] = (None, None)
        result.aggregates[key] = agg


def reproduce_fig2(params: AmSignalParams, cfg: SweepConfig) -> SweepResult:
    """Generate the AM signal, normalize, and sweep the full series."""
    series = normalize(generate_am(params))
    return run_sweep([series], cfg)


def reproduce_fig3(recording: TimeSeries, pre_cfg: PreprocessConfig,
                   cfg: SweepConfig) -> SweepResult:
    """Filter/downsample/segment a recording, normalize each segment, and
    sweep the segment set."""
    segments = [normalize(s) for s in preprocess(recording, pre_cfg)]
    return run_sweep(segments, cfg)


# --- export --------------------------------------------------------------

def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def write_cells_csv(result: SweepResult, path) -> None:
    """Long format: rho,p0,segment_id,metric,value,error."""
    cols = result.metric_columns()
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("rho,p0,segment_id,metric,value,error\n")
        for (rho, p0, seg), gm in sorted(result.cells.items()):
            rec = gm.to_dict()
            for col in cols:
                fh.write(f"{_fmt(rho)},{_fmt(p0)},{seg},{col},"
                         f"{_fmt(rec[col])},\n")
        for (rho, p0, seg), msg in sorted(result.errors.items()):
            fh.write(f"{_fmt(rho)},{_fmt(p0)},{seg},,,{msg}\n")


def write_aggregates_csv(result: SweepResult, path) -> None:
    """Aggregate format: rho,p0,metric,mean,std."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("rho,p0,metric,mean,std\n")
        for (rho, p0), agg in sorted(result.aggregates.items()):
            for col, (mean, std) in agg.items():
                fh.write(f"{_fmt(rho)},{_fmt(p0)},{col},"
                         f"{_fmt(mean)},{_fmt(std)}\n")


def result_to_json(result: SweepResult) -> dict:
    """JSON mirror of both CSV exports."""
    cells = [
        {"rho": rho, "p0": p0, "segment_id": seg, **gm.to_dict()}
        for (rho, p0, seg), gm in sorted(result.cells.items())
    ]
    errors = [
        {"rho": rho, "p0": p0, "segment_id": seg, "error": msg}
        for (rho, p0, seg), msg in sorted(result.errors.items())
    ]
    aggregates = [
        {"rho": rho, "p0": p0,
         "metrics": {col: {"mean": m, "std": s}
                     for col, (m, s) in agg.items()}}
        for (rho, p0), agg in sorted(result.aggregates.items())
    ]
    return {"cells": cells, "errors": errors, "aggregates": aggregates}


def write_result_json(result: SweepResult, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(result_to_json(result), fh, indent=1, sort_keys=True)
        fh.write("\n")
