"""Time-series containers, AM signal generation, normalization, and the
filter/downsample/segment preprocessing pipeline."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import signal

from .errors import InvalidParams, ParseError, RateMismatch, TooShort


@dataclass
class TimeSeries:
    """Uniformly sampled scalar signal: sample i sits at t0 + i*dt seconds."""

    values: np.ndarray
    dt: float
    t0: float = 0.0

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 1 or self.values.size < 2:
            raise InvalidParams("series needs at least 2 samples")
        if not np.all(np.isfinite(self.values)):
            raise InvalidParams("series contains non-finite values")
        if not (self.dt > 0):
            raise InvalidParams("dt must be positive")

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def times(self) -> np.ndarray:
        return self.t0 + np.arange(self.n) * self.dt

    @property
    def rate_hz(self) -> float:
        return 1.0 / self.dt


@dataclass
class NormalizedSeries(TimeSeries):
    """TimeSeries affinely mapped to [0, 1], remembering the original range.

    A constant source maps to all zeros with ``is_constant`` set; every
    downstream graph operation stays well defined on it.
    """

    original_min: float = 0.0
    original_max: float = 1.0
    is_constant: bool = False

    def __post_init__(self):
        super().__post_init__()
        if self.values.min() < 0.0 or self.values.max() > 1.0:
            raise InvalidParams("normalized values must lie in [0, 1]")


@dataclass
class AmSignalParams:
    """Parameters of the amplitude-modulated test signal."""

    a_c: float = 1.0
    f_c: float = 40.0
    f_m: float = 6.0
    m: float = 0.5
    noise_std: float = 0.01
    duration_s: float = 5.0
    dt: float = 0.001
    rng_seed: int = 0

    def __post_init__(self):
        if not (self.f_c > self.f_m >= 0):
            raise InvalidParams("need f_c > f_m >= 0")
        if not (self.dt > 0 and self.duration_s >= self.dt):
            raise InvalidParams("need dt > 0 and duration_s >= dt")
        if self.m < 0 or self.noise_std < 0:
            raise InvalidParams("m and noise_std must be nonnegative")


@dataclass
class PreprocessConfig:
    """Low-pass / downsample / segment settings."""

    cutoff_hz: float = 25.0
    filter_order: int = 4
    target_rate_hz: float = 50.0
    segment_seconds: float = 10.0
    n_segments: int = 30

    def __post_init__(self):
        if self.filter_order < 1:
            raise InvalidParams("filter_order must be >= 1")
        if self.cutoff_hz <= 0 or self.cutoff_hz > self.target_rate_hz / 2:
            raise InvalidParams("cutoff must lie in (0, target_rate/2]")
        if self.segment_seconds <= 0 or self.n_segments < 1:
            raise InvalidParams("need positive segment length and count")


def normalize(series: TimeSeries) -> NormalizedSeries:
    """Map a series onto [0, 1]; constant input becomes all zeros."""
    lo = float(series.values.min())
    hi = float(series.values.max())
    if hi == lo:
        vals = np.zeros_like(series.values)
        constant = True
    else:
        vals = (series.values - lo) / (hi - lo)
        constant = False
    return NormalizedSeries(values=vals, dt=series.dt, t0=series.t0,
                            original_min=lo, original_max=hi,
                            is_constant=constant)


def generate_am(params: AmSignalParams) -> TimeSeries:
    """Amplitude-modulated carrier with optional additive Gaussian noise.

    With ``noise_std == 0`` the output is deterministic and seed-independent;
    otherwise the noise stream is fully determined by ``rng_seed``.
    """
    n = int(round(params.duration_s / params.dt))
    t = np.arange(n) * params.dt
    x = params.a_c * (1.0 + params.m * np.cos(2 * np.pi * params.f_m * t)) \
        * np.sin(2 * np.pi * params.f_c * t)
    if params.noise_std > 0:
        rng = np.random.default_rng(params.rng_seed)
        x = x + rng.normal(0.0, params.noise_std, n)
    return TimeSeries(values=x, dt=params.dt)


def preprocess(series: TimeSeries, cfg: PreprocessConfig) -> list[TimeSeries]:
    """Zero-phase low-pass filter, decimate, and split into segments.

    The decimation factor must be an exact integer ratio of the source and
    target rates; decimation is plain sample picking after the filter.
    """
    src_rate = series.rate_hz
    factor = src_rate / cfg.target_rate_hz
    k = int(round(factor))
    if k < 1 or abs(factor - k) > 1e-9 * factor:
        raise RateMismatch(
            f"source rate {src_rate:g} Hz is not an integer multiple "
            f"of target {cfg.target_rate_hz:g} Hz")

    sos = signal.butter(cfg.filter_order, cfg.cutoff_hz, btype="low",
                        fs=src_rate, output="sos")
    filtered = signal.sosfiltfilt(sos, series.values)
    decimated = filtered[::k]

    seg_len = int(round(cfg.segment_seconds * cfg.target_rate_hz))
    needed = seg_len * cfg.n_segments
    if decimated.size < needed:
        raise TooShort(
            f"need {needed} samples after decimation, have {decimated.size}")

    out_dt = 1.0 / cfg.target_rate_hz
    segments = []
    for s in range(cfg.n_segments):
        chunk = decimated[s * seg_len:(s + 1) * seg_len]
        segments.append(TimeSeries(values=chunk.copy(), dt=out_dt,
                                   t0=series.t0 + s * seg_len * out_dt))
    return segments


def autocorr_max_lag(series: TimeSeries, min_run: int = 3) -> int:
    """Largest lag whose sample autocorrelation exceeds 2/sqrt(N).

    An exceedance only counts when it sits in a run of at least ``min_run``
    consecutive significant lags; for white noise roughly 2% of lags clear
    the threshold by chance, and without the run guard the largest of those
    spurious lags would land near N on almost every realization.  Returns 0
    when no lag qualifies (including constant input).
    """
    x = series.values
    n = x.size
    if n < 3:
        raise InvalidParams("need at least 3 samples")
    xc = x - x.mean()
    denom = float(np.dot(xc, xc))
    if denom == 0.0:
        return 0
    r = np.correlate(xc, xc, mode="full")[n - 1:] / denom
    significant = r > 2.0 / np.sqrt(n)
    significant[0] = False  # lag 0 is trivially 1
    best = 0
    run = 0
    for lag in range(1, n):
        if significant[lag]:
            run += 1
            if run >= min_run:
                best = lag
        else:
            run = 0
    return best


def load_series_csv(path, dt: float | None = None) -> TimeSeries:
    """Read a series from CSV: one `value` or `time,value` per line.

    A non-numeric first line is treated as a header.  When a time column is
    present the spacing must be uniform to 1e-9 relative tolerance and it
    determines dt; otherwise ``dt`` (default 1.0) is used.
    """
    times, values = [], []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            parts = line.split(",")
            try:
                nums = [float(p) for p in parts]
            except ValueError:
                if lineno == 1:
                    continue  # header
                raise ParseError(f"cannot parse {line!r}", line=lineno)
            if len(nums) == 1:
                values.append(nums[0])
            elif len(nums) == 2:
                times.append(nums[0])
                values.append(nums[1])
            elif len(nums) == 3:  # our own index,time,value export
                times.append(nums[1])
                values.append(nums[2])
            else:
                raise ParseError(f"expected 1-3 columns, got {len(nums)}",
                                 line=lineno)
    if len(values) < 2:
        raise ParseError("need at least 2 samples")
    if times:
        if len(times) != len(values):
            raise ParseError("mixed 1- and 2-column rows")
        t = np.asarray(times)
        steps = np.diff(t)
        step = (t[-1] - t[0]) / (len(t) - 1)
        if step <= 0 or np.any(np.abs(steps - step) > 1e-9 * abs(step)):
            raise ParseError("time column is not uniformly spaced")
        return TimeSeries(values=np.asarray(values), dt=float(step),
                          t0=float(t[0]))
    return TimeSeries(values=np.asarray(values), dt=1.0 if dt is None else dt)


def save_series_csv(series: TimeSeries, path) -> None:
    """Write `index,time,value` rows with a header."""
    t = series.times
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("index,time,value\n")
        for i, v in enumerate(series.values):
            fh.write(f"{i},{t[i]:.17g},{v:.17g}\n")
