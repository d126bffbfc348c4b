"""Parameter sweeps over (tau, eps_tilde) and series post-processing:
sudden death/birth intervals, peaks, sudden slope changes."""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .closedform import closed_channel_state, validate_channel
from .measures import naqc_degree, negativity, pi_tangle
from .netmodel import (ALL_CHANNELS, THREE_NODE_CHANNELS, DipolarParams,
                       NetworkConfig, network_channel_state)

ZERO_TOL = 1e-6
PEAK_PROMINENCE_FRACTION = 0.05
BISECTION_RESOLUTION = 1e-4
BISECTION_MAX_ITER = 40

MODES = ("closed_form", "dense", "validate")
QUANTIFIERS = ("negativity", "naqc", "tangle")

_TWO_NODE_QUANTIFIERS = ("negativity", "naqc")


def _pairing_valid(channel: str, quantifier: str) -> bool:
    if channel in THREE_NODE_CHANNELS:
        return quantifier == "tangle"
    return quantifier in _TWO_NODE_QUANTIFIERS


@dataclass(frozen=True)
class ScanGrid:
    tau_min: float = 0.0
    tau_max: float = 10.0
    tau_steps: int = 1001
    eps_values: tuple[float, ...] = (-0.2, 0.0, 0.1, 0.3)
    channels: tuple[str, ...] = ("12",)
    quantifiers: tuple[str, ...] = ("negativity",)

    def __post_init__(self):
        if not self.tau_min < self.tau_max:
            raise ValueError("tau_min must be < tau_max")
        if self.tau_steps < 2:
            raise ValueError("tau_steps must be >= 2")
        if not self.eps_values:
            raise ValueError("eps_values must be nonempty")
        for ch in self.channels:
            if ch not in ALL_CHANNELS:
                raise ValueError(f"unknown channel {ch!r}")
        for q in self.quantifiers:
            if q not in QUANTIFIERS:
                raise ValueError(f"unknown quantifier {q!r}")
        for ch in self.channels:
            for q in self.quantifiers:
                if not _pairing_valid(ch, q):
                    raise ValueError(
                        f"quantifier {q!r} cannot be evaluated on channel {ch!r}")

    def taus(self) -> np.ndarray:
        return np.linspace(self.tau_min, self.tau_max, self.tau_steps)


@dataclass(frozen=True)
class MeasureSeries:
    channel: str
    quantifier: str
    eps_tilde: float
    points: tuple[tuple[float, float], ...]

    def __post_init__(self):
        taus = [t for t, _ in self.points]
        if any(b <= a for a, b in zip(taus, taus[1:])):
            raise ValueError("series taus must be strictly increasing")
        if any(v < -1e-10 for _, v in self.points):
            raise ValueError("series values must be >= -1e-10")

    def values(self) -> np.ndarray:
        return np.array([v for _, v in self.points])

    def tau_array(self) -> np.ndarray:
        return np.array([t for t, _ in self.points])


@dataclass(frozen=True)
class EventRecord:
    kind: str  # death | birth | peak | sudden_change
    tau: float
    value: float
    interval_end: Optional[float] = None


@dataclass(frozen=True)
class ExtensionSpec:
    """Bridge coupling for channel "18": either tracking the swept inner
    parameters or fixed at an explicit (tau, eps_tilde)."""

    mode: str = "track"
    bridge: Optional[DipolarParams] = None

    def __post_init__(self):
        if self.mode not in ("track", "fixed"):
            raise ValueError(f"extension mode must be track or fixed, got {self.mode!r}")
        if self.mode == "fixed" and self.bridge is None:
            raise ValueError("fixed extension mode needs explicit bridge parameters")

    def bridge_for(self, p: DipolarParams) -> DipolarParams:
        return p if self.mode == "track" else self.bridge


_QUANTIFIER_FN = {
    "negativity": negativity,
    "naqc": naqc_degree,
    "tangle": lambda rho: pi_tangle(rho).pi,
}


def evaluate_point(cfg: NetworkConfig, p: DipolarParams, channel: str,
                   quantifier: str, mode: str = "closed_form",
                   extension: Optional[ExtensionSpec] = None) -> float:
    """Single quantifier value at one parameter point."""
    p_bridge = None
    if channel == "18":
        if extension is None:
            raise ValueError("channel 18 requires an ExtensionSpec")
        p_bridge = extension.bridge_for(p)
    if mode == "closed_form":
        rho = closed_channel_state(cfg, p, channel, p_bridge)
    elif mode == "dense":
        rho = network_channel_state(cfg, p, channel, p_bridge)
    elif mode == "validate":
        rho = validate_channel(cfg, p, channel, p_bridge)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    value = _QUANTIFIER_FN[quantifier](rho)
    return max(0.0, float(value)) if value > -1e-10 else float(value)


def sweep(cfg: NetworkConfig, grid: ScanGrid, mode: str = "closed_form",
          extension: Optional[ExtensionSpec] = None) -> list[MeasureSeries]:
    """One series per (channel, quantifier, eps) triple, grid order."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if "18" in grid.channels and extension is None:
        raise ValueError("grid includes channel 18 but no ExtensionSpec given")
    taus = grid.taus()
    out = []
    for channel in grid.channels:
        for quantifier in grid.quantifiers:
            for eps in grid.eps_values:
                pts = []
                for tau in taus:
                    p = DipolarParams(eps_tilde=eps, tau=float(tau))
                    pts.append((float(tau),
                                evaluate_point(cfg, p, channel, quantifier,
                                               mode, extension)))
                out.append(MeasureSeries(channel=channel, quantifier=quantifier,
                                         eps_tilde=eps, points=tuple(pts)))
    return out


def series_evaluator(cfg: NetworkConfig, series: MeasureSeries,
                     mode: str = "closed_form",
                     extension: Optional[ExtensionSpec] = None) -> Callable[[float], float]:
    """tau -> value callable matching a swept series, for event refinement."""
    def fn(tau: float) -> float:
        p = DipolarParams(eps_tilde=series.eps_tilde, tau=tau)
        return evaluate_point(cfg, p, series.channel, series.quantifier,
                              mode, extension)
    return fn


def _bisect_crossing(fn: Callable[[float], float], lo: float, hi: float,
                     tol: float) -> float:
    """tau where fn crosses `tol` inside (lo, hi), to BISECTION_RESOLUTION."""
    f_lo = fn(lo) - tol
    for _ in range(BISECTION_MAX_ITER):
        if hi - lo <= BISECTION_RESOLUTION:
            break
        mid = 0.5 * (lo + hi)
        f_mid = fn(mid) - tol
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def detect_zero_intervals(series: MeasureSeries, zero_tol: float = ZERO_TOL,
                          quantifier: Optional[Callable[[float], float]] = None
                          ) -> list[EventRecord]:
    """Maximal runs of values <= zero_tol become death intervals; the first
    point above zero_tol after a run is a birth. With a quantifier callable
    the interval edges are refined by bisection."""
    if not series.points:
        raise ValueError("series is empty")
    taus = series.tau_array()
    vals = series.values()
    dead = vals <= zero_tol
    events: list[EventRecord] = []
    i = 0
    n = len(vals)
    while i < n:
        if not dead[i]:
            i += 1
            continue
        j = i
        while j + 1 < n and dead[j + 1]:
            j += 1
        start, end = float(taus[i]), float(taus[j])
        if quantifier is not None and i > 0:
            start = _bisect_crossing(quantifier, float(taus[i - 1]), start, zero_tol)
        if quantifier is not None and j + 1 < n:
            end = _bisect_crossing(quantifier, end, float(taus[j + 1]), zero_tol)
        events.append(EventRecord(kind="death", tau=start, value=float(vals[i]),
                                  interval_end=end))
        if j + 1 < n:
            birth_tau = end if quantifier is not None else float(taus[j + 1])
            events.append(EventRecord(kind="birth", tau=birth_tau,
                                      value=float(vals[j + 1])))
        i = j + 1
    return events


def count_peaks(series: MeasureSeries, prominence: Optional[float] = None
                ) -> list[EventRecord]:
    """Local maxima whose height above the higher flanking minimum reaches
    the prominence threshold (default 0.05 * series max)."""
    vals = series.values()
    taus = series.tau_array()
    if len(vals) < 3:
        raise ValueError("need at least 3 points to detect peaks")
    if prominence is None:
        prominence = PEAK_PROMINENCE_FRACTION * float(vals.max())
    events = []
    for i in range(1, len(vals) - 1):
        if not (vals[i] > vals[i - 1] and vals[i] >= vals[i + 1]):
            continue
        if vals[i] == vals[i + 1]:  # plateau: attribute the peak to its left edge
            k = i + 1
            while k < len(vals) and vals[k] == vals[i]:
                k += 1
            if k < len(vals) and vals[k] > vals[i]:
                continue
        left = vals[:i][::-1]
        right = vals[i + 1:]
        left_min = vals[i]
        for v in left:
            if v > vals[i]:
                break
            left_min = min(left_min, v)
        right_min = vals[i]
        for v in right:
            if v > vals[i]:
                break
            right_min = min(right_min, v)
        if vals[i] - max(left_min, right_min) >= prominence:
            events.append(EventRecord(kind="peak", tau=float(taus[i]),
                                      value=float(vals[i])))
    return events


def detect_sudden_changes(series: MeasureSeries,
                          slope_jump_tol: float) -> list[EventRecord]:
    """Points where the discrete second difference exceeds
    slope_jump_tol * (series range); requires uniform tau spacing."""
    taus = series.tau_array()
    vals = series.values()
    steps = np.diff(taus)
    if steps.size and (steps.max() - steps.min()) > 1e-9 * steps.max():
        raise ValueError("detect_sudden_changes requires uniform tau spacing")
    rng = float(vals.max() - vals.min())
    if rng == 0.0:
        return []
    events = []
    for i in range(1, len(vals) - 1):
        d2 = abs(vals[i + 1] - 2 * vals[i] + vals[i - 1])
        if d2 > slope_jump_tol * rng:
            events.append(EventRecord(kind="sudden_change", tau=float(taus[i]),
                                      value=float(vals[i])))
    return events
