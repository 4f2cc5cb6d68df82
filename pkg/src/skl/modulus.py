"""Grid estimates of moduli of continuity.

A modulus is estimated by sampling the function on a uniform grid and taking
the largest max-min range over every window of points whose span stays within
delta.  Grid estimates are lower bounds of the true modulus; callers that
need a guaranteed upper bound must pad by a Lipschitz-times-step term.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Callable

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import DomainError, EvaluationError
from .numerics import DEFAULT_SUP_GRID_POINTS, evaluate_on

#: Per-axis sample count for bivariate partial moduli; 501**2 evaluations
#: keeps surface sampling cheap while resolving the window widths in use.
DEFAULT_SURFACE_POINTS = 501

#: The one-shot estimators refuse grids too coarse to mean anything.
MIN_RESOLUTION = 100


@dataclass(frozen=True)
class ModulusEstimate:
    """One modulus query result.

    ``kind`` is "full" for the univariate modulus and "partial_1" or
    "partial_2" for the coordinate moduli of a bivariate function.  The
    value is a grid lower bound of the true supremum.
    """

    delta: float
    value: float
    kind: str
    grid_resolution: int


@dataclass(frozen=True)
class ModulusScan:
    """Sampled function values prepared for repeated modulus queries.

    Building the sample once and querying many deltas keeps each query at
    O(grid) through a monotonic-deque sweep.
    """

    lo: float
    hi: float
    values: np.ndarray

    @property
    def step(self) -> float:
        return (self.hi - self.lo) / (len(self.values) - 1)

    @property
    def resolution(self) -> int:
        return len(self.values)

    def value_at(self, delta: float) -> float:
        """Estimated omega(f; delta) from the stored samples."""
        if not math.isfinite(delta) or delta < 0.0:
            raise DomainError("delta must be finite and >= 0")
        if delta == 0.0:
            return 0.0
        window = int(math.floor(delta / self.step + 1e-9)) + 1
        return _max_window_range(self.values, window)


def _max_window_range(values: np.ndarray, window: int) -> float:
    """Largest (max - min) over all length-``window`` runs of consecutive samples."""
    n = len(values)
    if window >= n:
        return float(values.max() - values.min())
    if window <= 1:
        return 0.0
    # Monotonic deques give every window's max and min in one O(n) pass.
    best = 0.0
    maxq: deque[int] = deque()
    minq: deque[int] = deque()
    for i in range(n):
        while maxq and values[maxq[-1]] <= values[i]:
            maxq.pop()
        maxq.append(i)
        while minq and values[minq[-1]] >= values[i]:
            minq.pop()
        minq.append(i)
        start = i - window + 1
        if start >= 0:
            if maxq[0] < start:
                maxq.popleft()
            if minq[0] < start:
                minq.popleft()
            spread = values[maxq[0]] - values[minq[0]]
            if spread > best:
                best = spread
    return float(best)


def modulus_scan(
    f: Callable,
    lo: float = 0.0,
    hi: float = 1.0,
    count: int = DEFAULT_SUP_GRID_POINTS,
) -> ModulusScan:
    """Sample ``f`` uniformly on [lo, hi] for modulus queries."""
    if count < 2:
        raise DomainError("count must be >= 2")
    if hi <= lo:
        raise DomainError("hi must exceed lo")
    xs = np.linspace(lo, hi, count)
    values = evaluate_on(f, xs)
    values.setflags(write=False)
    return ModulusScan(lo=lo, hi=hi, values=values)


def modulus(
    f: Callable,
    delta: float,
    lo: float = 0.0,
    hi: float = 1.0,
    resolution: int = DEFAULT_SUP_GRID_POINTS,
) -> ModulusEstimate:
    """Grid estimate of omega(f; delta) on [lo, hi].

    Requires delta > 0 and a grid of at least MIN_RESOLUTION points; use
    :func:`modulus_scan` directly for exploratory queries outside those
    limits.
    """
    if not math.isfinite(delta) or delta <= 0.0:
        raise DomainError("delta must be finite and > 0")
    if resolution < MIN_RESOLUTION:
        raise DomainError(f"resolution must be >= {MIN_RESOLUTION}")
    scan = modulus_scan(f, lo=lo, hi=hi, count=resolution)
    return ModulusEstimate(
        delta=delta, value=scan.value_at(delta), kind="full", grid_resolution=resolution
    )


def sample_surface(
    g: Callable,
    xs: np.ndarray,
    ys: np.ndarray,
) -> np.ndarray:
    """g evaluated on the meshgrid of xs and ys, shape (len(xs), len(ys)).

    Tries a vectorized call first and falls back to a scalar double loop for
    functions that only accept floats.
    """
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    try:
        values = np.asarray(g(X, Y), dtype=float)
        if values.shape != X.shape:
            raise TypeError
    except (TypeError, ValueError):
        values = np.array([[float(g(float(x), float(y))) for y in ys] for x in xs])
    if not np.all(np.isfinite(values)):
        raise EvaluationError("surface function returned a non-finite value")
    return values


def _axis_window_range(values: np.ndarray, window: int, axis: int) -> float:
    """Largest windowed max-min sweep along one axis of a sampled surface."""
    n = values.shape[axis]
    if window >= n:
        return float((values.max(axis=axis) - values.min(axis=axis)).max())
    if window <= 1:
        return 0.0
    slabs = sliding_window_view(values, window_shape=window, axis=axis)
    return float((slabs.max(axis=-1) - slabs.min(axis=-1)).max())


@dataclass(frozen=True)
class SurfaceModulus:
    """Sampled bivariate function prepared for partial-modulus queries.

    Build once per function and rectangle, then query many delta pairs; the
    sampling cost dominates and is paid a single time.
    """

    lo1: float
    hi1: float
    lo2: float
    hi2: float
    values: np.ndarray

    @property
    def step1(self) -> float:
        return (self.hi1 - self.lo1) / (self.values.shape[0] - 1)

    @property
    def step2(self) -> float:
        return (self.hi2 - self.lo2) / (self.values.shape[1] - 1)

    def _window(self, delta: float, step: float) -> int:
        if not math.isfinite(delta) or delta < 0.0:
            raise DomainError("delta must be finite and >= 0")
        if delta == 0.0:
            return 1
        return int(math.floor(delta / step + 1e-9)) + 1

    def omega1(self, delta: float) -> float:
        """Modulus in the first coordinate with the second frozen."""
        return _axis_window_range(self.values, self._window(delta, self.step1), axis=0)

    def omega2(self, delta: float) -> float:
        """Modulus in the second coordinate with the first frozen."""
        return _axis_window_range(self.values, self._window(delta, self.step2), axis=1)


def surface_modulus(
    g: Callable,
    lo1: float = 0.0,
    hi1: float = 1.0,
    lo2: float = 0.0,
    hi2: float = 1.0,
    count: int = DEFAULT_SURFACE_POINTS,
) -> SurfaceModulus:
    """Sample ``g`` on [lo1, hi1] x [lo2, hi2] for partial-modulus queries."""
    if count < 2:
        raise DomainError("count must be >= 2")
    if hi1 <= lo1 or hi2 <= lo2:
        raise DomainError("each hi must exceed its lo")
    xs = np.linspace(lo1, hi1, count)
    ys = np.linspace(lo2, hi2, count)
    values = sample_surface(g, xs, ys)
    values.setflags(write=False)
    return SurfaceModulus(lo1=lo1, hi1=hi1, lo2=lo2, hi2=hi2, values=values)


def partial_moduli(
    g: Callable,
    delta1: float,
    delta2: float,
    lo1: float = 0.0,
    hi1: float = 1.0,
    lo2: float = 0.0,
    hi2: float = 1.0,
    resolution: int = DEFAULT_SURFACE_POINTS,
) -> tuple[ModulusEstimate, ModulusEstimate]:
    """Partial moduli (omega_1, omega_2) of a bivariate function.

    omega_1 freezes the second coordinate and perturbs the first within
    delta1; omega_2 does the reverse.  Both are grid lower bounds on the
    rectangle [lo1, hi1] x [lo2, hi2].
    """
    for d in (delta1, delta2):
        if not math.isfinite(d) or d <= 0.0:
            raise DomainError("deltas must be finite and > 0")
    sm = surface_modulus(g, lo1=lo1, hi1=hi1, lo2=lo2, hi2=hi2, count=resolution)
    return (
        ModulusEstimate(
            delta=delta1, value=sm.omega1(delta1), kind="partial_1",
            grid_resolution=resolution,
        ),
        ModulusEstimate(
            delta=delta2, value=sm.omega2(delta2), kind="partial_2",
            grid_resolution=resolution,
        ),
    )
