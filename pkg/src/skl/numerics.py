"""Stable combinatorics, quadrature, and grid utilities.

Everything here is pure and deterministic; objects are immutable after
construction and safe to share between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, EvaluationError

#: Largest top index for which binomial coefficients are kept as exact integers.
#: Beyond this the log-gamma representation takes over.  128 keeps the whole
#: range exercised by the partition-of-unity checks (m <= 100, q <= 10) exact.
EXACT_BINOMIAL_LIMIT = 128

#: Composite quadrature defaults: 32-node Gauss-Legendre cells over 8 uniform
#: subdivisions of [0, 1].
DEFAULT_QUADRATURE_ORDER = 32
DEFAULT_SUBDIVISIONS = 8

#: Number of geometric bisection levels applied to the first subdivision when
#: the integrand has an algebraic endpoint singularity at t = 0 (exponents
#: below 1).  Calibrated so that t**0.1 integrates to ~1e-11 absolute error at
#: the default subdivision count.
SINGULAR_ORIGIN_LEVELS = 16

#: Default number of points for sup-norm and modulus grids.
DEFAULT_SUP_GRID_POINTS = 10_001


class BinomialTable:
    """Binomial coefficients with exact-integer and log-space storage.

    Rows up to ``exact_limit`` are held as exact Pascal-triangle integers;
    larger indices are evaluated through ``lgamma``.  ``C(n, k)`` is 0 for
    ``k < 0`` or ``k > n``, matching the usual out-of-range convention.
    """

    def __init__(self, max_n: int = 2048, exact_limit: int = EXACT_BINOMIAL_LIMIT):
        if max_n < 0:
            raise DomainError("max_n must be nonnegative")
        self.max_n = max_n
        self.exact_limit = min(exact_limit, max_n)
        rows: list[list[int]] = [[1]]
        for n in range(1, self.exact_limit + 1):
            prev = rows[-1]
            row = [1] + [prev[k - 1] + prev[k] for k in range(1, n)] + [1]
            rows.append(row)
        self._rows = rows

    def exact(self, n: int, k: int) -> int:
        """Exact integer C(n, k); only available for n <= exact_limit."""
        if n < 0:
            raise DomainError("binomial top index must be nonnegative")
        if n > self.exact_limit:
            raise DomainError(f"exact binomials stored only up to n={self.exact_limit}")
        if k < 0 or k > n:
            return 0
        return self._rows[n][k]

    def log_value(self, n: int, k: int) -> float:
        """log C(n, k) via lgamma; -inf for out-of-range k."""
        if n < 0:
            raise DomainError("binomial top index must be nonnegative")
        if k < 0 or k > n:
            return float("-inf")
        return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)

    def value(self, n: int, k: int) -> float:
        """C(n, k) as a double; exact below the integer threshold."""
        if n < 0:
            raise DomainError("binomial top index must be nonnegative")
        if n > self.max_n:
            raise DomainError(f"binomial top index {n} exceeds table limit {self.max_n}")
        if k < 0 or k > n:
            return 0.0
        if n <= self.exact_limit:
            return float(self._rows[n][k])
        return math.exp(self.log_value(n, k))

    def row(self, n: int) -> np.ndarray:
        """All of C(n, 0..n) as a float vector."""
        if n < 0:
            raise DomainError("binomial top index must be nonnegative")
        if n <= self.exact_limit:
            return np.array(self._rows[n], dtype=float)
        return np.array([self.value(n, k) for k in range(n + 1)])


DEFAULT_BINOMIALS = BinomialTable()


def binomial(n: int, k: int) -> float:
    """C(n, k) with C(n, k) = 0 outside 0 <= k <= n; n must be >= 0."""
    return DEFAULT_BINOMIALS.value(n, k)


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights on the open unit interval.

    ``order`` counts the nodes; the rule integrates polynomials of degree up
    to ``2 * order - 1`` exactly and its weights sum to 1.
    """

    nodes: np.ndarray
    weights: np.ndarray
    order: int

    @classmethod
    def gauss_legendre(cls, order: int = DEFAULT_QUADRATURE_ORDER) -> "QuadratureRule":
        if order < 1:
            raise DomainError("quadrature order must be positive")
        x, w = np.polynomial.legendre.leggauss(order)
        nodes = 0.5 * (x + 1.0)
        weights = 0.5 * w
        nodes.setflags(write=False)
        weights.setflags(write=False)
        return cls(nodes=nodes, weights=weights, order=order)


_GL_DEFAULT = QuadratureRule.gauss_legendre()


@lru_cache(maxsize=64)
def _composite_cells(subdivisions: int, origin_levels: int) -> tuple[np.ndarray, np.ndarray]:
    """Flattened node/weight arrays for the composite rule on [0, 1].

    The first uniform cell is split geometrically toward 0 when
    ``origin_levels`` > 0, halving the inner edge per level.
    """
    h = 1.0 / subdivisions
    edges = [0.0]
    if origin_levels > 0:
        edges.extend(h * 0.5 ** j for j in range(origin_levels, -1, -1))
    else:
        edges.append(h)
    edges.extend((c + 1) * h for c in range(1, subdivisions))
    base_nodes = _GL_DEFAULT.nodes
    base_weights = _GL_DEFAULT.weights
    all_nodes = []
    all_weights = []
    for a, b in zip(edges[:-1], edges[1:]):
        width = b - a
        all_nodes.append(a + width * base_nodes)
        all_weights.append(width * base_weights)
    nodes = np.concatenate(all_nodes)
    weights = np.concatenate(all_weights)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def composite_nodes(
    subdivisions: int = DEFAULT_SUBDIVISIONS, origin_levels: int = 0
) -> tuple[np.ndarray, np.ndarray]:
    """Node and weight vectors of the composite Gauss-Legendre rule on [0, 1]."""
    if subdivisions < 1:
        raise DomainError("subdivisions must be >= 1")
    if origin_levels < 0:
        raise DomainError("origin_levels must be >= 0")
    return _composite_cells(subdivisions, origin_levels)


def evaluate_on(f: Callable, x: np.ndarray) -> np.ndarray:
    """Evaluate ``f`` on an array, falling back to a scalar loop.

    Raises EvaluationError when any returned value is non-finite.
    """
    try:
        values = np.asarray(f(x), dtype=float)
        if values.shape != x.shape:
            raise TypeError
    except (TypeError, ValueError):
        flat = np.fromiter((float(f(t)) for t in x.ravel()), dtype=float, count=x.size)
        values = flat.reshape(x.shape)
    if not np.all(np.isfinite(values)):
        raise EvaluationError("integrand returned a non-finite value")
    return values


def integrate_unit(
    f: Callable,
    subdivisions: int = DEFAULT_SUBDIVISIONS,
    origin_levels: int = 0,
) -> float:
    """Composite Gauss-Legendre estimate of the integral of ``f`` over [0, 1].

    Deterministic for a fixed cell layout.  ``origin_levels`` enables the
    geometric refinement toward t = 0 used for integrands like t**rho with
    rho < 1, whose derivative blows up at the origin.
    """
    nodes, weights = composite_nodes(subdivisions, origin_levels)
    values = evaluate_on(f, nodes)
    return float(np.dot(weights, values))


@dataclass(frozen=True)
class Grid:
    """Uniform closed grid with both endpoints included."""

    lo: float
    hi: float
    count: int
    points: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.count < 2:
            raise DomainError("grid needs at least 2 points")
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)) or self.hi <= self.lo:
            raise DomainError("grid endpoints must be finite with hi > lo")
        pts = np.linspace(self.lo, self.hi, self.count)
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def step(self) -> float:
        return (self.hi - self.lo) / (self.count - 1)


def unit_grid(count: int = DEFAULT_SUP_GRID_POINTS) -> Grid:
    return Grid(0.0, 1.0, count)


def sup_on_grid(f: Callable, grid: Grid) -> tuple[float, float]:
    """Maximum of ``f`` over the grid points and its abscissa.

    Ties break toward the smallest abscissa.  The result does not depend on
    evaluation order.
    """
    values = evaluate_on(f, grid.points)
    idx = int(np.argmax(values))
    return float(values[idx]), float(grid.points[idx])


def fsum_product(a: Sequence[float] | np.ndarray, b: Sequence[float] | np.ndarray) -> float:
    """Compensated dot product; robust against cancellation across terms."""
    return math.fsum(np.multiply(a, b).tolist())
