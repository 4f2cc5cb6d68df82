"""Shared fixtures and exact rational reference implementations.

The helpers below recompute basis weights and Kantorovich moments in
Fraction arithmetic, fully independent of the package's float pipeline.
Tests freeze decimal literals produced by these helpers and also call them
directly for randomized cross-checks.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(914207)


def _comb(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def _pow(base: Fraction, exponent: int) -> Fraction:
    return base ** exponent if exponent >= 0 else Fraction(0)


def exact_weight(m: int, q: int, lam: Fraction, i: int, y: Fraction) -> Fraction:
    """Blended basis weight p_i(y) in exact rational arithmetic."""
    M = m + q
    one = 1 - y
    blended = _comb(M - 2, i) * _pow(y, i) * _pow(one, M - i - 1) + _comb(
        M - 2, i - 2
    ) * _pow(y, i - 1) * _pow(one, M - i)
    plain = _comb(M, i) * _pow(y, i) * _pow(one, M - i)
    return (1 - lam) * blended + lam * plain


def exact_window_integral(m: int, rho: Fraction, i: int, k: int) -> Fraction:
    """integral_0^1 ((i + t^rho)/(m+1))^k dt for rational rho."""
    return Fraction(1, (m + 1) ** k) * sum(
        Fraction(_comb(k, j)) * Fraction(i) ** (k - j) / (rho * j + 1)
        for j in range(k + 1)
    )


def exact_moment(
    m: int, q: int, lam: Fraction, rho: Fraction, u: Fraction, k: int
) -> Fraction:
    """K(e_k; u) in exact rational arithmetic."""
    return sum(
        exact_weight(m, q, lam, i, u) * exact_window_integral(m, rho, i, k)
        for i in range(m + q + 1)
    )
