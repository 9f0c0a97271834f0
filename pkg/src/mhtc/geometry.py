"""Sum-squared hop distances, tridiagonal determinants and ellipsoid volumes.

A chain of ``m`` relays between a source at ``(-R/2, 0)`` and a destination at
``(R/2, 0)`` is a point of R^(2m).  Its sum of squared hop lengths is a
positive-definite quadratic form, so level sets are 2m-dimensional ellipsoids
whose volume has a closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np


@dataclass(frozen=True)
class RelayChain:
    """Ordered relay coordinates between a source and destination ``R`` apart."""

    relays: tuple[tuple[float, float], ...]
    R: float

    def __init__(self, relays, R):
        object.__setattr__(self, "relays", tuple((float(x), float(y)) for x, y in relays))
        object.__setattr__(self, "R", float(R))

    @property
    def m(self) -> int:
        return len(self.relays)

    def hop_lengths_sq(self) -> np.ndarray:
        pts = np.array([(-self.R / 2, 0.0), *self.relays, (self.R / 2, 0.0)])
        return np.sum(np.diff(pts, axis=0) ** 2, axis=1)


class AttemptVector(tuple):
    """Per-hop attempt counts, every entry a positive integer."""

    def __new__(cls, k: Sequence[int]):
        k = tuple(int(v) for v in k)
        if not k or any(v < 1 for v in k):
            raise ValueError(f"attempt counts must be positive integers, got {k}")
        return super().__new__(cls, k)


def sum_squared_distance(chain: RelayChain) -> float:
    return float(np.sum(chain.hop_lengths_sq()))


def sum_squared_distance_batch(Z, R: float, weights=None) -> np.ndarray:
    """Vectorised (weighted) sum of squared hops for relay arrays ``Z[..., m, 2]``."""
    Z = np.asarray(Z, dtype=float)
    shape = Z.shape[:-2]
    src = np.broadcast_to(np.array([-R / 2, 0.0]), shape + (1, 2))
    dst = np.broadcast_to(np.array([R / 2, 0.0]), shape + (1, 2))
    pts = np.concatenate([src, Z, dst], axis=-2)
    hops = np.sum(np.diff(pts, axis=-2) ** 2, axis=-1)
    if weights is not None:
        hops = hops * np.asarray(weights, dtype=float)
    return hops.sum(axis=-1)


def min_sum_squared(R: float, m: int) -> float:
    """Smallest sum of squared hops, attained by equidistant collinear relays."""
    if m < 0:
        raise ValueError("relay count must be non-negative")
    return R**2 / (m + 1)


def equidistant_chain(R: float, m: int) -> RelayChain:
    return RelayChain([(-R / 2 + R * i / (m + 1), 0.0) for i in range(1, m + 1)], R)


def tridiag_det_uniform(m: int) -> int:
    """Determinant of the m x m (2, -1) tridiagonal matrix by its recurrence."""
    if m < 1:
        raise ValueError("matrix dimension must be at least 1")
    prev, cur = 1, 2  # det(A_0) = 1 continues the recurrence
    for _ in range(m - 1):
        prev, cur = cur, 2 * cur - prev
    return cur


def weighted_tridiag_matrix(n: Sequence[int]) -> np.ndarray:
    """Quadratic-form matrix of the weighted y-sum for hop weights ``n``."""
    n = list(n)
    m = len(n) - 1
    A = np.zeros((m, m))
    for i in range(m):
        A[i, i] = n[i] + n[i + 1]
        if i + 1 < m:
            A[i, i + 1] = A[i + 1, i] = -n[i + 1]
    return A


def tridiag_det_weighted(n: Sequence[int]) -> int:
    """Determinant of the weighted tridiagonal form via the continuant recurrence.

    Row ``i`` has diagonal ``n_i + n_{i+1}`` and off-diagonal ``-n_{i+1}``, so
    ``D_i = (n_i + n_{i+1}) D_{i-1} - n_i**2 D_{i-2}``.
    """
    n = [int(v) for v in n]
    if len(n) < 2:
        raise ValueError("need at least two hop weights (m >= 1)")
    prev, cur = 1, n[0] + n[1]
    for i in range(1, len(n) - 1):
        prev, cur = cur, (n[i] + n[i + 1]) * cur - n[i] ** 2 * prev
    return cur


def weighted_det_closed_form(n: Sequence[int]) -> Fraction:
    """``(prod n_i)(sum 1/n_i)`` in exact rational arithmetic."""
    prod = math.prod(int(v) for v in n)
    return prod * sum(Fraction(1, int(v)) for v in n)


def ellipsoid_volume(m: int, a: float, R: float) -> float:
    """Lebesgue measure of ``{Z in R^(2m) : d_m(Z) <= a}``."""
    if m < 1:
        raise ValueError("volume is defined for m >= 1")
    excess = a - min_sum_squared(R, m)
    if excess < -1e-12 * max(1.0, abs(a)):
        raise ValueError(f"level a={a} lies below the minimum R^2/(m+1)")
    excess = max(excess, 0.0)
    return math.pi**m * excess**m / (math.factorial(m) * tridiag_det_uniform(m))


def ellipsoid_volume_weighted(n: Sequence[int], a: float, R: float) -> float:
    """Measure of ``{Z : sum_i n_i r_i^2 <= a}`` for hop weights ``n``."""
    n = AttemptVector(n)
    m = len(n) - 1
    if m < 1:
        raise ValueError("volume is defined for m >= 1")
    inv_sum = sum(1.0 / v for v in n)
    excess = a - R**2 / inv_sum
    if excess < -1e-12 * max(1.0, abs(a)):
        raise ValueError(f"level a={a} lies below the minimum R^2/sum(1/n)={R**2 / inv_sum}")
    excess = max(excess, 0.0)
    return math.pi**m * excess**m / (math.factorial(m) * tridiag_det_weighted(n))
