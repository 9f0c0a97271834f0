"""Expected route counts, outage lower bounds and transmission-capacity bounds.

All closed forms assume the exponential per-hop law of :mod:`mhtc.channel`.
Throughout, ``Lam = lambda * gamma * K`` and
``kappa = G * pi * (1 - gamma) / (gamma * K)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from scipy.special import gammainc

from .channel import HopModel
from .geometry import AttemptVector, min_sum_squared

BISECT_MAX_ITER = 200
OUTAGE_TOL = 1e-10


class UnachievableOutageError(ValueError):
    """The requested outage lies below the smallest attainable bound."""


class NumericalError(RuntimeError):
    """A root search failed to converge."""


@dataclass(frozen=True)
class RetransPolicy:
    variant: str = "single_attempt"
    k: AttemptVector | None = None
    M: int | None = None

    @classmethod
    def single(cls) -> "RetransPolicy":
        return cls()

    @classmethod
    def best_effort(cls, k: Sequence[int]) -> "RetransPolicy":
        return cls("best_effort", k=AttemptVector(k))

    @classmethod
    def total_budget(cls, M: int) -> "RetransPolicy":
        return cls("total_budget", M=int(M))

    def __str__(self):
        if self.variant == "best_effort":
            return "best_effort(" + " ".join(map(str, self.k)) + ")"
        if self.variant == "total_budget":
            return f"total_budget({self.M})"
        return self.variant


@dataclass(frozen=True)
class NetworkConfig:
    """One operating point of the network.

    ``lam`` is the density of all nodes, a fraction ``gamma`` of which transmit
    in every subslot; ``D`` bounds the sum of squared hop lengths of a route
    (``math.inf`` for no constraint).
    """

    lam: float
    gamma: float
    R: float
    m: int
    hop_model: HopModel
    D: float = math.inf
    policy: RetransPolicy = field(default_factory=RetransPolicy)

    def __post_init__(self):
        if not self.lam > 0:
            raise ValueError(f"node density must be positive, got lambda={self.lam}")
        if not 0 < self.gamma < 1:
            raise ValueError(f"gamma must lie in (0, 1), got {self.gamma}")
        if not self.R > 0:
            raise ValueError(f"S-D distance must be positive, got R={self.R}")
        if self.m < 0 or int(self.m) != self.m:
            raise ValueError(f"relay count must be a non-negative integer, got m={self.m}")
        if math.isfinite(self.D) and self.D <= min_sum_squared(self.R, self.m):
            raise ValueError(f"D={self.D} must exceed R^2/(m+1)={min_sum_squared(self.R, self.m)}")
        p = self.policy
        if p.variant == "best_effort" and len(p.k) != self.m + 1:
            raise ValueError(f"best-effort needs m+1={self.m + 1} attempt counts, got {len(p.k)}")
        if p.variant == "total_budget" and p.M < self.m + 1:
            raise ValueError(f"total budget M={p.M} is below the hop count {self.m + 1}")

    @property
    def lambda_t(self) -> float:
        return self.lam * self.gamma

    @property
    def relay_density(self) -> float:
        return self.lam * (1 - self.gamma)

    @property
    def Lam(self) -> float:
        return self.lam * self.gamma * self.hop_model.K

    @property
    def kappa(self) -> float:
        hm = self.hop_model
        return hm.G * math.pi * (1 - self.gamma) / (self.gamma * hm.K)

    @property
    def subslots(self) -> int:
        """Subslots per packet: m+1, sum(k) or M depending on the policy."""
        p = self.policy
        if p.variant == "best_effort":
            return sum(p.k)
        if p.variant == "total_budget":
            return p.M
        return self.m + 1

    def with_(self, **changes) -> "NetworkConfig":
        return replace(self, **changes)


@dataclass(frozen=True)
class CapacityResult:
    """Transmission-capacity bound; ``density`` is the node density behind it."""

    value: float
    valid: bool
    epsilon_floor: float
    density: float = math.nan
    subslots: int = 1


# -- expected number of potential relay sets ---------------------------------

def _require_relays(cfg: NetworkConfig):
    if cfg.m < 1:
        raise ValueError("expected relay-set counts need m >= 1")


def expected_relay_sets(cfg: NetworkConfig) -> float:
    """Expected number of single-attempt relay sets with ``d_m <= D``.

    The finite sum ``exp(-x) sum_{i<m} x**i/i!`` is the upper regularised
    incomplete gamma function, so the braces equal
    ``exp(-Lam R^2/(m+1)) * P(m, Lam (D - R^2/(m+1)))``.
    """
    _require_relays(cfg)
    if not math.isfinite(cfg.D):
        return expected_relay_sets_unbounded(cfg)
    m, d0 = cfg.m, min_sum_squared(cfg.R, cfg.m)
    if cfg.D <= d0:
        raise ValueError(f"D={cfg.D} must exceed R^2/(m+1)={d0}")
    G = cfg.hop_model.G
    return G * cfg.kappa**m / (m + 1) * math.exp(-cfg.Lam * d0) * float(gammainc(m, cfg.Lam * (cfg.D - d0)))


def expected_relay_sets_unbounded(cfg: NetworkConfig) -> float:
    _require_relays(cfg)
    m = cfg.m
    return cfg.hop_model.G * cfg.kappa**m / (m + 1) * math.exp(-cfg.Lam * cfg.R**2 / (m + 1))


def _weighted_set_count(cfg: NetworkConfig, n: Sequence[int]) -> float:
    """``(pi(1-gamma)/(gamma K))^m exp(-Lam R^2/sum(1/n)) / ((prod n)(sum 1/n))``.

    This is the integral of ``lambda_relay^m exp(-lambda_t K sum n_i r_i^2)``
    over the relay positions; the caller supplies powers of ``G`` and signs.
    """
    m, hm = cfg.m, cfg.hop_model
    inv_sum = sum(1.0 / v for v in n)
    H = math.pi * (1 - cfg.gamma) / (cfg.gamma * hm.K)
    return H**m * math.exp(-cfg.Lam * cfg.R**2 / inv_sum) / (math.prod(n) * inv_sum)


def expected_relay_sets_best_effort(cfg: NetworkConfig, k: Sequence[int]) -> float:
    """Expected relay sets when hop ``i`` blindly repeats ``k_i`` times.

    Expands ``prod_i [1 - (1 - p_i)^k_i]`` by the binomial theorem; the term
    with exponents ``n`` integrates to ``_weighted_set_count(cfg, n)``.
    """
    _require_relays(cfg)
    k = AttemptVector(k)
    m, G = cfg.m, cfg.hop_model.G
    if len(k) != m + 1:
        raise ValueError(f"need m+1={m + 1} attempt counts, got {len(k)}")
    total = 0.0
    for n in itertools.product(*(range(1, ki + 1) for ki in k)):
        sign = (-1) ** (m + 1 + sum(n))
        binoms = math.prod(math.comb(ki, ni) for ki, ni in zip(k, n))
        total += sign * G ** sum(n) * binoms * _weighted_set_count(cfg, n)
    return total


def pure_power_expected_count(cfg: NetworkConfig, k: Sequence[int]) -> float:
    """Expected relay sets under the per-set weight ``prod_i p_i**k_i``."""
    return cfg.hop_model.G ** sum(k) * _weighted_set_count(cfg, k)


@lru_cache(maxsize=None)
def total_budget_terms(hops: int, M: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Signed coefficients ``(k, c_k)`` of ``g_(m,M) = sum_k c_k prod p_i**k_i``.

    ``c_k = (-1)**(|k| - hops) * sum_{j >= k, |j| <= M} prod binom(j_l - 1, k_l - 1)``.
    """
    if M < hops:
        raise ValueError(f"budget M={M} is below the hop count {hops}")
    vectors = [v for v in itertools.product(range(1, M - hops + 2), repeat=hops) if sum(v) <= M]
    terms = []
    for k in vectors:
        inner = sum(math.prod(math.comb(jl - 1, kl - 1) for jl, kl in zip(j, k))
                    for j in vectors if all(jl >= kl for jl, kl in zip(j, k)))
        terms.append((k, (-1) ** (sum(k) - hops) * inner))
    return tuple(terms)


def expected_relay_sets_total_budget(cfg: NetworkConfig, M: int) -> float:
    """Expected relay sets when the whole route shares ``M`` attempt slots."""
    _require_relays(cfg)
    return sum(c * pure_power_expected_count(cfg, k) for k, c in total_budget_terms(cfg.m + 1, int(M)))


def best_effort_success_ie(p, k: Sequence[int]):
    """Route success ``prod [1-(1-p_i)^k_i]`` via its inclusion-exclusion sum."""
    p = np.asarray(p, dtype=float)
    hops = p.shape[-1]
    total = np.zeros(p.shape[:-1])
    for n in itertools.product(*(range(1, ki + 1) for ki in k)):
        coef = (-1) ** (hops + sum(n)) * math.prod(math.comb(ki, ni) for ki, ni in zip(k, n))
        total = total + coef * np.prod(p ** np.asarray(n), axis=-1)
    return total


def total_budget_success_ie(p, M: int):
    """In-order completion probability of all hops within ``M`` slots."""
    p = np.asarray(p, dtype=float)
    total = np.zeros(p.shape[:-1])
    for k, c in total_budget_terms(p.shape[-1], int(M)):
        total = total + c * np.prod(p ** np.asarray(k), axis=-1)
    return total


def expected_sets_for_policy(cfg: NetworkConfig) -> float:
    p = cfg.policy
    if p.variant == "best_effort":
        return expected_relay_sets_best_effort(cfg, p.k)
    if p.variant == "total_budget":
        return expected_relay_sets_total_budget(cfg, p.M)
    return expected_relay_sets(cfg)


def outage_lower_bound(expected_count: float) -> float:
    if expected_count < 0:
        raise ValueError("expected count must be non-negative")
    return math.exp(-expected_count)


def direct_outage(cfg: NetworkConfig) -> float:
    """Exact outage of single-hop direct transmission (``m = 0``)."""
    hm = cfg.hop_model
    return 1.0 - hm.G * math.exp(-cfg.lambda_t * hm.K * cfg.R**2)


def outage_bound_for(cfg: NetworkConfig) -> float:
    if cfg.m == 0:
        return direct_outage(cfg)
    return outage_lower_bound(expected_sets_for_policy(cfg))


# -- capacity bounds ----------------------------------------------------------

def tc_upper_bound(cfg: NetworkConfig, epsilon: float) -> CapacityResult:
    """Closed-form capacity bound for single attempts and unbounded ``D``."""
    _check_epsilon(epsilon)
    _require_relays(cfg)
    m, hm = cfg.m, cfg.hop_model
    floor = math.exp(-hm.G * cfg.kappa**m / (m + 1))
    if epsilon < floor:
        return CapacityResult(math.nan, False, floor, subslots=m + 1)
    bracket = m * math.log(cfg.kappa) + math.log(hm.G) - math.log(m + 1) - math.log(math.log(1 / epsilon))
    value = bracket * (1 - epsilon) / (hm.K * cfg.R**2)
    density = (m + 1) * bracket / (cfg.gamma * hm.K * cfg.R**2)
    return CapacityResult(value, True, floor, density, m + 1)


def tc_upper_bound_best_effort(cfg: NetworkConfig, epsilon: float, k: Sequence[int]) -> CapacityResult:
    """Best-effort capacity bound from the dominant ``n = k`` term.

    The coefficient of that term is ``G kappa^m / ((prod k)(sum 1/k))``; with
    all-ones ``k`` this reduces exactly to :func:`tc_upper_bound`.
    """
    _check_epsilon(epsilon)
    _require_relays(cfg)
    k = AttemptVector(k)
    m, hm = cfg.m, cfg.hop_model
    if len(k) != m + 1:
        raise ValueError(f"need m+1={m + 1} attempt counts, got {len(k)}")
    inv_sum, prod_k, tot_k = sum(1.0 / v for v in k), math.prod(k), sum(k)
    coef = hm.G * cfg.kappa**m / (prod_k * inv_sum)
    floor = math.exp(-coef)
    if epsilon < floor:
        return CapacityResult(math.nan, False, floor, subslots=tot_k)
    bracket = (m * math.log(cfg.kappa) + math.log(hm.G) - math.log(prod_k * inv_sum)
               - math.log(math.log(1 / epsilon)))
    value = inv_sum * (1 - epsilon) * bracket / (hm.K * cfg.R**2 * tot_k)
    density = inv_sum * bracket / (cfg.gamma * hm.K * cfg.R**2)
    return CapacityResult(value, True, floor, density, tot_k)


def best_effort_dominant_outage(cfg: NetworkConfig, k: Sequence[int]) -> float:
    """Outage model inverted by :func:`tc_upper_bound_best_effort`."""
    inv_sum = sum(1.0 / v for v in k)
    coef = cfg.hop_model.G * cfg.kappa**cfg.m / (math.prod(k) * inv_sum)
    return math.exp(-coef * math.exp(-cfg.Lam * cfg.R**2 / inv_sum))


def capacity_at_density(cfg: NetworkConfig, lam: float, epsilon: float) -> float:
    """``(1 - eps) * lambda * gamma / k`` with ``k`` subslots per packet."""
    return (1 - epsilon) * lam * cfg.gamma / cfg.subslots


def predetermined_tc_bound(cfg: NetworkConfig, epsilon: float) -> float:
    """Capacity bound for any predetermined route; equals the single-hop value."""
    _check_epsilon(epsilon)
    hm = cfg.hop_model
    ratio = hm.G / (1 - epsilon)
    if ratio <= 1:
        raise ValueError(f"G/(1-eps)={ratio} <= 1: no positive density meets the target")
    return (1 - epsilon) / (hm.K * cfg.R**2) * math.log(ratio)


def _check_epsilon(epsilon):
    if not 0 < epsilon < 1:
        raise ValueError(f"outage target must lie in (0, 1), got {epsilon}")


# -- critical density and numeric inversion -----------------------------------

def critical_density(cfg: NetworkConfig) -> tuple[float, float]:
    """Density minimising the outage bound and the bound's value there.

    Uses the two-exponential form of the constrained count, which is exact
    for ``m = 1``; see :func:`outage_peak_density` for larger ``m``.
    """
    _require_relays(cfg)
    if not math.isfinite(cfg.D):
        return 0.0, math.exp(-cfg.hop_model.G * cfg.kappa**cfg.m / (cfg.m + 1))
    m, d0 = cfg.m, min_sum_squared(cfg.R, cfg.m)
    if cfg.D <= d0:
        raise ValueError(f"D={cfg.D} must exceed R^2/(m+1)={d0}")
    K = cfg.hop_model.K
    lam0 = math.log((m + 1) * cfg.D / cfg.R**2) / (cfg.gamma * K * (cfg.D - d0))
    delta = cfg.R**2 / ((m + 1) * cfg.D)
    coef = cfg.hop_model.G * cfg.kappa**m / (m + 1)
    bound = math.exp(coef * (delta ** (1 / (1 - delta)) - delta ** (delta / (1 - delta))))
    return lam0, bound


def outage_peak_density(cfg: NetworkConfig) -> float:
    """Exact maximiser over ``lambda`` of the constrained single-attempt count.

    Solves ``a P(m, x) = (b - a) x^(m-1) e^(-x) / (m-1)!`` with
    ``x = (b - a) lambda``, ``a = gamma K R^2/(m+1)``, ``b = gamma K D``.
    """
    _require_relays(cfg)
    if not math.isfinite(cfg.D):
        return 0.0
    m, K = cfg.m, cfg.hop_model.K
    a = cfg.gamma * K * min_sum_squared(cfg.R, m)
    c = cfg.gamma * K * cfg.D - a

    def slope(lam):
        x = c * lam
        return c * math.exp((m - 1) * math.log(x) - x - math.lgamma(m)) - a * gammainc(m, x)

    lo, hi = critical_density(cfg)[0], critical_density(cfg)[0]
    while slope(lo) <= 0:
        lo /= 2
    while slope(hi) > 0:
        hi *= 2
    return _bisect(slope, lo, hi, decreasing=True)


def _bisect(f: Callable[[float], float], lo: float, hi: float, target: float = 0.0,
            decreasing: bool = False) -> float:
    """Bisection for ``f(x) = target`` on a monotone bracket ``[lo, hi]``."""
    sign = -1.0 if decreasing else 1.0
    for _ in range(BISECT_MAX_ITER):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if sign * (f(mid) - target) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def invert_outage(outage_at: Callable[[float], float], epsilon: float, lo: float = 0.0,
                  start: float = 1.0) -> float:
    """Largest density on an increasing branch ``[lo, inf)`` with outage ``epsilon``."""
    hi = max(start, 2 * lo, 1e-12)
    for _ in range(BISECT_MAX_ITER):
        if outage_at(hi) >= epsilon:
            break
        hi *= 2
    else:
        raise NumericalError("could not bracket the outage target from above")
    lam = _bisect(outage_at, lo, hi, target=epsilon)
    if abs(outage_at(lam) - epsilon) > OUTAGE_TOL:
        raise NumericalError(f"bisection stalled at outage {outage_at(lam)} (target {epsilon})")
    return lam


def max_density_for_outage(cfg: NetworkConfig, epsilon: float) -> float:
    """Largest node density whose outage bound stays at ``epsilon``.

    For finite ``D`` the bound first falls then rises with density; the search
    runs on the rising branch to the right of the bound's minimum.
    """
    _check_epsilon(epsilon)
    _require_relays(cfg)

    def outage_at(lam):
        return outage_bound_for(cfg.with_(lam=lam))

    if cfg.policy.variant == "single_attempt" and math.isfinite(cfg.D):
        lo = outage_peak_density(cfg)
        floor = outage_at(lo)
    else:
        lo = 0.0
        floor = outage_at(1e-300) if cfg.policy.variant != "single_attempt" else \
            math.exp(-cfg.hop_model.G * cfg.kappa**cfg.m / (cfg.m + 1))
    if epsilon < floor:
        raise UnachievableOutageError(
            f"outage target {epsilon} lies below the smallest attainable bound {floor:.6g}")
    guess = max(lo * 2, 1.0 / (cfg.gamma * cfg.hop_model.K * cfg.R**2))
    return invert_outage(outage_at, epsilon, lo=lo, start=guess)


def capacity_bound(cfg: NetworkConfig, epsilon: float) -> CapacityResult:
    """Capacity bound for any policy and ``D``, closed form where available."""
    if cfg.m == 0:
        try:
            value = predetermined_tc_bound(cfg, epsilon)
        except ValueError:
            return CapacityResult(math.nan, False, 1 - cfg.hop_model.G, subslots=1)
        return CapacityResult(value, True, 1 - cfg.hop_model.G,
                              value / ((1 - epsilon) * cfg.gamma), 1)
    pol = cfg.policy
    if pol.variant == "single_attempt" and not math.isfinite(cfg.D):
        return tc_upper_bound(cfg, epsilon)
    if pol.variant == "best_effort":
        return tc_upper_bound_best_effort(cfg, epsilon, pol.k)
    try:
        lam = max_density_for_outage(cfg, epsilon)
    except UnachievableOutageError:
        floor = critical_density(cfg)[1] if pol.variant == "single_attempt" else math.nan
        return CapacityResult(math.nan, False, floor, subslots=cfg.subslots)
    return CapacityResult(capacity_at_density(cfg, lam, epsilon), True, math.nan, lam, cfg.subslots)
