"""Per-hop success coefficients for the exponential law ``G * exp(-lambda_t * K * r**2)``.

Each supported channel model reduces the probability that a single hop of
length ``r`` clears the SIR threshold under Poisson interference of density
``lambda_t`` to two numbers, a prefactor ``G`` and an area coefficient ``K``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy.special import beta as beta_fn
from scipy.special import comb
from scipy.special import gamma as gamma_fn

MODEL_TAGS = ("rayleigh", "nakagami_low", "nakagami_high", "pathloss_lower", "pathloss_upper")


class OutOfRegimeError(ValueError):
    """The exponential law would return a probability above one."""


@dataclass(frozen=True)
class FadingSpec:
    """Path-loss exponent, SIR threshold and (for Nakagami) the shape ``m0``."""

    alpha: float
    beta: float
    m0: int | None = None

    def __post_init__(self):
        if not self.alpha > 2:
            raise ValueError(f"path-loss exponent must exceed 2, got alpha={self.alpha}")
        if not self.beta > 0:
            raise ValueError(f"SIR threshold must be positive, got beta={self.beta}")
        if self.m0 is not None and (int(self.m0) != self.m0 or self.m0 < 1):
            raise ValueError(f"Nakagami shape must be an integer >= 1, got m0={self.m0}")


@dataclass(frozen=True)
class HopModel:
    """Coefficients of the exponential per-hop success law.

    ``fading`` records the physical channel the coefficients came from; the
    simulator uses it to draw fading powers and evaluate SIR.
    """

    G: float
    K: float
    model_tag: str = "rayleigh"
    fading: FadingSpec | None = None

    def __post_init__(self):
        if not self.G > 0 or not self.K > 0:
            raise ValueError(f"G and K must be positive, got G={self.G}, K={self.K}")
        if self.model_tag not in MODEL_TAGS:
            raise ValueError(f"unknown model tag {self.model_tag!r}")


def interference_constant(alpha: float) -> float:
    """``C(alpha) = 2 pi Gamma(2/alpha) Gamma(1 - 2/alpha) / alpha``."""
    if alpha <= 2:
        raise ValueError(f"C(alpha) diverges for alpha <= 2 (alpha={alpha})")
    d = 2.0 / alpha
    return 2.0 * math.pi * gamma_fn(d) * gamma_fn(1.0 - d) / alpha


def rayleigh_coeffs(spec: FadingSpec) -> HopModel:
    K = spec.beta ** (2.0 / spec.alpha) * interference_constant(spec.alpha)
    return HopModel(G=1.0, K=float(K), model_tag="rayleigh", fading=spec)


def nakagami_omega(m0: int, alpha: float) -> float:
    """Shot-noise constant ``Omega_m0`` as a finite Beta-function sum."""
    d = 2.0 / alpha
    total = 0.0
    for k in range(m0):
        b = m0 - k - d
        if b <= 0:
            raise ValueError(f"Beta argument m0-k-2/alpha={b} is not positive")
        total += comb(m0, k, exact=True) * float(beta_fn(k + d, b))
    return 2.0 * math.pi / alpha * total


def _falling(x: float, n: int) -> float:
    out = 1.0
    for i in range(n):
        out *= x - i
    return out


def partial_bell(n: int, k: int, x: list[float]) -> float:
    """Partial exponential Bell polynomial ``B_{n,k}(x[0], x[1], ...)``."""
    table = {(0, 0): 1.0}

    def bell(nn, kk):
        if (nn, kk) in table:
            return table[nn, kk]
        if kk == 0 or nn == 0:
            return 0.0
        val = sum(comb(nn - 1, i - 1, exact=True) * x[i - 1] * bell(nn - i, kk - 1)
                  for i in range(1, nn - kk + 2))
        table[nn, kk] = val
        return val

    return bell(n, k)


def upsilon(k: int, l: int, alpha: float) -> float:
    """Coefficient of ``[-(2/alpha) x]**l`` in ``(-s)**k L^(k)(s) / L(s)``.

    Here ``L(s) = exp(-c s**(2/alpha))`` and ``x = c s**(2/alpha)``; Faa di
    Bruno gives ``(-s)**k L^(k)/L = sum_l (-1)**k B_{k,l}(f_1, f_2, ...) (-x)**l``
    with ``f_i`` the falling factorials of ``2/alpha``.
    """
    if not 1 <= l <= k:
        raise ValueError(f"need 1 <= l <= k, got k={k}, l={l}")
    d = 2.0 / alpha
    falling = [_falling(d, i) for i in range(1, k + 1)]
    return (-1) ** k * partial_bell(k, l, falling) / d**l


def laplace_transform(m0: int, alpha: float, s, lambda_t: float = 1.0):
    """Laplace transform of Poisson shot noise with Nakagami-``m0`` fading."""
    return np.exp(-lambda_t * nakagami_omega(m0, alpha) * (np.asarray(s) / m0) ** (2.0 / alpha))


def laplace_derivative(m0: int, alpha: float, s: float, k: int, lambda_t: float = 1.0) -> float:
    """``k``-th derivative of :func:`laplace_transform` built from ``upsilon``."""
    L = float(laplace_transform(m0, alpha, s, lambda_t))
    if k == 0:
        return L
    d = 2.0 / alpha
    x = lambda_t * nakagami_omega(m0, alpha) * (s / m0) ** d
    return L / (-s) ** k * sum((-d * x) ** j * upsilon(k, j, alpha) for j in range(1, k + 1))


def nakagami_coeffs(spec: FadingSpec,
                    regime: Literal["low_outage", "high_outage"] = "low_outage") -> HopModel:
    if spec.m0 is None:
        raise ValueError("Nakagami coefficients need spec.m0")
    m0, d = int(spec.m0), 2.0 / spec.alpha
    K = float(nakagami_omega(m0, spec.alpha) * spec.beta**d)
    if regime == "low_outage":
        return HopModel(G=1.0, K=K, model_tag="nakagami_low", fading=spec)
    if regime != "high_outage":
        raise ValueError(f"unknown regime {regime!r}")
    G = 1.0
    for k in range(1, m0):
        for l in range(1, k + 1):
            G += math.factorial(l) / math.factorial(k) * (-d) ** l * upsilon(k, l, spec.alpha)
    return HopModel(G=G, K=K, model_tag="nakagami_high", fading=spec)


def pathloss_coeff_bounds(spec: FadingSpec) -> tuple[HopModel, HopModel]:
    """Lower and upper exponential models for path loss without fading."""
    K_lo = math.pi * spec.beta ** (2.0 / spec.alpha)
    K_hi = spec.alpha / (spec.alpha - 1.0) * K_lo
    return (HopModel(G=1.0, K=K_lo, model_tag="pathloss_lower", fading=spec),
            HopModel(G=1.0, K=K_hi, model_tag="pathloss_upper", fading=spec))


def hop_success(model: HopModel, r, lambda_t):
    """``G exp(-lambda_t K r**2)``; raises if the value would exceed one."""
    r = np.asarray(r, dtype=float)
    lambda_t = np.asarray(lambda_t, dtype=float)
    if np.any(r < 0) or np.any(lambda_t < 0):
        raise ValueError("distance and density must be non-negative")
    p = model.G * np.exp(-lambda_t * model.K * r**2)
    if np.any(p > 1.0):
        raise OutOfRegimeError(
            f"G={model.G:.4g} exceeds the success law at lambda_t*K*r^2="
            f"{float(np.min(lambda_t * model.K * r**2)):.3g}; the high-outage "
            "Nakagami model only applies when lambda_t*K*r^2 >> 1")
    return float(p) if p.ndim == 0 else p
