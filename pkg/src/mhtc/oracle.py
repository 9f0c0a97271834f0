"""Brute-force references for the closed forms.

Nothing here reuses the ellipsoid volumes, determinants or inclusion-exclusion
expansions of :mod:`mhtc.geometry` and :mod:`mhtc.analytics`; expected counts
are integrated directly over relay positions and retransmission successes are
computed by dynamic programming over slots.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np
from numpy.polynomial.laguerre import laggauss
from numpy.polynomial.legendre import leggauss
from scipy import integrate
from scipy.special import gammainccinv

from .analytics import NetworkConfig, RetransPolicy
from .channel import laplace_transform, nakagami_omega

TAIL_FRACTION = 1e-10


class ResolutionWarning(UserWarning):
    """Two successive refinements of a quadrature disagree."""


class StepSizeError(RuntimeError):
    """Richardson extrapolation of a finite difference did not settle."""


@dataclass(frozen=True)
class QuadratureSpec:
    scheme: Literal["tensor_grid", "monte_carlo"] = "tensor_grid"
    resolution: int | None = None
    truncation_radius: float | None = None
    tolerance: float = 1e-6
    seed: int = 0


# -- route success by enumeration --------------------------------------------

def success_prob_retrans_bruteforce(p, policy: RetransPolicy):
    """End-to-end success of one relay set from its per-slot hop successes.

    ``p[..., i]`` is the success probability of hop ``i`` in one slot.  For a
    shared budget of ``M`` slots the distribution of the hop currently in
    flight is propagated slot by slot.
    """
    p = np.asarray(p, dtype=float)
    if policy.variant == "single_attempt":
        return np.prod(p, axis=-1)
    if policy.variant == "best_effort":
        return np.prod(1.0 - (1.0 - p) ** np.asarray(policy.k), axis=-1)
    hops = p.shape[-1]
    state = np.zeros(p.shape[:-1] + (hops + 1,))
    state[..., 0] = 1.0
    for _ in range(policy.M):
        moved = state[..., :hops] * p
        state[..., :hops] -= moved
        state[..., 1:] += moved
    return state[..., hops]


def set_success_function(cfg: NetworkConfig) -> Callable[[np.ndarray], np.ndarray]:
    """Map squared hop lengths ``[..., m+1]`` to the success of that relay set."""
    hm, lam_t, policy = cfg.hop_model, cfg.lambda_t, cfg.policy

    def success(hops_sq):
        p = hm.G * np.exp(-lam_t * hm.K * hops_sq)
        return success_prob_retrans_bruteforce(p, policy)

    return success


# -- expected number of potential relay sets ---------------------------------

def _truncation_excess(cfg: NetworkConfig) -> float:
    """Excess ``Lam (d - d_min)`` beyond which the neglected mass is negligible."""
    return max(20.0, float(gammainccinv(cfg.m, TAIL_FRACTION)))


def _hops_sq(Z, R):
    """Squared hop lengths for relay coordinates ``Z[..., m, 2]``."""
    src = np.broadcast_to(np.array([-R / 2, 0.0]), Z.shape[:-2] + (1, 2))
    dst = np.broadcast_to(np.array([R / 2, 0.0]), Z.shape[:-2] + (1, 2))
    pts = np.concatenate([src, Z, dst], axis=-2)
    return np.sum(np.diff(pts, axis=-2) ** 2, axis=-1)


def _polar_nodes(n, radius):
    x, w = leggauss(n)
    theta = 2 * np.pi * np.arange(2 * n) / (2 * n)
    # radial Gauss-Legendre times periodic trapezoid, Jacobian included
    rho = 0.5 * radius * (x + 1)
    rr, tt = np.meshgrid(rho, theta, indexing="ij")
    ww = (0.5 * radius * w * rho)[:, None] * (2 * np.pi / (2 * n)) * np.ones_like(tt)
    return rr.ravel() * np.cos(tt.ravel()), rr.ravel() * np.sin(tt.ravel()), ww.ravel()


def _polar_m1(cfg, success, n, relay_density, rho_max):
    R = cfg.R
    x, y, w = _polar_nodes(n, rho_max)
    c = R * x
    r2 = x**2 + y**2 + R**2 / 4
    hops = np.stack([r2 + c, r2 - c], axis=-1)
    return relay_density * float(np.dot(w, success(hops)))


def _nested_polar_m2(cfg, success, n, relay_density, budget):
    """Two relays, integrated as nested disks.

    With relay 1 fixed at ``z1``, ``|z2 - z1|^2 + |z2 - dst|^2`` is
    ``2|z2 - c|^2 + |z1 - dst|^2 / 2`` with ``c`` their midpoint, so the
    feasible relay-2 set is a disk.  Likewise the feasible ``z1`` set
    (``|z1 - src|^2 + |z1 - dst|^2 / 2 <= budget``) is a disk about
    ``(2 src + dst) / 3``.
    """
    R = cfg.R
    src, dst = np.array([-R / 2, 0.0]), np.array([R / 2, 0.0])
    c1 = (2 * src + dst) / 3
    ux, uy, uw = _polar_nodes(n, math.sqrt(max(budget - R**2 / 3, 0.0) / 1.5))
    z1 = np.stack([ux + c1[0], uy + c1[1]], axis=-1)
    r1 = np.sum((z1 - src) ** 2, axis=-1)
    left = budget - r1 - np.sum((z1 - dst) ** 2, axis=-1) / 2
    rad2 = np.sqrt(np.maximum(left, 0.0) / 2)
    vx, vy, vw = _polar_nodes(n, 1.0)
    total = 0.0
    for blk in np.array_split(np.flatnonzero(rad2 > 0), max(1, len(z1) * len(vx) // 2_000_000)):
        a, r, rho = z1[blk, None, :], r1[blk, None], rad2[blk, None]
        c2 = (a + dst) / 2
        z2 = np.stack([c2[..., 0] + rho * vx, c2[..., 1] + rho * vy], axis=-1)
        hops = np.stack([np.broadcast_to(r, z2.shape[:-1]),
                         np.sum((z2 - a) ** 2, axis=-1),
                         np.sum((z2 - dst) ** 2, axis=-1)], axis=-1)
        total += float(np.sum(uw[blk] * rad2[blk] ** 2 * (success(hops) @ vw)))
    return relay_density**2 * total


def mc_integration_expected_relay_sets(cfg: NetworkConfig, samples: int = 10**7, seed: int = 0,
                                       success=None, relay_density: float | None = None,
                                       chunk: int = 500_000) -> tuple[float, float]:
    """Importance-sampled integral of ``lambda_relay^m * success`` over relay positions.

    Relays are drawn independently around the equidistant positions from an
    isotropic Gaussian wide enough to dominate the integrand in every
    direction.  Returns the estimate and its standard error.
    """
    m, R = cfg.m, cfg.R
    success = success or set_success_function(cfg)
    relay_density = cfg.relay_density if relay_density is None else relay_density
    sigma2 = (m + 1) ** 2 / (4 * cfg.Lam)
    centers = np.array([(-R / 2 + R * (i + 1) / (m + 1), 0.0) for i in range(m)])
    rng = np.random.default_rng(seed)
    log_norm = -m * math.log(2 * math.pi * sigma2)
    s1 = s2 = 0.0
    done = 0
    while done < samples:
        n = min(chunk, samples - done)
        offs = rng.normal(scale=math.sqrt(sigma2), size=(n, m, 2))
        hops = _hops_sq(centers + offs, R)
        f = success(hops)
        if math.isfinite(cfg.D):
            f = np.where(hops.sum(axis=-1) <= cfg.D, f, 0.0)
        log_q = log_norm - np.sum(offs**2, axis=(1, 2)) / (2 * sigma2)
        w = f * np.exp(-log_q)
        s1 += float(w.sum())
        s2 += float(np.dot(w, w))
        done += n
    mean = s1 / samples
    var = max(s2 / samples - mean**2, 0.0)
    scale = relay_density**m
    return scale * mean, scale * math.sqrt(var / samples)


def quadrature_expected_relay_sets(cfg: NetworkConfig, spec: QuadratureSpec = QuadratureSpec(),
                                   success=None, relay_density: float | None = None) -> float:
    """Direct integral of the potential-relay-set intensity over ``d_m <= D``.

    ``success`` maps squared hop lengths to the per-set success probability;
    by default it follows ``cfg.policy``.
    """
    m = cfg.m
    success = success or set_success_function(cfg)
    relay_density = cfg.relay_density if relay_density is None else relay_density
    if relay_density == 0:
        return 0.0
    if spec.scheme == "monte_carlo":
        if m > 4:
            raise ValueError("Monte Carlo oracle supports m <= 4")
        return mc_integration_expected_relay_sets(cfg, spec.resolution or 10**7, spec.seed, success,
                                                  relay_density)[0]
    if m not in (1, 2):
        raise ValueError("tensor-grid oracle supports m in {1, 2}")
    excess = _truncation_excess(cfg)
    if m == 1:
        rho = spec.truncation_radius or math.sqrt(excess / (2 * cfg.Lam))
        if math.isfinite(cfg.D):
            rho = min(rho, math.sqrt((cfg.D - cfg.R**2 / 2) / 2))

        def run(n):
            return _polar_m1(cfg, success, n, relay_density, rho)
    else:
        budget = cfg.R**2 / 3 + excess / cfg.Lam
        if spec.truncation_radius is not None:
            budget = cfg.R**2 / 3 + 1.5 * spec.truncation_radius**2
        budget = min(budget, cfg.D)

        def run(n):
            return _nested_polar_m2(cfg, success, n, relay_density, budget)

    n = spec.resolution or (256 if m == 1 else 48)
    coarse = run(max(n // 2, 8))
    fine = run(n)
    if abs(fine - coarse) > spec.tolerance * max(abs(fine), 1e-300):
        warnings.warn(f"quadrature refinement changed the result by {abs(fine - coarse):.3g} "
                      f"(value {fine:.6g}); increase resolution", ResolutionWarning, stacklevel=2)
    return fine


# -- Laplace transform of Nakagami shot noise --------------------------------

def numeric_laplace_derivative(m0: int, alpha: float, s: float, k: int,
                               lambda_t: float = 1.0, rtol: float = 1e-8) -> float:
    """k-th derivative of the shot-noise Laplace transform by Ridders' method.

    Central differences of halving step are combined in a Richardson table
    (error series in ``h**2``); the entry with the smallest error estimate wins.
    """
    if s <= 0:
        raise ValueError("s must be positive")

    def f(x):
        return float(laplace_transform(m0, alpha, x, lambda_t))

    if k == 0:
        return f(s)
    coeffs = [(-1) ** i * math.comb(k, i) for i in range(k + 1)]

    def central(h):
        return sum(c * f(s + (k / 2 - i) * h) for i, c in enumerate(coeffs)) / h**k

    h = s / max(k, 1) * 0.8
    table = [[central(h)]]
    best, best_err = table[0][0], math.inf
    for i in range(1, 16):
        h /= 2
        row = [central(h)]
        for j in range(1, i + 1):
            row.append(row[j - 1] + (row[j - 1] - table[i - 1][j - 1]) / (4**j - 1))
            err = max(abs(row[j] - row[j - 1]), abs(row[j] - table[i - 1][j - 1]))
            if err < best_err:
                best, best_err = row[j], err
        if abs(row[i] - table[i - 1][i - 1]) >= 2 * best_err and best_err < math.inf and i > 3:
            break
        table.append(row)
    if best_err > rtol * abs(best):
        raise StepSizeError(f"finite-difference extrapolation did not converge "
                            f"(error estimate {best_err:.3g} for value {best:.6g})")
    return best


def shot_noise_laplace_exponent(m0: int, alpha: float, s: float) -> float:
    """``-log L(s)`` per unit interferer density, by direct radial integration.

    Averages ``1 - exp(-s h r^-alpha)`` over a unit-mean Gamma(m0) fading power
    ``h`` and integrates over the plane.
    """
    def integrand(r):
        return -np.expm1(-m0 * np.log1p(s * r**-alpha / m0)) * r

    knee = s ** (1 / alpha)
    a, _ = integrate.quad(integrand, 0, knee, epsabs=0, epsrel=1e-12, limit=200)
    b, _ = integrate.quad(integrand, knee, np.inf, epsabs=0, epsrel=1e-12, limit=200)
    return 2 * math.pi * (a + b)


def high_outage_prefactor_numeric(m0: int, alpha: float) -> float:
    """High-outage Nakagami prefactor from numerically differentiated ``L``.

    With ``x = Omega (s/m0)^(2/alpha)``, ``P_k(x) = (-s)^k L^(k)(s)/L(s)`` is a
    polynomial in ``x``; the prefactor replaces each ``x**l`` by ``l!``, i.e.
    ``1 + sum_k (1/k!) int_0^inf exp(-x) P_k(x) dx``, evaluated here with
    Gauss-Laguerre nodes (exact for the polynomial degree involved).
    """
    omega = nakagami_omega(m0, alpha)
    d = 2.0 / alpha
    nodes, weights = laggauss(max(m0, 2))
    total = 1.0
    for k in range(1, m0):
        acc = 0.0
        for x, w in zip(nodes, weights):
            s = m0 * (x / omega) ** (1 / d)
            ratio = (-s) ** k * numeric_laplace_derivative(m0, alpha, s, k) / math.exp(-x)
            acc += w * ratio
        total += acc / math.factorial(k)
    return total
