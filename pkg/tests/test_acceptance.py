"""One test per acceptance criterion, each at its stated tolerance.

Every test records a PASS/FAIL line that is repeated in the terminal summary.
Criterion 3 runs 240 000 full-interference trials (about 12 minutes).
"""

import itertools
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from mhtc import FadingSpec, HopModel, NetworkConfig, RetransPolicy, expected_relay_sets, \
    expected_relay_sets_best_effort, expected_relay_sets_total_budget, nakagami_coeffs, \
    outage_lower_bound, rayleigh_coeffs, tc_upper_bound
from mhtc import cli
from mhtc.analytics import best_effort_success_ie, direct_outage, expected_relay_sets_unbounded, \
    invert_outage, max_density_for_outage, predetermined_tc_bound, total_budget_success_ie
from mhtc.geometry import tridiag_det_uniform, tridiag_det_weighted
from mhtc.oracle import QuadratureSpec, high_outage_prefactor_numeric, mc_integration_expected_relay_sets, \
    quadrature_expected_relay_sets, success_prob_retrans_bruteforce
from mhtc.simulator import run_outage_trials, run_paired_trials

RAY3 = rayleigh_coeffs(FadingSpec(3.0, 1.0))


def test_c1_closed_form_vs_oracle(criterion):
    t0 = time.perf_counter()
    worst1 = worst2 = 0.0
    m1 = [(0.1, 0.5, 4.0, math.inf), (0.3, 0.1, 4.0, math.inf), (0.2, 0.2, 3.0, 10.0),
          (0.05, 0.3, 6.0, 40.0), (1.0, 0.05, 4.0, 3600.0)]
    for lam, gamma, R, D in m1:
        cfg = NetworkConfig(lam, gamma, R, 1, RAY3, D)
        closed = expected_relay_sets(cfg)
        if not math.isfinite(D):
            assert expected_relay_sets_unbounded(cfg) == closed
        worst1 = max(worst1, abs(quadrature_expected_relay_sets(cfg) / closed - 1))
    m2 = [(0.1, 0.5, 4.0, math.inf), (0.3, 0.1, 4.0, math.inf), (0.4, 0.2, 3.0, 9.0),
          (0.2, 0.2, 4.0, 20.0), (0.8, 0.05, 4.0, 3600.0)]
    for i, (lam, gamma, R, D) in enumerate(m2):
        cfg = NetworkConfig(lam, gamma, R, 2, RAY3, D)
        est, _ = mc_integration_expected_relay_sets(cfg, samples=10**7, seed=i)
        worst2 = max(worst2, abs(est / expected_relay_sets(cfg) - 1))
    elapsed = time.perf_counter() - t0
    ok = worst1 <= 1e-4 and worst2 <= 1e-2 and elapsed <= 120
    criterion(1, ok, f"m=1 quadrature max rel err {worst1:.2e} (<=1e-4); m=2 Monte Carlo 1e7 "
                     f"max rel err {worst2:.2e} (<=1e-2); {elapsed:.0f} s")
    assert ok


def test_c2_independent_tightness(criterion):
    t0 = time.perf_counter()
    parts, ok = [], True
    for i, lam in enumerate((0.1, 0.3, 0.6)):
        cfg = NetworkConfig(lam, 0.1, 4.0, 1, RAY3, 3600.0)
        est = run_outage_trials(cfg, trials=10**5, mode="synthetic_independent", seed=100 + i)
        bound = outage_lower_bound(expected_relay_sets(cfg))
        z = (est.mean - bound) / est.std
        ok &= abs(z) <= 3
        parts.append(f"lam={lam}: {est.mean:.4f} vs {bound:.4f} ({z:+.2f} sd)")
    elapsed = time.perf_counter() - t0
    ok &= elapsed <= 60
    criterion(2, ok, "; ".join(parts) + f"; {elapsed:.0f} s")
    assert ok


@pytest.mark.slow
def test_c3_bound_ordering_fig2(criterion):
    t0 = time.perf_counter()
    rows = cli.fig2_rows(trials=10**4, seed=0)
    elapsed = time.perf_counter() - t0
    bad = [r for r in rows if r["sim_mean"] + 2 * r["sim_std"] < r["outage_bound"]]
    for r in rows:
        flag = "ok " if r not in bad else "LOW"
        print(f"  {flag} m={r['m']} lam={r['lambda']:<5} sim={r['sim_mean']:.4f}+-{r['sim_std']:.4f} "
              f"bound={r['outage_bound']:.4f}")
    ok = not bad and len(rows) >= 24 and elapsed <= 900
    detail = ", ".join(f"m={r['m']} lam={r['lambda']}: {r['sim_mean']:.4f}+2*{r['sim_std']:.4f} "
                       f"< {r['outage_bound']:.4f}" for r in bad)
    criterion(3, ok, f"{len(rows) - len(bad)}/{len(rows)} points with sim + 2 se >= bound; "
                     f"{elapsed:.0f} s" + (f"; below: {detail}" if bad else ""))
    assert ok


def test_c4_determinants(criterion):
    uniform = all(tridiag_det_uniform(m) == m + 1 for m in range(1, 11))
    rng = np.random.default_rng(2024)
    weighted = True
    for _ in range(1000):
        n = [int(v) for v in rng.integers(1, 50, size=rng.integers(2, 12))]
        weighted &= tridiag_det_weighted(n) == math.prod(n) * sum(Fraction(1, v) for v in n)
    ok = uniform and weighted
    criterion(4, ok, f"uniform m=1..10 exact: {uniform}; weighted 1000 random exact: {weighted}")
    assert ok


def test_c5_retransmission_arbitration(criterion):
    t0 = time.perf_counter()
    errs = {}
    for m in (1, 2, 3):
        cfg = NetworkConfig(0.3, 0.1, 4.0, m, RAY3)
        errs.setdefault("a", 0.0)
        errs["a"] = max(errs["a"], abs(expected_relay_sets_best_effort(cfg, [1] * (m + 1))
                                       - expected_relay_sets_unbounded(cfg)))
    cfg = NetworkConfig(0.3, 0.1, 4.0, 1, RAY3, policy=RetransPolicy.best_effort([2, 2]))
    closed = expected_relay_sets_best_effort(cfg, [2, 2])
    errs["b"] = abs(quadrature_expected_relay_sets(cfg) / closed - 1)
    cfg = NetworkConfig(0.3, 0.1, 4.0, 1, RAY3, policy=RetransPolicy.total_budget(3))
    closed = expected_relay_sets_total_budget(cfg, 3)
    errs["c"] = abs(quadrature_expected_relay_sets(cfg) / closed - 1)
    rng = np.random.default_rng(77)
    worst = 0.0
    for _ in range(1000):
        hops = int(rng.integers(1, 5))
        p = rng.uniform(0, 1, hops)
        if rng.random() < 0.5:
            k = [int(v) for v in rng.integers(1, 4, hops)]
            ie = best_effort_success_ie(p, k)
            dp = success_prob_retrans_bruteforce(p, RetransPolicy.best_effort(k))
        else:
            M = hops + int(rng.integers(0, 4))
            ie = total_budget_success_ie(p, M)
            dp = success_prob_retrans_bruteforce(p, RetransPolicy.total_budget(M))
        worst = max(worst, abs(float(ie) - float(dp)))
    errs["d"] = worst
    elapsed = time.perf_counter() - t0
    ok = errs["a"] <= 1e-12 and errs["b"] <= 1e-3 and errs["c"] <= 1e-3 and errs["d"] <= 1e-10
    criterion(5, ok, f"(a) {errs['a']:.1e} <= 1e-12; (b) rel {errs['b']:.1e} <= 1e-3; "
                     f"(c) rel {errs['c']:.1e} <= 1e-3; (d) {errs['d']:.1e} <= 1e-10; {elapsed:.0f} s")
    assert ok


def test_c6_capacity_round_trip(criterion):
    rng = np.random.default_rng(6)
    worst, found = 0.0, 0
    while found < 20:
        hm = HopModel(1.0, float(rng.uniform(1, 15)))
        cfg = NetworkConfig(1.0, float(rng.uniform(0.01, 0.5)), float(rng.uniform(1, 8)),
                            int(rng.integers(1, 6)), hm)
        eps = float(rng.uniform(0.01, 0.5))
        tc = tc_upper_bound(cfg, eps)
        if not tc.valid:
            continue
        found += 1
        back = outage_lower_bound(expected_relay_sets_unbounded(cfg.with_(lam=tc.density)))
        worst = max(worst, abs(back - eps))
    k1 = NetworkConfig(1.0, 0.5, 4.0, 2, HopModel(1.0, math.pi))  # kappa = 1
    floor = tc_upper_bound(k1, 0.5).epsilon_floor
    rejects = not tc_upper_bound(k1, floor * 0.999).valid and tc_upper_bound(k1, floor * 1.001).valid
    ok = worst <= 1e-10 and rejects and abs(floor - math.exp(-1 / 3)) < 1e-15
    criterion(6, ok, f"20 random round trips max |eps' - eps| {worst:.1e} (<=1e-10); "
                     f"kappa=1, m=2 floor {floor:.4f}, rejects below: {rejects}")
    assert ok


def test_c7_gap_decay(criterion):
    cfg = NetworkConfig(1.0, 0.05, 4.0, 1, RAY3)
    eps = 0.1
    unbounded = max_density_for_outage(cfg, eps)
    Ds = (50.0, 100.0, 200.0, 400.0)
    lams = [max_density_for_outage(cfg.with_(D=D), eps) for D in Ds]
    gaps = [(unbounded - lam) / unbounded for lam in lams]
    monotone = all(a < b for a, b in zip(lams, lams[1:])) and lams[-1] < unbounded
    logs = [math.log(g) for g in gaps]
    decreasing = all(a > b for a, b in zip(logs, logs[1:]))
    squares = [logs[i + 1] <= 2 * logs[i] for i in range(3)]
    ok = monotone and decreasing and any(squares)
    criterion(7, ok, "relative gaps " + ", ".join(f"D={int(D)}: {g:.2e}" for D, g in zip(Ds, gaps))
              + f"; monotone {monotone}; gap(2D) <= gap(D)^2 at doublings {squares}")
    assert ok


def test_c8_nakagami(criterion):
    worst = 0.0
    for alpha in (2.5, 3.0, 4.0, 5.0):
        for beta in (0.5, 1.0, 3.0):
            ray = rayleigh_coeffs(FadingSpec(alpha, beta))
            for regime in ("low_outage", "high_outage"):
                nak = nakagami_coeffs(FadingSpec(alpha, beta, 1), regime)
                worst = max(worst, abs(nak.K / ray.K - 1), abs(nak.G - ray.G))
    G = nakagami_coeffs(FadingSpec(4.0, 1.0, 2), "high_outage").G
    G_num = high_outage_prefactor_numeric(2, 4.0)
    ok = worst <= 1e-12 and abs(G - G_num) <= 1e-6
    criterion(8, ok, f"m0=1 vs Rayleigh max err {worst:.1e} (<=1e-12); m0=2 G {G:.10f} vs "
                     f"numeric derivative {G_num:.10f}")
    assert ok


def test_c9_predetermined(criterion):
    eps = 0.05
    cfg = NetworkConfig(0.1, 0.1, 4.0, 0, RAY3)
    lam = invert_outage(lambda x: direct_outage(cfg.with_(lam=x)), eps, start=0.01)
    identity = abs(predetermined_tc_bound(cfg, eps) / ((1 - eps) * lam * cfg.gamma) - 1)
    parts, dominated = [], True
    for m in (1, 2):
        for i, lam_ in enumerate((0.1, 0.3, 0.6)):
            c = NetworkConfig(lam_, 0.1, 4.0, m, RAY3, 3600.0)
            res = run_paired_trials(c, None, 400, ["dynamic", "predetermined"], seed=900 + i)
            dyn, pre = 1 - res["dynamic"].mean, 1 - res["predetermined_equidistant"].mean
            dominated &= pre <= dyn
            parts.append(f"m={m} lam={lam_}: {pre:.3f}<={dyn:.3f}")
    ok = identity <= 1e-12 and dominated
    criterion(9, ok, f"single-hop identity rel err {identity:.1e}; paired success "
                     f"predetermined<=dynamic: " + ", ".join(parts))
    assert ok


def test_c10_figure_properties(criterion):
    t0 = time.perf_counter()
    rows = cli.fig3_rows(trials=0, seed=0, simulate=False)
    worst, count = 0.0, 0
    for r in rows:
        if math.isnan(r["increment"]):
            continue
        count += 1
        worst = max(worst, abs(r["increment"] / r["increment_formula"] - 1))
    eps05 = [r["eff_density_bound"] for r in rows if r["epsilon"] == 0.05]
    nondecreasing = all(a <= b for a, b in zip(eps05, eps05[1:]))
    fig4 = cli.fig4_rows(trials=0, seed=0, simulate=False)
    x = np.array([r["log_ratio"] for r in fig4])
    y = np.array([r["max_density"] for r in fig4])
    slopes = np.diff(y) / np.diff(x)
    increasing = bool(np.all(slopes > 0))
    concave = bool(np.all(np.diff(slopes) <= 1e-9 * np.abs(slopes).max()))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-12 and count >= 12 and nondecreasing and increasing and concave and elapsed <= 600
    criterion(10, ok, f"fig3 {count} increments, max rel err {worst:.1e}; eps=0.05 column "
                      f"non-decreasing {nondecreasing}; fig4 increasing {increasing}, concave {concave} "
                      f"(slope changes {np.diff(slopes).max():+.1e})")
    assert ok
