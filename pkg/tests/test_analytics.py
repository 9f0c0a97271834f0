import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from scipy.optimize import minimize_scalar

from mhtc import HopModel, NetworkConfig, RetransPolicy, UnachievableOutageError, capacity_bound, \
    critical_density, expected_relay_sets, expected_relay_sets_best_effort, \
    expected_relay_sets_total_budget, outage_lower_bound, tc_upper_bound, tc_upper_bound_best_effort
from mhtc.analytics import best_effort_success_ie, direct_outage, expected_relay_sets_unbounded, \
    max_density_for_outage, outage_bound_for, outage_peak_density, predetermined_tc_bound, \
    total_budget_success_ie, total_budget_terms
from mhtc.oracle import success_prob_retrans_bruteforce


def test_unbounded_count_reference(base_cfg):
    # kappa = 1, Lam = 0.05 pi: E = exp(-0.4 pi) / 2
    assert expected_relay_sets(base_cfg) == pytest.approx(math.exp(-0.4 * math.pi) / 2, rel=1e-14)
    assert expected_relay_sets(base_cfg) == pytest.approx(0.14230477166801464, rel=1e-12)


def test_outage_reference(base_cfg):
    assert outage_lower_bound(expected_relay_sets(base_cfg)) == pytest.approx(0.8673568703991107, rel=1e-12)


def test_two_relay_reference(base_cfg):
    assert expected_relay_sets(base_cfg.with_(m=2)) == pytest.approx(0.14422649550761335, rel=1e-12)


def test_distance_constrained_reference(base_cfg):
    # D = 16 truncates the m = 1 integral; value confirmed by direct quadrature
    assert expected_relay_sets(base_cfg.with_(D=16.0)) == pytest.approx(0.10180347558904308, rel=1e-12)


def test_constrained_count_rejects_tiny_budget(base_cfg):
    with pytest.raises(ValueError):
        NetworkConfig(0.1, 0.5, 4.0, 1, base_cfg.hop_model, D=8.0)


def test_counts_need_relays(base_cfg):
    with pytest.raises(ValueError):
        expected_relay_sets(base_cfg.with_(m=0))


def test_config_derived_constants(base_cfg):
    assert base_cfg.lambda_t == pytest.approx(0.05)
    assert base_cfg.relay_density == pytest.approx(0.05)
    assert base_cfg.Lam == pytest.approx(0.05 * math.pi)
    assert base_cfg.kappa == pytest.approx(1.0)
    assert base_cfg.subslots == 2
    assert base_cfg.with_(policy=RetransPolicy.best_effort([2, 3])).subslots == 5
    assert base_cfg.with_(policy=RetransPolicy.total_budget(4)).subslots == 4


@pytest.mark.parametrize("kwargs", [dict(lam=0.0), dict(gamma=1.0), dict(R=-1.0), dict(m=-1)])
def test_config_validation(base_cfg, kwargs):
    with pytest.raises(ValueError):
        base_cfg.with_(**kwargs)


def test_best_effort_ones_reduce_to_single(base_cfg):
    for m in (1, 2, 3):
        c = base_cfg.with_(m=m)
        assert expected_relay_sets_best_effort(c, [1] * (m + 1)) == pytest.approx(
            expected_relay_sets_unbounded(c), rel=1e-12)


def test_best_effort_more_attempts_more_sets(base_cfg):
    assert expected_relay_sets_best_effort(base_cfg, [2, 2]) > expected_relay_sets(base_cfg)


def test_total_budget_minimum_is_single(base_cfg):
    assert expected_relay_sets_total_budget(base_cfg, 2) == pytest.approx(expected_relay_sets(base_cfg))


def test_total_budget_terms_single_hop():
    # one hop with M slots: 1 - (1 - p)^M
    p = np.linspace(0.01, 0.99, 7)
    val = sum(c * p ** k[0] for k, c in total_budget_terms(1, 5))
    np.testing.assert_allclose(val, 1 - (1 - p) ** 5, rtol=1e-13)


def test_total_budget_rejects_small_budget():
    with pytest.raises(ValueError):
        total_budget_terms(3, 2)


def test_tc_reference(pi_model):
    cfg = NetworkConfig(1.0, 0.1, 4.0, 2, pi_model)
    tc = tc_upper_bound(cfg, 0.1)
    assert tc.valid and tc.subslots == 3
    # kappa = 9: bracket = 2 ln 9 - ln 3 - ln ln 10
    bracket = 2 * math.log(9) - math.log(3) - math.log(math.log(10))
    assert tc.value == pytest.approx(0.9 * bracket / (16 * math.pi), rel=1e-14)
    assert tc.value == pytest.approx(capacity_bound(cfg, 0.1).value, rel=1e-14)


def test_tc_floor(pi_model):
    cfg = NetworkConfig(1.0, 0.5, 4.0, 2, pi_model)  # kappa = 1
    tc = tc_upper_bound(cfg, 0.5)
    assert not tc.valid and math.isnan(tc.value)
    assert tc.epsilon_floor == pytest.approx(math.exp(-1 / 3))
    with pytest.raises(UnachievableOutageError):
        max_density_for_outage(cfg, 0.5)


def test_tc_epsilon_range(base_cfg):
    for eps in (0.0, 1.0, -0.1):
        with pytest.raises(ValueError):
            tc_upper_bound(base_cfg, eps)


def test_best_effort_tc_ones_is_single(pi_model):
    cfg = NetworkConfig(1.0, 0.1, 4.0, 2, pi_model)
    a, b = tc_upper_bound(cfg, 0.1), tc_upper_bound_best_effort(cfg, 0.1, [1, 1, 1])
    assert a.value == pytest.approx(b.value, rel=1e-14)
    assert a.density == pytest.approx(b.density, rel=1e-14)


def test_direct_and_predetermined(rayleigh3):
    cfg = NetworkConfig(0.1, 0.1, 4.0, 0, rayleigh3)
    assert direct_outage(cfg) == pytest.approx(1 - math.exp(-0.01 * rayleigh3.K * 16))
    assert outage_bound_for(cfg) == direct_outage(cfg)
    tc = predetermined_tc_bound(cfg, 0.05)
    assert tc == pytest.approx(0.0004008541287719699, rel=1e-12)
    # the density giving outage eps, scaled by (1 - eps)
    lam_t = math.log(1 / 0.95) / (rayleigh3.K * 16)
    assert tc == pytest.approx(0.95 * lam_t, rel=1e-14)


def test_critical_density_reference(pi_model):
    cfg = NetworkConfig(0.1, 0.5, 4.0, 1, pi_model, D=16.0)
    lam0, floor = critical_density(cfg)
    assert lam0 == pytest.approx(0.0551589000381629, rel=1e-10)
    num = minimize_scalar(lambda x: outage_bound_for(cfg.with_(lam=x)), bounds=(1e-3, 1.0),
                          method="bounded", options={"xatol": 1e-10})
    assert lam0 == pytest.approx(num.x, rel=1e-5)
    assert floor == pytest.approx(num.fun, rel=1e-9)


def test_peak_density_matches_numeric_minimum(rayleigh3):
    cfg = NetworkConfig(1.0, 0.05, 4.0, 2, rayleigh3, D=40.0)
    peak = outage_peak_density(cfg)
    num = minimize_scalar(lambda x: outage_bound_for(cfg.with_(lam=x)), bounds=(peak / 10, peak * 10),
                          method="bounded", options={"xatol": 1e-12})
    assert peak == pytest.approx(num.x, rel=1e-4)


def test_constrained_inversion_below_unbounded(rayleigh3):
    cfg = NetworkConfig(1.0, 0.05, 4.0, 1, rayleigh3)
    unb = max_density_for_outage(cfg, 0.1)
    assert unb == pytest.approx(tc_upper_bound(cfg, 0.1).density, rel=1e-10)
    prev = 0.0
    for D in (50.0, 100.0, 200.0):
        lam = max_density_for_outage(cfg.with_(D=D), 0.1)
        assert prev < lam < unb
        prev = lam


def test_capacity_bound_dispatch(base_cfg, rayleigh3):
    cfg = NetworkConfig(1.0, 0.1, 4.0, 2, rayleigh3, policy=RetransPolicy.total_budget(4))
    cb = capacity_bound(cfg, 0.2)
    assert cb.valid and cb.subslots == 4
    assert outage_bound_for(cfg.with_(lam=cb.density)) == pytest.approx(0.2, abs=1e-10)
    assert cb.value == pytest.approx(0.8 * cb.density * 0.1 / 4)
    direct = base_cfg.with_(m=0)
    assert capacity_bound(direct, 0.05).value == predetermined_tc_bound(direct, 0.05)


def test_retransmission_ie_vs_dp():
    rng = np.random.default_rng(5)
    p = rng.uniform(0, 1, size=(200, 3))
    be = RetransPolicy.best_effort([2, 1, 3])
    np.testing.assert_allclose(best_effort_success_ie(p, be.k), success_prob_retrans_bruteforce(p, be),
                               atol=1e-12)
    tb = RetransPolicy.total_budget(5)
    np.testing.assert_allclose(total_budget_success_ie(p, 5), success_prob_retrans_bruteforce(p, tb),
                               atol=1e-12)


# -- properties ---------------------------------------------------------------------

configs = st.builds(
    lambda lam, gamma, R, m, K: NetworkConfig(lam, gamma, R, m, HopModel(1.0, K)),
    st.floats(1e-3, 3.0), st.floats(0.02, 0.9), st.floats(0.5, 8.0), st.integers(1, 5),
    st.floats(1.0, 15.0))


@settings(max_examples=80, deadline=None)
@given(configs)
def test_outage_bound_in_unit_interval(cfg):
    out = outage_bound_for(cfg)
    assert 0.0 <= out <= 1.0


@settings(max_examples=80, deadline=None)
@given(configs, st.floats(1.0, 1e4))
def test_constraint_never_adds_routes(cfg, extra):
    D = cfg.R**2 / (cfg.m + 1) + extra / 10
    assert expected_relay_sets(cfg.with_(D=D)) <= expected_relay_sets(cfg) * (1 + 1e-12)


@settings(max_examples=60, deadline=None)
@given(configs, st.floats(1.01, 3.0))
def test_unbounded_count_decreasing_in_density(cfg, factor):
    assert expected_relay_sets(cfg.with_(lam=cfg.lam * factor)) <= expected_relay_sets(cfg)


@settings(max_examples=60, deadline=None)
@given(configs, st.floats(0.01, 0.9))
def test_tc_round_trip(cfg, eps):
    tc = tc_upper_bound(cfg, eps)
    assume(tc.valid and tc.density > 0)
    back = outage_lower_bound(expected_relay_sets_unbounded(cfg.with_(lam=tc.density)))
    assert back == pytest.approx(eps, abs=1e-10)


@settings(max_examples=40, deadline=None)
@given(configs, st.lists(st.integers(1, 3), min_size=6, max_size=6))
def test_best_effort_at_least_single(cfg, k):
    k = k[: cfg.m + 1]
    assume(cfg.m <= 3)
    assert expected_relay_sets_best_effort(cfg, k) >= expected_relay_sets(cfg) * (1 - 1e-9)
