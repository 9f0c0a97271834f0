"""
Retransmissions
===============

Two ways to spend extra slots: fix ``k_i`` attempts per hop, or let the whole
route share ``M`` slots.  The closed forms are checked against direct
integration over relay positions.
"""

from mhtc import FadingSpec, NetworkConfig, RetransPolicy, expected_relay_sets, \
    expected_relay_sets_best_effort, expected_relay_sets_total_budget, rayleigh_coeffs
from mhtc.oracle import quadrature_expected_relay_sets

hm = rayleigh_coeffs(FadingSpec(3.0, 1.0))
cfg = NetworkConfig(0.3, 0.1, 4.0, 1, hm)

print(f"single attempt:      {expected_relay_sets(cfg):.6f}")
for k in ([2, 1], [2, 2], [3, 3]):
    c = cfg.with_(policy=RetransPolicy.best_effort(k))
    print(f"best effort k={k}: {expected_relay_sets_best_effort(c, k):.6f}  "
          f"quadrature {quadrature_expected_relay_sets(c):.6f}")
for M in (2, 3, 4, 6):
    c = cfg.with_(policy=RetransPolicy.total_budget(M))
    print(f"shared budget M={M}:  {expected_relay_sets_total_budget(c, M):.6f}  "
          f"quadrature {quadrature_expected_relay_sets(c):.6f}")

# M = 4 slots cover the same airtime as k = (2, 2) but can shift slots to the weaker hop
