"""
Route diversity in a Poisson field
==================================

How many relay chains would carry a packet end to end, and what that
count says about outage and throughput as the number of hops grows.
Run with ``python3 demos/route_diversity.py``.
"""

import math

import numpy as np

from mhtc import FadingSpec, NetworkConfig, expected_relay_sets, outage_lower_bound, \
    rayleigh_coeffs, tc_upper_bound
from mhtc.analytics import max_density_for_outage

# Rayleigh fading, path-loss exponent 3, SIR threshold 1
hm = rayleigh_coeffs(FadingSpec(alpha=3.0, beta=1.0))
print(f"hop law: G={hm.G}, K={hm.K:.6f}")

# a tenth of the nodes transmit, the rest relay; source and destination 4 apart
base = NetworkConfig(lam=0.3, gamma=0.1, R=4.0, m=1, hop_model=hm)
print(f"kappa={base.kappa:.4f}  (relays per transmitter, in hop-law units)")

print("\nexpected relay chains and outage floor at lambda=0.3")
for m in range(1, 6):
    cfg = base.with_(m=m)
    E = expected_relay_sets(cfg)
    print(f"  m={m}: E(N)={E:9.4f}  outage >= {outage_lower_bound(E):.4f}")

# a distance budget only trims chains that were unlikely anyway
print("\nbudget D on the sum of squared hops, m=2")
for D in (10.0, 20.0, 50.0, math.inf):
    print(f"  D={D:>5}: E(N)={expected_relay_sets(base.with_(m=2, D=D)):.6f}")

# capacity bound: grows by roughly ln(kappa) per extra hop
eps = 0.2
print(f"\ncapacity bound at eps={eps}")
prev = None
for m in range(1, 6):
    tc = tc_upper_bound(base.with_(m=m), eps)
    step = "" if prev is None else f"  (+{tc.value - prev:.5f})"
    print(f"  m={m}: {tc.value:.5f}{step}")
    prev = tc.value

# more relays per source helps only logarithmically
print("\nmax density lambda*gamma at eps=0.05, m=2, D=3600")
for ratio in (10, 40, 160):
    g = 1 / (1 + ratio)
    lam = max_density_for_outage(NetworkConfig(1.0, g, 4.0, 2, hm, 3600.0), 0.05)
    print(f"  (1-gamma)/gamma={ratio:>3}: {lam * g:.5f}")

print("\nln(ratio) steps of", np.round(np.log(4), 4), "give equal increments above")
