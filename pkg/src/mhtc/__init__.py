"""Transmission capacity of multihop routes in Poisson ad hoc networks."""

from .analytics import (CapacityResult, NetworkConfig, RetransPolicy, UnachievableOutageError,
                        capacity_bound, critical_density, expected_relay_sets,
                        expected_relay_sets_best_effort, expected_relay_sets_total_budget,
                        outage_lower_bound, tc_upper_bound, tc_upper_bound_best_effort)
from .channel import (FadingSpec, HopModel, OutOfRegimeError, hop_success, nakagami_coeffs,
                      pathloss_coeff_bounds, rayleigh_coeffs)
from .geometry import AttemptVector, RelayChain, ellipsoid_volume, sum_squared_distance

__version__ = "0.1.0"
