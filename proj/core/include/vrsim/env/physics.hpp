#pragma once

#include <vector>

#include "vrsim/env/config.hpp"
#include "vrsim/env/types.hpp"

namespace vrsim {

/// NOMA downlink rates for one slot, bits/s. Users with assignment 0 get 0.
/// Within each channel the assigned users are sorted descending by received
/// power p_n * |h_{n,m}|^2 (ties: lower user id first); the user at sorted
/// position k sees interference from the powers of all later-sorted co-channel
/// users through its own gain:
///   r_k = W log2(1 + p_k |h_k|^2 / (sum_{i>k} p_i |h_k|^2 + W sigma^2)).
/// The last-sorted user in a channel is interference free.
std::vector<double> channel_rates(const std::vector<double>& channel_gain,
                                  const std::vector<int>& assignment,
                                  const std::vector<VuProfile>& profiles,
                                  const EnvConfig& config);

/// Eq.-(2) style offload delay: VSP execution plus downlink transmission,
/// D*C/f_v + D/r. Requires rate > 0; users without a channel must be routed
/// to local compute by the caller.
double offload_delay(double frame_bits, double cycles_per_bit, double rate,
                     const EnvConfig& config);

/// Local execution delay D*C/f_n.
double local_delay(double frame_bits, double cycles_per_bit, double user_cpu);

/// Local device energy mu_n * D * C * eta * f_n^2.
double local_energy(double frame_bits, double cycles_per_bit, double user_cpu,
                    double battery_weight, const EnvConfig& config);

}  // namespace vrsim
