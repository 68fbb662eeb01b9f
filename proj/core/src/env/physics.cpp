#include "vrsim/env/physics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vrsim {

std::vector<double> channel_rates(const std::vector<double>& channel_gain,
                                  const std::vector<int>& assignment,
                                  const std::vector<VuProfile>& profiles,
                                  const EnvConfig& config) {
  const int n_users = config.n_users;
  const int n_channels = config.n_channels;
  const double noise = config.bandwidth_per_channel * config.noise_psd;
  std::vector<double> rates(n_users, 0.0);

  for (int m = 1; m <= n_channels; ++m) {
    std::vector<int> members;
    for (int n = 0; n < n_users; ++n)
      if (assignment[n] == m) members.push_back(n);
    if (members.empty()) continue;

    auto received = [&](int n) {
      return profiles[n].tx_power * channel_gain[n * n_channels + (m - 1)];
    };
    std::sort(members.begin(), members.end(), [&](int a, int b) {
      double ra = received(a), rb = received(b);
      if (ra != rb) return ra > rb;
      return a < b;
    });

    for (std::size_t k = 0; k < members.size(); ++k) {
      const int n = members[k];
      const double gain = channel_gain[n * n_channels + (m - 1)];
      double interference = 0.0;
      for (std::size_t i = k + 1; i < members.size(); ++i)
        interference += profiles[members[i]].tx_power * gain;
      const double sinr = profiles[n].tx_power * gain / (interference + noise);
      rates[n] = config.bandwidth_per_channel * std::log2(1.0 + sinr);
    }
  }
  return rates;
}

double offload_delay(double frame_bits, double cycles_per_bit, double rate,
                     const EnvConfig& config) {
  if (rate <= 0.0)
    throw std::invalid_argument("offload_delay: rate must be > 0");
  return frame_bits * cycles_per_bit / config.vsp_cpu + frame_bits / rate;
}

double local_delay(double frame_bits, double cycles_per_bit, double user_cpu) {
  if (user_cpu <= 0.0)
    throw std::invalid_argument("local_delay: user_cpu must be > 0");
  return frame_bits * cycles_per_bit / user_cpu;
}

double local_energy(double frame_bits, double cycles_per_bit, double user_cpu,
                    double battery_weight, const EnvConfig& config) {
  const double energy_per_cycle = config.energy_coeff * user_cpu * user_cpu;
  return battery_weight * frame_bits * cycles_per_bit * energy_per_cycle;
}

}  // namespace vrsim
