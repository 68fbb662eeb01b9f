#include "vrsim/env/config.hpp"

#include <cmath>
#include <stdexcept>

namespace vrsim {

std::int64_t EnvConfig::action_space_size() const {
  std::int64_t s = 1;
  for (int n = 0; n < n_users; ++n) s *= (n_channels + 1);
  return s;
}

void EnvConfig::validate() const {
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("EnvConfig: " + what);
  };
  if (n_users < 1) fail("n_users must be >= 1");
  if (n_channels < 1) fail("n_channels must be >= 1");
  if (frames_per_second < 1) fail("frames_per_second must be >= 1");
  if (std::abs(slot_duration * frames_per_second - 1.0) > 1e-12)
    fail("slot_duration * frames_per_second must equal 1");
  if (area_side <= 0) fail("area_side must be > 0");
  if (bandwidth_per_channel <= 0) fail("bandwidth_per_channel must be > 0");
  if (noise_psd <= 0) fail("noise_psd must be > 0");
  if (path_loss_exponent <= 0) fail("path_loss_exponent must be > 0");
  if (frame_bits_min < 0 || frame_bits_min > frame_bits_max)
    fail("frame_bits bounds out of order");
  if (cycles_per_bit_min < 0 || cycles_per_bit_min > cycles_per_bit_max)
    fail("cycles_per_bit bounds out of order");
  if (vsp_cpu <= 0) fail("vsp_cpu must be > 0");
  if (user_cpu_min <= 0 || user_cpu_min > user_cpu_max)
    fail("user_cpu bounds out of order");
  if (tx_power_min <= 0 || tx_power_min > tx_power_max)
    fail("tx_power bounds out of order");
  if (energy_coeff <= 0) fail("energy_coeff must be > 0");
  if (battery_weight_min < 0 || battery_weight_min > battery_weight_max ||
      battery_weight_max > 1.0)
    fail("battery_weight bounds must satisfy 0 <= min <= max <= 1");
  if (target_fps_min < 0 || target_fps_min > target_fps_max)
    fail("target_fps bounds out of order");
  if (target_fps_max > frames_per_second)
    fail("target_fps_max must not exceed frames_per_second");
  if (omega1 < 0 || omega2 < 0) fail("reward weights must be >= 0");
}

}  // namespace vrsim
