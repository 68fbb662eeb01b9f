#pragma once

#include <cstdint>
#include <string>

namespace vrsim {

/// Full scenario parameterization. Defaults model a 30x30 m indoor space with
/// the edge server at the center, 90 frame slots per second and three 1.8 MHz
/// downlink channels.
struct EnvConfig {
  int n_users = 5;
  int n_channels = 3;
  int frames_per_second = 90;       // T, slots per episode
  double slot_duration = 1.0 / 90;  // iota, seconds
  double area_side = 30.0;          // meters
  double bandwidth_per_channel = 1.8e6;  // W, Hz
  double noise_psd = 3.9810717055349694e-21;  // sigma^2, W/Hz (-174 dBm/Hz)
  double path_loss_exponent = 2.0;  // alpha

  // Frame size bounds: 1080p..2k at 16 bit/pixel, compression factor 150.
  double frame_bits_min = 1920.0 * 1080.0 * 16.0 / 150.0;  // 221184
  double frame_bits_max = 2048.0 * 1080.0 * 16.0 / 150.0;  // 235929.6
  double cycles_per_bit_min = 50.0;
  double cycles_per_bit_max = 100.0;

  double vsp_cpu = 1e11;       // f_v, cycles/s
  double user_cpu_min = 2e9;   // f_n bounds, cycles/s
  double user_cpu_max = 4e9;
  double tx_power_min = 0.05;  // p_n bounds, W
  double tx_power_max = 0.2;
  double energy_coeff = 1e-27;  // eta, J*s^2/cycle^3
  double battery_weight_min = 0.0;  // mu_n bounds
  double battery_weight_max = 1.0;
  double target_fps_min = 75.0;  // tau_{n,F} bounds, frames
  double target_fps_max = 80.0;

  double omega1 = 1.0;
  double omega2 = 0.5;
  double r_success = 0.1;
  double r_fail = 0.5;
  double r_terminal_scale = 10.0;

  std::uint64_t rng_seed = 0;

  /// Length of the observation vector: 2N + N*M + 1.
  int observation_size() const {
    return 2 * n_users + n_users * n_channels + 1;
  }

  /// (M+1)^N joint actions.
  std::int64_t action_space_size() const;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

}  // namespace vrsim
