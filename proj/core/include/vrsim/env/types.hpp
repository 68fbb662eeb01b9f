#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace vrsim {

/// Per-user characteristics, frozen for the lifetime of one episode.
struct VuProfile {
  int user_id = 0;
  double pos_x = 0.0, pos_y = 0.0;  // meters
  double distance = 1.0;            // l_n, meters to the VSP (floored at 1 m)
  double tx_power = 0.0;            // p_n, W
  double cpu = 0.0;                 // f_n, cycles/s
  double battery_weight = 0.0;      // mu_n
  int target_fps = 0;               // tau_{n,F}, frames
  int initial_tolerance = 0;        // tau_{n,f}^0 = T - tau_{n,F}
};

/// Pre-materialized stochastic draws: one row per slot (T+1 rows, the extra
/// row backs the observation of the post-episode state). Given a tape and the
/// profiles, an episode is a deterministic function of the action sequence.
struct EpisodeTape {
  // slot-major: frame_bits[t][n], cycles_per_bit[t][n], fading[t][n*M + m]
  std::vector<std::vector<double>> frame_bits;
  std::vector<std::vector<double>> cycles_per_bit;
  std::vector<std::vector<double>> fading;
};

/// Mutable per-timestep episode state.
struct EnvState {
  int t = 0;                             // slot index in [0, T]
  std::vector<double> frame_bits;        // D_n^t
  std::vector<double> cycles_per_bit;    // C_n^t
  std::vector<int> tolerance_left;       // tau_{n,f}^t
  std::vector<double> fading;            // g_{n,m}^t, row-major [n*M + m]
  std::vector<double> channel_gain;      // |h_{n,m}|^2, h = g * l^-alpha
  bool terminated = false;
  std::vector<int> failure_total;        // sum of I_n^t so far
  std::vector<double> energy_total;      // joules so far
};

/// Per-user diagnostics for one executed slot.
struct StepInfo {
  double rate = 0.0;                       // bits/s, 0 if computing locally
  std::optional<double> offload_delay;     // seconds
  std::optional<double> local_delay;       // seconds
  double energy = 0.0;                     // joules (local users only)
  int failure = 0;                         // I_n^t
  int channel = 0;                         // Gamma_n^t
};

struct StepOutcome {
  std::vector<double> observation;
  std::vector<double> rewards;  // R_n^t, one entry per user
  bool terminated = false;
  std::vector<StepInfo> info;
};

}  // namespace vrsim
