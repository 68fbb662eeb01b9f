#pragma once

#include <cstdint>
#include <vector>

#include "vrsim/env/config.hpp"
#include "vrsim/env/types.hpp"
#include "vrsim/rng.hpp"

namespace vrsim {

/// Observation layout, length 2N + N*M + 1:
///   [0, N)        D_n^t / frame_bits_max
///   [N, 2N)       tau_{n,f}^t / T
///   [2N, 2N+N*M)  log10(|h_{n,m}|^2 + 1e-30) affinely mapped to roughly
///                 [-1, 1] with bounds derived from the config geometry
///   last entry    (T - t) / T
std::vector<double> build_observation(const EnvState& state,
                                      const std::vector<VuProfile>& profiles,
                                      const EnvConfig& config);

std::vector<VuProfile> sample_profiles(const EnvConfig& config, Rng& rng);
EpisodeTape sample_tape(const EnvConfig& config, Rng& rng);

/// One episode stream of the offloading scenario. Single-threaded by design;
/// run distinct instances (distinct seeds) for parallelism.
class Environment {
 public:
  explicit Environment(EnvConfig config);

  /// Starts a fresh episode: samples profiles and the full randomness tape,
  /// deterministically from (config.rng_seed, episode_seed).
  std::vector<double> reset(std::uint64_t episode_seed);

  /// Starts an episode from pre-materialized draws (oracle replay path).
  std::vector<double> reset_with(std::vector<VuProfile> profiles,
                                 EpisodeTape tape);

  /// Executes one slot. Throws std::logic_error on a terminated state and
  /// std::domain_error on an out-of-range action index.
  StepOutcome step(std::int64_t action_index);

  const EnvConfig& config() const { return config_; }
  const EnvState& state() const { return state_; }
  const std::vector<VuProfile>& profiles() const { return profiles_; }
  const EpisodeTape& tape() const { return tape_; }
  bool terminated() const { return state_.terminated; }

  /// omega1 * sum I_n^t + omega2 * sum e_{n,l}^t accumulated so far.
  double objective() const;

 private:
  void load_slot(int t);

  EnvConfig config_;
  std::vector<VuProfile> profiles_;
  EpisodeTape tape_;
  EnvState state_;
  bool episode_open_ = false;
};

}  // namespace vrsim
