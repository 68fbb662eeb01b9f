#include "vrsim/env/environment.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "vrsim/env/action.hpp"
#include "vrsim/env/physics.hpp"

namespace vrsim {

std::vector<VuProfile> sample_profiles(const EnvConfig& config, Rng& rng) {
  std::vector<VuProfile> profiles(config.n_users);
  const double center = config.area_side / 2.0;  // VSP at the area center
  for (int n = 0; n < config.n_users; ++n) {
    VuProfile& p = profiles[n];
    p.user_id = n;
    p.pos_x = rng.uniform(0.0, config.area_side);
    p.pos_y = rng.uniform(0.0, config.area_side);
    p.distance = std::max(1.0, std::hypot(p.pos_x - center, p.pos_y - center));
    p.tx_power = rng.uniform(config.tx_power_min, config.tx_power_max);
    p.cpu = rng.uniform(config.user_cpu_min, config.user_cpu_max);
    p.battery_weight =
        rng.uniform(config.battery_weight_min, config.battery_weight_max);
    p.target_fps = rng.uniform_int(static_cast<int>(config.target_fps_min),
                                   static_cast<int>(config.target_fps_max));
    p.initial_tolerance = config.frames_per_second - p.target_fps;
  }
  return profiles;
}

EpisodeTape sample_tape(const EnvConfig& config, Rng& rng) {
  const int slots = config.frames_per_second + 1;  // extra row backs the final observation
  EpisodeTape tape;
  tape.frame_bits.resize(slots);
  tape.cycles_per_bit.resize(slots);
  tape.fading.resize(slots);
  for (int t = 0; t < slots; ++t) {
    tape.frame_bits[t].resize(config.n_users);
    tape.cycles_per_bit[t].resize(config.n_users);
    tape.fading[t].resize(config.n_users * config.n_channels);
    for (int n = 0; n < config.n_users; ++n) {
      tape.frame_bits[t][n] =
          rng.uniform(config.frame_bits_min, config.frame_bits_max);
      tape.cycles_per_bit[t][n] =
          rng.uniform(config.cycles_per_bit_min, config.cycles_per_bit_max);
    }
    for (int i = 0; i < config.n_users * config.n_channels; ++i)
      tape.fading[t][i] = rng.exponential(1.0);
  }
  return tape;
}

std::vector<double> build_observation(const EnvState& state,
                                      const std::vector<VuProfile>& profiles,
                                      const EnvConfig& config) {
  const int n = config.n_users;
  const int m = config.n_channels;
  const double t_total = config.frames_per_second;
  std::vector<double> obs;
  obs.reserve(config.observation_size());

  for (int i = 0; i < n; ++i)
    obs.push_back(state.frame_bits[i] / config.frame_bits_max);
  for (int i = 0; i < n; ++i)
    obs.push_back(state.tolerance_left[i] / t_total);

  // Config-derived log-gain bounds: distances span [1, corner], squared
  // exponential fading typically spans a few decades below and above 1.
  const double corner = std::max(1.0, config.area_side * std::sqrt(0.5));
  const double alpha = config.path_loss_exponent;
  const double lo = -8.0 - 2.0 * alpha * std::log10(corner);
  const double hi = 2.0;
  for (int i = 0; i < n * m; ++i) {
    const double x = std::log10(state.channel_gain[i] + 1e-30);
    obs.push_back(2.0 * (x - lo) / (hi - lo) - 1.0);
  }

  obs.push_back((t_total - state.t) / t_total);
  return obs;
}

Environment::Environment(EnvConfig config) : config_(std::move(config)) {
  config_.validate();
}

std::vector<double> Environment::reset(std::uint64_t episode_seed) {
  Rng rng(config_.rng_seed, episode_seed);
  return reset_with(sample_profiles(config_, rng), sample_tape(config_, rng));
}

std::vector<double> Environment::reset_with(std::vector<VuProfile> profiles,
                                            EpisodeTape tape) {
  if (static_cast<int>(profiles.size()) != config_.n_users)
    throw std::invalid_argument("reset_with: profile count mismatch");
  if (static_cast<int>(tape.frame_bits.size()) < config_.frames_per_second)
    throw std::invalid_argument("reset_with: tape shorter than an episode");
  profiles_ = std::move(profiles);
  tape_ = std::move(tape);

  state_ = EnvState{};
  state_.tolerance_left.resize(config_.n_users);
  state_.failure_total.assign(config_.n_users, 0);
  state_.energy_total.assign(config_.n_users, 0.0);
  for (int n = 0; n < config_.n_users; ++n)
    state_.tolerance_left[n] = profiles_[n].initial_tolerance;
  load_slot(0);
  episode_open_ = true;
  return build_observation(state_, profiles_, config_);
}

void Environment::load_slot(int t) {
  if (t >= static_cast<int>(tape_.frame_bits.size())) return;  // past tape end
  state_.frame_bits = tape_.frame_bits[t];
  state_.cycles_per_bit = tape_.cycles_per_bit[t];
  state_.fading = tape_.fading[t];
  state_.channel_gain.resize(state_.fading.size());
  for (int n = 0; n < config_.n_users; ++n) {
    const double path = std::pow(profiles_[n].distance, -config_.path_loss_exponent);
    for (int m = 0; m < config_.n_channels; ++m) {
      const double h = state_.fading[n * config_.n_channels + m] * path;
      state_.channel_gain[n * config_.n_channels + m] = h * h;
    }
  }
}

StepOutcome Environment::step(std::int64_t action_index) {
  if (!episode_open_ || state_.terminated)
    throw std::logic_error("Environment::step on a terminated episode");
  if (action_index < 0 || action_index >= config_.action_space_size())
    throw std::domain_error("Environment::step: action index out of range");

  const int n_users = config_.n_users;
  const int t0 = state_.t;
  const double iota = config_.slot_duration;
  const std::vector<int> assignment =
      decode_action(action_index, n_users, config_.n_channels);
  const std::vector<double> rates =
      channel_rates(state_.channel_gain, assignment, profiles_, config_);

  StepOutcome out;
  out.rewards.assign(n_users, 0.0);
  out.info.resize(n_users);
  bool tolerance_hit = false;

  for (int n = 0; n < n_users; ++n) {
    StepInfo& info = out.info[n];
    info.channel = assignment[n];
    const double bits = state_.frame_bits[n];
    const double cycles = state_.cycles_per_bit[n];
    double delay = 0.0;
    if (assignment[n] >= 1) {
      info.rate = rates[n];
      delay = offload_delay(bits, cycles, rates[n], config_);
      info.offload_delay = delay;
    } else {
      delay = local_delay(bits, cycles, profiles_[n].cpu);
      info.local_delay = delay;
      info.energy = local_energy(bits, cycles, profiles_[n].cpu,
                                 profiles_[n].battery_weight, config_);
    }
    info.failure = delay > iota ? 1 : 0;

    if (info.failure) {
      state_.tolerance_left[n] -= 1;
      if (state_.tolerance_left[n] <= 0) {
        state_.tolerance_left[n] = 0;
        tolerance_hit = true;
      }
      state_.failure_total[n] += 1;
    }
    state_.energy_total[n] += info.energy;

    out.rewards[n] =
        config_.omega1 * (config_.r_success * (1 - info.failure) -
                          config_.r_fail * info.failure) -
        config_.omega2 * info.energy;
  }

  if (tolerance_hit) {
    const double penalty = -config_.r_terminal_scale *
                           (config_.frames_per_second - t0) /
                           static_cast<double>(config_.frames_per_second);
    for (int n = 0; n < n_users; ++n) out.rewards[n] += penalty;
    state_.terminated = true;
  } else if (t0 + 1 == config_.frames_per_second) {
    state_.terminated = true;  // natural end, no terminal penalty
  }

  state_.t = t0 + 1;
  load_slot(state_.t);
  out.observation = build_observation(state_, profiles_, config_);
  out.terminated = state_.terminated;
  return out;
}

double Environment::objective() const {
  double failures = 0.0, energy = 0.0;
  for (int n = 0; n < config_.n_users; ++n) {
    failures += state_.failure_total[n];
    energy += state_.energy_total[n];
  }
  return config_.omega1 * failures + config_.omega2 * energy;
}

}  // namespace vrsim
