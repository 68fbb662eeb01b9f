#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "vrsim/env/action.hpp"
#include "vrsim/env/environment.hpp"

using namespace vrsim;

namespace {

// Enumerable scenario used across the suite: deadline 1/5 s, so outcomes are
// driven by the tape rather than being hopeless by construction.
EnvConfig tiny_config() {
  EnvConfig c;
  c.n_users = 2;
  c.n_channels = 1;
  c.frames_per_second = 5;
  c.slot_duration = 1.0 / 5;
  c.target_fps_min = 2.0;
  c.target_fps_max = 4.0;
  return c;
}

EnvConfig single_user_config() {
  EnvConfig c = tiny_config();
  c.n_users = 1;
  return c;
}

// One user at a known position with a fully constant tape.
std::pair<std::vector<VuProfile>, EpisodeTape> fixed_episode(
    const EnvConfig& config) {
  std::vector<VuProfile> profiles(config.n_users);
  for (int n = 0; n < config.n_users; ++n) {
    VuProfile& p = profiles[n];
    p.user_id = n;
    p.pos_x = config.area_side / 2.0 + 2.0 + n;
    p.pos_y = config.area_side / 2.0;
    p.distance = 2.0 + n;
    p.tx_power = 0.1;
    p.cpu = 2e9;
    p.battery_weight = 0.5;
    p.target_fps = 3;
    p.initial_tolerance = config.frames_per_second - 3;
  }
  EpisodeTape tape;
  const int slots = config.frames_per_second + 1;
  tape.frame_bits.assign(slots, std::vector<double>(config.n_users, 221184.0));
  tape.cycles_per_bit.assign(slots, std::vector<double>(config.n_users, 75.0));
  tape.fading.assign(
      slots, std::vector<double>(config.n_users * config.n_channels, 1.0));
  return {profiles, tape};
}

}  // namespace

TEST_CASE("observation layout and size") {
  EnvConfig config;  // N=5, M=3
  CHECK(config.observation_size() == 26);
  Environment env(config);
  const std::vector<double> obs = env.reset(0);
  REQUIRE(static_cast<int>(obs.size()) == 26);
  // normalized frame sizes in (0, 1], tolerances in (0, 1], full time left
  for (int i = 0; i < 5; ++i) {
    CHECK(obs[i] > 0.0);
    CHECK(obs[i] <= 1.0);
  }
  for (int i = 5; i < 10; ++i) {
    CHECK(obs[i] > 0.0);
    CHECK(obs[i] <= 1.0);
  }
  CHECK(obs[25] == 1.0);
}

TEST_CASE("reset is a pure function of (config seed, episode seed)") {
  EnvConfig config = tiny_config();
  Environment a(config), b(config);
  CHECK(a.reset(42) == b.reset(42));
  CHECK(a.reset(42) != b.reset(43));

  config.rng_seed = 9;
  Environment c(config);
  CHECK(b.reset(42) != c.reset(42));
}

TEST_CASE("local step on a frozen episode, hand-computed reward") {
  const EnvConfig config = single_user_config();
  auto [profiles, tape] = fixed_episode(config);
  Environment env(config);
  env.reset_with(profiles, tape);

  StepOutcome out = env.step(encode_action({0}, config.n_channels));
  REQUIRE(out.info.size() == 1);
  CHECK(out.info[0].channel == 0);
  CHECK(out.info[0].rate == 0.0);
  CHECK(!out.info[0].offload_delay.has_value());
  REQUIRE(out.info[0].local_delay.has_value());
  // D*C/f_n = 221184*75/2e9 s, comfortably under the 0.2 s deadline
  CHECK(*out.info[0].local_delay == doctest::Approx(8.2944e-3).epsilon(1e-12));
  CHECK(out.info[0].failure == 0);
  CHECK(out.info[0].energy == doctest::Approx(0.0331776).epsilon(1e-12));
  // R = omega1 * r_success - omega2 * e
  CHECK(out.rewards[0] ==
        doctest::Approx(0.1 - 0.5 * 0.0331776).epsilon(1e-12));
}

TEST_CASE("offloaded users spend no device energy") {
  const EnvConfig config = tiny_config();
  auto [profiles, tape] = fixed_episode(config);
  Environment env(config);
  env.reset_with(profiles, tape);
  StepOutcome out = env.step(encode_action({1, 0}, config.n_channels));
  CHECK(out.info[0].energy == 0.0);
  CHECK(out.info[0].channel == 1);
  CHECK(out.info[0].rate > 0.0);
  CHECK(out.info[1].energy > 0.0);
}

TEST_CASE("natural episode end after T slots, no terminal penalty") {
  const EnvConfig config = single_user_config();
  auto [profiles, tape] = fixed_episode(config);
  Environment env(config);
  env.reset_with(profiles, tape);
  for (int t = 0; t < config.frames_per_second; ++t) {
    REQUIRE(!env.terminated());
    StepOutcome out = env.step(0);
    CHECK(out.rewards[0] > 0.0);  // all slots succeed, never penalized
    CHECK(out.terminated == (t + 1 == config.frames_per_second));
  }
  CHECK(env.terminated());
  CHECK_THROWS_AS(env.step(0), std::logic_error);
}

TEST_CASE("tolerance exhaustion terminates early and penalizes everyone") {
  EnvConfig config = tiny_config();
  config.user_cpu_min = config.user_cpu_max = 1e6;  // local compute hopeless
  config.bandwidth_per_channel = 1.0;               // offload hopeless too
  auto [profiles, tape] = fixed_episode(config);
  for (auto& p : profiles) {
    p.cpu = 1e6;
    p.target_fps = 4;  // tolerance 1: first failure ends the episode
    p.initial_tolerance = 1;
  }
  Environment env(config);
  env.reset_with(profiles, tape);
  StepOutcome out = env.step(0);
  CHECK(out.terminated);
  CHECK(env.terminated());
  // R_n = -omega1 * r_fail - 10 * (T - 0)/T - omega2 * e
  const double energy = 0.5 * 221184.0 * 75.0 * 1e-27 * 1e6 * 1e6;
  for (int n = 0; n < 2; ++n)
    CHECK(out.rewards[n] ==
          doctest::Approx(-0.5 - 10.0 - 0.5 * energy).epsilon(1e-12));
  CHECK(env.state().tolerance_left[0] == 0);
}

TEST_CASE("objective accumulates failures and energy") {
  EnvConfig config = tiny_config();
  Environment env(config);
  env.reset(3);
  double failures = 0.0, energy = 0.0;
  while (!env.terminated()) {
    StepOutcome out = env.step(static_cast<std::int64_t>(
        env.state().t % config.action_space_size()));
    for (const StepInfo& info : out.info) {
      failures += info.failure;
      energy += info.energy;
    }
  }
  CHECK(env.objective() ==
        doctest::Approx(config.omega1 * failures + config.omega2 * energy)
            .epsilon(1e-12));
}

TEST_CASE("bad actions and bad configs are refused") {
  EnvConfig config = tiny_config();
  Environment env(config);
  env.reset(0);
  CHECK_THROWS_AS(env.step(-1), std::domain_error);
  CHECK_THROWS_AS(env.step(config.action_space_size()), std::domain_error);

  EnvConfig bad = tiny_config();
  bad.slot_duration = 0.5;  // inconsistent with frames_per_second
  CHECK_THROWS_AS(Environment{bad}, std::invalid_argument);
  bad = tiny_config();
  bad.n_users = 0;
  CHECK_THROWS_AS(Environment{bad}, std::invalid_argument);
}

TEST_CASE("channel gain squares the faded amplitude") {
  const EnvConfig config = single_user_config();
  auto [profiles, tape] = fixed_episode(config);
  tape.fading[0][0] = 0.7;
  Environment env(config);
  env.reset_with(profiles, tape);
  const double l = profiles[0].distance;
  const double amplitude = 0.7 * std::pow(l, -config.path_loss_exponent);
  CHECK(env.state().channel_gain[0] ==
        doctest::Approx(amplitude * amplitude).epsilon(1e-12));
}
