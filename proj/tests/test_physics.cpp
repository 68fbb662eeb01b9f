#include <doctest.h>

#include <cmath>
#include <vector>

#include "vrsim/env/physics.hpp"
#include "vrsim/rng.hpp"

using namespace vrsim;

namespace {

EnvConfig unit_channel_config(int n_users) {
  EnvConfig c;
  c.n_users = n_users;
  c.n_channels = 1;
  c.bandwidth_per_channel = 1.0;
  c.noise_psd = 1.0;  // W * sigma^2 = 1 W
  return c;
}

// Scalar re-derivation of the per-user SINR rate, written independently of
// channel_rates: interference from co-channel users with strictly smaller
// received power (ties broken by user id), evaluated through the user's own
// gain.
double scalar_rate(int user, const std::vector<double>& gain,
                   const std::vector<double>& power,
                   const std::vector<int>& assignment, double w,
                   double noise_psd) {
  if (assignment[user] == 0) return 0.0;
  double interference = 0.0;
  for (std::size_t i = 0; i < gain.size(); ++i) {
    if (static_cast<int>(i) == user || assignment[i] != assignment[user])
      continue;
    const double mine = power[user] * gain[user];
    const double theirs = power[i] * gain[i];
    const bool later = theirs < mine || (theirs == mine && static_cast<int>(i) > user);
    if (later) interference += power[i] * gain[user];
  }
  const double sinr = power[user] * gain[user] / (interference + w * noise_psd);
  return w * std::log2(1.0 + sinr);
}

}  // namespace

TEST_CASE("two-user shared channel, hand-evaluated") {
  const EnvConfig config = unit_channel_config(2);
  std::vector<VuProfile> profiles(2);
  profiles[0].user_id = 0;
  profiles[0].tx_power = 2.0;
  profiles[1].user_id = 1;
  profiles[1].tx_power = 1.0;
  const std::vector<double> gain = {2.0, 1.0};  // |h_a|^2, |h_b|^2
  const std::vector<int> assignment = {1, 1};

  const std::vector<double> rates =
      channel_rates(gain, assignment, profiles, config);
  // a sorted first (4 W > 1 W), sees b's power through its own gain
  CHECK(rates[0] == doctest::Approx(std::log2(7.0 / 3.0)).epsilon(1e-12));
  // b decodes last, interference free
  CHECK(rates[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("local users draw zero rate") {
  const EnvConfig config = unit_channel_config(2);
  std::vector<VuProfile> profiles(2);
  profiles[0].tx_power = profiles[1].tx_power = 1.0;
  profiles[1].user_id = 1;
  const std::vector<double> rates =
      channel_rates({1.0, 1.0}, {0, 1}, profiles, config);
  CHECK(rates[0] == 0.0);
  // alone on the channel -> single-user formula
  CHECK(rates[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("received-power tie goes to the lower user id") {
  const EnvConfig config = unit_channel_config(2);
  std::vector<VuProfile> profiles(2);
  profiles[0].tx_power = profiles[1].tx_power = 1.0;
  profiles[1].user_id = 1;
  const std::vector<double> rates =
      channel_rates({1.0, 1.0}, {1, 1}, profiles, config);
  // user 0 sorted first: interference 1; user 1 last: clean
  CHECK(rates[0] == doctest::Approx(std::log2(1.5)).epsilon(1e-12));
  CHECK(rates[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("randomized cross-check against the scalar formula") {
  Rng rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng.index(6));
    EnvConfig config = unit_channel_config(n);
    config.n_channels = 1 + static_cast<int>(rng.index(3));
    config.bandwidth_per_channel = rng.uniform(0.5, 3e6);
    config.noise_psd = rng.uniform(1e-21, 1.0);

    std::vector<VuProfile> profiles(n);
    std::vector<double> power(n);
    std::vector<int> assignment(n);
    std::vector<double> gain(n * config.n_channels);
    for (int i = 0; i < n; ++i) {
      profiles[i].user_id = i;
      profiles[i].tx_power = power[i] = rng.uniform(0.05, 2.0);
      assignment[i] = static_cast<int>(rng.index(config.n_channels + 1));
    }
    for (double& g : gain) g = rng.exponential(1.0);

    const std::vector<double> rates =
        channel_rates(gain, assignment, profiles, config);
    for (int i = 0; i < n; ++i) {
      // own-channel gains for the scalar helper
      std::vector<double> own_gain(n);
      std::vector<int> masked = assignment;
      for (int j = 0; j < n; ++j) {
        own_gain[j] = assignment[j] >= 1
                          ? gain[j * config.n_channels + (assignment[j] - 1)]
                          : 0.0;
      }
      const double expect = scalar_rate(i, own_gain, power, masked,
                                        config.bandwidth_per_channel,
                                        config.noise_psd);
      if (expect == 0.0)
        CHECK(rates[i] == 0.0);
      else
        CHECK(std::abs(rates[i] - expect) <= 1e-9 * expect);
    }
  }
}

TEST_CASE("removing an interferer never lowers anyone's rate") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + static_cast<int>(rng.index(3));
    EnvConfig config = unit_channel_config(n);
    std::vector<VuProfile> profiles(n);
    std::vector<int> assignment(n, 1);
    std::vector<double> gain(n);
    for (int i = 0; i < n; ++i) {
      profiles[i].user_id = i;
      profiles[i].tx_power = rng.uniform(0.05, 2.0);
      gain[i] = rng.exponential(1.0);
    }
    const std::vector<double> before =
        channel_rates(gain, assignment, profiles, config);
    const int removed = static_cast<int>(rng.index(n));
    assignment[removed] = 0;
    const std::vector<double> after =
        channel_rates(gain, assignment, profiles, config);
    for (int i = 0; i < n; ++i) {
      if (i == removed) continue;
      CHECK(after[i] >= before[i] - 1e-12 * before[i]);
    }
  }
}

TEST_CASE("delay and energy formulas, frozen values") {
  EnvConfig config;  // f_v = 1e11
  CHECK(offload_delay(221184.0, 75.0, 2.7e7, config) ==
        doctest::Approx(8.357888e-3).epsilon(1e-12));
  CHECK(local_delay(221184.0, 75.0, 2e9) ==
        doctest::Approx(8.2944e-3).epsilon(1e-12));
  CHECK(local_energy(221184.0, 75.0, 2e9, 0.5, config) ==
        doctest::Approx(0.0331776).epsilon(1e-12));
  // mu = 0 -> free local compute
  CHECK(local_energy(221184.0, 75.0, 2e9, 0.0, config) == 0.0);
}

TEST_CASE("offload with a dead link is refused") {
  EnvConfig config;
  CHECK_THROWS_AS(offload_delay(1e5, 50.0, 0.0, config), std::invalid_argument);
  CHECK_THROWS_AS(offload_delay(1e5, 50.0, -1.0, config), std::invalid_argument);
}
