#pragma once

#include <stdexcept>

namespace vrsim {

/// Hyperparameters shared by the PPO-family and DQN-family agents.
struct AgentConfig {
  double gamma = 0.99;
  double gae_lambda = 0.95;
  double clip_epsilon = 0.2;
  int epochs = 10;        // K
  int batch_size = 64;    // bs
  double actor_lr = 3e-4;
  double critic_lr = 1e-3;
  double entropy_coef = 0.01;
  int target_sync = 10;   // C, in update steps (critic target and DQN target)
  int replay_capacity = 50000;
  double eps_start = 1.0;  // epsilon-greedy schedule (DQN)
  double eps_end = 0.05;
  double eps_decay_fraction = 0.3;  // fraction of total steps to anneal over
  int rollout_length = 2048;
  int hidden_units = 128;
  int eval_episodes = 10;
  bool paper_exact_clip = false;  // literal min{r, clip(r)} * A form

  void validate() const {
    auto fail = [](const char* what) {
      throw std::invalid_argument(std::string("AgentConfig: ") + what);
    };
    if (gamma <= 0.0 || gamma > 1.0) fail("gamma must be in (0, 1]");
    if (gae_lambda < 0.0 || gae_lambda > 1.0) fail("gae_lambda must be in [0, 1]");
    if (clip_epsilon <= 0.0 || clip_epsilon >= 1.0) fail("clip_epsilon must be in (0, 1)");
    if (epochs < 1) fail("epochs must be >= 1");
    if (batch_size < 1) fail("batch_size must be >= 1");
    if (target_sync < 1) fail("target_sync must be >= 1");
    if (actor_lr < 0.0 || critic_lr < 0.0) fail("learning rates must be >= 0");
    if (replay_capacity < 1) fail("replay_capacity must be >= 1");
    if (rollout_length < 1) fail("rollout_length must be >= 1");
    if (hidden_units < 1) fail("hidden_units must be >= 1");
    if (eval_episodes < 1) fail("eval_episodes must be >= 1");
    if (eps_decay_fraction <= 0.0 || eps_decay_fraction > 1.0)
      fail("eps_decay_fraction must be in (0, 1]");
  }
};

/// Joint-action nets are refused above this output width.
inline constexpr long long kMaxActionOutputs = 65536;

}  // namespace vrsim
