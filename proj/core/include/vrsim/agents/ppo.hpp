#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vrsim/agents/agent_config.hpp"
#include "vrsim/agents/trainer.hpp"
#include "vrsim/env/environment.hpp"
#include "vrsim/net/adam.hpp"
#include "vrsim/net/dense_net.hpp"

namespace vrsim {

struct PpoSample {
  const std::vector<double>* obs = nullptr;
  std::int64_t action = 0;
  double behavior_log_prob = 0.0;
  double advantage = 0.0;  // summed over users for the hybrid agent
};

struct PolicyGradOptions {
  double clip_epsilon = 0.2;
  double entropy_coef = 0.0;
  bool paper_exact_clip = false;
  bool normalize_advantages = true;
};

struct PolicyGradStats {
  int fault_count = 0;        // samples dropped for non-finite ratios
  double mean_surrogate = 0.0;
};

/// Per-sample clipped surrogate value. Canonical form min(r*A, clip(r)*A);
/// the paper-exact flag switches to the literal min{r, clip(r)} * A.
double clipped_surrogate(double ratio, double advantage, double clip_epsilon,
                         bool paper_exact);

/// Ascent gradient (mean over the batch) of the clipped surrogate plus
/// entropy bonus. Advantages are normalized within the batch when requested.
std::vector<double> ppo_policy_gradient(const DenseNet& policy,
                                        std::span<const PpoSample> batch,
                                        const PolicyGradOptions& options,
                                        PolicyGradStats* stats = nullptr);

struct CriticSample {
  const std::vector<double>* obs = nullptr;
  std::vector<double> targets;  // one frozen target per value head
};

/// Mean over the batch of the summed per-head squared errors. grad_out is
/// resized to the critic's parameter count and filled with the descent
/// gradient. Throws std::invalid_argument on a head-count mismatch.
double hybrid_critic_loss(const DenseNet& critic,
                          std::span<const CriticSample> batch,
                          std::vector<double>& grad_out);

/// PPO trainer covering both variants: hybrid=true trains the per-user
/// critic and sums per-user advantages; hybrid=false is plain PPO on the
/// summed reward with a single value head.
class PpoTrainer final : public Trainer {
 public:
  PpoTrainer(EnvConfig env_config, AgentConfig agent_config, bool hybrid,
             std::uint64_t seed);

  void run(std::int64_t total_steps, std::int64_t eval_interval,
           const std::function<void(std::int64_t)>& on_eval) override;
  std::int64_t act_greedy(std::span<const double> obs) override;
  std::vector<DenseNet> checkpoint_nets() const override;

  const DenseNet& policy() const { return policy_; }
  const DenseNet& critic() const { return critic_; }

 private:
  void update_from_rollout();

  EnvConfig env_config_;
  AgentConfig config_;
  bool hybrid_;
  int heads_;
  Environment env_;
  Rng rng_;
  DenseNet policy_, critic_, critic_target_;
  AdamState policy_opt_, critic_opt_;
  std::uint64_t seed_;
  std::int64_t episode_counter_ = 0;
  std::int64_t update_epochs_done_ = 0;
  bool need_reset_ = true;
  std::vector<double> cur_obs_;

  // rollout storage
  std::vector<std::vector<double>> obs_, rewards_;
  std::vector<std::int64_t> actions_;
  std::vector<double> log_probs_;
  std::vector<std::uint8_t> terminal_;
  std::vector<double> last_next_obs_;
};

}  // namespace vrsim
