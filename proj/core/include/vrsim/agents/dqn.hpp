#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vrsim/agents/agent_config.hpp"
#include "vrsim/agents/trainer.hpp"
#include "vrsim/env/environment.hpp"
#include "vrsim/net/adam.hpp"
#include "vrsim/net/dense_net.hpp"
#include "vrsim/rng.hpp"

namespace vrsim {

struct DqnTransition {
  std::vector<double> obs, next_obs;
  std::int64_t action = 0;
  std::vector<double> rewards;  // per-user
  bool terminated = false;
};

/// Fixed-capacity ring buffer with uniform without-replacement batch sampling.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(int capacity);

  void push(DqnTransition transition);
  std::size_t size() const { return buffer_.size(); }

  /// Throws std::logic_error when batch_size > size().
  std::vector<const DqnTransition*> sample(int batch_size, Rng& rng) const;

 private:
  std::vector<DqnTransition> buffer_;
  std::size_t capacity_, cursor_ = 0;
};

/// Hybrid-reward DQN update. The Q net emits heads * n_actions values laid
/// out head-major. Each head h regresses its chosen-action value toward
///   R_h + gamma * Q_target,h(s', a*),   a* = argmax_a sum_h Q_target,h(s', a)
/// (zero bootstrap on terminal transitions). Returns the descent gradient.
std::vector<double> hrdqn_update_gradient(const DenseNet& q_net,
                                          const DenseNet& target_net,
                                          std::span<const DqnTransition* const> batch,
                                          double gamma, int heads,
                                          double* loss_out = nullptr);

class HrdqnTrainer final : public Trainer {
 public:
  HrdqnTrainer(EnvConfig env_config, AgentConfig agent_config,
               std::uint64_t seed);

  void run(std::int64_t total_steps, std::int64_t eval_interval,
           const std::function<void(std::int64_t)>& on_eval) override;
  std::int64_t act_greedy(std::span<const double> obs) override;
  std::vector<DenseNet> checkpoint_nets() const override;

  const DenseNet& q_net() const { return q_net_; }

 private:
  std::int64_t summed_argmax(const std::vector<double>& q_values) const;

  EnvConfig env_config_;
  AgentConfig config_;
  int heads_;
  std::int64_t n_actions_;
  Environment env_;
  Rng rng_;
  DenseNet q_net_, target_net_;
  AdamState opt_;
  ReplayBuffer replay_;
  std::uint64_t seed_;
  std::int64_t episode_counter_ = 0, updates_done_ = 0;
};

}  // namespace vrsim
