#pragma once

#include <cstdint>
#include <stdexcept>

#include "vrsim/agents/trainer.hpp"
#include "vrsim/rng.hpp"

namespace vrsim {

/// Uniform action draw, the no-allocation baseline.
inline std::int64_t random_agent_act(Rng& rng, std::int64_t action_space_size) {
  if (action_space_size < 1)
    throw std::invalid_argument("random_agent_act: empty action space");
  return static_cast<std::int64_t>(rng.index(action_space_size));
}

/// The Random "trainer": no learning, every action uniform. Reseeds at the
/// start of each evaluation pass so the learning curve is exactly flat.
class RandomTrainer final : public Trainer {
 public:
  RandomTrainer(std::int64_t action_space_size, std::uint64_t seed)
      : n_actions_(action_space_size), seed_(seed), rng_(seed, 0x4A4D) {}

  std::int64_t act_greedy(std::span<const double>) override {
    return random_agent_act(rng_, n_actions_);
  }

  void begin_eval(std::uint64_t seed) override { rng_ = Rng(seed_, seed); }

  void run(std::int64_t total_steps, std::int64_t eval_interval,
           const std::function<void(std::int64_t)>& on_eval) override {
    if (eval_interval < 1 || total_steps < eval_interval)
      throw std::invalid_argument("run: need total_steps >= eval_interval >= 1");
    for (std::int64_t step = 0; step <= total_steps; step += eval_interval)
      on_eval(step);
    if (total_steps % eval_interval != 0) on_eval(total_steps);
  }

  std::vector<DenseNet> checkpoint_nets() const override { return {}; }

 private:
  std::int64_t n_actions_;
  std::uint64_t seed_;
  Rng rng_;
};

}  // namespace vrsim
