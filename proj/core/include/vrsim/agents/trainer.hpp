#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "vrsim/net/dense_net.hpp"

namespace vrsim {

/// Action source used by the evaluation protocol.
class Agent {
 public:
  virtual ~Agent() = default;

  /// Deterministic action choice (greedy for learned policies).
  virtual std::int64_t act_greedy(std::span<const double> obs) = 0;

  /// Called once before an evaluation pass; agents with stochastic
  /// evaluation behavior (Random) reseed here so evaluation is reproducible.
  virtual void begin_eval(std::uint64_t /*seed*/) {}
};

class Trainer : public Agent {
 public:
  /// Runs training for total_steps environment steps, invoking on_eval at
  /// step 0, every eval_interval steps, and at the final step.
  virtual void run(std::int64_t total_steps, std::int64_t eval_interval,
                   const std::function<void(std::int64_t)>& on_eval) = 0;

  /// Nets to persist in the final checkpoint.
  virtual std::vector<DenseNet> checkpoint_nets() const = 0;
};

}  // namespace vrsim
