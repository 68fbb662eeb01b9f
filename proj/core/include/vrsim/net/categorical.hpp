#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "vrsim/rng.hpp"

namespace vrsim {

/// Categorical distribution over action indices, parameterized by logits.
/// Log-probabilities come from a max-subtracted log-softmax, so adding any
/// constant to all logits changes nothing.
class CategoricalDist {
 public:
  /// Throws std::domain_error on non-finite logits.
  explicit CategoricalDist(std::vector<double> logits);

  int size() const { return static_cast<int>(log_probs_.size()); }
  const std::vector<double>& log_probs() const { return log_probs_; }
  double log_prob(std::int64_t action) const;
  double prob(std::int64_t action) const;

  /// Draws an action and returns (index, log_prob at that index).
  std::pair<std::int64_t, double> sample(Rng& rng) const;

  /// Argmax of the logits, ties resolved to the lowest index.
  std::int64_t greedy() const;

  /// Shannon entropy in nats.
  double entropy() const;

 private:
  std::vector<double> log_probs_;
};

}  // namespace vrsim
