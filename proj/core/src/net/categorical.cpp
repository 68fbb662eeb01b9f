#include "vrsim/net/categorical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vrsim {

CategoricalDist::CategoricalDist(std::vector<double> logits)
    : log_probs_(std::move(logits)) {
  if (log_probs_.empty())
    throw std::domain_error("CategoricalDist: empty logits");
  double max = -std::numeric_limits<double>::infinity();
  for (double l : log_probs_) {
    if (!std::isfinite(l))
      throw std::domain_error("CategoricalDist: non-finite logit");
    max = std::max(max, l);
  }
  double sum = 0.0;
  for (double l : log_probs_) sum += std::exp(l - max);
  const double log_z = max + std::log(sum);
  for (double& l : log_probs_) l -= log_z;
}

double CategoricalDist::log_prob(std::int64_t action) const {
  if (action < 0 || action >= size())
    throw std::domain_error("CategoricalDist: action out of range");
  return log_probs_[action];
}

double CategoricalDist::prob(std::int64_t action) const {
  return std::exp(log_prob(action));
}

std::pair<std::int64_t, double> CategoricalDist::sample(Rng& rng) const {
  const double u = rng.uniform();
  double cum = 0.0;
  for (int i = 0; i < size(); ++i) {
    cum += std::exp(log_probs_[i]);
    if (u < cum) return {i, log_probs_[i]};
  }
  return {size() - 1, log_probs_.back()};  // u landed in rounding slack
}

std::int64_t CategoricalDist::greedy() const {
  std::int64_t best = 0;
  for (int i = 1; i < size(); ++i)
    if (log_probs_[i] > log_probs_[best]) best = i;
  return best;
}

double CategoricalDist::entropy() const {
  double h = 0.0;
  for (double lp : log_probs_) h -= std::exp(lp) * lp;
  return h;
}

}  // namespace vrsim
