#include "vrsim/net/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace vrsim {

AdamState::AdamState(std::size_t n_params, double lr, double beta1,
                     double beta2, double eps)
    : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps),
      m_(n_params, 0.0), v_(n_params, 0.0) {}

void AdamState::update(std::vector<double>& params,
                       std::span<const double> grads) {
  if (params.size() != m_.size() || grads.size() != m_.size())
    throw std::invalid_argument("AdamState::update: shape mismatch");
  ++step_count_;
  const double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(step_count_));
  const double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(step_count_));
  for (std::size_t i = 0; i < m_.size(); ++i) {
    const double g = grads[i];
    if (!std::isfinite(g))
      throw std::runtime_error("training fault: non-finite gradient");
    m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * g;
    v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * g * g;
    const double mhat = m_[i] / bc1;
    const double vhat = v_[i] / bc2;
    params[i] -= lr_ * mhat / (std::sqrt(vhat) + eps_);
  }
}

}  // namespace vrsim
