#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace vrsim {

/// Bias-corrected Adam. update() takes a descent step; pass the negated
/// gradient for ascent objectives.
class AdamState {
 public:
  AdamState() = default;
  AdamState(std::size_t n_params, double lr, double beta1 = 0.9,
            double beta2 = 0.999, double eps = 1e-8);

  /// Throws std::runtime_error on a non-finite gradient entry (training fault).
  void update(std::vector<double>& params, std::span<const double> grads);

  long long step_count() const { return step_count_; }
  double lr() const { return lr_; }

 private:
  double lr_ = 1e-3, beta1_ = 0.9, beta2_ = 0.999, eps_ = 1e-8;
  std::vector<double> m_, v_;
  long long step_count_ = 0;
};

}  // namespace vrsim
