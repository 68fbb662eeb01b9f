#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vrsim/rng.hpp"

namespace vrsim {

/// Feedforward net with tanh hidden layers and an identity output layer.
/// Parameters live in one flat vector (per layer: weights row-major
/// [out][in], then biases), which keeps Adam and checkpointing trivial.
class DenseNet {
 public:
  DenseNet() = default;
  explicit DenseNet(std::vector<int> layer_sizes);

  /// Xavier-uniform weights, zero biases; the final layer's weights are
  /// multiplied by output_scale (0.01 for policy heads keeps the initial
  /// policy near uniform).
  void init(Rng& rng, double output_scale = 1.0);

  const std::vector<int>& layer_sizes() const { return sizes_; }
  int input_size() const { return sizes_.front(); }
  int output_size() const { return sizes_.back(); }
  int n_layers() const { return static_cast<int>(sizes_.size()) - 1; }
  std::size_t param_count() const { return params_.size(); }
  std::vector<double>& params() { return params_; }
  const std::vector<double>& params() const { return params_; }

  std::size_t weight_offset(int layer) const { return w_off_[layer]; }
  std::size_t bias_offset(int layer) const { return b_off_[layer]; }

 private:
  std::vector<int> sizes_;
  std::vector<double> params_;
  std::vector<std::size_t> w_off_, b_off_;
};

/// Activations recorded by forward() for the matching backward() call.
struct ForwardCache {
  std::vector<std::vector<double>> post;  // post[0] = input, post[L] = output
};

/// Deterministic forward pass. Throws std::invalid_argument on a shape
/// mismatch. Pass a cache to enable backward().
std::vector<double> forward(const DenseNet& net, std::span<const double> input,
                            ForwardCache* cache = nullptr);

/// Accumulates into grad (sized param_count) the exact gradient of the scalar
/// loss whose gradient w.r.t. the outputs is output_grad.
void backward_accumulate(const DenseNet& net, const ForwardCache& cache,
                         std::span<const double> output_grad,
                         std::vector<double>& grad);

std::vector<double> backward(const DenseNet& net, const ForwardCache& cache,
                             std::span<const double> output_grad);

}  // namespace vrsim
