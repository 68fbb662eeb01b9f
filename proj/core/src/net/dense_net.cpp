#include "vrsim/net/dense_net.hpp"

#include <cmath>
#include <stdexcept>

namespace vrsim {

DenseNet::DenseNet(std::vector<int> layer_sizes) : sizes_(std::move(layer_sizes)) {
  if (sizes_.size() < 2)
    throw std::invalid_argument("DenseNet needs at least two layer sizes");
  std::size_t total = 0;
  for (int l = 0; l + 1 < static_cast<int>(sizes_.size()); ++l) {
    w_off_.push_back(total);
    total += static_cast<std::size_t>(sizes_[l]) * sizes_[l + 1];
    b_off_.push_back(total);
    total += sizes_[l + 1];
  }
  params_.assign(total, 0.0);
}

void DenseNet::init(Rng& rng, double output_scale) {
  const int layers = n_layers();
  for (int l = 0; l < layers; ++l) {
    const int fan_in = sizes_[l], fan_out = sizes_[l + 1];
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    const double scale = (l == layers - 1) ? output_scale : 1.0;
    double* w = params_.data() + w_off_[l];
    for (int i = 0; i < fan_in * fan_out; ++i)
      w[i] = scale * rng.uniform(-limit, limit);
    double* b = params_.data() + b_off_[l];
    for (int i = 0; i < fan_out; ++i) b[i] = 0.0;
  }
}

std::vector<double> forward(const DenseNet& net, std::span<const double> input,
                            ForwardCache* cache) {
  if (static_cast<int>(input.size()) != net.input_size())
    throw std::invalid_argument("forward: input size mismatch");
  const int layers = net.n_layers();
  const auto& sizes = net.layer_sizes();
  const double* p = net.params().data();

  std::vector<double> cur(input.begin(), input.end());
  if (cache) {
    cache->post.clear();
    cache->post.push_back(cur);
  }
  for (int l = 0; l < layers; ++l) {
    const int in = sizes[l], out = sizes[l + 1];
    const double* w = p + net.weight_offset(l);
    const double* b = p + net.bias_offset(l);
    std::vector<double> next(out);
    for (int o = 0; o < out; ++o) {
      const double* row = w + static_cast<std::size_t>(o) * in;
      double acc = b[o];
      for (int i = 0; i < in; ++i) acc += row[i] * cur[i];
      next[o] = (l == layers - 1) ? acc : std::tanh(acc);
    }
    cur = std::move(next);
    if (cache) cache->post.push_back(cur);
  }
  return cur;
}

void backward_accumulate(const DenseNet& net, const ForwardCache& cache,
                         std::span<const double> output_grad,
                         std::vector<double>& grad) {
  const int layers = net.n_layers();
  if (static_cast<int>(cache.post.size()) != layers + 1)
    throw std::logic_error("backward: cache does not match this net");
  if (static_cast<int>(output_grad.size()) != net.output_size())
    throw std::invalid_argument("backward: output_grad size mismatch");
  if (grad.size() != net.param_count())
    throw std::invalid_argument("backward: grad buffer size mismatch");

  const auto& sizes = net.layer_sizes();
  const double* p = net.params().data();
  std::vector<double> delta(output_grad.begin(), output_grad.end());

  for (int l = layers - 1; l >= 0; --l) {
    const int in = sizes[l], out = sizes[l + 1];
    const double* w = p + net.weight_offset(l);
    const std::vector<double>& below = cache.post[l];
    double* gw = grad.data() + net.weight_offset(l);
    double* gb = grad.data() + net.bias_offset(l);

    std::vector<double> delta_below(in, 0.0);
    for (int o = 0; o < out; ++o) {
      const double d = delta[o];
      gb[o] += d;
      const double* row = w + static_cast<std::size_t>(o) * in;
      double* grow = gw + static_cast<std::size_t>(o) * in;
      for (int i = 0; i < in; ++i) {
        grow[i] += d * below[i];
        delta_below[i] += d * row[i];
      }
    }
    if (l > 0) {
      // tanh' = 1 - a^2 on the post-activation feeding this layer
      for (int i = 0; i < in; ++i)
        delta_below[i] *= 1.0 - below[i] * below[i];
    }
    delta = std::move(delta_below);
  }
}

std::vector<double> backward(const DenseNet& net, const ForwardCache& cache,
                             std::span<const double> output_grad) {
  std::vector<double> grad(net.param_count(), 0.0);
  backward_accumulate(net, cache, output_grad, grad);
  return grad;
}

}  // namespace vrsim
