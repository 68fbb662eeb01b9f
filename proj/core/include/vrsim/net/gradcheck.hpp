#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "vrsim/net/dense_net.hpp"
#include "vrsim/rng.hpp"

namespace vrsim {

/// Central-finite-difference check of backward_accumulate on one net.
///
/// Loss: L(theta) = w . f_theta(x) for random x and w, whose analytic
/// gradient backward() produces exactly. Compares the analytic gradient
/// against (L(theta+h e_i) - L(theta-h e_i)) / 2h on n_param_samples
/// randomly chosen parameters (all of them when n_param_samples covers the
/// net) and returns the worst relative error
///   |ga - gfd| / max(|ga|, |gfd|, 1e-3).
inline double gradcheck_max_rel_error(DenseNet& net, Rng& rng,
                                      int n_param_samples, double h = 1e-5) {
  std::vector<double> input(net.input_size());
  std::vector<double> w(net.output_size());
  for (double& v : input) v = rng.uniform(-1.0, 1.0);
  for (double& v : w) v = rng.uniform(-1.0, 1.0);

  ForwardCache cache;
  forward(net, input, &cache);
  const std::vector<double> analytic = backward(net, cache, w);

  const std::size_t n_params = net.param_count();
  std::vector<std::size_t> picks;
  if (static_cast<std::size_t>(n_param_samples) >= n_params) {
    picks.resize(n_params);
    for (std::size_t i = 0; i < n_params; ++i) picks[i] = i;
  } else {
    picks.reserve(n_param_samples);
    for (int i = 0; i < n_param_samples; ++i) picks.push_back(rng.index(n_params));
  }

  auto loss_at = [&]() {
    const std::vector<double> out = forward(net, input);
    double loss = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) loss += w[i] * out[i];
    return loss;
  };

  double worst = 0.0;
  std::vector<double>& params = net.params();
  for (std::size_t i : picks) {
    const double saved = params[i];
    params[i] = saved + h;
    const double up = loss_at();
    params[i] = saved - h;
    const double down = loss_at();
    params[i] = saved;
    const double fd = (up - down) / (2.0 * h);
    const double denom =
        std::max({std::abs(analytic[i]), std::abs(fd), 1e-3});
    worst = std::max(worst, std::abs(analytic[i] - fd) / denom);
  }
  return worst;
}

}  // namespace vrsim
