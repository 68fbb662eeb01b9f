#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <vector>

#include "vrsim/net/adam.hpp"
#include "vrsim/net/categorical.hpp"
#include "vrsim/net/checkpoint.hpp"
#include "vrsim/net/dense_net.hpp"
#include "vrsim/net/gradcheck.hpp"
#include "vrsim/rng.hpp"

using namespace vrsim;

TEST_CASE("single linear layer computes Wx + b") {
  DenseNet net({2, 2});
  // row-major [out][in] weights, then biases
  net.params() = {1.0, 2.0, 3.0, -1.0, 0.5, -0.5};
  const std::vector<double> out = forward(net, std::vector<double>{1.0, 1.0});
  REQUIRE(out.size() == 2);
  CHECK(out[0] == doctest::Approx(3.5).epsilon(1e-15));
  CHECK(out[1] == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("hidden layers apply tanh, output stays linear") {
  DenseNet net({1, 1, 1});
  net.params() = {2.0, 0.0, 3.0, 1.0};  // w0, b0, w1, b1
  const std::vector<double> out = forward(net, std::vector<double>{0.5});
  CHECK(out[0] == doctest::Approx(3.0 * std::tanh(1.0) + 1.0).epsilon(1e-15));
}

TEST_CASE("forward rejects shape mismatches") {
  DenseNet net({3, 2});
  Rng rng(0);
  net.init(rng);
  CHECK_THROWS_AS(forward(net, std::vector<double>{1.0, 2.0}),
                  std::invalid_argument);
}

TEST_CASE("init is deterministic and output_scale shrinks the last layer") {
  DenseNet a({4, 8, 8, 3}), b({4, 8, 8, 3}), c({4, 8, 8, 3});
  Rng r1(5), r2(5), r3(5);
  a.init(r1);
  b.init(r2);
  c.init(r3, 0.01);
  CHECK(a.params() == b.params());
  const std::size_t w = c.weight_offset(2);
  CHECK(c.params()[w] == doctest::Approx(a.params()[w] * 0.01).epsilon(1e-12));
}

TEST_CASE("analytic gradients match central finite differences") {
  Rng rng(123);
  const std::vector<std::vector<int>> shapes = {
      {3, 8, 4}, {5, 16, 16, 2}, {1, 4, 1}, {26, 32, 32, 64}};
  for (const auto& shape : shapes) {
    DenseNet net(shape);
    net.init(rng);
    CHECK(gradcheck_max_rel_error(net, rng, 800) <= 1e-6);
  }
}

TEST_CASE("backward_accumulate adds into an existing gradient") {
  DenseNet net({2, 3, 1});
  Rng rng(9);
  net.init(rng);
  ForwardCache cache;
  forward(net, std::vector<double>{0.3, -0.7}, &cache);
  const std::vector<double> once = backward(net, cache, std::vector<double>{1.0});
  std::vector<double> twice(net.param_count(), 0.0);
  backward_accumulate(net, cache, std::vector<double>{1.0}, twice);
  backward_accumulate(net, cache, std::vector<double>{1.0}, twice);
  for (std::size_t i = 0; i < once.size(); ++i)
    CHECK(twice[i] == doctest::Approx(2.0 * once[i]).epsilon(1e-12));
}

TEST_CASE("adam first step equals roughly -lr on a unit gradient") {
  AdamState opt(1, 0.01);
  std::vector<double> params = {0.0};
  opt.update(params, std::vector<double>{1.0});
  CHECK(params[0] == doctest::Approx(-0.01).epsilon(1e-6));
  CHECK(opt.step_count() == 1);
}

TEST_CASE("adam flags non-finite gradients as a training fault") {
  AdamState opt(2, 0.01);
  std::vector<double> params = {0.0, 0.0};
  CHECK_THROWS_WITH_AS(
      opt.update(params, std::vector<double>{1.0, std::nan("")}),
      doctest::Contains("training fault"), std::runtime_error);
}

TEST_CASE("categorical log-probs normalize and shift-invariance holds") {
  const CategoricalDist d({1.0, 1.0, 2.0});
  double total = 0.0;
  for (int i = 0; i < 3; ++i) total += d.prob(i);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  const CategoricalDist shifted({101.0, 101.0, 102.0});
  for (int i = 0; i < 3; ++i)
    CHECK(d.log_prob(i) == doctest::Approx(shifted.log_prob(i)).epsilon(1e-12));
}

TEST_CASE("categorical entropy matches the direct formula") {
  const CategoricalDist d({1.0, 1.0, 2.0});
  double direct = 0.0;
  for (int i = 0; i < 3; ++i) direct -= d.prob(i) * std::log(d.prob(i));
  CHECK(d.entropy() == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("greedy argmax breaks ties toward the lowest index") {
  CHECK(CategoricalDist({2.0, 2.0, 1.0}).greedy() == 0);
  CHECK(CategoricalDist({0.0, 3.0, 3.0}).greedy() == 1);
}

TEST_CASE("sampling frequencies track the distribution") {
  const CategoricalDist d(
      {std::log(0.2), std::log(0.3), std::log(0.5)});
  Rng rng(17);
  std::vector<int> counts(3, 0);
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const auto [a, logp] = d.sample(rng);
    CHECK(logp == doctest::Approx(d.log_prob(a)).epsilon(1e-12));
    counts[a] += 1;
  }
  CHECK(counts[0] / static_cast<double>(draws) == doctest::Approx(0.2).epsilon(0.03));
  CHECK(counts[1] / static_cast<double>(draws) == doctest::Approx(0.3).epsilon(0.03));
  CHECK(counts[2] / static_cast<double>(draws) == doctest::Approx(0.5).epsilon(0.03));
}

TEST_CASE("non-finite logits are refused") {
  CHECK_THROWS_AS(CategoricalDist({1.0, std::nan("")}), std::domain_error);
  CHECK_THROWS_AS(
      CategoricalDist({1.0, std::numeric_limits<double>::infinity()}),
      std::domain_error);
}

TEST_CASE("checkpoint round trip preserves every net bit-for-bit") {
  Rng rng(31);
  DenseNet a({4, 16, 3}), b({2, 8, 8, 1});
  a.init(rng);
  b.init(rng);
  const std::string path =
      (std::filesystem::temp_directory_path() / "vrsim_ckpt_test.ckpt").string();
  save_checkpoint(path, {a, b});
  const std::vector<DenseNet> loaded = load_checkpoint(path);
  REQUIRE(loaded.size() == 2);
  CHECK(loaded[0].layer_sizes() == a.layer_sizes());
  CHECK(loaded[0].params() == a.params());
  CHECK(loaded[1].layer_sizes() == b.layer_sizes());
  CHECK(loaded[1].params() == b.params());
  std::filesystem::remove(path);
}

TEST_CASE("corrupted checkpoints are refused") {
  const std::string path =
      (std::filesystem::temp_directory_path() / "vrsim_ckpt_bad.ckpt").string();
  std::FILE* f = std::fopen(path.c_str(), "wb");
  std::fputs("not a checkpoint", f);
  std::fclose(f);
  CHECK_THROWS_AS(load_checkpoint(path), std::runtime_error);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_checkpoint(path), std::runtime_error);  // missing file
}
