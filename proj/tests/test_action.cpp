#include <doctest.h>

#include <stdexcept>

#include "vrsim/env/action.hpp"

using namespace vrsim;

TEST_CASE("action space size") {
  CHECK(action_space_size(5, 3) == 1024);
  CHECK(action_space_size(8, 3) == 65536);
  CHECK(action_space_size(1, 1) == 2);
}

TEST_CASE("big-endian encoding, user 0 most significant") {
  CHECK(encode_action({0, 0, 0, 0, 0}, 3) == 0);
  CHECK(encode_action({0, 0, 0, 0, 1}, 3) == 1);
  CHECK(encode_action({1, 0, 0, 0, 0}, 3) == 256);
  CHECK(encode_action({1, 2, 3, 0, 1}, 3) == 433);
  CHECK(decode_action(433, 5, 3) == std::vector<int>{1, 2, 3, 0, 1});
}

TEST_CASE("round trip is exhaustive for N=5, M=3") {
  for (std::int64_t i = 0; i < 1024; ++i) {
    const std::vector<int> a = decode_action(i, 5, 3);
    REQUIRE(static_cast<int>(a.size()) == 5);
    for (int v : a) REQUIRE((v >= 0 && v <= 3));
    REQUIRE(encode_action(a, 3) == i);
  }
}

TEST_CASE("encoding is monotone in lexicographic tuple order") {
  std::vector<int> prev = decode_action(0, 3, 2);
  for (std::int64_t i = 1; i < action_space_size(3, 2); ++i) {
    const std::vector<int> cur = decode_action(i, 3, 2);
    CHECK(prev < cur);
    prev = cur;
  }
}

TEST_CASE("out-of-range values are refused") {
  CHECK_THROWS_AS(decode_action(-1, 5, 3), std::domain_error);
  CHECK_THROWS_AS(decode_action(1024, 5, 3), std::domain_error);
  CHECK_THROWS_AS(encode_action({0, 0, 4, 0, 0}, 3), std::domain_error);
  CHECK_THROWS_AS(encode_action({-1, 0, 0, 0, 0}, 3), std::domain_error);
}
