#include "vrsim/env/action.hpp"

#include <stdexcept>
#include <string>

namespace vrsim {

std::int64_t action_space_size(int n_users, int n_channels) {
  std::int64_t s = 1;
  for (int n = 0; n < n_users; ++n) s *= (n_channels + 1);
  return s;
}

std::int64_t encode_action(const std::vector<int>& assignment, int n_channels) {
  std::int64_t index = 0;
  for (int v : assignment) {
    if (v < 0 || v > n_channels)
      throw std::domain_error("encode_action: entry " + std::to_string(v) +
                              " outside {0.." + std::to_string(n_channels) + "}");
    index = index * (n_channels + 1) + v;
  }
  return index;
}

std::vector<int> decode_action(std::int64_t index, int n_users, int n_channels) {
  if (index < 0 || index >= action_space_size(n_users, n_channels))
    throw std::domain_error("decode_action: index " + std::to_string(index) +
                            " outside action space");
  std::vector<int> assignment(n_users);
  for (int n = n_users - 1; n >= 0; --n) {
    assignment[n] = static_cast<int>(index % (n_channels + 1));
    index /= (n_channels + 1);
  }
  return assignment;
}

}  // namespace vrsim
