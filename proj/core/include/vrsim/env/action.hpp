#pragma once

#include <cstdint>
#include <vector>

namespace vrsim {

/// The joint assignment vector: assignment[n] in {0..M}, 0 = local compute,
/// m >= 1 = downlink channel m. Encoded big-endian base (M+1), user 0 most
/// significant, so the integer index is strictly monotone in the
/// lexicographic order of the assignment tuple.
struct ActionAssignment {
  std::vector<int> assignment;
  std::int64_t encoded = 0;
};

std::int64_t encode_action(const std::vector<int>& assignment, int n_channels);

std::vector<int> decode_action(std::int64_t index, int n_users, int n_channels);

std::int64_t action_space_size(int n_users, int n_channels);

}  // namespace vrsim
