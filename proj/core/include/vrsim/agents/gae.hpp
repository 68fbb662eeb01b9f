#pragma once

#include <cstdint>
#include <vector>

namespace vrsim {

struct GaeResult {
  // [t][head]
  std::vector<std::vector<double>> advantages;
  std::vector<std::vector<double>> targets;  // A + V(s_t)
};

/// Generalized advantage estimation by backward recursion, one channel per
/// reward head.
///
/// rewards[t][h] for t in [0, B); values[t][h] for t in [0, B] where the last
/// row is the bootstrap value of the state after the final transition (only
/// consulted when that transition is non-terminal). terminal[t] marks
/// episode-ending transitions: their delta uses a zero next value and the
/// recursion resets across the boundary.
GaeResult compute_gae(const std::vector<std::vector<double>>& rewards,
                      const std::vector<std::vector<double>>& values,
                      const std::vector<std::uint8_t>& terminal,
                      double gamma, double lambda);

}  // namespace vrsim
