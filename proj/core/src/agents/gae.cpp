#include "vrsim/agents/gae.hpp"

#include <stdexcept>

namespace vrsim {

GaeResult compute_gae(const std::vector<std::vector<double>>& rewards,
                      const std::vector<std::vector<double>>& values,
                      const std::vector<std::uint8_t>& terminal,
                      double gamma, double lambda) {
  const std::size_t steps = rewards.size();
  if (values.size() != steps + 1 || terminal.size() != steps)
    throw std::invalid_argument("compute_gae: trajectory/value length mismatch");
  if (steps == 0) return {};
  const std::size_t heads = rewards[0].size();
  for (const auto& row : rewards)
    if (row.size() != heads)
      throw std::invalid_argument("compute_gae: ragged reward rows");
  for (const auto& row : values)
    if (row.size() != heads)
      throw std::invalid_argument("compute_gae: value head count mismatch");

  GaeResult out;
  out.advantages.assign(steps, std::vector<double>(heads, 0.0));
  out.targets.assign(steps, std::vector<double>(heads, 0.0));

  for (std::size_t h = 0; h < heads; ++h) {
    double gae = 0.0;
    for (std::size_t t = steps; t-- > 0;) {
      const double next_value = terminal[t] ? 0.0 : values[t + 1][h];
      const double delta = rewards[t][h] + gamma * next_value - values[t][h];
      gae = terminal[t] ? delta : delta + gamma * lambda * gae;
      out.advantages[t][h] = gae;
      out.targets[t][h] = gae + values[t][h];
    }
  }
  return out;
}

}  // namespace vrsim
