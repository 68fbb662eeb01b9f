#pragma once

#include <string>
#include <vector>

#include "vrsim/net/dense_net.hpp"

namespace vrsim {

// Checkpoint file layout (little-endian, see docs/checkpoint_format.md):
//   magic "VRNC", u32 version (=1), u32 net count, then per net:
//   u32 layer count, u32 layer sizes..., u64 scalar count, f64 parameters
//   in layer order (weights row-major then biases, layer by layer).

void save_checkpoint(const std::string& path,
                     const std::vector<DenseNet>& nets);

/// Throws std::runtime_error on I/O or format errors.
std::vector<DenseNet> load_checkpoint(const std::string& path);

}  // namespace vrsim
