#include "vrsim/net/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace vrsim {

namespace {

constexpr char kMagic[4] = {'V', 'R', 'N', 'C'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void write_pod(std::ofstream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_pod(std::ifstream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw std::runtime_error("checkpoint: truncated file");
  return value;
}

}  // namespace

void save_checkpoint(const std::string& path,
                     const std::vector<DenseNet>& nets) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("checkpoint: cannot open " + path);
  out.write(kMagic, 4);
  write_pod<std::uint32_t>(out, kVersion);
  write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(nets.size()));
  for (const DenseNet& net : nets) {
    write_pod<std::uint32_t>(out,
                             static_cast<std::uint32_t>(net.layer_sizes().size()));
    for (int s : net.layer_sizes())
      write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(s));
    write_pod<std::uint64_t>(out, net.param_count());
    out.write(reinterpret_cast<const char*>(net.params().data()),
              static_cast<std::streamsize>(net.param_count() * sizeof(double)));
  }
  if (!out) throw std::runtime_error("checkpoint: write failed for " + path);
}

std::vector<DenseNet> load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("checkpoint: cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("checkpoint: bad magic in " + path);
  if (read_pod<std::uint32_t>(in) != kVersion)
    throw std::runtime_error("checkpoint: unsupported version in " + path);
  const std::uint32_t count = read_pod<std::uint32_t>(in);
  std::vector<DenseNet> nets;
  nets.reserve(count);
  for (std::uint32_t k = 0; k < count; ++k) {
    const std::uint32_t n_layers = read_pod<std::uint32_t>(in);
    if (n_layers < 2) throw std::runtime_error("checkpoint: bad layer count");
    std::vector<int> sizes(n_layers);
    for (auto& s : sizes) s = static_cast<int>(read_pod<std::uint32_t>(in));
    DenseNet net(sizes);
    const std::uint64_t n_params = read_pod<std::uint64_t>(in);
    if (n_params != net.param_count())
      throw std::runtime_error("checkpoint: scalar count disagrees with shapes");
    in.read(reinterpret_cast<char*>(net.params().data()),
            static_cast<std::streamsize>(n_params * sizeof(double)));
    if (!in) throw std::runtime_error("checkpoint: truncated parameters");
    nets.push_back(std::move(net));
  }
  return nets;
}

}  // namespace vrsim
