#include "tips/session/model_io.h"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace tips {
namespace {

static_assert(std::endian::native == std::endian::little ||
                  std::endian::native == std::endian::big,
              "mixed-endian hosts are not supported");

template <typename T>
T ToLittle(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &v, sizeof(T));
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) {
      std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
    }
    std::memcpy(&v, bytes, sizeof(T));
  }
  return v;
}

template <typename T>
void Put(std::ostream& out, T v) {
  v = ToLittle(v);
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T Get(std::istream& in) {
  T v;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof(T))) {
    throw std::runtime_error("model file truncated");
  }
  return ToLittle(v);
}

}  // namespace

void WriteMlp(std::ostream& out, const Mlp& net) {
  out.write(kMlpMagic, sizeof(kMlpMagic));
  Put<std::uint32_t>(out, kMlpFormatVersion);
  Put<std::uint32_t>(out, net.output_activation() == OutputActivation::kTanh);
  Put<std::uint32_t>(out, static_cast<std::uint32_t>(net.layer_sizes().size()));
  for (int size : net.layer_sizes()) Put<std::uint32_t>(out, size);
  for (int l = 0; l < net.num_layers(); ++l) {
    const Eigen::MatrixXd& w = net.weights()[l];
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) Put<double>(out, w(r, c));
    }
    for (Eigen::Index r = 0; r < net.biases()[l].size(); ++r) {
      Put<double>(out, net.biases()[l][r]);
    }
  }
  if (!out) throw std::runtime_error("failed to write model file");
}

Mlp ReadMlp(std::istream& in) {
  char magic[sizeof(kMlpMagic)];
  if (!in.read(magic, sizeof(magic)) ||
      std::memcmp(magic, kMlpMagic, sizeof(magic)) != 0) {
    throw std::runtime_error("not a model file (bad magic)");
  }
  const auto version = Get<std::uint32_t>(in);
  if (version != kMlpFormatVersion) {
    throw std::runtime_error("unsupported model file version " +
                             std::to_string(version));
  }
  const auto activation = Get<std::uint32_t>(in);
  if (activation > 1) throw std::runtime_error("unknown output activation");
  const auto count = Get<std::uint32_t>(in);
  if (count < 2 || count > 64) throw std::runtime_error("bad layer count");
  std::vector<int> sizes;
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto s = Get<std::uint32_t>(in);
    if (s == 0 || s > (1u << 20)) throw std::runtime_error("bad layer size");
    sizes.push_back(static_cast<int>(s));
  }
  Mlp net(sizes, activation == 1 ? OutputActivation::kTanh
                                 : OutputActivation::kIdentity);
  for (int l = 0; l < net.num_layers(); ++l) {
    Eigen::MatrixXd& w = net.weights()[l];
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = Get<double>(in);
    }
    for (Eigen::Index r = 0; r < net.biases()[l].size(); ++r) {
      net.biases()[l][r] = Get<double>(in);
    }
  }
  return net;
}

void SaveMlp(const std::filesystem::path& path, const Mlp& net) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  WriteMlp(out, net);
}

Mlp LoadMlp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return ReadMlp(in);
}

}  // namespace tips
