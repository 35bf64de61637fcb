#ifndef TIPS_SESSION_MODEL_IO_H_
#define TIPS_SESSION_MODEL_IO_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "tips/nn/mlp.h"

namespace tips {

// Flat binary network file, all fields little-endian:
//
//   char[8]   magic "TIPSMLP\0"
//   uint32    format version (1)
//   uint32    output activation (0 identity, 1 tanh)
//   uint32    n, number of layer sizes
//   uint32[n] layer sizes, input first
//   per layer l = 0 .. n-2:
//     float64[sizes[l+1] * sizes[l]]  weights, row-major
//     float64[sizes[l+1]]             biases
inline constexpr char kMlpMagic[8] = {'T', 'I', 'P', 'S', 'M', 'L', 'P', '\0'};
inline constexpr std::uint32_t kMlpFormatVersion = 1;

void WriteMlp(std::ostream& out, const Mlp& net);
// Throws std::runtime_error on a bad magic, unknown version or truncation.
Mlp ReadMlp(std::istream& in);

void SaveMlp(const std::filesystem::path& path, const Mlp& net);
Mlp LoadMlp(const std::filesystem::path& path);

}  // namespace tips

#endif  // TIPS_SESSION_MODEL_IO_H_
