#ifndef TIPS_RANDOM_H_
#define TIPS_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace tips {

using Rng = std::mt19937_64;

// 64-bit FNV-1a, used to give each named stream a stable identity.
constexpr std::uint64_t HashName(std::string_view name) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : name) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

// splitmix64 finalizer
constexpr std::uint64_t MixSeed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for the stream `name` derived from a master seed. Streams with
// different names never share draws, so adding consumers to one stream does
// not perturb any other.
constexpr std::uint64_t StreamSeed(std::uint64_t master, std::string_view name) {
  return MixSeed(MixSeed(master) ^ HashName(name));
}

inline Rng MakeStream(std::uint64_t master, std::string_view name) {
  return Rng(StreamSeed(master, name));
}

// Uniform double in [0, 1) built from the top 53 bits, identical on every
// standard library (std::uniform_real_distribution is not).
inline double Uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double UniformReal(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * Uniform01(rng);
}

// Uniform integer in [0, n) by rejection, n > 0.
inline std::uint64_t UniformIndex(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

// The independent streams a session draws from.
struct RngStreams {
  explicit RngStreams(std::uint64_t master)
      : env(MakeStream(master, "env")),
        oracle(MakeStream(master, "oracle")),
        sampler(MakeStream(master, "sampler")),
        init(MakeStream(master, "init")),
        replay(MakeStream(master, "replay")),
        train(MakeStream(master, "train")) {}

  Rng env;
  Rng oracle;
  Rng sampler;
  Rng init;
  Rng replay;
  Rng train;
};

}  // namespace tips

#endif  // TIPS_RANDOM_H_
