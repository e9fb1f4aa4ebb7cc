#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace cvbound::rng {

// splitmix64; used to derive independent stream seeds from one master seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic seed for sub-stream `stream` of `master`. Fixed hashing so
// curves and reports replay exactly from the recorded master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t s = master ^ (0x6a09e667f3bcc909ULL + stream * 0x9e3779b97f4a7c15ULL);
  splitmix64(s);
  return splitmix64(s);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  return derive_seed(derive_seed(master, a), b);
}

inline std::mt19937_64 engine(std::uint64_t seed) { return std::mt19937_64(seed); }

// The distributions below are hand-rolled on top of mt19937_64 so that draws
// are identical across standard libraries (std::*_distribution is
// implementation-defined).

// Uniform on [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, bound) by rejection; bound > 0.
inline std::uint64_t uniform_below(std::mt19937_64& eng, std::uint64_t bound) {
  const std::uint64_t threshold = -bound % bound;  // 2^64 mod bound
  for (;;) {
    std::uint64_t r = eng();
    if (r >= threshold) return r % bound;
  }
}

// Standard normal via polar Box-Muller (no cached spare: stateless per call
// pairs poorly with substream derivation, so we discard the second value).
inline double normal(std::mt19937_64& eng) {
  for (;;) {
    double u = 2.0 * uniform01(eng) - 1.0;
    double v = 2.0 * uniform01(eng) - 1.0;
    double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }
}

inline double exponential(std::mt19937_64& eng, double rate) {
  return -std::log1p(-uniform01(eng)) / rate;
}

// In-place Fisher-Yates; deterministic given the engine state.
template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& eng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(uniform_below(eng, i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace cvbound::rng
