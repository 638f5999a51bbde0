#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace conclab {

// One SplitMix64 step (Vigna's generator). Fully specified arithmetic,
// so streams are identical across platforms and compilers.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Case-seed derivation: splitmix64 over the root seed, xor the stream
// index into the state, splitmix64 again. Every report records the
// derived seed so a single case can be replayed on its own.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
  std::uint64_t s = root;
  std::uint64_t m = splitmix64_next(s);
  s = m ^ stream;
  return splitmix64_next(s);
}

// mt19937_64 behind a premixed seed, with bit-level uniform mapping.
// std::*_distribution is implementation-defined, so we never use it.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    engine_.seed(splitmix64_next(s));
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on the open interval (0,1); 53-bit resolution.
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // Uniform integer in [lo, hi] via 128-bit multiply (no modulo bias worth
  // caring about at 64 bits of entropy; deterministic everywhere).
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    const auto wide = static_cast<unsigned __int128>(next_u64()) * range;
    return lo + static_cast<std::int64_t>(wide >> 64);
  }

  // Box-Muller; consumes exactly two uniforms per pair.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u = uniform01();
    const double v = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double theta = 6.283185307179586476925287 * v;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace conclab
