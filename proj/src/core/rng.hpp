#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace rednow {

// Fixed-algorithm generator so seeded runs reproduce across platforms and
// standard libraries: xoshiro256** seeded through SplitMix64. Distributions
// are implemented here (polar normal, Knuth Poisson, inversion geometric)
// instead of <random>, whose distributions are implementation-defined.

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Labeled seed split: one config seed fans out to per-stage / per-unit
// streams. derive(derive(s, a), b) != derive(derive(s, b), a) in general,
// which is what we want.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view label) {
  std::uint64_t st = base ^ fnv1a64(label);
  return splitmix64(st);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t n) {
  std::uint64_t st = base ^ (0x9e3779b97f4a7c15ULL * (n + 1));
  return splitmix64(st);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t st = seed;
    for (auto& w : s_) w = splitmix64(st);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // uniform on [0,1) with 53-bit resolution
  double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // standard normal, Marsaglia polar method (spare cached)
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  double normal(double mean, double sd) { return mean + sd * normal(); }

  // Knuth's product-of-uniforms; adequate for the small means used here
  int poisson(double mean) {
    if (mean <= 0.0) return 0;
    int k = 0;
    double target = -mean;
    double acc = 0.0;
    for (;;) {
      acc += std::log(uniform01());
      if (acc < target) return k;
      ++k;
    }
  }

  // geometric on {0,1,2,...} with success probability p (inversion)
  int geometric0(double p) {
    if (p >= 1.0) return 0;
    const double u = 1.0 - uniform01();  // (0,1]
    return int(std::floor(std::log(u) / std::log(1.0 - p)));
  }

  // pick integer in [0, n)
  std::uint64_t below(std::uint64_t n) { return n ? next_u64() % n : 0; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4];
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace rednow
