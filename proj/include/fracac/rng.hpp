#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace fracac {

// Seeded random helpers built on the fully specified mt19937_64 stream, so
// the same seed produces the same draws everywhere. std::*_distribution is
// avoided on purpose (its output is implementation-defined).

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Uniform draw in (0, 1].
inline double uniform01(std::mt19937_64& gen) {
  return (double(gen() >> 11) + 1.0) * 0x1p-53;
}

// Uniform draw in [lo, hi).
inline double uniform(std::mt19937_64& gen, double lo, double hi) {
  return lo + (hi - lo) * double(gen() >> 11) * 0x1p-53;
}

// Standard normal via Box-Muller.
class NormalDraw {
 public:
  double operator()(std::mt19937_64& gen) {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01(gen);
    const double u2 = uniform01(gen);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace fracac
