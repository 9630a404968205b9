#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

namespace qho::test {

// Seeded generator for property checks. Same seed, same sequence on every platform.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  int integer(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 engine_;
};

inline double rel_err(double got, double want) {
  const double scale = std::abs(want);
  return scale > 0.0 ? std::abs(got - want) / scale : std::abs(got);
}

inline double rel_err(double got, double want, double scale) {
  return std::abs(got - want) / std::max(scale, std::abs(want));
}

}  // namespace qho::test
