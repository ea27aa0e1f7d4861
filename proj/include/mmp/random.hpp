#pragma once

#include <cstdint>
#include <numbers>
#include <random>

#include "mmp/geometry.hpp"

namespace mmp {

// Seed-deterministic generator. The engine output is fixed by the standard
// and the conversion to double is done here, so streams are reproducible
// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Independent stream for trial `index` of a run seeded with `seed`.
  static Rng substream(std::uint64_t seed, std::uint64_t index) {
    return Rng(mix(seed ^ mix(index + 0x9e3779b97f4a7c15ULL)));
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  Point in_square(double half = 1.0) { return {uniform(-half, half), uniform(-half, half)}; }
  double angle() { return uniform(0, 2 * std::numbers::pi); }
  Point direction() {
    double t = angle();
    return {std::cos(t), std::sin(t)};
  }
  std::uint64_t bits() { return engine_(); }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace mmp
