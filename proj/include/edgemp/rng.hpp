// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace edgemp {

std::uint64_t splitmix64(std::uint64_t x);

/// Seeded 64-bit generator used for every random choice in the project.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The conversions on top of it (bounded integers, uniform doubles,
/// normals) are implemented here rather than with <random> distributions,
/// whose algorithms vary between standard libraries, so outputs are
/// reproducible bit for bit on any conforming toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for item `index` of a run seeded with `seed`.
  static Rng stream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [0, n) by rejection sampling. n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal via the Box-Muller transform.
  double normal();

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

}  // namespace edgemp
