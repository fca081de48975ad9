#pragma once

#include "boxcert/box.hpp"

#include <cstdint>
#include <random>

namespace boxcert {

/// Seeded source of exact random NS boxes. Draws only through
/// std::mt19937_64 raw output so sequences are identical across standard
/// libraries.
class BoxSampler {
 public:
  explicit BoxSampler(std::uint64_t seed, long denominator = 64) : rng_(seed), denominator_(denominator) {}

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

  /// Weights k_i / denominator over `count` slots, each unit assigned uniformly.
  std::vector<Rational> composition(std::size_t count);

  /// Random mixture of the 24 NS vertices.
  Box ns_box();

  /// Mixture of a random subset of 1..max_support NS vertices; reaches the
  /// neighbourhood of individual PR boxes far more often than ns_box().
  Box sparse_ns_box(std::size_t max_support = 4);

  /// Rational in [0,1] with the sampler's denominator.
  Rational unit();

 private:
  std::mt19937_64 rng_;
  long denominator_;
};

}  // namespace boxcert
