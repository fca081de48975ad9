#include "boxcert/sampling.hpp"

#include <limits>

namespace boxcert {

std::uint64_t BoxSampler::below(std::uint64_t n) {
  // Rejection keeps the draw unbiased without relying on distribution classes.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v;
  do {
    v = rng_();
  } while (v >= limit);
  return v % n;
}

std::vector<Rational> BoxSampler::composition(std::size_t count) {
  std::vector<long> units(count, 0);
  for (long k = 0; k < denominator_; ++k) ++units[below(count)];
  std::vector<Rational> w;
  w.reserve(count);
  for (long u : units) w.emplace_back(u, denominator_);
  return w;
}

Box BoxSampler::ns_box() {
  static const auto vertices = ns_vertices();
  const auto w = composition(vertices.size());
  return convex_combination(w, vertices);
}

Box BoxSampler::sparse_ns_box(std::size_t max_support) {
  static const auto vertices = ns_vertices();
  const std::size_t k = 1 + below(max_support);
  std::vector<Box> chosen;
  for (std::size_t i = 0; i < k; ++i) chosen.push_back(vertices[below(vertices.size())]);
  const auto w = composition(k);
  return convex_combination(w, chosen);
}

Rational BoxSampler::unit() {
  return Rational(static_cast<long>(below(static_cast<std::uint64_t>(denominator_) + 1)), denominator_);
}

}  // namespace boxcert
