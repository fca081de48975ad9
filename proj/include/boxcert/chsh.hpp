#pragma once

#include "boxcert/box.hpp"

#include <array>

namespace boxcert {

struct CHSHValue {
  int r = 0, s = 0, t = 0;
  Rational value;
};

struct BetaTable {
  std::array<CHSHValue, 8> values;  ///< index 4r + 2s + t
  bool local = false;               ///< all |beta| <= 2

  const Rational& at(int r, int s, int t) const { return values[static_cast<std::size_t>(4 * r + 2 * s + t)].value; }
};

/// <ij> = P(a=b|x=i,y=j) - P(a!=b|x=i,y=j).
Rational correlator(const Box& box, int i, int j);

Rational beta(const Box& box, int r, int s, int t);

/// All eight CHSH values. The locality flag relies on the CHSH facets being
/// the complete description of the local polytope, which only holds for 2x2.
BetaTable beta_table(const Box& box);

/// Largest beta over (r,s,t); ties go to the lexicographically smallest triple.
CHSHValue max_beta(const Box& box);

void require_2x2(const Box& box);

}  // namespace boxcert
