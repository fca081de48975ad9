#include "boxcert/chsh.hpp"

#include "boxcert/sampling.hpp"

#include "printers.hpp"

#include <gtest/gtest.h>

using namespace boxcert;

namespace {

Rational R(long n, long d = 1) { return Rational(n, d); }

// beta_rst(P) as the inner product <2(B_rst - B_rs(1-t)) | P>; shares no code
// with the correlator route.
Rational beta_by_inner_product(const Box& p, int r, int s, int t) {
  const Box plus = pr_box(r, s, t), minus = pr_box(r, s, 1 - t);
  Rational acc;
  for (std::size_t e = 0; e < 16; ++e) acc += R(2) * (plus[e] - minus[e]) * p[e];
  return acc;
}

TEST(Correlator, PrBox) {
  EXPECT_EQ(correlator(pr_box(0, 0, 0), 0, 0), R(1));
  EXPECT_EQ(correlator(pr_box(0, 0, 0), 0, 1), R(1));
  EXPECT_EQ(correlator(pr_box(0, 0, 0), 1, 1), R(-1));
}

TEST(Correlator, UniformIsZero) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_EQ(correlator(uniform_box(Shape::binary(2)), i, j), R(0));
}

TEST(Correlator, LinearAlongBAlpha) {
  for (long k = 0; k <= 16; ++k) {
    const Rational a(k, 16);
    EXPECT_EQ(correlator(b_alpha(a), 0, 0), R(2) * a - R(1));
    EXPECT_EQ(correlator(b_alpha(a), 1, 1), R(1) - R(2) * a);
  }
  EXPECT_EQ(correlator(b_alpha(R(1, 2)), 0, 0), R(0));
  EXPECT_EQ(correlator(b_alpha(R(1, 2)), 1, 1), R(0));
}

TEST(Correlator, RejectsOtherShapes) {
  EXPECT_THROW(correlator(uniform_box(Shape::binary(4)), 0, 0), WrongShape);
  EXPECT_THROW(beta_table(uniform_box(Shape{{3, 2}, {2, 2}})), WrongShape);
}

TEST(Beta, KnownValues) {
  EXPECT_EQ(beta(pr_box(0, 0, 0), 0, 0, 0), R(4));
  EXPECT_EQ(beta(b_alpha(R(7, 8)), 0, 0, 0), R(3));
  for (long k = 0; k <= 8; ++k) EXPECT_EQ(beta(b_alpha(Rational(k, 8)), 0, 0, 0), R(8) * Rational(k, 8) - R(4));
  EXPECT_EQ(beta(deterministic_vertices()[0], 0, 0, 0), R(2));
}

TEST(Beta, MatchesInnerProductRoute) {
  BoxSampler s(21);
  for (int k = 0; k < 30; ++k) {
    const Box b = s.ns_box();
    for (int r = 0; r < 2; ++r)
      for (int ss = 0; ss < 2; ++ss)
        for (int t = 0; t < 2; ++t) ASSERT_EQ(beta(b, r, ss, t), beta_by_inner_product(b, r, ss, t));
  }
}

TEST(BetaTable, PrBox) {
  const auto tab = beta_table(pr_box(0, 0, 0));
  EXPECT_EQ(tab.at(0, 0, 0), R(4));
  EXPECT_EQ(tab.at(0, 0, 1), R(-4));
  int zeros = 0;
  for (const auto& v : tab.values) zeros += v.value.is_zero();
  EXPECT_EQ(zeros, 6);
  EXPECT_FALSE(tab.local);
}

TEST(BetaTable, KSitsOnTheFacet) {
  const auto tab = beta_table(b_alpha(R(3, 4)));
  EXPECT_EQ(tab.at(0, 0, 0), R(2));
  EXPECT_TRUE(tab.local);
}

TEST(BetaTable, VertexValues) {
  for (const auto& d : deterministic_vertices()) {
    const auto tab = beta_table(d);
    EXPECT_TRUE(tab.local);
    for (const auto& v : tab.values) EXPECT_TRUE(v.value == R(2) || v.value == R(-2));
  }
  for (int r = 0; r < 2; ++r)
    for (int s = 0; s < 2; ++s)
      for (int t = 0; t < 2; ++t)
        for (const auto& v : beta_table(pr_box(r, s, t)).values)
          EXPECT_TRUE(v.value == R(4) || v.value == R(0) || v.value == R(-4));
}

TEST(BetaTable, BoundedByFourOnNsBoxes) {
  BoxSampler s(22);
  for (int k = 0; k < 100; ++k)
    for (const auto& v : beta_table(s.ns_box()).values) {
      EXPECT_LE(v.value, R(4));
      EXPECT_GE(v.value, R(-4));
    }
}

TEST(Beta, LinearUnderMixing) {
  BoxSampler s(23);
  for (int k = 0; k < 50; ++k) {
    const Box a = s.ns_box(), b = s.ns_box();
    const Rational p = s.unit();
    const Box m = mix(p, a, b);
    for (int r = 0; r < 2; ++r)
      for (int ss = 0; ss < 2; ++ss)
        for (int t = 0; t < 2; ++t)
          ASSERT_EQ(beta(m, r, ss, t), p * beta(a, r, ss, t) + (R(1) - p) * beta(b, r, ss, t));
  }
}

TEST(MaxBeta, TiesGoToSmallestTriple) {
  const auto best = max_beta(deterministic_vertices()[0]);
  EXPECT_EQ(best.value, R(2));
  EXPECT_EQ(best.r * 4 + best.s * 2 + best.t, 0);
  const auto pr = max_beta(pr_box(1, 0, 1));
  EXPECT_EQ(pr.value, R(4));
  EXPECT_EQ(pr.r * 4 + pr.s * 2 + pr.t, 5);
}

}  // namespace
