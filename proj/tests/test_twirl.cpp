#include "boxcert/twirl.hpp"

#include "boxcert/chsh.hpp"
#include "boxcert/sampling.hpp"

#include "printers.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace boxcert;

namespace {

Rational R(long n, long d = 1) { return Rational(n, d); }

Box flip_both_outputs(const Box& b) {
  std::vector<Rational> out(16);
  for (std::size_t xy = 0; xy < 4; ++xy)
    for (std::size_t ab = 0; ab < 4; ++ab) out[xy * 4 + (ab ^ 3)] = b[xy * 4 + ab];
  return Box(b.shape(), out);
}

TEST(Relabeling, ZeroFlipsIsIdentity) {
  BoxSampler s(31);
  const Box b = s.ns_box();
  for (int r = 0; r < 2; ++r)
    for (int ss = 0; ss < 2; ++ss) EXPECT_EQ(apply_relabeling(RelabelingOp{0, 0, 0, r, ss}, b), b);
}

TEST(Relabeling, TwirlMembersFixTheirPrPair) {
  for (int r = 0; r < 2; ++r)
    for (int s = 0; s < 2; ++s)
      for (const auto& op : TwirlChannel{r, s}.members()) {
        EXPECT_EQ(apply_relabeling(op, pr_box(r, s, 0)), pr_box(r, s, 0));
        EXPECT_EQ(apply_relabeling(op, pr_box(r, s, 1)), pr_box(r, s, 1));
      }
}

TEST(Relabeling, PermutesDeterministicVertices) {
  const auto v = deterministic_vertices();
  for (const auto& op : all_relabelings()) {
    for (const auto& d : v) {
      const Box img = apply_relabeling(op, d);
      EXPECT_NE(std::find(v.begin(), v.end(), img), v.end());
    }
  }
  EXPECT_NE(std::find(v.begin(), v.end(), apply_relabeling(RelabelingOp{1, 0, 0, 0, 0}, v[5])), v.end());
}

TEST(Relabeling, SquareIsIdentityOrJointOutputFlip) {
  BoxSampler s(32);
  const Box b = s.ns_box();
  for (const auto& op : all_relabelings()) {
    const Box twice = apply_relabeling(op, apply_relabeling(op, b));
    if (op.delta & op.gamma) EXPECT_EQ(twice, flip_both_outputs(b));
    else EXPECT_EQ(twice, b);
  }
  EXPECT_EQ(all_relabelings().size(), 32u);
}

TEST(Twirl, FixesLineEndpoints) {
  for (int r = 0; r < 2; ++r)
    for (int s = 0; s < 2; ++s)
      for (int t = 0; t < 2; ++t) EXPECT_EQ(twirl(pr_box(r, s, t), r, s), pr_box(r, s, t));
}

TEST(Twirl, UniformGoesToLineMidpoint) {
  const Box u = uniform_box(Shape::binary(2));
  for (int r = 0; r < 2; ++r)
    for (int s = 0; s < 2; ++s) {
      EXPECT_EQ(twirl(u, r, s), mix(R(1, 2), pr_box(r, s, 0), pr_box(r, s, 1)));
      EXPECT_EQ(line_decomposition(twirl(u, r, s), r, s), R(1, 2));
    }
}

TEST(Twirl, DeterministicVertexGoesToK) {
  EXPECT_EQ(twirl(deterministic_vertices()[0], 0, 0), b_alpha(R(3, 4)));
}

TEST(LineDecomposition, Cases) {
  EXPECT_EQ(line_decomposition(b_alpha(R(7, 8)), 0, 0), R(7, 8));
  EXPECT_EQ(line_decomposition(pr_box(0, 0, 1), 0, 0), R(0));
  EXPECT_FALSE(line_decomposition(pr_box(0, 1, 0), 0, 0).has_value());
  EXPECT_FALSE(line_decomposition(deterministic_vertices()[0], 0, 0).has_value());
  EXPECT_EQ(line_decomposition(uniform_box(Shape::binary(2)), 0, 0), R(1, 2));
}

TEST(TwirlProperty, LandsOnLineAndPreservesBeta) {
  BoxSampler s(33);
  for (int k = 0; k < 100; ++k) {
    const Box p = k % 2 ? s.ns_box() : s.sparse_ns_box();
    for (int r = 0; r < 2; ++r)
      for (int ss = 0; ss < 2; ++ss) {
        const Box tw = twirl(p, r, ss);
        ASSERT_TRUE(line_decomposition(tw, r, ss).has_value());
        for (int t = 0; t < 2; ++t) ASSERT_EQ(beta(tw, r, ss, t), beta(p, r, ss, t));
      }
  }
}

TEST(TwirlProperty, Idempotent) {
  BoxSampler s(34);
  for (int k = 0; k < 30; ++k) {
    const Box p = s.ns_box();
    for (int r = 0; r < 2; ++r)
      for (int ss = 0; ss < 2; ++ss) EXPECT_EQ(twirl(twirl(p, r, ss), r, ss), twirl(p, r, ss));
  }
}

TEST(TwirlProperty, PreservesLocalityAndNs) {
  for (const auto& v : deterministic_vertices())
    for (int r = 0; r < 2; ++r)
      for (int s = 0; s < 2; ++s) EXPECT_TRUE(beta_table(twirl(v, r, s)).local);
  BoxSampler s(35);
  for (int k = 0; k < 30; ++k) {
    const Box p = s.ns_box();
    for (int r = 0; r < 2; ++r)
      for (int ss = 0; ss < 2; ++ss) EXPECT_TRUE(is_fully_ns(twirl(p, r, ss)).fully_ns);
  }
}

TEST(Twirl, RejectsWrongShape) {
  EXPECT_THROW(twirl(uniform_box(Shape::binary(3)), 0, 0), WrongShape);
}

}  // namespace
