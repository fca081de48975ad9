#include "boxcert/box.hpp"

#include "boxcert/box_json.hpp"
#include "boxcert/sampling.hpp"

#include "printers.hpp"

#include <gtest/gtest.h>

using namespace boxcert;

namespace {

Rational R(long n, long d = 1) { return Rational(n, d); }

Box signalling_y_to_alice() {
  // P(a,b|x,y) = [a = y][b = 0]
  std::vector<Rational> p(16);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) p[static_cast<std::size_t>((x * 2 + y) * 4 + y * 2 + 0)] = 1;
  return make_box(Shape::binary(2), p);
}

// Alice's marginal computed straight from the table, per (x, y).
Rational alice_marginal(const Box& b, int a, int x, int y) {
  Rational s;
  for (int bb = 0; bb < 2; ++bb) {
    const int o[] = {a, bb};
    const int i[] = {x, y};
    s += b.at(o, i);
  }
  return s;
}

TEST(MakeBox, PrBoxTableIsValid) {
  std::vector<Rational> p(16);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          if ((a ^ b) == (x & y)) p[static_cast<std::size_t>((x * 2 + y) * 4 + a * 2 + b)] = R(1, 2);
  EXPECT_EQ(make_box(Shape::binary(2), p), pr_box(0, 0, 0));
}

TEST(MakeBox, UniformIsValid) {
  const Box u = make_box(Shape::binary(2), std::vector<Rational>(16, R(1, 4)));
  EXPECT_EQ(u, uniform_box(Shape::binary(2)));
}

TEST(MakeBox, RejectsBadNormalization) {
  auto p = uniform_box(Shape::binary(2)).probs();
  p[0] = R(3, 4);  // (a=b=0 | x=y=0)
  p[1] = R(1, 2);  // (a=0,b=1 | x=y=0)
  p[2] = 0;
  p[3] = 0;
  try {
    make_box(Shape::binary(2), p);
    FAIL() << "expected NotNormalized";
  } catch (const NotNormalized& e) {
    EXPECT_EQ(e.actual_sum(), R(5, 4));
    EXPECT_EQ(e.input_tuple(), (Tuple{0, 0}));
  }
}

TEST(MakeBox, RejectsNegativeAndMisshapen) {
  auto p = uniform_box(Shape::binary(2)).probs();
  p[0] = R(-1, 4);
  p[1] = R(3, 4);
  EXPECT_THROW(make_box(Shape::binary(2), p), NegativeEntry);
  EXPECT_THROW(make_box(Shape::binary(2), std::vector<Rational>(15, R(1, 4))), ShapeMismatch);
}

TEST(MakeBox, NonBinaryArities) {
  const Shape sh{{3, 1}, {2, 3}};
  const Box u = uniform_box(sh);
  EXPECT_EQ(u.probs().size(), 18u);
  EXPECT_EQ(u[0], R(1, 6));
  EXPECT_TRUE(is_fully_ns(u).fully_ns);
}

TEST(PrBox, EntriesFollowParityRule) {
  const int o00[] = {0, 0}, o01[] = {0, 1}, in00[] = {0, 0};
  EXPECT_EQ(pr_box(0, 0, 0).at(o00, in00), R(1, 2));
  EXPECT_EQ(pr_box(0, 0, 1).at(o00, in00), R(0));
  EXPECT_EQ(pr_box(0, 0, 1).at(o01, in00), R(1, 2));
}

TEST(PrBox, AllEightDistinctAndFullyNs) {
  std::vector<Box> all;
  for (int r = 0; r < 2; ++r)
    for (int s = 0; s < 2; ++s)
      for (int t = 0; t < 2; ++t) all.push_back(pr_box(r, s, t));
  for (std::size_t i = 0; i < all.size(); ++i) {
    EXPECT_TRUE(is_fully_ns(all[i]).fully_ns);
    for (std::size_t j = i + 1; j < all.size(); ++j) EXPECT_NE(all[i], all[j]);
  }
}

TEST(DeterministicVertices, SixteenDistinctProductStrategies) {
  const auto v = deterministic_vertices();
  ASSERT_EQ(v.size(), 16u);
  for (std::size_t i = 0; i < v.size(); ++i) {
    EXPECT_TRUE(is_fully_ns(v[i]).fully_ns);
    for (std::size_t j = i + 1; j < v.size(); ++j) EXPECT_NE(v[i], v[j]);
  }
  // f == 0, g == 0 is the first one: P(0,0|x,y) = 1.
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      const int o[] = {0, 0};
      const int i[] = {x, y};
      EXPECT_EQ(v[0].at(o, i), R(1));
    }
  EXPECT_EQ(ns_vertex_names().size(), 24u);
  EXPECT_EQ(ns_vertex_names()[0], "D[a=0,b=0]");
  EXPECT_EQ(ns_vertex_names()[16], "B000");
}

TEST(Mix, ProducesKAndIdentity) {
  const Box B = pr_box(0, 0, 0), Bt = pr_box(0, 0, 1);
  EXPECT_EQ(mix(R(3, 4), B, Bt), b_alpha(R(3, 4)));
  EXPECT_EQ(mix(R(1), B, Bt), B);
  const int o[] = {0, 0}, i[] = {0, 0};
  EXPECT_EQ(mix(R(7, 8), B, Bt).at(o, i), R(7, 16));
  EXPECT_THROW(mix(R(9, 8), B, Bt), WeightOutOfRange);
  EXPECT_THROW(mix(R(1, 2), B, uniform_box(Shape::binary(1))), ShapeMismatch);
}

TEST(Mix, EntrywiseFormulaOnRandomInputs) {
  BoxSampler s(11);
  for (int k = 0; k < 50; ++k) {
    const Box a = s.ns_box(), b = s.ns_box();
    const Rational p = s.unit();
    const Box m = mix(p, a, b);
    for (std::size_t e = 0; e < 16; ++e) ASSERT_EQ(m[e], p * a[e] + (R(1) - p) * b[e]);
  }
}

TEST(Mix, ConnectivityOfAdmixtures) {
  // L = qA + (1-q)X and p < q give X' = ((q-p)A + (1-q)X)/(1-p) with L = pA + (1-p)X'.
  BoxSampler s(12);
  for (int k = 0; k < 50; ++k) {
    const Box a = s.ns_box(), x = s.ns_box();
    Rational q = s.unit(), p = s.unit();
    if (p > q) std::swap(p, q);
    if (p == q) continue;
    const Box l = mix(q, a, x);
    const Box xp = mix((q - p) / (R(1) - p), a, x);
    EXPECT_EQ(mix(p, a, xp), l);
  }
}

TEST(BAlpha, Endpoints) {
  EXPECT_EQ(b_alpha(R(1)), pr_box(0, 0, 0));
  EXPECT_EQ(b_alpha(R(3, 4)), mix(R(3, 4), pr_box(0, 0, 0), pr_box(0, 0, 1)));
  EXPECT_THROW(b_alpha(R(-1, 2)), WeightOutOfRange);
}

TEST(Tensor, UniformTimesUniform) {
  EXPECT_EQ(tensor(uniform_box(Shape::binary(2)), uniform_box(Shape::binary(2))), uniform_box(Shape::binary(4)));
}

TEST(Tensor, MarginalRecoversFactors) {
  BoxSampler s(13);
  for (int k = 0; k < 20; ++k) {
    const Box a = s.ns_box(), b = s.ns_box();
    const Box t = tensor(a, b);
    EXPECT_TRUE(is_fully_ns(t).fully_ns);
    EXPECT_EQ(marginal(t, {0, 1}), a);
    EXPECT_EQ(marginal(t, {2, 3}), b);
  }
  const Box ba = b_alpha(R(7, 8));
  EXPECT_EQ(marginal(tensor(ba, ba), {0, 1}), ba);
}

TEST(PermuteParties, SwapTwice) {
  BoxSampler s(14);
  const Box t = tensor(s.ns_box(), s.ns_box());
  const int order[] = {0, 2, 1, 3};
  const Box p = permute_parties(t, order);
  EXPECT_EQ(permute_parties(p, order), t);
  EXPECT_EQ(marginal(p, {0, 2}), marginal(t, {0, 1}));
}

TEST(NsCut, PrBoxIsNsAcrossAB) {
  EXPECT_TRUE(is_ns_in_cut(pr_box(0, 0, 0), Cut{{0}, {1}}).fully_ns);
}

TEST(NsCut, DetectsSignalling) {
  const Box sig = signalling_y_to_alice();
  // Cross-check against the raw table: Alice's marginal moves with y.
  EXPECT_NE(alice_marginal(sig, 0, 0, 0), alice_marginal(sig, 0, 0, 1));
  const auto rep = is_ns_in_cut(sig, Cut{{0}, {1}});
  EXPECT_FALSE(rep.fully_ns);
  ASSERT_FALSE(rep.violations.empty());
  for (const auto& v : rep.violations) EXPECT_EQ(v.direction, SignalDirection::RightToLeft);
  EXPECT_THROW(is_ns_in_cut(sig, Cut{{0}, {0, 1}}), std::invalid_argument);
  EXPECT_THROW(is_ns_in_cut(sig, Cut{{}, {0, 1}}), std::invalid_argument);
}

TEST(NsCut, ProductBoxesNeverSignal) {
  BoxSampler s(15);
  for (int k = 0; k < 10; ++k) {
    const Box a = marginal(s.ns_box(), {0}), b = marginal(s.ns_box(), {1});
    const Box p = tensor(a, b);
    EXPECT_TRUE(is_ns_in_cut(p, Cut{{0}, {1}}).fully_ns);
    EXPECT_TRUE(is_ns_in_cut(p, Cut{{1}, {0}}).fully_ns);
  }
}

TEST(FullyNs, ReportNamesTheCut) {
  const auto rep = is_fully_ns(signalling_y_to_alice());
  EXPECT_FALSE(rep.fully_ns);
  ASSERT_FALSE(rep.violations.empty());
  EXPECT_EQ(rep.violations.front().cut.str(), "0|1");
  EXPECT_EQ(rep.violations.front().discrepancy.sign() != 0, true);
}

TEST(FullyNs, FourPartyPrTensor) {
  EXPECT_TRUE(is_fully_ns(tensor(pr_box(0, 0, 0), pr_box(0, 0, 0))).fully_ns);
}

TEST(FullyNs, ImpliesEveryCut) {
  BoxSampler s(16);
  for (int k = 0; k < 10; ++k) {
    const int order[] = {0, 2, 1, 3};
    const Box b = permute_parties(tensor(s.ns_box(), s.ns_box()), order);
    ASSERT_TRUE(is_fully_ns(b).fully_ns);
    for (int mask = 1; mask < 15; ++mask) {
      Cut c;
      for (int p = 0; p < 4; ++p) ((mask >> p) & 1 ? c.left : c.right).insert(p);
      EXPECT_TRUE(is_ns_in_cut(b, c).fully_ns);
    }
  }
}

TEST(Marginal, PrBoxSinglePartyIsUniform) {
  EXPECT_EQ(marginal(pr_box(0, 0, 0), {0}), uniform_box(Shape::binary(1)));
}

TEST(Marginal, SignallingBoxIsRejected) {
  EXPECT_THROW(marginal(signalling_y_to_alice(), {0}), MarginalIllDefined);
  EXPECT_THROW(marginal(pr_box(0, 0, 0), {}), MarginalIllDefined);
}

TEST(BoxJson, RoundTripsCanonically) {
  BoxSampler s(17);
  for (int k = 0; k < 5; ++k) {
    const Box b = tensor(s.ns_box(), s.ns_box());
    const auto j = box_to_json(b);
    EXPECT_EQ(box_from_json(nlohmann::json::parse(j.dump())), b);
    EXPECT_EQ(box_to_json(box_from_json(nlohmann::json::parse(j.dump()))).dump(), j.dump());
  }
}

TEST(BoxJson, RejectsInvalidTables) {
  auto j = nlohmann::json::parse(box_to_json(pr_box(0, 0, 0)).dump());
  j["probs"][0] = "3/4";
  try {
    box_from_json(j);
    FAIL();
  } catch (const BoxFormatError& e) {
    EXPECT_EQ(e.field(), "probs");
  }
  j["probs"][0] = "0.5";
  try {
    box_from_json(j);
    FAIL();
  } catch (const BoxFormatError& e) {
    EXPECT_EQ(e.field(), "probs[0]");
  }
  j["probs"][0] = "-1/2";
  j["probs"][1] = "1";
  EXPECT_THROW(box_from_json(j), BoxFormatError);
  j = nlohmann::json::parse(box_to_json(pr_box(0, 0, 0)).dump());
  j["inputs"] = {2};
  EXPECT_THROW(box_from_json(j), BoxFormatError);
}

}  // namespace
