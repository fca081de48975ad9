#include "boxcert/broadcast.hpp"

#include "boxcert/polytope.hpp"


namespace boxcert {

using lp::Relation;
using lp::Term;

BroadcastInstance BroadcastInstance::at(const Rational& alpha) {
  if (alpha < Rational(3, 4) || alpha > Rational(1)) throw RangeError("alpha " + alpha.str() + " outside [3/4, 1]");
  return BroadcastInstance{alpha, Rational(3) / (Rational(4) * alpha)};
}

JointDist c1c2_projection(const Box& box4) {
  if (!box4.is_binary(4)) throw WrongShape("projection needs a 4-party binary box (A, B, A', B')");
  JointDist d;
  for (std::size_t x = 0; x < 16; ++x) {
    const auto in = tuple_at(x, box4.shape().inputs);
    for (std::size_t a = 0; a < 16; ++a) {
      const Rational& p = box4[x * 16 + a];
      if (p.is_zero()) continue;
      const auto out = tuple_at(a, box4.shape().outputs);
      const bool first = (out[0] ^ out[1]) == (in[0] & in[1]);
      const bool second = (out[2] ^ out[3]) == (in[2] & in[3]);
      Rational& cell = first ? (second ? d.p11 : d.p12) : (second ? d.p21 : d.p22);
      cell += p;
    }
  }
  const Rational inv(1, 16);
  d.p11 *= inv;
  d.p12 *= inv;
  d.p21 *= inv;
  d.p22 *= inv;
  return d;
}

bool s1_check(const Rational& p11, const Rational& p12) {
  return Rational(0) <= Rational(6) * p11 - Rational(2) * p12 &&
         Rational(2) * p11 - Rational(6) * p12 <= Rational(0) &&
         Rational(0) <= Rational(2) * p11 + Rational(10) * p12 - Rational(2) &&
         Rational(6) * p11 + Rational(14) * p12 - Rational(6) <= Rational(0);
}

std::pair<Rational, Rational> s2_point(const BroadcastInstance& inst, const Rational& t11) {
  if (t11 < Rational(0) || t11 > inst.alpha) throw RangeError("t11 " + t11.str() + " outside [0, alpha]");
  const Rational x = inst.p_alpha * t11;
  return {x, Rational(3, 4) - x};
}

lp::LinearProgram projection_lp(const BroadcastInstance& inst) {
  lp::LinearProgram prog;
  auto dist = [&](const char* tag) {
    std::array<std::size_t, 4> v;
    const char* cells[] = {"11", "12", "21", "22"};
    for (std::size_t k = 0; k < 4; ++k) v[k] = prog.add_variable(std::string(tag) + cells[k]);
    return v;
  };
  const auto l = dist("L");  // p'
  const auto b = dist("B");  // p-tilde
  const auto x = dist("X");  // p''
  const Rational one(1);
  for (const auto* d : {&l, &b, &x})
    prog.add_constraint({{(*d)[0], one}, {(*d)[1], one}, {(*d)[2], one}, {(*d)[3], one}}, Relation::Equal, one, "normalization");
  prog.add_constraint({{l[1], one}, {l[2], -one}}, Relation::Equal, 0, "L symmetric");
  prog.add_constraint({{b[1], one}, {b[2], -one}}, Relation::Equal, 0, "B symmetric");
  prog.add_constraint({{b[0], one}, {b[2], one}}, Relation::Equal, inst.alpha, "copy marginal");
  // Local region for L.
  prog.add_constraint({{l[0], 6}, {l[1], -2}}, Relation::GreaterEq, 0, "S1 first");
  prog.add_constraint({{l[0], 2}, {l[1], -6}}, Relation::LessEq, 0, "S1 second");
  prog.add_constraint({{l[0], 2}, {l[1], 10}}, Relation::GreaterEq, 2, "S1 third");
  prog.add_constraint({{l[0], 6}, {l[1], 14}}, Relation::LessEq, 6, "S1 fourth");
  // L - p_alpha*B = (1 - p_alpha) X.
  for (std::size_t k = 0; k < 4; ++k) {
    std::vector<Term> t{{l[k], one}, {b[k], -inst.p_alpha}};
    if (inst.p_alpha != one) t.push_back({x[k], inst.p_alpha - one});
    prog.add_constraint(std::move(t), Relation::Equal, 0, "mixture");
  }
  prog.set_objective(lp::Sense::Feasibility);
  return prog;
}

FeasibilityVerdict projection_feasibility(const BroadcastInstance& inst) {
  FeasibilityVerdict v;
  v.alpha = inst.alpha;
  v.method = BroadcastMethod::Projection;
  v.lp = projection_lp(inst);
  v.outcome = lp::solve(v.lp);
  v.feasible = v.outcome.status == lp::Status::Optimal;
  if (v.feasible) {
    const auto& w = v.outcome.witness;
    v.local_image = JointDist{w[0], w[1], w[2], w[3]};
    v.copy_image = JointDist{w[4], w[5], w[6], w[7]};
    v.admixture_image = JointDist{w[8], w[9], w[10], w[11]};
  }
  return v;
}

namespace {

// Variable layout of the full oracle: 256 entries of B-hat, then 576 weights.
constexpr std::size_t kEntries = 256;

}  // namespace

lp::LinearProgram full_broadcast_lp(const BroadcastInstance& inst) {
  const Shape sh = Shape::binary(4);
  const auto& poly = local_polytope(sh);
  const Box target = b_alpha(inst.alpha);
  lp::LinearProgram prog;
  const auto bhat = add_box_variables(prog, sh, "b");
  std::vector<std::size_t> lambda;
  for (std::size_t k = 0; k < poly.vertices.size(); ++k) lambda.push_back(prog.add_variable("l" + std::to_string(k)));

  for (std::size_t x = 0; x < 16; ++x) {
    std::vector<Term> t;
    for (std::size_t a = 0; a < 16; ++a) t.push_back({bhat[x * 16 + a], Rational(1)});
    prog.add_constraint(std::move(t), Relation::Equal, 1, "b normalization " + std::to_string(x));
  }
  add_ns_rows(prog, sh, bhat);
  // Copy marginals at the other copy's input 00; NS makes the choice immaterial.
  for (int copy = 0; copy < 2; ++copy) {
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) {
            std::vector<Term> t;
            for (int a2 = 0; a2 < 2; ++a2)
              for (int b2 = 0; b2 < 2; ++b2) {
                const std::vector<int> in = copy == 0 ? std::vector<int>{x, y, 0, 0} : std::vector<int>{0, 0, x, y};
                const std::vector<int> out = copy == 0 ? std::vector<int>{a, b, a2, b2} : std::vector<int>{a2, b2, a, b};
                t.push_back({bhat[tuple_index(in, sh.inputs) * 16 + tuple_index(out, sh.outputs)], Rational(1)});
              }
            const int o[] = {a, b};
            const int i[] = {x, y};
            prog.add_constraint(std::move(t), Relation::Equal, target.at(o, i),
                                "copy" + std::to_string(copy) + " marginal");
          }
  }
  {
    std::vector<Term> t;
    for (std::size_t k : lambda) t.push_back({k, Rational(1)});
    prog.add_constraint(std::move(t), Relation::Equal, 1, "weights");
  }
  // L - p_alpha*B-hat >= 0 entrywise.
  for (std::size_t e = 0; e < kEntries; ++e) {
    std::vector<Term> t;
    for (std::size_t k = 0; k < poly.vertices.size(); ++k)
      if (!poly.vertices[k][e].is_zero()) t.push_back({lambda[k], poly.vertices[k][e]});
    t.push_back({bhat[e], -inst.p_alpha});
    prog.add_constraint(std::move(t), Relation::GreaterEq, 0, "admixture " + std::to_string(e));
  }
  prog.set_objective(lp::Sense::Feasibility);
  return prog;
}

FeasibilityVerdict full_broadcast_feasibility(const BroadcastInstance& inst) {
  const auto& poly = local_polytope(Shape::binary(4));
  FeasibilityVerdict v;
  v.alpha = inst.alpha;
  v.method = BroadcastMethod::Full;
  v.lp = full_broadcast_lp(inst);
  v.outcome = lp::solve(v.lp);
  v.feasible = v.outcome.status == lp::Status::Optimal;
  if (v.feasible) {
    const auto& w = v.outcome.witness;
    const Shape sh = Shape::binary(4);
    Box copy(sh, std::vector<Rational>(w.begin(), w.begin() + kEntries));
    std::vector<Rational> lambda(w.begin() + kEntries, w.end());
    Box local = convex_combination(lambda, poly.vertices);
    Box admixture = uniform_box(sh);
    if (inst.p_alpha != Rational(1)) {
      std::vector<Rational> x(kEntries);
      const Rational scale = Rational(1) / (Rational(1) - inst.p_alpha);
      for (std::size_t e = 0; e < kEntries; ++e) x[e] = (local[e] - inst.p_alpha * copy[e]) * scale;
      admixture = Box(sh, std::move(x));
    }
    v.local_box = std::move(local);
    v.copy_box = std::move(copy);
    v.admixture_box = std::move(admixture);
  }
  return v;
}

std::vector<ScanRow> broadcast_scan(const std::vector<Rational>& alphas, bool full) {
  std::vector<ScanRow> rows;
  for (const auto& a : alphas) {
    const auto inst = BroadcastInstance::at(a);
    ScanRow row{inst, projection_feasibility(inst), std::nullopt, anti_robustness(b_alpha(a))};
    if (full) row.full = full_broadcast_feasibility(inst);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace boxcert
