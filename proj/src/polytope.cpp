#include "boxcert/polytope.hpp"

#include "boxcert/chsh.hpp"
#include "boxcert/sampling.hpp"

namespace boxcert {

namespace {

LocalPolytope make_two_party() {
  LocalPolytope lp;
  lp.vertices = deterministic_vertices();
  const auto names = ns_vertex_names();
  lp.names.assign(names.begin(), names.begin() + 16);
  return lp;
}

LocalPolytope make_four_party() {
  const auto v = ns_vertices();
  const auto names = ns_vertex_names();
  // tensor() yields party order (A, A', B, B'); boxes are stored as (A, B, A', B').
  const int order[] = {0, 2, 1, 3};
  LocalPolytope lp;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) {
      lp.vertices.push_back(permute_parties(tensor(v[i], v[j]), order));
      lp.names.push_back(names[i] + "*" + names[j]);
    }
  return lp;
}

lp::LinearProgram decomposition_lp(const Box& box, const std::vector<Box>& generators) {
  lp::LinearProgram prog;
  for (std::size_t k = 0; k < generators.size(); ++k) prog.add_variable("w" + std::to_string(k));
  for (std::size_t e = 0; e < box.probs().size(); ++e) {
    std::vector<lp::Term> terms;
    for (std::size_t k = 0; k < generators.size(); ++k)
      if (!generators[k][e].is_zero()) terms.push_back({k, generators[k][e]});
    prog.add_constraint(std::move(terms), lp::Relation::Equal, box[e], "entry" + std::to_string(e));
  }
  prog.set_objective(lp::Sense::Feasibility);
  return prog;
}

}  // namespace

const LocalPolytope& local_polytope(const Shape& shape) {
  if (shape == Shape::binary(2)) {
    static const LocalPolytope two = make_two_party();
    return two;
  }
  if (shape == Shape::binary(4)) {
    static const LocalPolytope four = make_four_party();
    return four;
  }
  throw UnsupportedShape("locality is only decided for 2x2 boxes and 4-party binary boxes (AA'|BB')");
}

std::vector<std::size_t> add_box_variables(lp::LinearProgram& lp, const Shape& shape, const std::string& prefix) {
  std::vector<std::size_t> vars;
  vars.reserve(shape.entries());
  for (std::size_t e = 0; e < shape.entries(); ++e) vars.push_back(lp.add_variable(prefix + std::to_string(e)));
  return vars;
}

void add_ns_rows(lp::LinearProgram& lp, const Shape& shape, const std::vector<std::size_t>& vars) {
  const std::size_t n = shape.parties();
  const std::size_t na = shape.output_tuples();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t x = 0; x < shape.input_tuples(); ++x) {
      auto xt = tuple_at(x, shape.inputs);
      if (xt[k] == 0) continue;
      auto x0 = xt;
      x0[k] = 0;
      const std::size_t xr = tuple_index(x0, shape.inputs);
      // One row per assignment of the other parties' outputs.
      for (std::size_t a = 0; a < na; ++a) {
        auto at = tuple_at(a, shape.outputs);
        if (at[k] != 0) continue;
        std::vector<lp::Term> terms;
        for (int ak = 0; ak < shape.outputs[k]; ++ak) {
          at[k] = ak;
          const std::size_t ai = tuple_index(at, shape.outputs);
          terms.push_back({vars[x * na + ai], Rational(1)});
          terms.push_back({vars[xr * na + ai], Rational(-1)});
        }
        lp.add_constraint(std::move(terms), lp::Relation::Equal, Rational(0),
                          "ns" + std::to_string(k) + "_" + std::to_string(x) + "_" + std::to_string(a));
      }
    }
  }
}

lp::LinearProgram membership_lp(const Box& box) {
  return decomposition_lp(box, local_polytope(box.shape()).vertices);
}

MembershipCertificate lr_membership(const Box& box) {
  const auto& poly = local_polytope(box.shape());
  MembershipCertificate cert;
  cert.lp = membership_lp(box);
  cert.outcome = lp::solve(cert.lp);
  cert.member = cert.outcome.status == lp::Status::Optimal;
  if (cert.member) {
    for (std::size_t k = 0; k < poly.vertices.size(); ++k)
      if (!cert.outcome.witness[k].is_zero()) cert.weights[poly.names[k]] = cert.outcome.witness[k];
  }
  return cert;
}

bool reconstructs(const Box& box, const std::map<std::string, Rational>& weights) {
  const auto& poly = local_polytope(box.shape());
  std::vector<Rational> acc(box.probs().size());
  Rational total;
  for (const auto& [name, w] : weights) {
    if (w.sign() < 0) return false;
    std::size_t k = 0;
    while (k < poly.names.size() && poly.names[k] != name) ++k;
    if (k == poly.names.size()) return false;
    total += w;
    for (std::size_t e = 0; e < acc.size(); ++e) acc[e] += w * poly.vertices[k][e];
  }
  return total == Rational(1) && acc == box.probs();
}

lp::LinearProgram anti_robustness_lp(const Box& box) {
  const auto& poly = local_polytope(box.shape());
  const Shape& sh = box.shape();
  lp::LinearProgram prog;
  const std::size_t q = prog.add_variable("q", Rational(0), Rational(1));
  std::vector<std::size_t> lambda;
  for (std::size_t k = 0; k < poly.vertices.size(); ++k) lambda.push_back(prog.add_variable("l" + std::to_string(k)));
  const auto z = add_box_variables(prog, sh, "z");

  // q*A + Z = sum_k lambda_k v_k, entrywise.
  for (std::size_t e = 0; e < sh.entries(); ++e) {
    std::vector<lp::Term> terms;
    if (!box[e].is_zero()) terms.push_back({q, box[e]});
    terms.push_back({z[e], Rational(1)});
    for (std::size_t k = 0; k < poly.vertices.size(); ++k)
      if (!poly.vertices[k][e].is_zero()) terms.push_back({lambda[k], -poly.vertices[k][e]});
    prog.add_constraint(std::move(terms), lp::Relation::Equal, Rational(0), "mix" + std::to_string(e));
  }
  // Each input block of Z carries mass 1-q.
  const std::size_t na = sh.output_tuples();
  for (std::size_t x = 0; x < sh.input_tuples(); ++x) {
    std::vector<lp::Term> terms{{q, Rational(1)}};
    for (std::size_t a = 0; a < na; ++a) terms.push_back({z[x * na + a], Rational(1)});
    prog.add_constraint(std::move(terms), lp::Relation::Equal, Rational(1), "norm" + std::to_string(x));
  }
  add_ns_rows(prog, sh, z);
  prog.set_objective(lp::Sense::Maximize, {{q, Rational(1)}});
  return prog;
}

AntiRobustnessResult anti_robustness(const Box& box) {
  const auto& poly = local_polytope(box.shape());
  if (!is_fully_ns(box).fully_ns) throw PreconditionNotMet("anti-robustness needs a fully non-signalling box");
  auto prog = anti_robustness_lp(box);
  auto out = lp::solve(prog);
  if (out.status != lp::Status::Optimal) {
    // q = 0 with Z = any local box is always feasible, so this is a solver fault.
    throw std::logic_error("anti-robustness LP did not reach an optimum");
  }
  const Rational q = out.witness[0];
  const std::size_t nv = poly.vertices.size();
  const std::size_t ne = box.shape().entries();

  std::vector<Rational> lambda(out.witness.begin() + 1, out.witness.begin() + 1 + static_cast<std::ptrdiff_t>(nv));
  Box local = convex_combination(lambda, poly.vertices);
  MembershipCertificate lc;
  lc.member = true;
  for (std::size_t k = 0; k < nv; ++k)
    if (!lambda[k].is_zero()) lc.weights[poly.names[k]] = lambda[k];
  lc.lp = membership_lp(local);
  lc.outcome.status = lp::Status::Optimal;
  lc.outcome.witness = lambda;

  Box admixture = uniform_box(box.shape());
  if (q < Rational(1)) {
    std::vector<Rational> x(ne);
    const Rational scale = Rational(1) / (Rational(1) - q);
    for (std::size_t e = 0; e < ne; ++e) x[e] = out.witness[1 + nv + e] * scale;
    admixture = Box(box.shape(), std::move(x));
  }
  return AntiRobustnessResult{q, std::move(local), std::move(admixture), std::move(lc), std::move(prog), std::move(out)};
}

Rational anti_robustness_closed_form(const Box& box) {
  const auto best = max_beta(box);
  if (best.value < Rational(2)) throw PreconditionNotMet("closed form needs max beta >= 2, got " + best.value.str());
  return Rational(6) / (best.value + Rational(4));
}

RayPoint ray_intersection(int r, int s, int t, const Box& vertex, std::size_t vertex_index) {
  const Rational b = beta(vertex, r, s, t);
  if (b == Rational(4)) throw DegenerateRay("vertex has beta 4, the ray is degenerate");
  if (b > Rational(2)) throw PreconditionNotMet("vertex lies strictly inside the half-space beta > 2");
  const Rational p = (Rational(2) - b) / (Rational(4) - b);
  return RayPoint{r, s, t, vertex_index, p, mix(p, pr_box(r, s, t), vertex)};
}

std::vector<RayPoint> ray_points(int r, int s, int t) {
  const auto v = ns_vertices();
  const std::size_t apex = 16 + static_cast<std::size_t>(4 * r + 2 * s + t);
  std::vector<RayPoint> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (i != apex) out.push_back(ray_intersection(r, s, t, v[i], i));
  return out;
}

HyperplaneReport hyperplane_locality_check(int r, int s, int t) {
  HyperplaneReport rep{r, s, t, {}, true};
  for (auto& ray : ray_points(r, s, t)) {
    HyperplanePointCheck c{std::move(ray), {}, false, false, {}, false};
    const auto tab = beta_table(c.ray.point);
    for (std::size_t k = 0; k < 8; ++k) c.betas[k] = tab.values[k].value;
    c.beta_on_plane = tab.at(r, s, t) == Rational(2);
    c.chsh_local = tab.local;
    c.membership = lr_membership(c.ray.point);
    c.passed = c.beta_on_plane && c.chsh_local && c.membership.member &&
               reconstructs(c.ray.point, c.membership.weights);
    rep.all_passed = rep.all_passed && c.passed;
    rep.points.push_back(std::move(c));
  }
  return rep;
}

Decomposition decompose_over_rays(const Box& box, int r, int s, int t) {
  std::vector<Box> gens{pr_box(r, s, t)};
  for (auto& rp : ray_points(r, s, t)) gens.push_back(std::move(rp.point));
  const auto out = lp::solve(decomposition_lp(box, gens));
  Decomposition d;
  d.found = out.status == lp::Status::Optimal;
  if (d.found) {
    d.weights = out.witness;
    d.found = convex_combination(d.weights, gens) == box;
  }
  return d;
}

HalfspaceReport halfspace_body_equality_check(int r, int s, int t, std::size_t samples, std::uint64_t seed) {
  HalfspaceReport rep;
  rep.r = r;
  rep.s = s;
  rep.t = t;
  BoxSampler sampler(seed);
  std::vector<Box> gens{pr_box(r, s, t)};
  for (auto& rp : ray_points(r, s, t)) gens.push_back(std::move(rp.point));

  for (std::size_t i = 0; i < samples; ++i) {
    const Box x = convex_combination(sampler.composition(gens.size()), gens);
    ++rep.inner_samples;
    if (beta(x, r, s, t) >= Rational(2) && is_fully_ns(x).fully_ns) ++rep.inner_passed;
    else rep.failures.push_back("inner sample " + std::to_string(i));
  }
  for (std::size_t i = 0; i < samples; ++i) {
    Box x = sampler.sparse_ns_box();
    while (beta(x, r, s, t) < Rational(2)) x = sampler.sparse_ns_box();
    ++rep.outer_samples;
    if (decompose_over_rays(x, r, s, t).found) ++rep.outer_passed;
    else rep.failures.push_back("outer sample " + std::to_string(i));
  }
  return rep;
}

}  // namespace boxcert
