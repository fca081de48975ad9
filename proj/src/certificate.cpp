#include "boxcert/certificate.hpp"

#include "boxcert/box_json.hpp"
#include "boxcert/chsh.hpp"

namespace boxcert {

Json rationals_to_json(const std::vector<Rational>& v) {
  auto arr = Json::array();
  for (const auto& r : v) arr.push_back(r.str());
  return arr;
}

std::vector<Rational> rationals_from_json(const nlohmann::json& j) {
  std::vector<Rational> out;
  for (const auto& e : j) out.push_back(Rational::parse(e.get<std::string>()));
  return out;
}

namespace {

Json terms_to_json(const std::vector<lp::Term>& terms) {
  auto arr = Json::array();
  for (const auto& t : terms) arr.push_back(Json::array({t.var, t.coef.str()}));
  return arr;
}

std::vector<lp::Term> terms_from_json(const nlohmann::json& j) {
  std::vector<lp::Term> out;
  for (const auto& e : j) out.push_back({e.at(0).get<std::size_t>(), Rational::parse(e.at(1).get<std::string>())});
  return out;
}

Json optional_rational(const std::optional<Rational>& r) { return r ? Json(r->str()) : Json(nullptr); }

std::optional<Rational> optional_rational(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return Rational::parse(j.get<std::string>());
}

lp::Relation relation_from(const std::string& s) {
  if (s == "<=") return lp::Relation::LessEq;
  if (s == ">=") return lp::Relation::GreaterEq;
  if (s == "=") return lp::Relation::Equal;
  throw lp::MalformedLP("unknown relation '" + s + "'");
}

lp::Sense sense_from(const std::string& s) {
  if (s == "max") return lp::Sense::Maximize;
  if (s == "min") return lp::Sense::Minimize;
  if (s == "feasibility") return lp::Sense::Feasibility;
  throw lp::MalformedLP("unknown sense '" + s + "'");
}

lp::Status status_from(const std::string& s) {
  if (s == "optimal") return lp::Status::Optimal;
  if (s == "infeasible") return lp::Status::Infeasible;
  if (s == "unbounded") return lp::Status::Unbounded;
  throw std::invalid_argument("unknown status '" + s + "'");
}

Json weights_to_json(const std::map<std::string, Rational>& w) {
  Json j = Json::object();
  for (const auto& [name, v] : w) j[name] = v.str();
  return j;
}

std::map<std::string, Rational> weights_from_json(const nlohmann::json& j) {
  std::map<std::string, Rational> w;
  for (const auto& [name, v] : j.items()) w[name] = Rational::parse(v.get<std::string>());
  return w;
}

std::string rst_str(int r, int s, int t) { return std::to_string(r) + std::to_string(s) + std::to_string(t); }

const char* method_str(BroadcastMethod m) { return m == BroadcastMethod::Full ? "full" : "projection"; }

Json joint_to_json(const std::optional<JointDist>& d) {
  if (!d) return nullptr;
  return Json::array({d->p11.str(), d->p12.str(), d->p21.str(), d->p22.str()});
}

// The embedded LP, when present, must be exactly the one rebuilt from the
// certified object.
bool same_lp(const nlohmann::json& j, const lp::LinearProgram& rebuilt, VerifyResult& res, const std::string& what) {
  if (!j.contains("lp")) return true;
  if (nlohmann::json(lp_to_json(rebuilt)) != j["lp"]) {
    res.fail(what + ": embedded LP differs from the rebuilt LP");
    return false;
  }
  return true;
}

void verify_membership(const nlohmann::json& j, VerifyResult& res) {
  const Box box = box_from_json(j.at("box"));
  const auto prog = membership_lp(box);
  if (!same_lp(j, prog, res, "membership")) return;
  const bool member = j.at("member").get<bool>();
  if (member) {
    if (!reconstructs(box, weights_from_json(j.at("weights")))) res.fail("membership: weights do not reconstruct the box");
    return;
  }
  lp::Outcome out;
  out.status = lp::Status::Infeasible;
  out.farkas = rationals_from_json(j.at("farkas"));
  if (!lp::check_witness(prog, out)) res.fail("membership: Farkas vector does not certify separation");
}

void verify_antirobustness(const nlohmann::json& j, VerifyResult& res) {
  const Box box = box_from_json(j.at("box"));
  const auto prog = anti_robustness_lp(box);
  if (!same_lp(j, prog, res, "antirobustness")) return;
  const auto out = outcome_from_json(j.at("outcome"));
  const Rational value = Rational::parse(j.at("value").get<std::string>());
  if (out.status != lp::Status::Optimal || !lp::check_witness(prog, out)) {
    res.fail("antirobustness: optimality certificate rejected");
    return;
  }
  if (out.objective_value != value) res.fail("antirobustness: value differs from certified optimum");
  const Box local = box_from_json(j.at("local_witness"));
  const Box admixture = box_from_json(j.at("admixture_witness"));
  if (mix(value, box, admixture) != local) res.fail("antirobustness: L != q A + (1-q) X");
  if (!is_fully_ns(admixture).fully_ns) res.fail("antirobustness: admixture is not fully NS");
  if (!reconstructs(local, weights_from_json(j.at("weights")))) res.fail("antirobustness: local witness weights invalid");
}

void verify_hyperplane(const nlohmann::json& j, VerifyResult& res) {
  const std::string rst = j.at("rst").get<std::string>();
  if (rst.size() != 3) {
    res.fail("hyperplane: bad rst");
    return;
  }
  const int r = rst[0] - '0', s = rst[1] - '0', t = rst[2] - '0';
  const auto vertices = ns_vertices();
  const Box apex = pr_box(r, s, t);
  for (const auto& pt : j.at("points")) {
    const auto idx = pt.at("vertex_index").get<std::size_t>();
    const Rational p = Rational::parse(pt.at("p").get<std::string>());
    if (idx >= vertices.size()) {
      res.fail("hyperplane: vertex index out of range");
      continue;
    }
    const Box point = mix(p, apex, vertices[idx]);
    if (box_from_json(pt.at("point")) != point) res.fail("hyperplane: point is not on the stated ray");
    const auto tab = beta_table(point);
    if (tab.at(r, s, t) != Rational(2)) res.fail("hyperplane: point off beta = 2");
    if (!tab.local) res.fail("hyperplane: point violates a CHSH inequality");
    if (!reconstructs(point, weights_from_json(pt.at("weights")))) res.fail("hyperplane: local weights invalid");
  }
}

void verify_broadcast(const nlohmann::json& j, VerifyResult& res) {
  const auto inst = BroadcastInstance::at(Rational::parse(j.at("alpha").get<std::string>()));
  const std::string method = j.at("method").get<std::string>();
  const auto prog = method == "full" ? full_broadcast_lp(inst) : projection_lp(inst);
  if (!same_lp(j, prog, res, "broadcast")) return;
  const auto out = outcome_from_json(j.at("outcome"));
  if (!lp::check_witness(prog, out)) res.fail("broadcast " + method + " at alpha " + inst.alpha.str() + ": certificate rejected");
  if (j.at("feasible").get<bool>() != (out.status == lp::Status::Optimal)) res.fail("broadcast: verdict disagrees with outcome");
}

void verify_one(const nlohmann::json& j, VerifyResult& res) {
  const std::string kind = j.at("kind").get<std::string>();
  ++res.checked;
  if (kind == "membership") verify_membership(j, res);
  else if (kind == "antirobustness") verify_antirobustness(j, res);
  else if (kind == "hyperplane") verify_hyperplane(j, res);
  else if (kind == "broadcast") verify_broadcast(j, res);
  else res.fail("unknown certificate kind '" + kind + "'");
}

}  // namespace

Json lp_to_json(const lp::LinearProgram& prog) {
  Json j;
  j["sense"] = lp::to_string(prog.sense());
  j["objective"] = terms_to_json(prog.objective());
  auto vars = Json::array();
  for (const auto& v : prog.variables())
    vars.push_back(Json{{"name", v.name}, {"lower", optional_rational(v.lower)}, {"upper", optional_rational(v.upper)}});
  j["variables"] = std::move(vars);
  auto rows = Json::array();
  for (const auto& c : prog.constraints())
    rows.push_back(Json{{"terms", terms_to_json(c.terms)}, {"rel", lp::to_string(c.rel)}, {"rhs", c.rhs.str()}, {"name", c.name}});
  j["constraints"] = std::move(rows);
  return j;
}

lp::LinearProgram lp_from_json(const nlohmann::json& j) {
  lp::LinearProgram prog;
  for (const auto& v : j.at("variables"))
    prog.add_variable(v.at("name").get<std::string>(), optional_rational(v.at("lower")), optional_rational(v.at("upper")));
  for (const auto& c : j.at("constraints"))
    prog.add_constraint(terms_from_json(c.at("terms")), relation_from(c.at("rel").get<std::string>()),
                        Rational::parse(c.at("rhs").get<std::string>()), c.value("name", std::string{}));
  prog.set_objective(sense_from(j.at("sense").get<std::string>()), terms_from_json(j.at("objective")));
  prog.validate();
  return prog;
}

Json outcome_to_json(const lp::Outcome& out) {
  Json j;
  j["status"] = lp::to_string(out.status);
  j["witness"] = rationals_to_json(out.witness);
  j["objective_value"] = out.objective_value.str();
  j["dual"] = rationals_to_json(out.dual);
  j["farkas"] = rationals_to_json(out.farkas);
  j["ray"] = rationals_to_json(out.ray);
  return j;
}

lp::Outcome outcome_from_json(const nlohmann::json& j) {
  lp::Outcome out;
  out.status = status_from(j.at("status").get<std::string>());
  out.witness = rationals_from_json(j.at("witness"));
  out.objective_value = Rational::parse(j.at("objective_value").get<std::string>());
  out.dual = rationals_from_json(j.at("dual"));
  out.farkas = rationals_from_json(j.at("farkas"));
  out.ray = rationals_from_json(j.at("ray"));
  return out;
}

Json membership_certificate(const Box& box, const MembershipCertificate& cert) {
  Json j;
  j["kind"] = "membership";
  j["box"] = box_to_json(box);
  j["member"] = cert.member;
  j["weights"] = weights_to_json(cert.weights);
  j["farkas"] = rationals_to_json(cert.outcome.farkas);
  j["lp"] = lp_to_json(cert.lp);
  return j;
}

Json antirobustness_certificate(const Box& box, const AntiRobustnessResult& res) {
  Json j;
  j["kind"] = "antirobustness";
  j["value"] = res.value.str();
  j["box"] = box_to_json(box);
  j["weights"] = weights_to_json(res.local_certificate.weights);
  j["farkas"] = Json::array();
  j["local_witness"] = box_to_json(res.local_witness);
  j["admixture_witness"] = box_to_json(res.admixture_witness);
  j["lp"] = lp_to_json(res.lp);
  j["outcome"] = outcome_to_json(res.outcome);
  return j;
}

Json hyperplane_certificate(const HyperplaneReport& rep) {
  Json j;
  j["kind"] = "hyperplane";
  j["rst"] = rst_str(rep.r, rep.s, rep.t);
  j["all_passed"] = rep.all_passed;
  const auto names = ns_vertex_names();
  auto pts = Json::array();
  for (const auto& c : rep.points) {
    Json p;
    p["vertex"] = names[c.ray.vertex_index];
    p["vertex_index"] = c.ray.vertex_index;
    p["p"] = c.ray.p.str();
    p["point"] = box_to_json(c.ray.point);
    p["betas"] = rationals_to_json(std::vector<Rational>(c.betas.begin(), c.betas.end()));
    p["weights"] = weights_to_json(c.membership.weights);
    p["passed"] = c.passed;
    pts.push_back(std::move(p));
  }
  j["points"] = std::move(pts);
  return j;
}

Json verdict_certificate(const FeasibilityVerdict& v) {
  Json j;
  j["kind"] = "broadcast";
  j["method"] = method_str(v.method);
  j["alpha"] = v.alpha.str();
  j["feasible"] = v.feasible;
  j["verdict"] = v.feasible ? "feasible" : "infeasible";
  j["farkas"] = rationals_to_json(v.outcome.farkas);
  if (v.method == BroadcastMethod::Projection) {
    j["local_image"] = joint_to_json(v.local_image);
    j["copy_image"] = joint_to_json(v.copy_image);
    j["admixture_image"] = joint_to_json(v.admixture_image);
  }
  j["lp"] = lp_to_json(v.lp);
  j["outcome"] = outcome_to_json(v.outcome);
  return j;
}

Json scan_report(const std::vector<ScanRow>& rows) {
  auto arr = Json::array();
  for (const auto& r : rows) {
    Json j;
    j["alpha"] = r.instance.alpha.str();
    j["p_alpha"] = r.instance.p_alpha.str();
    j["projection"] = verdict_certificate(r.projection);
    j["full"] = r.full ? verdict_certificate(*r.full) : Json(nullptr);
    j["anti_robustness"] = r.anti_robustness.value.str();
    j["anti_robustness_certificate"] = antirobustness_certificate(b_alpha(r.instance.alpha), r.anti_robustness);
    arr.push_back(std::move(j));
  }
  return arr;
}

VerifyResult verify_certificate(const nlohmann::json& j) {
  VerifyResult res;
  try {
    if (j.is_array()) {
      for (const auto& row : j) {
        if (row.contains("kind")) {
          verify_one(row, res);
          continue;
        }
        const std::string alpha = row.at("alpha").get<std::string>();
        verify_one(row.at("projection"), res);
        if (!row.at("full").is_null()) verify_one(row.at("full"), res);
        const auto& ar = row.at("anti_robustness_certificate");
        verify_one(ar, res);
        if (box_from_json(ar.at("box")) != b_alpha(Rational::parse(alpha)))
          res.fail("scan row " + alpha + ": anti-robustness certificate is for another box");
        if (ar.at("value") != row.at("anti_robustness"))
          res.fail("scan row " + alpha + ": anti-robustness column differs from its certificate");
        if (row.at("projection").at("alpha") != alpha) res.fail("scan row " + alpha + ": projection verdict is for another alpha");
      }
    } else {
      verify_one(j, res);
    }
  } catch (const std::exception& e) {
    res.fail(std::string("malformed certificate: ") + e.what());
  }
  return res;
}

}  // namespace boxcert
