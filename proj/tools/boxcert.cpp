#include "boxcert/box_json.hpp"
#include "boxcert/broadcast.hpp"
#include "boxcert/certificate.hpp"
#include "boxcert/chsh.hpp"
#include "boxcert/polytope.hpp"
#include "boxcert/twirl.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace boxcert;

namespace {

constexpr int kOk = 0;
constexpr int kViolated = 1;
constexpr int kUsage = 2;

// Bad flag values; reported like CLI parse errors.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string file;
  std::string rst, rs;
  std::string alpha, grid;
  bool full = false;
  std::size_t samples = 500;
  std::uint64_t seed = 0;
  std::string json_path;
  std::string method = "lp";
};

Rational parse_rational(const std::string& flag, const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(flag + ": '" + text + "' is not a rational (use num/den or an integer)");
  }
}

std::vector<int> parse_bits(const std::string& flag, const std::string& text, std::size_t n) {
  if (text.size() != n) throw UsageError(flag + ": expected " + std::to_string(n) + " bits, got '" + text + "'");
  std::vector<int> bits;
  for (char c : text) {
    if (c != '0' && c != '1') throw UsageError(flag + ": expected bits, got '" + text + "'");
    bits.push_back(c - '0');
  }
  return bits;
}

std::vector<Rational> parse_grid(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (b == std::string::npos) throw UsageError("--alpha-grid: expected START:END:STEP, got '" + text + "'");
  const Rational start = parse_rational("--alpha-grid", text.substr(0, a));
  const Rational end = parse_rational("--alpha-grid", text.substr(a + 1, b - a - 1));
  const Rational step = parse_rational("--alpha-grid", text.substr(b + 1));
  if (step.sign() <= 0) throw UsageError("--alpha-grid: STEP must be positive");
  std::vector<Rational> out;
  for (Rational x = start; x <= end; x += step) out.push_back(x);
  return out;
}

void emit(const Options& o, const Json& j) {
  if (o.json_path.empty()) return;
  std::ofstream out(o.json_path);
  if (!out) throw BoxFormatError(o.json_path, "cannot write file");
  out << j.dump(2) << '\n';
}

int cmd_validate(const Options& o) {
  const Box box = read_box_file(o.file);
  const auto rep = is_fully_ns(box);
  std::cout << box.shape().parties() << "-party box, normalized and nonnegative\n";
  Json viol = Json::array();
  for (const auto& v : rep.violations) {
    const bool rtl = v.direction == SignalDirection::RightToLeft;
    std::cout << "cut " << v.cut.str() << ": " << (rtl ? "right signals to left" : "left signals to right")
              << ", marginal shifts by " << v.discrepancy.str() << '\n';
    viol.push_back(Json{{"cut", v.cut.str()}, {"direction", rtl ? "right-to-left" : "left-to-right"},
                        {"discrepancy", v.discrepancy.str()}});
  }
  std::cout << (rep.fully_ns ? "fully non-signalling" : "not fully non-signalling") << '\n';
  emit(o, Json{{"box", box_to_json(box)}, {"fully_ns", rep.fully_ns}, {"violations", viol}});
  return rep.fully_ns ? kOk : kViolated;
}

int cmd_beta(const Options& o) {
  const Box box = read_box_file(o.file);
  const auto tab = beta_table(box);
  if (!o.rst.empty()) {
    const auto b = parse_bits("--rst", o.rst, 3);
    const Rational v = tab.at(b[0], b[1], b[2]);
    std::cout << v.str() << '\n';
    emit(o, Json{{"rst", o.rst}, {"beta", v.str()}});
    return kOk;
  }
  Json j = Json::object();
  for (int k = 0; k < 8; ++k) {
    const std::string rst = std::to_string(k >> 2) + std::to_string((k >> 1) & 1) + std::to_string(k & 1);
    std::cout << "beta_" << rst << " = " << tab.values[static_cast<std::size_t>(k)].value.str() << '\n';
    j[rst] = tab.values[static_cast<std::size_t>(k)].value.str();
  }
  std::cout << (tab.local ? "local" : "nonlocal") << '\n';
  emit(o, Json{{"betas", j}, {"local", tab.local}});
  return kOk;
}

int cmd_twirl(const Options& o) {
  const Box box = read_box_file(o.file);
  const auto b = parse_bits("--rs", o.rs.empty() ? "00" : o.rs, 2);
  const Box out = twirl(box, b[0], b[1]);
  const auto p = line_decomposition(out, b[0], b[1]);
  std::cout << "p = " << (p ? p->str() : "off the line") << '\n';
  for (std::size_t e = 0; e < out.probs().size(); ++e) std::cout << (e ? " " : "") << out[e].str();
  std::cout << '\n';
  emit(o, box_to_json(out));
  return p ? kOk : kViolated;
}

int cmd_antirobustness(const Options& o) {
  const Box box = read_box_file(o.file);
  if (o.method == "formula") {
    const Rational v = anti_robustness_closed_form(box);
    std::cout << v.str() << '\n';
    emit(o, Json{{"value", v.str()}, {"method", "formula"}});
    return kOk;
  }
  const auto res = anti_robustness(box);
  std::cout << res.value.str() << '\n';
  emit(o, antirobustness_certificate(box, res));
  return kOk;
}

int cmd_hyperplane(const Options& o) {
  std::vector<std::vector<int>> apexes;
  if (!o.rst.empty()) apexes.push_back(parse_bits("--rst", o.rst, 3));
  else
    for (int k = 0; k < 8; ++k) apexes.push_back({k >> 2, (k >> 1) & 1, k & 1});
  Json certs = Json::array();
  bool ok = true;
  for (const auto& a : apexes) {
    const auto rep = hyperplane_locality_check(a[0], a[1], a[2]);
    std::size_t passed = 0;
    for (const auto& c : rep.points) passed += c.passed;
    Json cert = hyperplane_certificate(rep);
    std::cout << "B" << a[0] << a[1] << a[2] << ": " << passed << "/" << rep.points.size() << " ray points local";
    if (o.samples > 0) {
      const auto hs = halfspace_body_equality_check(a[0], a[1], a[2], o.samples, o.seed);
      std::cout << ", inner " << hs.inner_passed << "/" << hs.inner_samples << ", outer " << hs.outer_passed << "/"
                << hs.outer_samples;
      cert["halfspace"] = Json{{"samples", o.samples}, {"seed", o.seed}, {"inner_passed", hs.inner_passed},
                               {"outer_passed", hs.outer_passed}};
      ok = ok && hs.all_passed();
    }
    std::cout << '\n';
    ok = ok && rep.all_passed;
    certs.push_back(std::move(cert));
  }
  emit(o, certs.size() == 1 ? certs[0] : certs);
  return ok ? kOk : kViolated;
}

// Broadcasting is expected to be possible exactly at alpha = 3/4.
bool as_expected(const FeasibilityVerdict& v) { return v.feasible == (v.alpha == Rational(3, 4)); }

int cmd_broadcast(const Options& o) {
  if (o.alpha.empty()) throw UsageError("--alpha is required");
  const auto inst = BroadcastInstance::at(parse_rational("--alpha", o.alpha));
  const auto v = o.full ? full_broadcast_feasibility(inst) : projection_feasibility(inst);
  std::cout << "alpha " << inst.alpha.str() << " (" << (o.full ? "full" : "projection") << "): "
            << (v.feasible ? "feasible" : "infeasible") << '\n';
  if (!v.feasible) std::cout << "Farkas certificate over " << v.outcome.farkas.size() << " rows\n";
  if (v.local_image)
    std::cout << "local image (" << v.local_image->p11.str() << ", " << v.local_image->p12.str() << ")\n";
  emit(o, verdict_certificate(v));
  return as_expected(v) ? kOk : kViolated;
}

int cmd_scan(const Options& o) {
  std::vector<Rational> alphas;
  if (!o.grid.empty()) alphas = parse_grid(o.grid);
  else if (!o.alpha.empty()) alphas = {parse_rational("--alpha", o.alpha)};
  else alphas = {Rational(3, 4), Rational(13, 16), Rational(7, 8), Rational(15, 16), Rational(1)};
  const auto rows = broadcast_scan(alphas, o.full);
  bool ok = true;
  std::cout << "alpha\tp_alpha\tanti-robustness\tprojection" << (o.full ? "\tfull" : "") << '\n';
  for (const auto& r : rows) {
    std::cout << r.instance.alpha.str() << '\t' << r.instance.p_alpha.str() << '\t' << r.anti_robustness.value.str() << '\t'
              << (r.projection.feasible ? "feasible" : "infeasible");
    ok = ok && as_expected(r.projection);
    if (r.full) {
      std::cout << '\t' << (r.full->feasible ? "feasible" : "infeasible");
      ok = ok && as_expected(*r.full);
    }
    std::cout << '\n';
  }
  emit(o, scan_report(rows));
  return ok ? kOk : kViolated;
}

int cmd_verify(const Options& o) {
  std::ifstream in(o.file);
  if (!in) throw BoxFormatError(o.file, "cannot open file");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw BoxFormatError(o.file, e.what());
  }
  const auto res = verify_certificate(j);
  for (const auto& p : res.problems) std::cout << p << '\n';
  std::cout << (res.ok ? "ok" : "FAILED") << " (" << res.checked << " certificate" << (res.checked == 1 ? "" : "s")
            << ")\n";
  return res.ok ? kOk : kViolated;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact certificates for non-signalling boxes"};
  app.require_subcommand(1);
  Options o;

  auto file = [&](CLI::App* sub, const char* what) { sub->add_option("file", o.file, what)->required(); };
  auto json = [&](CLI::App* sub) { sub->add_option("--json", o.json_path, "Write the JSON certificate here"); };

  auto* validate = app.add_subcommand("validate", "Check a box file and report signalling cuts");
  file(validate, "Box JSON file");
  json(validate);

  auto* beta = app.add_subcommand("beta", "CHSH values of a 2x2 box");
  file(beta, "Box JSON file");
  beta->add_option("--rst", o.rst, "Single CHSH triple, e.g. 000");
  json(beta);

  auto* tw = app.add_subcommand("twirl", "Apply the twirl tau_rs");
  file(tw, "Box JSON file");
  tw->add_option("--rs", o.rs, "Two bits, default 00");
  json(tw);

  auto* ar = app.add_subcommand("antirobustness", "Anti-robustness of a fully NS box");
  file(ar, "Box JSON file");
  ar->add_option("--method", o.method, "lp or formula")->check(CLI::IsMember({"lp", "formula"}));
  json(ar);

  auto* hyp = app.add_subcommand("hyperplane-check", "Locality of the ray points on beta = 2");
  hyp->add_option("--rst", o.rst, "Apex, default all eight");
  hyp->add_option("--samples", o.samples, "Samples per direction for the half-space check (0 skips)");
  hyp->add_option("--seed", o.seed, "Sampler seed");
  json(hyp);

  auto* bc = app.add_subcommand("broadcast-check", "Broadcast feasibility of B_alpha");
  bc->add_option("--alpha", o.alpha, "alpha in [3/4, 1]");
  bc->add_flag("--full", o.full, "Use the 4-party LP instead of the projection");
  json(bc);

  auto* scan = app.add_subcommand("scan", "Broadcast verdicts over a grid of alpha");
  scan->add_option("--alpha", o.alpha, "Single alpha");
  scan->add_option("--alpha-grid", o.grid, "START:END:STEP, inclusive");
  scan->add_flag("--full", o.full, "Also run the 4-party LP");
  json(scan);

  auto* verify = app.add_subcommand("verify-cert", "Re-check a certificate by substitution");
  file(verify, "Certificate JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(o);
    if (beta->parsed()) return cmd_beta(o);
    if (tw->parsed()) return cmd_twirl(o);
    if (ar->parsed()) return cmd_antirobustness(o);
    if (hyp->parsed()) return cmd_hyperplane(o);
    if (bc->parsed()) return cmd_broadcast(o);
    if (scan->parsed()) return cmd_scan(o);
    if (verify->parsed()) return cmd_verify(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const BoxFormatError& e) {
    std::cerr << "error: " << (o.file.empty() || e.field() == o.file ? "" : o.file + ": ") << e.what() << '\n';
    return kUsage;
  } catch (const PreconditionNotMet& e) {
    std::cerr << "violated: " << e.what() << '\n';
    return kViolated;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
