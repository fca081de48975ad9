#pragma once

#include "boxcert/broadcast.hpp"
#include "boxcert/lp.hpp"
#include "boxcert/polytope.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace boxcert {

using Json = nlohmann::ordered_json;

Json rationals_to_json(const std::vector<Rational>& v);
std::vector<Rational> rationals_from_json(const nlohmann::json& j);

Json lp_to_json(const lp::LinearProgram& prog);
lp::LinearProgram lp_from_json(const nlohmann::json& j);
Json outcome_to_json(const lp::Outcome& out);
lp::Outcome outcome_from_json(const nlohmann::json& j);

Json membership_certificate(const Box& box, const MembershipCertificate& cert);
Json antirobustness_certificate(const Box& box, const AntiRobustnessResult& res);
Json hyperplane_certificate(const HyperplaneReport& rep);
Json verdict_certificate(const FeasibilityVerdict& v);
Json scan_report(const std::vector<ScanRow>& rows);

struct VerifyResult {
  bool ok = true;
  std::size_t checked = 0;  ///< certificates inspected
  std::vector<std::string> problems;

  void fail(std::string why) {
    ok = false;
    problems.push_back(std::move(why));
  }
};

/// Re-checks a certificate, an array of certificates or a scan report by exact
/// substitution. The LPs are rebuilt from the certified object and compared to
/// the embedded copy; nothing is re-solved.
VerifyResult verify_certificate(const nlohmann::json& j);

}  // namespace boxcert
