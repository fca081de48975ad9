#pragma once

#include "boxcert/box.hpp"
#include "boxcert/lp.hpp"
#include "boxcert/polytope.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace boxcert {

class RangeError : public Error {
 public:
  using Error::Error;
};

/// Joint law of (C1, C2); index 1 is the value +4 (a xor b = xy held), index 2 is -4.
struct JointDist {
  Rational p11, p12, p21, p22;
  friend bool operator==(const JointDist&, const JointDist&) = default;
};

struct BroadcastInstance {
  Rational alpha;
  Rational p_alpha;  ///< 3/(4 alpha): weight of B_alpha in K = p B_alpha + (1-p) B_001

  /// Requires alpha in [3/4, 1].
  static BroadcastInstance at(const Rational& alpha);
};

/// (C1, C2) statistics of a 4-party binary box ordered (A, B, A', B') under
/// uniform independent inputs on both copies.
JointDist c1c2_projection(const Box& box4);

/// The four CHSH conditions on the second copy conditioned on C1, for a
/// symmetric law with p21 = p12.
bool s1_check(const Rational& p11, const Rational& p12);

/// (p_alpha * t11, 3/4 - p_alpha * t11): a projected broadcast copy scaled by p_alpha.
std::pair<Rational, Rational> s2_point(const BroadcastInstance& inst, const Rational& t11);

enum class BroadcastMethod { Projection, Full };

struct FeasibilityVerdict {
  Rational alpha;
  BroadcastMethod method = BroadcastMethod::Projection;
  bool feasible = false;
  lp::LinearProgram lp;
  lp::Outcome outcome;
  // Projection witness: L, B-hat and X images.
  std::optional<JointDist> local_image, copy_image, admixture_image;
  // Full witness boxes.
  std::optional<Box> local_box, copy_box, admixture_box;
};

lp::LinearProgram projection_lp(const BroadcastInstance& inst);
FeasibilityVerdict projection_feasibility(const BroadcastInstance& inst);

/// Direct LP over 4-party boxes: B-hat fully NS with both copy marginals equal
/// to B_alpha, and p_alpha*B-hat + Z local in the AA'|BB' cut for some Z >= 0.
/// Z = (1-p_alpha) X is eliminated: it equals L - p_alpha*B-hat, which is NS
/// with total mass 1-p_alpha whenever L and B-hat are valid.
lp::LinearProgram full_broadcast_lp(const BroadcastInstance& inst);
FeasibilityVerdict full_broadcast_feasibility(const BroadcastInstance& inst);

struct ScanRow {
  BroadcastInstance instance;
  FeasibilityVerdict projection;
  std::optional<FeasibilityVerdict> full;
  AntiRobustnessResult anti_robustness;  ///< of b_alpha(alpha)
};

/// Rows in input order.
std::vector<ScanRow> broadcast_scan(const std::vector<Rational>& alphas, bool full = false);

}  // namespace boxcert
