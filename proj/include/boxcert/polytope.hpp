#pragma once

#include "boxcert/box.hpp"
#include "boxcert/lp.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace boxcert {

class UnsupportedShape : public Error {
 public:
  using Error::Error;
};
class PreconditionNotMet : public Error {
 public:
  using Error::Error;
};
class DegenerateRay : public Error {
 public:
  using Error::Error;
};

/// Extremal points of LR_ns for a supported shape: the 16 deterministic
/// vertices for 2x2, or the 576 products v (x) w over the AA'|BB' cut for
/// 4-party binary boxes ordered (A, B, A', B'), where v and w range over the
/// 24 NS vertices.
struct LocalPolytope {
  std::vector<Box> vertices;
  std::vector<std::string> names;
};

const LocalPolytope& local_polytope(const Shape& shape);

/// Adds one nonnegative variable per entry of a box of `shape`; returns their indices.
std::vector<std::size_t> add_box_variables(lp::LinearProgram& lp, const Shape& shape, const std::string& prefix);

/// Homogeneous per-party no-signalling rows on a table given by `vars`: for
/// every party k, summing out a_k gives the same value for every x_k.
void add_ns_rows(lp::LinearProgram& lp, const Shape& shape, const std::vector<std::size_t>& vars);

struct MembershipCertificate {
  bool member = false;
  std::map<std::string, Rational> weights;  ///< nonzero convex weights by vertex name
  lp::LinearProgram lp;
  lp::Outcome outcome;
};

lp::LinearProgram membership_lp(const Box& box);
MembershipCertificate lr_membership(const Box& box);

/// Re-derives the box from named weights; true iff they are a convex
/// combination that reproduces it exactly.
bool reconstructs(const Box& box, const std::map<std::string, Rational>& weights);

struct AntiRobustnessResult {
  Rational value;
  Box local_witness;      ///< L
  Box admixture_witness;  ///< X, with L = value*A + (1-value)*X
  MembershipCertificate local_certificate;
  lp::LinearProgram lp;
  lp::Outcome outcome;
};

/// max q in [0,1] with q*box + Z local, Z >= 0 NS with every input block
/// summing to 1-q (Z stands for (1-q)X).
lp::LinearProgram anti_robustness_lp(const Box& box);
AntiRobustnessResult anti_robustness(const Box& box);

/// 6/(beta*+4) for 2x2 boxes with max beta >= 2.
Rational anti_robustness_closed_form(const Box& box);

struct RayPoint {
  int r = 0, s = 0, t = 0;
  std::size_t vertex_index = 0;  ///< index into ns_vertices()
  Rational p;
  Box point;
};

/// The point on the segment [B_rst, vertex] where beta_rst equals 2.
RayPoint ray_intersection(int r, int s, int t, const Box& vertex, std::size_t vertex_index = 0);

/// The 23 ray points for apex B_rst, in ns_vertices() order.
std::vector<RayPoint> ray_points(int r, int s, int t);

struct HyperplanePointCheck {
  RayPoint ray;
  std::array<Rational, 8> betas;
  bool beta_on_plane = false;  ///< beta_rst == 2
  bool chsh_local = false;
  MembershipCertificate membership;
  bool passed = false;
};

struct HyperplaneReport {
  int r = 0, s = 0, t = 0;
  std::vector<HyperplanePointCheck> points;
  bool all_passed = false;
};

HyperplaneReport hyperplane_locality_check(int r, int s, int t);

struct Decomposition {
  bool found = false;
  std::vector<Rational> weights;  ///< apex first, then the 23 ray points
};

/// Exact decomposition of `box` over {B_rst, ray points}.
Decomposition decompose_over_rays(const Box& box, int r, int s, int t);

struct HalfspaceReport {
  int r = 0, s = 0, t = 0;
  std::size_t inner_samples = 0, inner_passed = 0;  ///< hull of rays lies in H+ and the NS set
  std::size_t outer_samples = 0, outer_passed = 0;  ///< NS boxes in H+ decompose over the rays
  std::vector<std::string> failures;
  bool all_passed() const { return inner_passed == inner_samples && outer_passed == outer_samples; }
};

HalfspaceReport halfspace_body_equality_check(int r, int s, int t, std::size_t samples, std::uint64_t seed = 0);

}  // namespace boxcert
