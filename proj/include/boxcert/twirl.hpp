#pragma once

#include "boxcert/box.hpp"

#include <array>
#include <optional>
#include <vector>

namespace boxcert {

/// Local relabeling of a 2x2 box: x -> x^delta, y -> y^gamma,
/// a -> a ^ gamma*x ^ delta*gamma ^ theta ^ s*gamma, b -> b ^ delta*y ^ theta ^ r*delta.
///
/// The x and y appearing in the output flips are the inputs before the flip.
/// With this reading every member of tau_rs fixes B_rst and B_rs(1-t).
struct RelabelingOp {
  int delta = 0, gamma = 0, theta = 0;
  int r = 0, s = 0;

  friend bool operator==(const RelabelingOp&, const RelabelingOp&) = default;
};

Box apply_relabeling(const RelabelingOp& op, const Box& box);

/// The 32 distinct (delta,gamma,theta,r,s) relabelings.
std::vector<RelabelingOp> all_relabelings();

/// tau_rs as the uniform mixture of its eight relabelings.
struct TwirlChannel {
  int r = 0, s = 0;
  std::array<RelabelingOp, 8> members() const;
};

Box twirl(const Box& box, int r, int s);

/// p with box = p*B_rs0 + (1-p)*B_rs1, or nullopt when the box is off the line.
std::optional<Rational> line_decomposition(const Box& box, int r, int s);

/// Output shift a -> a ^ r*x ^ t, b -> b ^ s*y. Sends B_000 to B_rst and
/// B_001 to B_rs(1-t), so the B_000 line lands on the B_rs line.
Box shift_to_line(const Box& box, int r, int s, int t);

/// A finite mixture of relabelings; the certified catalog of channels that map
/// local boxes to local boxes and NS boxes to NS boxes.
struct RelabelingMixture {
  std::vector<Rational> weights;
  std::vector<RelabelingOp> ops;

  static RelabelingMixture single(const RelabelingOp& op);
  static RelabelingMixture twirl(int r, int s);
  Box apply(const Box& box) const;
};

}  // namespace boxcert
