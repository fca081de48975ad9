#pragma once

#include "boxcert/rational.hpp"

#include <cstddef>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace boxcert {

/// Base class for all domain errors raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NegativeEntry : public Error {
 public:
  using Error::Error;
};

class NotNormalized : public Error {
 public:
  NotNormalized(std::vector<int> input_tuple, Rational actual_sum);
  const std::vector<int>& input_tuple() const { return input_tuple_; }
  const Rational& actual_sum() const { return actual_sum_; }

 private:
  std::vector<int> input_tuple_;
  Rational actual_sum_;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};
class WeightOutOfRange : public Error {
 public:
  using Error::Error;
};
class WrongShape : public Error {
 public:
  using Error::Error;
};
class MarginalIllDefined : public Error {
 public:
  using Error::Error;
};

using Tuple = std::vector<int>;

/// Per-party input and output alphabet sizes.
struct Shape {
  std::vector<int> inputs;
  std::vector<int> outputs;

  std::size_t parties() const { return inputs.size(); }
  std::size_t input_tuples() const;
  std::size_t output_tuples() const;
  std::size_t entries() const { return input_tuples() * output_tuples(); }

  static Shape binary(std::size_t parties);
  friend bool operator==(const Shape&, const Shape&) = default;
};

/// Mixed-radix lexicographic index of a tuple; the first party is the most
/// significant digit.
std::size_t tuple_index(std::span<const int> tuple, std::span<const int> arity);
Tuple tuple_at(std::size_t index, std::span<const int> arity);

/// Multiparty conditional distribution P(a|x) with exact entries.
///
/// Entries are stored inputs-major, outputs-minor: the entry for (a, x) sits at
/// `index(x) * output_tuples + index(a)`. This order is the canonical
/// serialization order as well.
class Box {
 public:
  /// Validates nonnegativity and per-input normalization.
  Box(Shape shape, std::vector<Rational> probs);

  const Shape& shape() const { return shape_; }
  std::size_t parties() const { return shape_.parties(); }
  const std::vector<Rational>& probs() const { return probs_; }

  const Rational& at(std::span<const int> outputs, std::span<const int> inputs) const;
  const Rational& operator[](std::size_t flat) const { return probs_[flat]; }

  bool is_binary(std::size_t parties) const;

  friend bool operator==(const Box&, const Box&) = default;

 private:
  Shape shape_;
  std::vector<Rational> probs_;
};

Box make_box(const Shape& shape, std::vector<Rational> entries);

/// B_rst: 1/2 where a xor b = xy xor rx xor sy xor t.
Box pr_box(int r, int s, int t);

/// The 16 product-deterministic 2x2 boxes a = f(x), b = g(y). Index 4*f + g
/// where f, g encode the truth table (f(0), f(1)) as 2*f(0) + f(1).
std::vector<Box> deterministic_vertices();

/// The 24 vertices of the 2x2 NS polytope: 16 deterministic, then the 8
/// B_rst in (r,s,t) lexicographic order.
std::vector<Box> ns_vertices();
std::vector<std::string> ns_vertex_names();

Box uniform_box(const Shape& shape);

Box mix(const Rational& p, const Box& a, const Box& b);

/// General convex combination; weights must be nonnegative and sum to 1.
Box convex_combination(std::span<const Rational> weights, std::span<const Box> boxes);

/// alpha*B_000 + (1-alpha)*B_001.
Box b_alpha(const Rational& alpha);

/// Product box on the concatenated party list.
Box tensor(const Box& a, const Box& b);

/// Reorders parties: party k of the result is party order[k] of the input.
Box permute_parties(const Box& box, std::span<const int> order);

struct Cut {
  std::set<int> left;
  std::set<int> right;

  /// Throws std::invalid_argument unless left/right partition {0..parties-1}
  /// into two nonempty sets.
  void validate(std::size_t parties) const;
  std::string str() const;
};

enum class SignalDirection {
  RightToLeft,  ///< right's inputs change the left marginal
  LeftToRight,
};

struct NSViolation {
  Cut cut;
  SignalDirection direction;
  Tuple receiver_outputs;
  Tuple receiver_inputs;
  Tuple sender_input_first;
  Tuple sender_input_second;
  Rational discrepancy;
};

struct NSReport {
  bool fully_ns = true;
  std::vector<NSViolation> violations;
};

/// Exact check of both marginal-independence conditions across `cut`.
NSReport is_ns_in_cut(const Box& box, const Cut& cut);

/// Checks every nonempty proper subset against its complement.
NSReport is_fully_ns(const Box& box);

/// Marginal on the parties in `keep` (in increasing party order). Requires
/// the box to be NS across keep | complement.
Box marginal(const Box& box, const std::set<int>& keep);

}  // namespace boxcert
