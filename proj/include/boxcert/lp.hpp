#pragma once

#include "boxcert/rational.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace boxcert::lp {

class MalformedLP : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Relation { LessEq, GreaterEq, Equal };
enum class Sense { Maximize, Minimize, Feasibility };
enum class Status { Optimal, Infeasible, Unbounded };

const char* to_string(Relation r);
const char* to_string(Sense s);
const char* to_string(Status s);

struct Term {
  std::size_t var;
  Rational coef;
};

struct Constraint {
  std::vector<Term> terms;
  Relation rel = Relation::Equal;
  Rational rhs;
  std::string name;
};

struct Variable {
  std::string name;
  std::optional<Rational> lower = Rational(0);
  std::optional<Rational> upper;
};

/// Linear program over exact rationals. Variables default to x >= 0.
class LinearProgram {
 public:
  std::size_t add_variable(std::string name, std::optional<Rational> lower = Rational(0),
                           std::optional<Rational> upper = std::nullopt);
  std::size_t add_constraint(std::vector<Term> terms, Relation rel, Rational rhs, std::string name = {});
  void set_objective(Sense sense, std::vector<Term> terms = {});

  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Constraint>& constraints() const { return rows_; }
  Sense sense() const { return sense_; }
  const std::vector<Term>& objective() const { return objective_; }

  std::size_t num_variables() const { return vars_.size(); }
  std::size_t num_constraints() const { return rows_.size(); }

  /// Throws MalformedLP on out-of-range indices or crossed bounds.
  void validate() const;

 private:
  std::vector<Variable> vars_;
  std::vector<Constraint> rows_;
  Sense sense_ = Sense::Feasibility;
  std::vector<Term> objective_;
};

/// Result of solve(). Certificates use row multipliers `y` with this
/// convention: y_i >= 0 on inequality rows, free on equality rows, and row i
/// enters the combination as  s_i * (a_i . x) >= s_i * b_i  with s_i = -1 for
/// <= rows and +1 otherwise. Bounds never need multipliers; the checker
/// optimizes the combined row over the variable box directly.
struct Outcome {
  Status status = Status::Infeasible;
  std::vector<Rational> witness;  ///< Optimal: primal point. Unbounded: a feasible point.
  Rational objective_value;       ///< Optimal only.
  std::vector<Rational> dual;     ///< Optimal: multipliers proving the bound.
  std::vector<Rational> farkas;   ///< Infeasible: multipliers yielding a contradiction.
  std::vector<Rational> ray;      ///< Unbounded: improving recession direction.
  std::size_t pivots = 0;
};

/// Two-phase primal simplex with Bland's rule over exact rationals.
Outcome solve(const LinearProgram& lp);

/// Independent verification by exact substitution; never pivots.
bool check_witness(const LinearProgram& lp, const Outcome& outcome);

/// Line-oriented text dump: one variable or constraint per line.
void write_text(std::ostream& os, const LinearProgram& lp);

}  // namespace boxcert::lp
