#include "boxcert/lp.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>
#include <tuple>

namespace boxcert::lp {

const char* to_string(Relation r) {
  switch (r) {
    case Relation::LessEq: return "<=";
    case Relation::GreaterEq: return ">=";
    case Relation::Equal: return "=";
  }
  return "?";
}

const char* to_string(Sense s) {
  switch (s) {
    case Sense::Maximize: return "max";
    case Sense::Minimize: return "min";
    case Sense::Feasibility: return "feasibility";
  }
  return "?";
}

const char* to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
  }
  return "?";
}

std::size_t LinearProgram::add_variable(std::string name, std::optional<Rational> lower,
                                        std::optional<Rational> upper) {
  vars_.push_back(Variable{std::move(name), std::move(lower), std::move(upper)});
  return vars_.size() - 1;
}

std::size_t LinearProgram::add_constraint(std::vector<Term> terms, Relation rel, Rational rhs, std::string name) {
  rows_.push_back(Constraint{std::move(terms), rel, std::move(rhs), std::move(name)});
  return rows_.size() - 1;
}

void LinearProgram::set_objective(Sense sense, std::vector<Term> terms) {
  sense_ = sense;
  objective_ = std::move(terms);
}

void LinearProgram::validate() const {
  for (const auto& v : vars_) {
    if (v.lower && v.upper && *v.lower > *v.upper) throw MalformedLP("variable '" + v.name + "' has lower > upper");
  }
  auto check_terms = [&](const std::vector<Term>& terms, const std::string& where) {
    for (const auto& t : terms)
      if (t.var >= vars_.size()) throw MalformedLP(where + " references unknown variable " + std::to_string(t.var));
  };
  for (std::size_t i = 0; i < rows_.size(); ++i) check_terms(rows_[i].terms, "constraint " + std::to_string(i));
  check_terms(objective_, "objective");
  if (sense_ == Sense::Feasibility && !objective_.empty()) throw MalformedLP("feasibility problem with an objective");
}

namespace {

// Merged, sorted, zero-free copy of a linear form.
std::vector<Term> canonical(const std::vector<Term>& terms) {
  std::map<std::size_t, Rational> acc;
  for (const auto& t : terms) acc[t.var] += t.coef;
  std::vector<Term> out;
  for (auto& [v, c] : acc)
    if (!c.is_zero()) out.push_back(Term{v, c});
  return out;
}

// Internal column j represents x_var = offset_var + sign * x'_j.
struct ColumnMap {
  std::size_t var;
  int sign;
};

class Simplex {
 public:
  explicit Simplex(const LinearProgram& lp) : lp_(lp) { build(); }

  Outcome run() {
    Outcome out;
    // Phase 1: maximize -sum(artificials).
    std::vector<mpq_class> cost(cols_, 0);
    for (std::size_t j = art_begin_; j < cols_; ++j) cost[j] = -1;
    price(cost);
    iterate(out.pivots, /*allow_art=*/false);
    if (sgn(obj_[cols_]) != 0) {
      out.status = Status::Infeasible;
      out.farkas = row_multipliers(cost);
      return out;
    }
    drive_out_artificials(out.pivots);

    // Phase 2 in maximize orientation.
    cost.assign(cols_, 0);
    const int orient = lp_.sense() == Sense::Minimize ? -1 : 1;
    if (lp_.sense() != Sense::Feasibility) {
      for (const auto& t : canonical(lp_.objective())) {
        for (std::size_t j = 0; j < struct_cols_; ++j)
          if (colmap_[j].var == t.var) cost[j] += mpq_class(t.coef.raw() * colmap_[j].sign * orient);
      }
    }
    price(cost);
    const auto unbounded_col = iterate(out.pivots, false);
    out.witness = primal_point();
    if (unbounded_col) {
      out.status = Status::Unbounded;
      out.ray = ray(*unbounded_col);
      return out;
    }
    out.status = Status::Optimal;
    Rational value;
    for (const auto& t : lp_.objective()) value += t.coef * out.witness[t.var];
    out.objective_value = lp_.sense() == Sense::Feasibility ? Rational(0) : value;
    out.dual = row_multipliers(cost);
    return out;
  }

 private:
  void build() {
    const auto& vars = lp_.variables();
    const std::size_t nv = vars.size();
    offset_.assign(nv, Rational(0));

    struct SparseRow {
      std::vector<std::pair<std::size_t, mpq_class>> entries;
      mpq_class rhs;
      int slack = 0;  // +1 for <=, -1 for >=, 0 for =
      std::optional<std::size_t> origin;
    };
    std::vector<SparseRow> rows;

    for (std::size_t j = 0; j < nv; ++j) {
      const auto& v = vars[j];
      if (v.lower) {
        offset_[j] = *v.lower;
        colmap_.push_back({j, +1});
      } else if (v.upper) {
        offset_[j] = *v.upper;
        colmap_.push_back({j, -1});
      } else {
        colmap_.push_back({j, +1});
        colmap_.push_back({j, -1});
      }
    }
    struct_cols_ = colmap_.size();
    std::vector<std::vector<std::size_t>> cols_of_var(nv);
    for (std::size_t k = 0; k < struct_cols_; ++k) cols_of_var[colmap_[k].var].push_back(k);

    // Original rows, skipping exact duplicates.
    std::set<std::tuple<std::vector<std::pair<std::size_t, std::string>>, int, std::string>> seen;
    const auto& cons = lp_.constraints();
    for (std::size_t i = 0; i < cons.size(); ++i) {
      const auto terms = canonical(cons[i].terms);
      std::vector<std::pair<std::size_t, std::string>> key;
      for (const auto& t : terms) key.emplace_back(t.var, t.coef.str());
      if (!seen.emplace(key, static_cast<int>(cons[i].rel), cons[i].rhs.str()).second) continue;

      SparseRow row;
      row.origin = i;
      row.slack = cons[i].rel == Relation::LessEq ? 1 : (cons[i].rel == Relation::GreaterEq ? -1 : 0);
      Rational rhs = cons[i].rhs;
      for (const auto& t : terms) {
        rhs -= t.coef * offset_[t.var];
        for (std::size_t k : cols_of_var[t.var]) row.entries.emplace_back(k, t.coef.raw() * colmap_[k].sign);
      }
      row.rhs = rhs.raw();
      rows.push_back(std::move(row));
    }
    // Finite ranges for variables bounded on both sides.
    for (std::size_t j = 0; j < nv; ++j) {
      if (vars[j].lower && vars[j].upper) {
        SparseRow row;
        row.slack = 1;
        row.entries.emplace_back(cols_of_var[j][0], mpq_class(1));
        row.rhs = (*vars[j].upper - *vars[j].lower).raw();
        rows.push_back(std::move(row));
      }
    }

    m_ = rows.size();
    std::size_t slacks = 0;
    for (const auto& r : rows) slacks += r.slack != 0;
    art_begin_ = struct_cols_ + slacks;
    cols_ = art_begin_ + m_;
    T_.assign(m_, std::vector<mpq_class>(cols_ + 1));
    basis_.resize(m_);
    flip_.assign(m_, 1);
    origin_.resize(m_);
    slack_sign_.resize(m_);

    std::size_t next_slack = struct_cols_;
    for (std::size_t i = 0; i < m_; ++i) {
      auto& row = T_[i];
      for (auto& [k, c] : rows[i].entries) row[k] += c;
      if (rows[i].slack != 0) row[next_slack++] = rows[i].slack;
      row[cols_] = rows[i].rhs;
      if (sgn(row[cols_]) < 0) {
        for (auto& e : row) e = -e;
        flip_[i] = -1;
      }
      row[art_begin_ + i] = 1;
      basis_[i] = art_begin_ + i;
      origin_[i] = rows[i].origin;
      slack_sign_[i] = rows[i].slack;
    }
  }

  // Reduced costs and objective for the current basis under `cost`.
  void price(const std::vector<mpq_class>& cost) {
    obj_.assign(cols_ + 1, 0);
    for (std::size_t j = 0; j < cols_; ++j) obj_[j] = cost[j];
    mpq_class tmp;
    for (std::size_t i = 0; i < m_; ++i) {
      const mpq_class& cb = cost[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (sgn(T_[i][j]) == 0) continue;
        mpq_mul(tmp.get_mpq_t(), cb.get_mpq_t(), T_[i][j].get_mpq_t());
        mpq_sub(obj_[j].get_mpq_t(), obj_[j].get_mpq_t(), tmp.get_mpq_t());
      }
    }
  }

  // Bland's rule. Returns the entering column if the problem is unbounded.
  std::optional<std::size_t> iterate(std::size_t& pivots, bool allow_art) {
    const std::size_t limit = allow_art ? cols_ : art_begin_;
    for (;;) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j)
        if (sgn(obj_[j]) > 0) {
          enter = j;
          break;
        }
      if (enter == limit) return std::nullopt;

      std::optional<std::size_t> leave;
      mpq_class best, ratio;
      for (std::size_t i = 0; i < m_; ++i) {
        if (sgn(T_[i][enter]) <= 0) continue;
        ratio = T_[i][cols_] / T_[i][enter];
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return enter;
      pivot(*leave, enter);
      ++pivots;
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    auto& prow = T_[r];
    const mpq_class inv = 1 / prow[c];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= cols_; ++j) {
      if (sgn(prow[j]) == 0) continue;
      prow[j] *= inv;
      nz.push_back(j);
    }
    mpq_class f, tmp;
    auto eliminate = [&](std::vector<mpq_class>& row) {
      if (sgn(row[c]) == 0) return;
      f = row[c];
      for (std::size_t j : nz) {
        mpq_mul(tmp.get_mpq_t(), f.get_mpq_t(), prow[j].get_mpq_t());
        mpq_sub(row[j].get_mpq_t(), row[j].get_mpq_t(), tmp.get_mpq_t());
      }
    };
    for (std::size_t i = 0; i < m_; ++i)
      if (i != r) eliminate(T_[i]);
    eliminate(obj_);
    basis_[r] = c;
  }

  // Basic artificials sit at zero after a feasible phase 1; swap them for any
  // non-artificial column with a nonzero in their row. Rows with none left are
  // redundant and keep their artificial at zero.
  void drive_out_artificials(std::size_t& pivots) {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < art_begin_) continue;
      for (std::size_t j = 0; j < art_begin_; ++j) {
        if (sgn(T_[i][j]) != 0) {
          pivot(i, j);
          ++pivots;
          break;
        }
      }
    }
  }

  // y = c_B B^-1 read off the artificial columns, mapped back to the caller's
  // rows and sign convention.
  std::vector<Rational> row_multipliers(const std::vector<mpq_class>& cost) const {
    std::vector<Rational> mult(lp_.num_constraints());
    for (std::size_t k = 0; k < m_; ++k) {
      if (!origin_[k]) continue;
      mpq_class y = 0;
      for (std::size_t i = 0; i < m_; ++i) {
        const mpq_class& cb = cost[basis_[i]];
        if (sgn(cb) != 0) y += cb * T_[i][art_begin_ + k];
      }
      y *= flip_[k];
      const int s = slack_sign_[k] == 1 ? -1 : 1;
      mult[*origin_[k]] = Rational(mpq_class(-y * s));
    }
    return mult;
  }

  std::vector<Rational> primal_point() const {
    std::vector<mpq_class> xs(struct_cols_, 0);
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < struct_cols_) xs[basis_[i]] = T_[i][cols_];
    std::vector<Rational> x(offset_);
    for (std::size_t k = 0; k < struct_cols_; ++k)
      if (sgn(xs[k]) != 0) x[colmap_[k].var] += Rational(mpq_class(xs[k] * colmap_[k].sign));
    return x;
  }

  std::vector<Rational> ray(std::size_t enter) const {
    std::vector<mpq_class> d(cols_, 0);
    d[enter] = 1;
    for (std::size_t i = 0; i < m_; ++i) d[basis_[i]] = -T_[i][enter];
    std::vector<Rational> out(lp_.num_variables());
    for (std::size_t k = 0; k < struct_cols_; ++k)
      if (sgn(d[k]) != 0) out[colmap_[k].var] += Rational(mpq_class(d[k] * colmap_[k].sign));
    return out;
  }

  const LinearProgram& lp_;
  std::vector<ColumnMap> colmap_;
  std::vector<Rational> offset_;
  std::size_t struct_cols_ = 0, art_begin_ = 0, cols_ = 0, m_ = 0;
  std::vector<std::vector<mpq_class>> T_;
  std::vector<mpq_class> obj_;
  std::vector<std::size_t> basis_;
  std::vector<int> flip_;
  std::vector<int> slack_sign_;
  std::vector<std::optional<std::size_t>> origin_;
};

int row_sign(Relation r) { return r == Relation::LessEq ? -1 : 1; }

// Upper bound on c.x over the feasible set implied by the multipliers, or
// nullopt when the combined row is unbounded over the variable box or a
// multiplier has the wrong sign.
std::optional<Rational> implied_upper_bound(const LinearProgram& lp, const std::vector<Rational>& c,
                                            const std::vector<Rational>& mult) {
  if (mult.size() != lp.num_constraints()) return std::nullopt;
  std::vector<Rational> h = c;
  Rational beta;
  for (std::size_t i = 0; i < mult.size(); ++i) {
    const auto& row = lp.constraints()[i];
    if (mult[i].is_zero()) continue;
    if (row.rel != Relation::Equal && mult[i].sign() < 0) return std::nullopt;
    const Rational w = mult[i] * Rational(row_sign(row.rel));
    for (const auto& t : row.terms) h[t.var] += w * t.coef;
    beta += w * row.rhs;
  }
  Rational m;
  for (std::size_t j = 0; j < h.size(); ++j) {
    const auto& v = lp.variables()[j];
    if (h[j].sign() > 0) {
      if (!v.upper) return std::nullopt;
      m += h[j] * *v.upper;
    } else if (h[j].sign() < 0) {
      if (!v.lower) return std::nullopt;
      m += h[j] * *v.lower;
    }
  }
  return m - beta;
}

bool satisfies(const LinearProgram& lp, const std::vector<Rational>& x) {
  if (x.size() != lp.num_variables()) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const auto& v = lp.variables()[j];
    if ((v.lower && x[j] < *v.lower) || (v.upper && x[j] > *v.upper)) return false;
  }
  for (const auto& row : lp.constraints()) {
    Rational lhs;
    for (const auto& t : row.terms) lhs += t.coef * x[t.var];
    const bool ok = row.rel == Relation::Equal ? lhs == row.rhs
                    : row.rel == Relation::LessEq ? lhs <= row.rhs
                                                  : lhs >= row.rhs;
    if (!ok) return false;
  }
  return true;
}

}  // namespace

Outcome solve(const LinearProgram& lp) {
  lp.validate();
  return Simplex(lp).run();
}

bool check_witness(const LinearProgram& lp, const Outcome& outcome) {
  const std::size_t n = lp.num_variables();
  const int orient = lp.sense() == Sense::Minimize ? -1 : 1;
  std::vector<Rational> c(n);
  if (lp.sense() != Sense::Feasibility) {
    for (const auto& t : lp.objective()) {
      if (t.var >= n) return false;
      c[t.var] += t.coef * Rational(orient);
    }
  }
  switch (outcome.status) {
    case Status::Optimal: {
      if (!satisfies(lp, outcome.witness)) return false;
      Rational value;
      for (std::size_t j = 0; j < n; ++j) value += c[j] * outcome.witness[j];
      if (lp.sense() == Sense::Feasibility) return outcome.objective_value.is_zero();
      if (value * Rational(orient) != outcome.objective_value) return false;
      const auto bound = implied_upper_bound(lp, c, outcome.dual);
      return bound && *bound == value;
    }
    case Status::Infeasible: {
      const auto bound = implied_upper_bound(lp, std::vector<Rational>(n), outcome.farkas);
      return bound && bound->sign() < 0;
    }
    case Status::Unbounded: {
      if (lp.sense() == Sense::Feasibility) return false;
      if (!satisfies(lp, outcome.witness) || outcome.ray.size() != n) return false;
      const auto& d = outcome.ray;
      for (std::size_t j = 0; j < n; ++j) {
        const auto& v = lp.variables()[j];
        if ((v.lower && d[j].sign() < 0) || (v.upper && d[j].sign() > 0)) return false;
      }
      for (const auto& row : lp.constraints()) {
        Rational lhs;
        for (const auto& t : row.terms) lhs += t.coef * d[t.var];
        const bool ok = row.rel == Relation::Equal ? lhs.is_zero()
                        : row.rel == Relation::LessEq ? lhs.sign() <= 0
                                                      : lhs.sign() >= 0;
        if (!ok) return false;
      }
      Rational gain;
      for (std::size_t j = 0; j < n; ++j) gain += c[j] * d[j];
      return gain.sign() > 0;
    }
  }
  return false;
}

void write_text(std::ostream& os, const LinearProgram& lp) {
  os << "sense " << to_string(lp.sense()) << '\n';
  if (lp.sense() != Sense::Feasibility) {
    os << "objective";
    for (const auto& t : lp.objective()) os << ' ' << t.coef << '*' << t.var;
    os << '\n';
  }
  for (std::size_t j = 0; j < lp.num_variables(); ++j) {
    const auto& v = lp.variables()[j];
    os << "var " << j << ' ' << (v.name.empty() ? "-" : v.name) << ' ' << (v.lower ? v.lower->str() : "-inf") << ' '
       << (v.upper ? v.upper->str() : "inf") << '\n';
  }
  for (const auto& row : lp.constraints()) {
    os << "row";
    for (const auto& t : row.terms) os << ' ' << t.coef << '*' << t.var;
    os << ' ' << to_string(row.rel) << ' ' << row.rhs << '\n';
  }
}

}  // namespace boxcert::lp
