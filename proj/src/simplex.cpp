#include <algorithm>
#include <vector>

#include "gcover/errors.hpp"
#include "gcover/lp.hpp"

namespace gcover::lp {

namespace {

// Standard-form tableau: minimize c.x subject to A x = b, x >= 0, b >= 0.
// Columns are the split model variables, then slacks/surpluses, then
// artificials. Only the constraint rows are stored; reduced costs are kept
// in a separate row and updated by the same pivots.
class Tableau {
 public:
  Tableau(int rows, int cols)
      : a_(rows, std::vector<Rational>(cols)), b_(rows), basis_(rows, -1),
        cost_row_(cols) {}

  int rows() const { return static_cast<int>(a_.size()); }
  int cols() const { return static_cast<int>(cost_row_.size()); }

  Rational& at(int r, int c) { return a_[r][c]; }
  Rational& rhs(int r) { return b_[r]; }
  int& basis(int r) { return basis_[r]; }

  // Installs objective c (per column) and prices out the basis.
  void set_cost(const std::vector<Rational>& c) {
    cost_row_ = c;
    cost_value_ = 0;
    for (int r = 0; r < rows(); ++r) {
      const Rational& cb = c[basis_[r]];
      if (sgn(cb) == 0) continue;
      for (int j = 0; j < cols(); ++j) {
        if (sgn(a_[r][j]) != 0) cost_row_[j] -= cb * a_[r][j];
      }
      cost_value_ -= cb * b_[r];
    }
  }

  // Objective value of the current basic solution.
  Rational objective_value() const { return -cost_value_; }

  void pivot(int pr, int pc) {
    std::vector<Rational>& prow = a_[pr];
    const Rational inv = 1 / prow[pc];
    std::vector<int> nz;
    for (int j = 0; j < cols(); ++j) {
      if (sgn(prow[j]) != 0) {
        prow[j] *= inv;
        nz.push_back(j);
      }
    }
    b_[pr] *= inv;
    const auto eliminate = [&](std::vector<Rational>& row, Rational& rhs) {
      if (sgn(row[pc]) == 0) return;
      const Rational f = row[pc];
      for (int j : nz) row[j] -= f * prow[j];
      rhs -= f * b_[pr];
    };
    for (int r = 0; r < rows(); ++r) {
      if (r != pr) eliminate(a_[r], b_[r]);
    }
    eliminate(cost_row_, cost_value_);
    basis_[pr] = pc;
  }

  // Runs Bland's rule over columns for which allowed[j] is true.
  // Returns false when the objective is unbounded below.
  bool optimize(const std::vector<bool>& allowed) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < cols(); ++j) {
        if (allowed[j] && sgn(cost_row_[j]) < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (int r = 0; r < rows(); ++r) {
        if (sgn(a_[r][enter]) <= 0) continue;
        Rational ratio = b_[r] / a_[r][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis_[r] < basis_[leave])) {
          leave = r;
          best = std::move(ratio);
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  void drop_row(int r) {
    a_.erase(a_.begin() + r);
    b_.erase(b_.begin() + r);
    basis_.erase(basis_.begin() + r);
  }

  std::vector<Rational> column_values() const {
    std::vector<Rational> x(cols());
    for (int r = 0; r < rows(); ++r) x[basis_[r]] = b_[r];
    return x;
  }

 private:
  std::vector<std::vector<Rational>> a_;
  std::vector<Rational> b_;
  std::vector<int> basis_;
  std::vector<Rational> cost_row_;
  Rational cost_value_;  // negated objective value
};

}  // namespace

LpResult simplex_solve(const LpModel& model) {
  model.validate();
  const int n = model.num_variables();
  const int m = model.num_constraints();

  // Column layout for model variables: x = x+ (col pos[j]) - x- (col neg[j]).
  std::vector<int> pos(n), neg(n, -1);
  int cols = 0;
  for (int j = 0; j < n; ++j) {
    pos[j] = cols++;
    if (!model.variables()[j].nonnegative) neg[j] = cols++;
  }
  const int structural = cols;

  // Normalize every row to rhs >= 0. A ">= 0" row is flipped to "<= 0" so
  // its slack can start in the basis.
  struct Row {
    std::vector<std::pair<int, Rational>> coefs;
    Relation rel;
    Rational rhs;
  };
  std::vector<Row> rows(m);
  for (int i = 0; i < m; ++i) {
    const Constraint& c = model.constraints()[i];
    Row& row = rows[i];
    std::vector<Rational> acc(structural);
    for (const Term& t : c.expr) {
      acc[pos[t.var]] += t.coef;
      if (neg[t.var] >= 0) acc[neg[t.var]] -= t.coef;
    }
    row.rel = c.relation;
    row.rhs = c.rhs;
    bool flip = sgn(row.rhs) < 0 ||
                (sgn(row.rhs) == 0 && row.rel == Relation::kGreaterEqual);
    if (flip) {
      row.rhs = -row.rhs;
      if (row.rel == Relation::kLessEqual) row.rel = Relation::kGreaterEqual;
      else if (row.rel == Relation::kGreaterEqual) row.rel = Relation::kLessEqual;
    }
    for (int j = 0; j < structural; ++j) {
      if (sgn(acc[j]) != 0) row.coefs.emplace_back(j, flip ? -acc[j] : acc[j]);
    }
  }

  int slack_count = 0;
  int artificial_count = 0;
  for (const Row& row : rows) {
    if (row.rel != Relation::kEqual) ++slack_count;
    if (row.rel != Relation::kLessEqual) ++artificial_count;
  }
  const int first_artificial = structural + slack_count;
  const int total = first_artificial + artificial_count;

  Tableau tab(m, total);
  int next_slack = structural;
  int next_art = first_artificial;
  for (int i = 0; i < m; ++i) {
    const Row& row = rows[i];
    for (const auto& [j, v] : row.coefs) tab.at(i, j) = v;
    tab.rhs(i) = row.rhs;
    if (row.rel == Relation::kLessEqual) {
      tab.at(i, next_slack) = 1;
      tab.basis(i) = next_slack++;
    } else {
      if (row.rel == Relation::kGreaterEqual) tab.at(i, next_slack++) = -1;
      tab.at(i, next_art) = 1;
      tab.basis(i) = next_art++;
    }
  }

  LpResult result;
  std::vector<bool> allowed(total, true);

  if (artificial_count > 0) {
    std::vector<Rational> phase1(total);
    for (int j = first_artificial; j < total; ++j) phase1[j] = 1;
    tab.set_cost(phase1);
    GCOVER_CHECK(tab.optimize(allowed), "phase one cannot be unbounded");
    if (sgn(tab.objective_value()) > 0) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
    // Drive zero-level artificials out of the basis; rows where that is
    // impossible are linearly dependent and dropped.
    for (int r = tab.rows() - 1; r >= 0; --r) {
      if (tab.basis(r) < first_artificial) continue;
      int enter = -1;
      for (int j = 0; j < first_artificial; ++j) {
        if (sgn(tab.at(r, j)) != 0) {
          enter = j;
          break;
        }
      }
      if (enter >= 0) tab.pivot(r, enter);
      else tab.drop_row(r);
    }
    for (int j = first_artificial; j < total; ++j) allowed[j] = false;
  }

  std::vector<Rational> cost(total);
  const bool maximize = model.sense() == Sense::kMaximize;
  for (const Term& t : model.objective()) {
    const Rational c = maximize ? Rational(-t.coef) : t.coef;
    cost[pos[t.var]] += c;
    if (neg[t.var] >= 0) cost[neg[t.var]] -= c;
  }
  tab.set_cost(cost);
  if (!tab.optimize(allowed)) {
    result.status = LpStatus::kUnbounded;
    return result;
  }

  const std::vector<Rational> colv = tab.column_values();
  result.status = LpStatus::kOptimal;
  result.assignment.resize(n);
  for (int j = 0; j < n; ++j) {
    result.assignment[j] = colv[pos[j]];
    if (neg[j] >= 0) result.assignment[j] -= colv[neg[j]];
  }
  result.value = evaluate(model.objective(), result.assignment);
  const Rational tableau_value =
      maximize ? Rational(-tab.objective_value()) : tab.objective_value();
  GCOVER_CHECK(result.value == tableau_value,
               "simplex objective does not match assignment");
  GCOVER_CHECK(is_feasible(model, result.assignment),
               "simplex assignment violates a constraint");
  return result;
}

}  // namespace gcover::lp
