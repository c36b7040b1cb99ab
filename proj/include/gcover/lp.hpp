#pragma once

#include <string>
#include <vector>

#include "gcover/rational.hpp"

namespace gcover::lp {

enum class Relation { kLessEqual, kGreaterEqual, kEqual };
enum class Sense { kMinimize, kMaximize };

struct Term {
  int var;
  Rational coef;
};
using LinearExpr = std::vector<Term>;

struct Variable {
  std::string name;
  bool nonnegative = true;
};

struct Constraint {
  LinearExpr expr;
  Relation relation;
  Rational rhs;
};

// An exact linear program. Coefficients are finite rationals; callers that
// model +inf costs or bounds must eliminate them before building the model.
class LpModel {
 public:
  int add_variable(std::string name, bool nonnegative = true);
  void add_constraint(LinearExpr expr, Relation relation, Rational rhs);
  void set_objective(Sense sense, LinearExpr expr);

  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  Sense sense() const { return sense_; }
  const LinearExpr& objective() const { return objective_; }

  // Throws FormatError when a term references an undeclared variable.
  void validate() const;

  // Debug listing, one constraint per line with rationals as "p/q".
  std::string to_listing() const;

 private:
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  Sense sense_ = Sense::kMinimize;
  LinearExpr objective_;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  Rational value;                    // meaningful only when optimal
  std::vector<Rational> assignment;  // one entry per model variable
};

// Two-phase dense tableau simplex over exact rationals with Bland's rule.
// The returned assignment is a basic solution that satisfies every
// constraint exactly; this is re-checked before returning.
LpResult simplex_solve(const LpModel& model);

Rational evaluate(const LinearExpr& expr, const std::vector<Rational>& x);
// True when x satisfies every constraint and sign restriction exactly.
bool is_feasible(const LpModel& model, const std::vector<Rational>& x);

const char* to_string(LpStatus status);

}  // namespace gcover::lp
