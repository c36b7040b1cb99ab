#include <sstream>

#include "gcover/errors.hpp"
#include "gcover/lp.hpp"

namespace gcover::lp {

int LpModel::add_variable(std::string name, bool nonnegative) {
  variables_.push_back({std::move(name), nonnegative});
  return static_cast<int>(variables_.size()) - 1;
}

void LpModel::add_constraint(LinearExpr expr, Relation relation, Rational rhs) {
  constraints_.push_back({std::move(expr), relation, std::move(rhs)});
}

void LpModel::set_objective(Sense sense, LinearExpr expr) {
  sense_ = sense;
  objective_ = std::move(expr);
}

void LpModel::validate() const {
  const auto check = [&](const LinearExpr& expr, const std::string& where) {
    for (const Term& t : expr) {
      if (t.var < 0 || t.var >= num_variables()) {
        throw FormatError(where + " references undeclared variable " +
                          std::to_string(t.var));
      }
    }
  };
  check(objective_, "objective");
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    check(constraints_[i].expr, "constraint " + std::to_string(i));
  }
}

namespace {

void write_expr(std::ostream& os, const LpModel& m, const LinearExpr& expr) {
  if (expr.empty()) {
    os << "0";
    return;
  }
  bool first = true;
  for (const Term& t : expr) {
    if (!first) os << (sgn(t.coef) < 0 ? " - " : " + ");
    else if (sgn(t.coef) < 0) os << "-";
    first = false;
    Rational a = abs(t.coef);
    if (a != 1) os << gcover::to_string(a) << " ";
    os << m.variables()[t.var].name;
  }
}

}  // namespace

std::string LpModel::to_listing() const {
  std::ostringstream os;
  os << (sense_ == Sense::kMinimize ? "minimize " : "maximize ");
  write_expr(os, *this, objective_);
  os << "\nsubject to\n";
  for (const Constraint& c : constraints_) {
    os << "  ";
    write_expr(os, *this, c.expr);
    switch (c.relation) {
      case Relation::kLessEqual: os << " <= "; break;
      case Relation::kGreaterEqual: os << " >= "; break;
      case Relation::kEqual: os << " = "; break;
    }
    os << gcover::to_string(c.rhs) << "\n";
  }
  os << "bounds\n";
  for (const Variable& v : variables_) {
    os << "  " << v.name << (v.nonnegative ? " >= 0" : " free") << "\n";
  }
  return os.str();
}

Rational evaluate(const LinearExpr& expr, const std::vector<Rational>& x) {
  Rational s = 0;
  for (const Term& t : expr) s += t.coef * x[t.var];
  return s;
}

bool is_feasible(const LpModel& model, const std::vector<Rational>& x) {
  if (static_cast<int>(x.size()) != model.num_variables()) return false;
  for (int j = 0; j < model.num_variables(); ++j) {
    if (model.variables()[j].nonnegative && sgn(x[j]) < 0) return false;
  }
  for (const Constraint& c : model.constraints()) {
    const int d = cmp(evaluate(c.expr, x), c.rhs);
    switch (c.relation) {
      case Relation::kLessEqual: if (d > 0) return false; break;
      case Relation::kGreaterEqual: if (d < 0) return false; break;
      case Relation::kEqual: if (d != 0) return false; break;
    }
  }
  return true;
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "?";
}

}  // namespace gcover::lp
