#include "doctest.h"

#include "gcover/errors.hpp"
#include "gcover/generators.hpp"
#include "gcover/instance_io.hpp"
#include "gcover/lp.hpp"
#include "gcover/oracle.hpp"
#include "gcover/rational.hpp"
#include "gcover/relaxation.hpp"

using namespace gcover;
using lp::LpModel;
using lp::LpStatus;
using lp::Relation;
using lp::Sense;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

Rational solve(const LpModel& m) {
  const auto r = lp::simplex_solve(m);
  REQUIRE(r.status == LpStatus::kOptimal);
  return r.value;
}

template <class I>
Rational relax(const I& inst, RelaxationKind kind) {
  return solve(build_relaxation(inst, kind).model);
}

EdsInstance eds_text(const char* text) {
  return std::get<EdsInstance>(parse_instance(text));
}

// Two leaves around a root of weight 3; edges weigh 1 and 5.
EdsInstance two_leaf_star(const char* p1 = "2", const char* p2 = "1",
                          const char* w = "3", const char* w1 = "1",
                          const char* w2 = "5") {
  std::string t = "problem eds-tree\nnodes 3\nnode 0 " + std::string(w) +
                  "\nedge 0 1 " + w1 + " " + p1 + "\nedge 0 2 " + w2 + " " +
                  p2 + "\n";
  return eds_text(t.c_str());
}

EdsInstance scaled(EdsInstance inst, const Rational& c) {
  for (auto& w : inst.node_weight) w *= c;
  for (auto& w : inst.edge_weight) w *= c;
  for (auto& p : inst.penalty) {
    if (p.is_finite()) p = ExtRat(Rational(p.finite() * c));
  }
  return inst;
}

}  // namespace

TEST_CASE("ExtRat arithmetic and order") {
  const ExtRat inf = ExtRat::infinity();
  CHECK((inf + ExtRat(q(3))).is_infinite());
  CHECK(ExtRat(q(1000000)) < inf);
  CHECK_THROWS_AS(inf * Rational(0), InternalError);
  CHECK((inf * Rational(2)).is_infinite());
  CHECK(to_string(ExtRat(q(6, 4))) == "3/2");
  CHECK(to_string(q(-4, 2)) == "-2");
  CHECK(parse_ext_rational("inf").is_infinite());
  CHECK(parse_rational("10/4") == q(5, 2));
  CHECK(harmonic(3) == q(11, 6));
}

TEST_CASE("simplex on small models") {
  SUBCASE("single binding row") {
    LpModel m;
    const int x = m.add_variable("x");
    m.add_constraint({{x, 1}}, Relation::kGreaterEqual, 3);
    m.set_objective(Sense::kMinimize, {{x, 1}});
    const auto r = lp::simplex_solve(m);
    REQUIRE(r.status == LpStatus::kOptimal);
    CHECK(r.value == 3);
    CHECK(r.assignment[x] == 3);
  }
  SUBCASE("objective equals capacity") {
    LpModel m;
    const int x = m.add_variable("x");
    const int y = m.add_variable("y");
    m.add_constraint({{x, 1}, {y, 1}}, Relation::kLessEqual, q(5, 2));
    m.set_objective(Sense::kMaximize, {{x, 1}, {y, 1}});
    CHECK(solve(m) == q(5, 2));
  }
  SUBCASE("contradictory bounds") {
    LpModel m;
    const int x = m.add_variable("x");
    m.add_constraint({{x, 1}}, Relation::kGreaterEqual, 1);
    m.add_constraint({{x, 1}}, Relation::kLessEqual, 0);
    m.set_objective(Sense::kMinimize, {});
    CHECK(lp::simplex_solve(m).status == LpStatus::kInfeasible);
  }
  SUBCASE("unbounded") {
    LpModel m;
    const int x = m.add_variable("x");
    m.set_objective(Sense::kMaximize, {{x, 1}});
    CHECK(lp::simplex_solve(m).status == LpStatus::kUnbounded);
  }
  SUBCASE("free variable and equality") {
    LpModel m;
    const int x = m.add_variable("x", false);
    const int y = m.add_variable("y");
    m.add_constraint({{x, 1}, {y, 1}}, Relation::kEqual, -2);
    m.set_objective(Sense::kMaximize, {{x, 1}});
    const auto r = lp::simplex_solve(m);
    REQUIRE(r.status == LpStatus::kOptimal);
    CHECK(r.value == -2);
    CHECK(lp::is_feasible(m, r.assignment));
  }
  SUBCASE("undeclared variable") {
    LpModel m;
    m.add_variable("x");
    m.add_constraint({{3, 1}}, Relation::kLessEqual, 1);
    CHECK_THROWS_AS(lp::simplex_solve(m), FormatError);
  }
}

TEST_CASE("gap instances") {
  const EdsInstance star = star_gap_eds(4);
  CHECK(relax(star, RelaxationKind::kNatural) == q(1, 4));
  CHECK(relax(star, RelaxationKind::kStrengthened) == 1);
  const MulticutInstance sub = subdivided_star_multicut(4);
  CHECK(relax(sub, RelaxationKind::kNatural) <= 1);
  CHECK_THROWS_AS(build_relaxation(star, RelaxationKind::kEdgeCover),
                  UsageError);
}

TEST_CASE("edge cover relaxation rows") {
  EdgeCoverInstance ec;
  ec.graph = Graph(3, {{0, 1}, {1, 2}});
  ec.demand = {true, false, true};
  ec.node_weight = {0, 2, 0};
  ec.edge_weight = {1, 1};
  // Both demand nodes hang off node 1: x(1) = 1 once either edge is used.
  CHECK(relax(ec, RelaxationKind::kEdgeCover) == 4);
  CHECK_THROWS_AS(build_relaxation(ec, RelaxationKind::kNatural), UsageError);
}

TEST_CASE("dual completion") {
  SUBCASE("zero dual") {
    const EdsInstance inst = two_leaf_star();
    const auto c = complete_eds_dual(inst, {0, 0});
    REQUIRE(c.has_value());
    CHECK(check_eds_dual(inst, {0, 0}, *c));
  }
  SUBCASE("star with sum 4") {
    const EdsInstance inst = two_leaf_star("2", "3");
    const std::vector<Rational> xi{2, 2};
    const auto c = complete_eds_dual(inst, xi);
    REQUIRE(c.has_value());
    CHECK(check_eds_dual(inst, xi, *c));
  }
  SUBCASE("zero capacities") {
    const EdsInstance inst = two_leaf_star("2", "3", "0", "0", "0");
    CHECK_FALSE(complete_eds_dual(inst, {1, 0}).has_value());
  }
  SUBCASE("xi above penalty") {
    const EdsInstance inst = two_leaf_star("2", "3");
    CHECK_THROWS_AS(complete_eds_dual(inst, {3, 0}), UsageError);
  }
}

TEST_CASE("natural <= strengthened <= optimum on random trees") {
  GenParams p;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    CAPTURE(seed);
    p.nodes = 2 + static_cast<int>(seed % 8);
    const auto eds = std::get<EdsInstance>(gen_instance("random-tree-eds", p, seed));
    const Rational nat = relax(eds, RelaxationKind::kNatural);
    const Rational str = relax(eds, RelaxationKind::kStrengthened);
    CHECK(nat <= str);
    CHECK(ExtRat(str) <= brute_force_eds(eds).total);

    p.demands = 1 + static_cast<int>(seed % 4);
    const auto mc =
        std::get<MulticutInstance>(gen_instance("random-tree-multicut", p, seed));
    const Rational mnat = relax(mc, RelaxationKind::kNatural);
    const Rational mstr = relax(mc, RelaxationKind::kStrengthened);
    CHECK(mnat <= mstr);
    CHECK(ExtRat(mstr) <= brute_force_multicut(mc).total);
  }
}

TEST_CASE("scaling and determinism") {
  GenParams p;
  p.nodes = 7;
  const auto eds = std::get<EdsInstance>(gen_instance("random-tree-eds", p, 11));
  const Rational c = q(7, 3);
  for (auto kind : {RelaxationKind::kNatural, RelaxationKind::kStrengthened}) {
    CHECK(relax(scaled(eds, c), kind) == c * relax(eds, kind));
  }
  const auto model = build_relaxation(eds, RelaxationKind::kStrengthened).model;
  const auto a = lp::simplex_solve(model);
  const auto b = lp::simplex_solve(model);
  CHECK(a.assignment == b.assignment);
  CHECK(model.to_listing() ==
        build_relaxation(eds, RelaxationKind::kStrengthened).model.to_listing());
}
