#include "doctest.h"

#include <numeric>

#include "gcover/eds_tree.hpp"
#include "gcover/errors.hpp"
#include "gcover/generators.hpp"
#include "gcover/instance_io.hpp"
#include "gcover/oracle.hpp"
#include "gcover/relaxation.hpp"

using namespace gcover;

namespace {

EdsInstance eds(const std::string& text) {
  return std::get<EdsInstance>(parse_instance(text));
}

EdsInstance star(const std::string& p1, const std::string& p2) {
  return eds("problem eds-tree\nnodes 3\nnode 0 3\nedge 0 1 1 " + p1 +
             "\nedge 0 2 5 " + p2 + "\n");
}

Rational sum(const std::vector<Rational>& xs) {
  return std::accumulate(xs.begin(), xs.end(), Rational(0));
}

}  // namespace

TEST_CASE("two-leaf star") {
  SUBCASE("penalties win") {
    const auto r = solve_eds_tree(star("2", "1"));
    CHECK(r.solution.edges.empty());
    CHECK(r.solution.total == ExtRat(3));
    CHECK(r.xi == std::vector<Rational>{2, 1});
  }
  SUBCASE("one edge dominates") {
    const auto r = solve_eds_tree(star("2", "3"));
    CHECK(r.solution.edges == std::vector<int>{0});
    CHECK(r.solution.total == ExtRat(4));
    CHECK(sum(r.xi) == 4);
  }
  SUBCASE("infinite penalty forces coverage") {
    const auto r = solve_eds_tree(star("inf", "0"));
    CHECK_FALSE(r.solution.edges.empty());
    CHECK(r.solution.total == ExtRat(4));
  }
}

TEST_CASE("zero penalties give the empty solution") {
  GenParams p;
  p.penalty_hi = 0;
  p.inf_num = 0;
  p.nodes = 9;
  const auto inst = std::get<EdsInstance>(gen_instance("random-tree-eds", p, 4));
  const auto r = solve_eds_tree(inst);
  CHECK(r.solution.edges.empty());
  CHECK(r.solution.total == ExtRat(0));
  CHECK(sum(r.xi) == 0);
}

TEST_CASE("free single edge is taken") {
  const auto r = solve_eds_tree(eds("problem eds-tree\nnodes 2\nedge 0 1 0 5\n"));
  CHECK(r.solution.edges == std::vector<int>{0});
  CHECK(sum(r.xi) == 0);
}

TEST_CASE("reduce and lift cases") {
  SUBCASE("path with a deep positive penalty") {
    const auto inst =
        eds("problem eds-tree\nnodes 3\nedge 0 1 0 0\nedge 1 2 0 5\n");
    const auto r = solve_eds_tree(inst);
    CHECK(r.solution.total == ExtRat(0));
    CHECK(r.case_a_steps >= 1);
  }
  SUBCASE("caterpillar keeps the graph") {
    // r - v0 - u, u carries two leaves with penalty 1; w(u) = 10.
    const auto inst = eds(
        "problem eds-tree\nnodes 5\nnode 2 10\nedge 0 1 0 0\nedge 1 2 0 0\n"
        "edge 2 3 0 1\nedge 2 4 0 1\n");
    const auto r = solve_eds_tree(inst);
    CHECK(r.solution.total == ExtRat(2));
    CHECK(r.solution.total == brute_force_eds(inst).total);
    CHECK(r.xi[2] == 1);
    CHECK(r.xi[3] == 1);
  }
  SUBCASE("grandparent step on a path") {
    const auto inst = eds(
        "problem eds-tree\nnodes 4\nnode 0 1\nnode 1 1\nnode 2 1\nnode 3 1\n"
        "edge 0 1 1 1\nedge 1 2 1 1\nedge 2 3 1 0\n");
    const auto r = solve_eds_tree(inst);
    CHECK(r.solution.total == brute_force_eds(inst).total);
    CHECK(r.case_b_steps >= 1);
  }
}

TEST_CASE("non-tree input is rejected") {
  auto general = eds("problem eds-general\nnodes 3\nedge 0 1 1 1\nedge 1 2 1 1\n"
                     "edge 0 2 1 1\n");
  CHECK_THROWS_AS(solve_eds_tree(general), UsageError);
}

TEST_CASE("verification") {
  const auto inst = star("2", "3");
  const auto r = solve_eds_tree(inst);
  CHECK(verify_eds_optimality(inst, r.solution.edges, r.xi).ok());

  // Dual sum 5 exceeds the optimum 4.
  const auto bad = verify_eds_optimality(inst, {0, 1}, {2, 3});
  CHECK_FALSE(bad.ok());
  bool completion_failed = false;
  for (const Check& c : bad.checks) {
    if (c.name == "dual-completion-feasible") completion_failed = !c.passed;
  }
  CHECK(completion_failed);

  const auto zero = eds("problem eds-tree\nnodes 3\nedge 0 1 1 0\nedge 1 2 1 0\n");
  CHECK(verify_eds_optimality(zero, {}, {0, 0}).ok());
}

TEST_CASE("random trees match brute force") {
  GenParams p;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    p.nodes = 2 + static_cast<int>(seed % 12);
    p.inf_num = static_cast<long>(seed % 3);
    const auto inst = std::get<EdsInstance>(gen_instance("random-tree-eds", p, seed));
    CAPTURE(seed);
    CAPTURE(serialize_instance(inst));
    const auto res = solve_eds_tree(inst);
    CHECK(res.solution.total == brute_force_eds(inst).total);
    CHECK(res.solution.total == ExtRat(sum(res.xi)));
    CHECK(complete_eds_dual(inst, res.xi).has_value());
  }
}
