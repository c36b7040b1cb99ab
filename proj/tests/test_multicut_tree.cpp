#include "doctest.h"

#include "gcover/generators.hpp"
#include "gcover/instance_io.hpp"
#include "gcover/multicut_tree.hpp"
#include "gcover/oracle.hpp"
#include "gcover/relaxation.hpp"

using namespace gcover;

namespace {

MulticutInstance mc(const std::string& text) {
  return std::get<MulticutInstance>(parse_instance(text));
}

// Centre 0 with leaves 1 (edge weight 1) and 2 (edge weight 2).
MulticutInstance two_leaf_star() {
  return mc("problem multicut-tree\nnodes 3\nedge 0 1 1\nedge 0 2 2\n"
            "demand 1 2 inf\n");
}

bool check_passed(const VerificationReport& rep, const std::string& name) {
  for (const Check& c : rep.checks) {
    if (c.name == name) return c.passed;
  }
  FAIL("missing check " << name);
  return false;
}

}  // namespace

TEST_CASE("prize-collecting reduction") {
  SUBCASE("infinite penalties are a no-op") {
    const auto inst = two_leaf_star();
    const auto red = reduce_prize_collecting(inst);
    CHECK(red.reduced == inst);
    CHECK(red.penalty_edge == std::vector<int>{-1});
  }
  SUBCASE("finite penalty adds a pendant pair") {
    const auto inst = mc("problem multicut-tree\nnodes 2\nedge 0 1 10\n"
                         "demand 0 1 5\n");
    const auto red = reduce_prize_collecting(inst);
    CHECK(red.reduced.graph.num_nodes() == 4);
    CHECK(red.reduced.graph.num_edges() == 3);
    CHECK(red.reduced.demands[0].t == 1);
    CHECK(red.reduced.demands[0].s == 3);
    CHECK(red.reduced.edge_weight[red.penalty_edge[0]] == 5);
    CHECK(red.reduced.edge_weight[red.big_m_edge[0]] == red.big_m);
    CHECK(red.big_m > 15);
  }
  SUBCASE("penalty edge maps back to a violated demand") {
    const auto inst = mc("problem multicut-tree\nnodes 2\nedge 0 1 10\n"
                         "demand 0 1 5\n");
    const auto r = solve_multicut_tree(inst);
    CHECK(r.solution.edges.empty());
    CHECK(r.solution.penalty == ExtRat(5));
    CHECK(r.solution.total == ExtRat(5));
  }
}

TEST_CASE("relaxable nodes") {
  // Path 0 - 1 - 2; demand 0 uses edge 0, demand 1 uses edges 0 and 1.
  const auto inst = mc("problem multicut-tree\nnodes 3\nnode 0 1\nnode 1 1\n"
                       "edge 0 1 0\nedge 1 2 5\ndemand 0 1 inf\ndemand 0 2 inf\n");
  MulticutState st(inst);
  SUBCASE("no earlier user") {
    CHECK_FALSE(st.relaxable(0, 1));
    CHECK(st.relaxable_set(1).empty());
  }
  SUBCASE("earlier user without a bottleneck") {
    st.set_xi(0, 1);
    st.set_mu(0, 0, 1);
    CHECK(st.feasible());
    CHECK(st.earlier_users(1, 0) == std::vector<int>{0});
    CHECK(st.relaxable(0, 1));
    CHECK(st.relaxable_set(1) == std::vector<int>{0});
  }
  SUBCASE("ends of a bottleneck block each other") {
    st.set_xi(0, 2);
    st.set_mu(0, 0, 1);
    st.set_mu(1, 0, 1);
    CHECK(st.feasible());
    CHECK(st.bottleneck(0, 0));
    CHECK_FALSE(st.relaxable(0, 1));
    CHECK_FALSE(st.relaxable(1, 1));
  }
}

TEST_CASE("two-leaf star") {
  const auto inst = two_leaf_star();
  const auto r = solve_multicut_tree(inst);
  CHECK(r.solution.edges == std::vector<int>{0});
  CHECK(r.solution.total == ExtRat(1));
  CHECK(r.dual.sum() == 1);
  CHECK(r.ratio == 1);
  CHECK(r.witness == std::vector<int>{0});
  CHECK(r.dual.nu.at({0, 0}) == 1);
  CHECK(verify_multicut(inst, r.reduced_edges, r.dual).ok());
}

TEST_CASE("zero weights") {
  const auto inst = mc("problem multicut-tree\nnodes 4\nedge 0 1 0\nedge 1 2 0\n"
                       "edge 1 3 0\ndemand 2 3 inf\ndemand 0 2 inf\n");
  const auto r = solve_multicut_tree(inst);
  CHECK(r.solution.total == ExtRat(0));
  CHECK(r.dual.sum() == 0);
  CHECK(r.ratio == 1);
  CHECK(uncovered_demands(inst, r.solution.edges).empty());
}

TEST_CASE("single demand keeps only its witness") {
  const auto inst = mc("problem multicut-tree\nnodes 4\nnode 1 2\nedge 0 1 3\n"
                       "edge 1 2 1\nedge 2 3 4\ndemand 0 3 inf\n");
  const auto r = solve_multicut_tree(inst);
  REQUIRE(r.reduced_edges.size() == 1);
  CHECK(r.reduced_edges[0] == r.witness[0]);
  CHECK(r.solution.total == brute_force_multicut(inst).total);
}

TEST_CASE("subdivided star") {
  const auto inst = subdivided_star_multicut(4);
  const auto r = solve_multicut_tree(inst);
  CHECK(r.solution.total >= ExtRat(3));
  CHECK(r.solution.total <= ExtRat(Rational(2 * r.dual.sum())));
  CHECK(uncovered_demands(inst, r.solution.edges).empty());
  const RootedTree t = inst.tree();
  for (const Demand& d : inst.demands) {
    int hits = 0;
    for (int e : t.path_edges(d.s, d.t)) {
      hits += std::binary_search(r.solution.edges.begin(), r.solution.edges.end(), e);
    }
    CHECK(hits <= 2);
  }
  CHECK(check_passed(r.structure, "one-edge-per-side"));
}

TEST_CASE("verification rejects bad certificates") {
  const auto inst = two_leaf_star();
  const auto r = solve_multicut_tree(inst);
  CHECK_FALSE(check_passed(verify_multicut(inst, {}, r.dual), "demands-cut"));

  MulticutDual over = r.dual;
  over.xi[0] = 3;
  over.nu[{0, 0}] = 3;
  CHECK_FALSE(check_passed(verify_multicut(inst, r.reduced_edges, over),
                           "dual-feasible"));
}

TEST_CASE("random trees: bound, weak duality and determinism") {
  GenParams p;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    CAPTURE(seed);
    p.nodes = 2 + static_cast<int>(seed % 10);
    p.demands = 1 + static_cast<int>(seed % 5);
    p.inf_num = static_cast<long>(seed % 3);
    p.inf_den = 4;
    const auto inst =
        std::get<MulticutInstance>(gen_instance("random-tree-multicut", p, seed));
    CAPTURE(serialize_instance(inst));
    const auto r = solve_multicut_tree(inst);
    CHECK(verify_multicut(inst, r.reduced_edges, r.dual).ok());
    const ExtRat opt = brute_force_multicut(inst).total;
    REQUIRE(opt.is_finite());
    CHECK(opt <= r.solution.total);
    CHECK(r.solution.total <= ExtRat(Rational(2 * opt.finite())));
    CHECK(r.dual.sum() <= opt.finite());

    const auto again = solve_multicut_tree(inst);
    CHECK(again.reduced_edges == r.reduced_edges);
    CHECK(again.dual.xi == r.dual.xi);
    CHECK(again.dual.nu == r.dual.nu);
    CHECK(again.dual.mu == r.dual.mu);
  }
}
