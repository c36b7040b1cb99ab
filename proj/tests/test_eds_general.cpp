#include "doctest.h"

#include <set>

#include "gcover/eds_general.hpp"
#include "gcover/generators.hpp"
#include "gcover/instance_io.hpp"
#include "gcover/oracle.hpp"
#include "gcover/reductions.hpp"

using namespace gcover;

namespace {

EdsInstance eds(const std::string& text) {
  return std::get<EdsInstance>(parse_instance(text));
}

// Classical greedy set cover by cost per newly covered element; ties to
// the lower set index.
Rational greedy_set_cover(const SetCoverInstance& sc) {
  std::set<int> left;
  for (int v = 0; v < sc.ground_size; ++v) left.insert(v);
  std::vector<bool> used(sc.sets.size(), false);
  Rational cost = 0;
  while (!left.empty()) {
    int best = -1;
    Rational best_ratio;
    for (std::size_t s = 0; s < sc.sets.size(); ++s) {
      if (used[s]) continue;
      int fresh = 0;
      for (int v : sc.sets[s].members) fresh += static_cast<int>(left.count(v));
      if (fresh == 0) continue;
      const Rational ratio = sc.sets[s].cost / fresh;
      if (best < 0 || ratio < best_ratio) {
        best = static_cast<int>(s);
        best_ratio = ratio;
      }
    }
    if (best < 0) break;
    used[best] = true;
    cost += sc.sets[best].cost;
    for (int v : sc.sets[best].members) left.erase(v);
  }
  return cost;
}

}  // namespace

TEST_CASE("edge cover construction") {
  SUBCASE("zero point has no demand nodes") {
    const auto inst = eds("problem eds-general\nnodes 3\nedge 0 1 1 1\nedge 1 2 1 1\n");
    const auto b = build_edge_cover_instance(inst, {0, 0});
    CHECK(std::count(b.thresholded.demand.begin(), b.thresholded.demand.end(), true) == 0);
    CHECK(covers(b.reduced, {}));
  }
  SUBCASE("triangle at one half") {
    const auto inst = eds("problem eds-general\nnodes 3\nnode 0 4\nedge 0 1 1 1\n"
                          "edge 1 2 2 1\nedge 0 2 3 1\n");
    const Rational h(1, 2);
    const auto b = build_edge_cover_instance(inst, {h, h, h});
    CHECK(b.thresholded.demand == std::vector<bool>{true, true, true});
    CHECK(b.reduced.graph.num_nodes() == 6);
    CHECK(b.reduced.graph.num_edges() == 6);
    CHECK(b.origin_edge == std::vector<int>{0, 0, 1, 1, 2, 2});
    CHECK(b.reduced.node_weight == std::vector<Rational>{0, 0, 0, 1, 2, 3});
  }
  SUBCASE("star gap point picks the centre") {
    const EdsInstance star = star_gap_eds(4);
    const auto lp = solve_eds_relaxation(star);
    CHECK(lp.value == 1);
    CHECK(lp.x_node[0] == 1);
    const auto b = build_edge_cover_instance(star, lp.x_edge);
    CHECK(b.thresholded.demand[0]);
  }
}

TEST_CASE("greedy facility location") {
  SUBCASE("cheaper ratio wins") {
    FacilityLocationInstance fl;
    fl.opening = {1, 10};
    fl.connection = {{ExtRat(1), ExtRat(0)}};
    const auto r = greedy_facility_location(fl);
    CHECK(r.open == std::vector<int>{0});
    CHECK(r.assignment == std::vector<int>{0});
    CHECK(r.cost == ExtRat(2));
  }
  SUBCASE("single free facility") {
    FacilityLocationInstance fl;
    fl.opening = {0};
    fl.connection = {{ExtRat(2)}, {ExtRat(3)}, {ExtRat(0)}};
    CHECK(greedy_facility_location(fl).cost == ExtRat(5));
  }
  SUBCASE("no clients") {
    FacilityLocationInstance fl;
    fl.opening = {3};
    const auto r = greedy_facility_location(fl);
    CHECK(r.cost == ExtRat(0));
    CHECK(r.open.empty());
  }
  SUBCASE("unreachable client") {
    FacilityLocationInstance fl;
    fl.opening = {1};
    fl.connection = {{ExtRat::infinity()}};
    const auto r = greedy_facility_location(fl);
    CHECK(r.cost.is_infinite());
    CHECK(r.assignment == std::vector<int>{0});
  }
  SUBCASE("set cover encoding follows classical greedy") {
    GenParams p;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      CAPTURE(seed);
      p.nodes = 1 + static_cast<int>(seed % 5);
      p.sets = 1 + static_cast<int>(seed % 4);
      const auto sc = std::get<SetCoverInstance>(gen_instance("random-set-cover", p, seed));
      const auto r = greedy_facility_location(as_facility_location(sc));
      if (brute_force_cover(sc).is_finite()) {
        CHECK(r.cost == ExtRat(greedy_set_cover(sc)));
      } else {
        CHECK(r.cost.is_infinite());
      }
    }
  }
}

TEST_CASE("pipeline examples") {
  SUBCASE("tree instance") {
    GenParams p;
    p.nodes = 7;
    const auto tree = std::get<EdsInstance>(gen_instance("random-tree-eds", p, 3));
    EdsInstance general = tree;
    general.root.reset();
    const auto r = solve_eds_general(general);
    CHECK(r.bounds.ok());
    CHECK(r.solution.total <= ExtRat(Rational(r.factor * r.lp.value)));
  }
  SUBCASE("free penalties") {
    GenParams p;
    p.nodes = 6;
    p.edges = 8;
    p.penalty_hi = 0;
    p.inf_num = 0;
    const auto inst = std::get<EdsInstance>(gen_instance("random-graph-eds", p, 2));
    const auto r = solve_eds_general(inst);
    CHECK(r.solution.edges.empty());
    CHECK(r.solution.total == ExtRat(0));
    CHECK(r.demand_nodes.empty());
  }
  SUBCASE("three-set cover") {
    SetCoverInstance sc;
    sc.ground_size = 4;
    sc.sets = {{3, {0, 1}}, {3, {2, 3}}, {5, {0, 1, 2, 3}}};
    const auto red = reduce_to_eds(sc);
    const auto r = solve_eds_general(red.eds);
    const ExtRat opt = brute_force_cover(sc);
    CHECK(r.solution.total <= ExtRat(Rational(4 * harmonic(3) * opt.finite())));
  }
}

TEST_CASE("random graphs: bounds hold against brute force") {
  GenParams p;
  int solved = 0;
  for (std::uint64_t seed = 0; seed < 150 && solved < 100; ++seed) {
    p.nodes = 3 + static_cast<int>(seed % 5);
    p.edges = 2 + static_cast<int>(seed % 7);
    p.inf_num = static_cast<long>(seed % 3);
    p.inf_den = 4;
    if (p.edges > p.nodes * (p.nodes - 1) / 2) continue;
    ++solved;
    const auto inst = std::get<EdsInstance>(gen_instance("random-graph-eds", p, seed));
    CAPTURE(seed);
    const auto r = solve_eds_general(inst);
    for (const Check& c : r.bounds.checks) {
      CAPTURE(c.detail);
      CHECK_MESSAGE(c.passed, c.name);
    }
    const ExtRat opt = brute_force_eds(inst).total;
    CHECK(ExtRat(r.lp.value) <= opt);
    CHECK(r.solution.total <= ExtRat(Rational(r.factor * opt.finite())));
    CHECK(verify_eds_general(inst, r.solution.edges, r.lp.value).ok());
  }
  CHECK(solved == 100);
}
