#include "doctest.h"

#include "gcover/errors.hpp"
#include "gcover/generators.hpp"
#include "gcover/instance_io.hpp"
#include "gcover/oracle.hpp"
#include "gcover/reductions.hpp"
#include "gcover/relaxation.hpp"

using namespace gcover;

TEST_CASE("parse") {
  const auto small = std::get<EdsInstance>(
      parse_instance("problem eds-tree\nnodes 2\nedge 0 1 1 2\n"));
  const RootedTree t = small.tree();
  CHECK(t.num_nodes() == 2);
  CHECK(t.depth(1) == 1);

  CHECK_THROWS_AS(parse_instance("problem eds-tree\nnodes 2\nedge 0 1 -1 2\n"),
                  ParseError);

  const auto mc = std::get<MulticutInstance>(parse_instance(
      "problem multicut-tree\nnodes 3\nedge 0 1 1\nedge 1 2 1\ndemand 1 2 inf\n"));
  REQUIRE(mc.demands.size() == 1);
  CHECK(mc.demands[0].penalty.is_infinite());

  try {
    parse_instance("problem eds-tree\nnodes 3\n# fine\nedge 0 1 inf 2\n");
    FAIL("accepted an infinite weight");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
  CHECK_THROWS_AS(parse_instance("problem eds-tree\nnodes 3\nedge 0 1 1 1\n"
                                 "edge 1 2 1 1\nedge 2 0 1 1\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_instance("problem eds-tree\nnodes 2\nedge 0 5 1 1\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_instance("problem eds-tree\nnodes 4\nedge 0 1 1 1\n"
                                 "edge 2 3 1 1\n"),
                  ParseError);
}

TEST_CASE("root line and p/q weights") {
  const auto inst = std::get<EdsInstance>(parse_instance(
      "problem eds-tree\nroot 2\nnodes 3\nnode 1 3/6\nedge 0 1 1 inf\n"
      "edge 1 2 2/3 0\n"));
  CHECK(inst.tree().root() == 2);
  CHECK(inst.node_weight[1] == make_rational(1, 2));
  CHECK(inst.tree().depth(0) == 2);
}

TEST_CASE("generators") {
  const auto star = std::get<EdsInstance>(gen_instance("star-gap-eds", {.nodes = 4}, 0));
  CHECK(star.graph.num_nodes() == 5);
  CHECK(star.graph.num_edges() == 4);
  CHECK(brute_force_eds(star).total == ExtRat(1));

  const auto sub = std::get<MulticutInstance>(
      gen_instance("subdivided-star-multicut", {.nodes = 4}, 0));
  CHECK(sub.graph.num_nodes() == 9);
  CHECK(sub.graph.num_edges() == 8);
  CHECK(sub.demands.size() == 6);
  CHECK(brute_force_multicut(sub).total == ExtRat(3));

  GenParams p;
  p.nodes = 6;
  CHECK(gen_instance("random-tree-eds", p, 7) == gen_instance("random-tree-eds", p, 7));
  CHECK_THROWS_AS(star_gap_eds(1), UsageError);
  CHECK_THROWS_AS(subdivided_star_multicut(1), UsageError);
  CHECK_THROWS_AS(gen_instance("no-such-kind", p, 0), UsageError);
}

TEST_CASE("round trip for every generator") {
  GenParams p;
  p.nodes = 5;
  p.edges = 6;
  for (const std::string& kind : generator_kinds()) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      CAPTURE(kind);
      CAPTURE(seed);
      const Instance inst = gen_instance(kind, p, seed);
      CHECK(parse_instance(serialize_instance(inst)) == inst);
    }
  }
}

TEST_CASE("star gap natural value") {
  for (int n = 2; n <= 8; ++n) {
    const EdsInstance star = star_gap_eds(n);
    const auto r = lp::simplex_solve(
        build_relaxation(star, RelaxationKind::kNatural).model);
    CHECK(r.value == make_rational(1, n));
    CHECK(brute_force_eds(star).total == ExtRat(1));
  }
}

TEST_CASE("reductions to eds") {
  SetCoverInstance sc;
  sc.ground_size = 2;
  sc.sets = {{5, {0, 1}}};
  CHECK(brute_force_eds(reduce_to_eds(sc).eds).total == ExtRat(5));

  FacilityLocationInstance fl;
  fl.opening = {2};
  fl.connection = {{ExtRat(3)}};
  CHECK(brute_force_eds(reduce_to_eds(fl).eds).total == ExtRat(5));

  SetCoverInstance empty;
  empty.ground_size = 1;
  const EdsReduction red = reduce_to_eds(empty);
  CHECK(red.big_m_dominated(brute_force_eds(red.eds).total));
}

TEST_CASE("set cover and facility location survive the reduction") {
  GenParams p;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    CAPTURE(seed);
    p.nodes = 1 + static_cast<int>(seed % 4);
    p.sets = 1 + static_cast<int>((seed / 4) % 4);
    p.facilities = p.sets;
    const auto sc = std::get<SetCoverInstance>(gen_instance("random-set-cover", p, seed));
    const ExtRat sc_opt = brute_force_cover(sc);
    const EdsReduction r1 = reduce_to_eds(sc);
    const ExtRat e1 = brute_force_eds(r1.eds).total;
    if (sc_opt.is_finite()) {
      CHECK(e1 == sc_opt);
    } else {
      CHECK(r1.big_m_dominated(e1));
    }

    const auto fl = std::get<FacilityLocationInstance>(
        gen_instance("random-facility-location", p, seed));
    const ExtRat fl_opt = brute_force_facility_location(fl);
    const EdsReduction r2 = reduce_to_eds(fl);
    const ExtRat e2 = brute_force_eds(r2.eds).total;
    if (fl_opt.is_finite()) {
      CHECK(e2 == fl_opt);
    } else {
      CHECK(r2.big_m_dominated(e2));
    }
  }
}
