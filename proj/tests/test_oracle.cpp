#include "doctest.h"

#include "gcover/errors.hpp"
#include "gcover/generators.hpp"
#include "gcover/instance_io.hpp"
#include "gcover/oracle.hpp"

using namespace gcover;

TEST_CASE("eds oracle") {
  CHECK(brute_force_eds(star_gap_eds(4)).total == ExtRat(1));

  auto zero = std::get<EdsInstance>(parse_instance(
      "problem eds-tree\nnodes 3\nedge 0 1 0 0\nedge 1 2 0 0\n"));
  const Solution s0 = brute_force_eds(zero);
  CHECK(s0.total == ExtRat(0));
  CHECK(s0.edges.empty());

  auto single = std::get<EdsInstance>(
      parse_instance("problem eds-tree\nnodes 2\nedge 0 1 1 3\n"));
  const Solution s1 = brute_force_eds(single);
  CHECK(s1.total == ExtRat(1));
  CHECK(s1.edges == std::vector<int>{0});
}

TEST_CASE("multicut oracle") {
  CHECK(brute_force_multicut(subdivided_star_multicut(4)).total == ExtRat(3));

  auto free = std::get<MulticutInstance>(parse_instance(
      "problem multicut-tree\nnodes 3\nedge 0 1 4\nedge 1 2 4\ndemand 0 2 0\n"));
  CHECK(brute_force_multicut(free).total == ExtRat(0));

  auto forced = std::get<MulticutInstance>(parse_instance(
      "problem multicut-tree\nnodes 2\nedge 0 1 2\ndemand 0 1 inf\n"));
  CHECK(brute_force_multicut(forced).total == ExtRat(2));
}

TEST_CASE("cover oracles") {
  SetCoverInstance sc;
  sc.ground_size = 2;
  sc.sets = {{1, {0}}, {1, {1}}, {3, {0, 1}}};
  CHECK(brute_force_cover(sc) == ExtRat(2));

  SetCoverInstance one;
  one.ground_size = 3;
  one.sets = {{7, {0, 1, 2}}};
  CHECK(brute_force_cover(one) == ExtRat(7));

  SetCoverInstance none;
  none.ground_size = 2;
  none.sets = {{1, {0}}};
  CHECK(brute_force_cover(none).is_infinite());
}

TEST_CASE("cap refusal") {
  GenParams p;
  p.nodes = 25;
  const auto big = std::get<EdsInstance>(gen_instance("random-tree-eds", p, 1));
  CHECK_THROWS_AS(brute_force_eds(big), UsageError);
  CHECK_NOTHROW(brute_force_eds(big, 30));
}

TEST_CASE("relabelling and scaling invariance") {
  GenParams p;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    CAPTURE(seed);
    p.nodes = 3 + static_cast<int>(seed % 5);
    p.demands = 1 + static_cast<int>(seed % 4);
    auto mc = std::get<MulticutInstance>(gen_instance("random-tree-multicut", p, seed));
    const ExtRat opt = brute_force_multicut(mc).total;

    MulticutInstance rev = mc;
    std::reverse(rev.demands.begin(), rev.demands.end());
    CHECK(brute_force_multicut(rev).total == opt);

    MulticutInstance twice = mc;
    for (auto& w : twice.node_weight) w *= 2;
    for (auto& w : twice.edge_weight) w *= 2;
    for (auto& d : twice.demands) {
      if (d.penalty.is_finite()) d.penalty = ExtRat(Rational(2 * d.penalty.finite()));
    }
    const ExtRat opt2 = brute_force_multicut(twice).total;
    if (opt.is_finite()) {
      CHECK(opt2 == ExtRat(Rational(2 * opt.finite())));
    } else {
      CHECK(opt2.is_infinite());
    }
  }
}
