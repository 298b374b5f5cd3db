#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "probeq/gen.hpp"
#include "probeq/rv.hpp"

using namespace probeq;
namespace fx = probeq::fixtures;

namespace {
Scalar s(const std::string& text) { return Scalar::from_string(text); }
}  // namespace

TEST_CASE("SimpleRV validation") {
  const auto b = fx::bounds();
  CHECK_THROWS_AS(SimpleRV::make(b, {}), std::invalid_argument);
  // Zero-measure cell rejected at construction.
  CHECK_THROWS_AS(SimpleRV::make(b, {{Event::full(), Rat(1)},
                                     {Event::interval(s("1/2"), s("1/2")), Rat(2)}}),
                  std::invalid_argument);
  // Overlap.
  CHECK_THROWS_AS(SimpleRV::make(b, {{Event::interval(s("0"), s("2/3")), Rat(1)},
                                     {Event::interval(s("1/3"), s("1")), Rat(2)}}),
                  std::invalid_argument);
  // Not a partition of [0,1).
  CHECK_THROWS_AS(SimpleRV::make(b, {{Event::interval(s("0"), s("1/2")), Rat(1)}}),
                  std::invalid_argument);
  // Outcome outside bounds.
  CHECK_THROWS_AS(SimpleRV::make(b, {{Event::full(), Rat(101)}}), std::invalid_argument);
  CHECK_THROWS_AS(OutcomeBounds::make(Rat(3), Rat(3)), std::invalid_argument);
}

TEST_CASE("distribution on the spec examples") {
  CHECK(distribution(fx::blocks({{10, Scalar(1)}})) == fx::dist({{10, Scalar(1)}}));

  const Scalar s22 = fx::sqrt2_over_2();
  CHECK(distribution(fx::blocks({{10, s22}, {20, Scalar(1) - s22}})) ==
        fx::dist({{10, s22}, {20, Scalar(1) - s22}}));

  // Equal outcomes merge.
  CHECK(distribution(fx::blocks({{20, fx::third()}, {10, fx::third()}, {20, fx::third()}})) ==
        fx::dist({{10, fx::third()}, {20, Scalar(Rat(2, 3))}}));
}

TEST_CASE("canonicalized merges cells per outcome") {
  const SimpleRV rv = fx::blocks({{20, fx::third()}, {10, fx::third()}, {20, fx::third()}});
  const SimpleRV canon = rv.canonicalized();
  REQUIRE(canon.cells().size() == 2);
  CHECK(canon.cells()[0].outcome == Rat(10));
  CHECK(canon.cells()[1].outcome == Rat(20));
  CHECK(canon.cells()[1].event ==
        event_union(Event::interval(s("0"), s("1/3")), Event::interval(s("2/3"), s("1"))));
  CHECK(equal_in_distribution(rv, canon));
}

TEST_CASE("equal_in_distribution") {
  const auto [x1, y1] = fx::e1();
  CHECK(equal_in_distribution(x1, x1));
  CHECK(equal_in_distribution(x1, y1));
  CHECK(!equal_in_distribution(x1, fx::blocks({{10, fx::third()}, {20, Scalar(1) - fx::third()}})));
}

TEST_CASE("fosd_compare") {
  const auto [x1, y1] = fx::e1();
  CHECK(fosd_compare(x1, x1) == FosdOrder::Equal);
  CHECK(fosd_compare(fx::blocks({{20, Scalar(1)}}), x1) == FosdOrder::StrictDom);
  CHECK(fosd_compare(x1, fx::blocks({{20, Scalar(1)}})) == FosdOrder::Dominated);
  // CDFs cross: {0:1/2, 30:1/2} vs {10:1}.
  CHECK(fosd_compare(fx::blocks({{0, fx::half()}, {30, fx::half()}}),
                     fx::blocks({{10, Scalar(1)}})) == FosdOrder::Incomparable);
}

TEST_CASE("common_refinement on E2 and E3") {
  const auto [x2, y2] = fx::e2();
  const auto cells2 = common_refinement(x2, y2);
  REQUIRE(cells2.size() == 3);
  for (const auto& cell : cells2) CHECK(cell.event.measure() == fx::third());
  CHECK(cells2[0].x_val == Rat(10));
  CHECK(cells2[0].y_val == Rat(20));
  CHECK(cells2[1].x_val == Rat(20));
  CHECK(cells2[1].y_val == Rat(20));
  CHECK(cells2[2].x_val == Rat(20));
  CHECK(cells2[2].y_val == Rat(10));

  const auto [x3, y3] = fx::e3();
  const auto cells3 = common_refinement(x3, y3);
  REQUIRE(cells3.size() == 3);
  const Scalar s22 = fx::sqrt2_over_2();
  // (10,20) on [0, 1-sqrt2/2), (10,10) on the overlap, (20,10) at the top.
  CHECK(cells3[0].event.measure() == Scalar(1) - s22);
  CHECK(cells3[0].x_val == Rat(10));
  CHECK(cells3[0].y_val == Rat(20));
  CHECK(cells3[1].event.measure() == Scalar(Rat(-1), Rat(1)));  // sqrt2 - 1
  CHECK(cells3[1].x_val == Rat(10));
  CHECK(cells3[1].y_val == Rat(10));
  CHECK(cells3[2].event.measure() == Scalar(1) - s22);
  CHECK(cells3[2].x_val == Rat(20));
  CHECK(cells3[2].y_val == Rat(10));
}

TEST_CASE("refinement cells sum to one and reproduce the marginals") {
  gen::Rng rng(99);
  for (int i = 0; i < 200; ++i) {
    const gen::Pair pair = i % 2 ? gen::case2_pair(rng) : gen::case3_pair(rng);
    const auto cells = common_refinement(pair.x, pair.y);
    Scalar total(0);
    std::map<Rat, Scalar> x_marginal, y_marginal;
    for (const auto& cell : cells) {
      const Scalar m = cell.event.measure();
      total += m;
      auto [ix, fx_] = x_marginal.emplace(cell.x_val, m);
      if (!fx_) ix->second += m;
      auto [iy, fy_] = y_marginal.emplace(cell.y_val, m);
      if (!fy_) iy->second += m;
    }
    CHECK(total == Scalar(1));
    const Distribution fx = distribution(pair.x);
    const Distribution fy = distribution(pair.y);
    for (const auto& atom : fx.atoms()) CHECK(x_marginal.at(atom.outcome) == atom.mass);
    for (const auto& atom : fy.atoms()) CHECK(y_marginal.at(atom.outcome) == atom.mass);
  }
}

TEST_CASE("prob_diff_exceeds on the spec examples") {
  const auto [x1, y1] = fx::e1();
  CHECK(prob_diff_exceeds(x1, x1, Rat(1)) == Scalar(0));
  CHECK(prob_diff_exceeds(x1, y1, Rat(5)) == Scalar(1));
  CHECK(prob_diff_exceeds(x1, y1, Rat(11)) == Scalar(0));
  CHECK(prob_diff_exceeds(x1, y1, Rat(10)) == Scalar(1));  // boundary: |diff| >= eps
  CHECK_THROWS_AS(prob_diff_exceeds(x1, y1, Rat(0)), std::invalid_argument);
}

TEST_CASE("prob_diff_exceeds is nonincreasing in eps") {
  gen::Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    const gen::Pair pair = gen::case2_pair(rng);
    Scalar prev(1);
    for (long e = 1; e <= 40; e += 4) {
      const Scalar p = prob_diff_exceeds(pair.x, pair.y, Rat(e));
      CHECK(!(prev < p));
      prev = p;
    }
  }
}

TEST_CASE("levy_distance on the spec examples") {
  const Distribution f = fx::dist({{10, fx::half()}, {20, fx::half()}});
  CHECK(levy_distance(f, f) == Scalar(0));

  const Distribution g = Distribution::make(
      {{Rat(81, 8), fx::half()}, {Rat(159, 8), fx::half()}});  // 10+1/8, 20-1/8
  CHECK(levy_distance(f, g) == Scalar(Rat(1, 8)));

  // Far-apart point masses: the grid oracle pins the exact value.
  const Distribution d0 = fx::dist({{0, Scalar(1)}});
  const Distribution d1 = fx::dist({{1, Scalar(1)}});
  const Scalar exact = levy_distance(d0, d1);
  const Scalar coarse = oracles::levy_grid(d0, d1);
  CHECK(!(coarse < exact));
  CHECK(coarse - Scalar(rat_pow2_inv(10)) < exact);
  CHECK(exact == Scalar(1));
}

TEST_CASE("levy_distance matches the grid oracle on random pairs") {
  gen::Rng rng(512);
  for (int i = 0; i < 60; ++i) {
    const Distribution f = gen::random_distribution(rng);
    const Distribution g = gen::random_distribution(rng);
    const Scalar exact = levy_distance(f, g);
    const Scalar coarse = oracles::levy_grid(f, g);
    CHECK(!(coarse < exact));                                // oracle is an upper bound
    CHECK(coarse - Scalar(rat_pow2_inv(10)) < exact);        // within one grid step
  }
}

TEST_CASE("levy_distance is a metric on random triples") {
  gen::Rng rng(513);
  for (int i = 0; i < 120; ++i) {
    const Distribution f = gen::random_distribution(rng);
    const Distribution g = gen::random_distribution(rng);
    const Distribution h = gen::random_distribution(rng);
    const Scalar fg = levy_distance(f, g);
    CHECK(fg == levy_distance(g, f));
    CHECK((fg == Scalar(0)) == (f == g));
    CHECK(!(levy_distance(f, h) + levy_distance(h, g) < fg));
  }
}

TEST_CASE("quantile_rv on the spec examples") {
  CHECK(quantile_rv(fx::dist({{10, Scalar(1)}}), fx::bounds()) ==
        fx::blocks({{10, Scalar(1)}}));
  CHECK(quantile_rv(fx::dist({{10, fx::half()}, {20, fx::half()}}), fx::bounds()) ==
        fx::blocks({{10, fx::half()}, {20, fx::half()}}));
  const Scalar s22 = fx::sqrt2_over_2();
  CHECK(quantile_rv(fx::dist({{10, s22}, {20, Scalar(1) - s22}}), fx::bounds()) ==
        fx::blocks({{10, s22}, {20, Scalar(1) - s22}}));
}

TEST_CASE("distribution of quantile_rv is the identity") {
  gen::Rng rng(514);
  for (int i = 0; i < 1000; ++i) {
    const Distribution f = gen::random_distribution(rng);
    CHECK(distribution(quantile_rv(f)) == f);
  }
}

TEST_CASE("fosd antisymmetry on random strict pairs") {
  gen::Rng rng(515);
  for (int i = 0; i < 200; ++i) {
    const gen::Pair pair = gen::fosd_pair(rng);
    CHECK(fosd_compare(pair.x, pair.y) == FosdOrder::StrictDom);
    CHECK(fosd_compare(pair.y, pair.x) == FosdOrder::Dominated);
  }
}
