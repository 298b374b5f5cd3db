#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "probeq/coupling.hpp"
#include "probeq/gen.hpp"

using namespace probeq;
namespace fx = probeq::fixtures;

namespace {
Scalar s(const std::string& text) { return Scalar::from_string(text); }
}  // namespace

TEST_CASE("comonotone_couple on the spec examples") {
  // f = g: identical realizations cell by cell.
  const Distribution f0 = fx::dist({{10, fx::half()}, {20, fx::half()}});
  const Coupling same = comonotone_couple(f0, f0, fx::bounds());
  CHECK(same.xp == same.yp);

  // f = {20:1}, g = {10:1/2, 20:1/2}.
  const Coupling c1 = comonotone_couple(fx::dist({{20, Scalar(1)}}), f0, fx::bounds());
  REQUIRE(c1.common_cells.size() == 2);
  CHECK(c1.common_cells[0] == Event::interval(s("0"), s("1/2")));
  CHECK(c1.common_cells[1] == Event::interval(s("1/2"), s("1")));
  CHECK(c1.xp.cells()[0].outcome == Rat(20));
  CHECK(c1.xp.cells()[1].outcome == Rat(20));
  CHECK(c1.yp.cells()[0].outcome == Rat(10));
  CHECK(c1.yp.cells()[1].outcome == Rat(20));

  // f = {10:1/3, 30:2/3}, g = {10:1/2, 20:1/2}: breakpoints {1/3, 1/2}.
  const Coupling c2 = comonotone_couple(
      fx::dist({{10, fx::third()}, {30, Scalar(Rat(2, 3))}}),
      fx::dist({{10, fx::half()}, {20, fx::half()}}), fx::bounds());
  REQUIRE(c2.common_cells.size() == 3);
  CHECK(c2.common_cells[0] == Event::interval(s("0"), s("1/3")));
  CHECK(c2.common_cells[1] == Event::interval(s("1/3"), s("1/2")));
  CHECK(c2.common_cells[2] == Event::interval(s("1/2"), s("1")));
  CHECK(c2.xp.cells()[0].outcome == Rat(10));
  CHECK(c2.xp.cells()[1].outcome == Rat(30));
  CHECK(c2.xp.cells()[2].outcome == Rat(30));
  CHECK(c2.yp.cells()[0].outcome == Rat(10));
  CHECK(c2.yp.cells()[1].outcome == Rat(10));
  CHECK(c2.yp.cells()[2].outcome == Rat(20));
}

TEST_CASE("coupling preserves both distributions exactly") {
  gen::Rng rng(71);
  for (int i = 0; i < 300; ++i) {
    const Distribution f = gen::random_distribution(rng);
    const Distribution g = gen::random_distribution(rng);
    const Coupling c = comonotone_couple(f, g);
    CHECK(distribution(c.xp) == f);
    CHECK(distribution(c.yp) == g);
    // Cells partition [0,1).
    Scalar total(0);
    for (const auto& cell : c.common_cells) total += cell.measure();
    CHECK(total == Scalar(1));
  }
}

TEST_CASE("FOSD implies cellwise dominance of the coupled quantiles") {
  gen::Rng rng(72);
  for (int i = 0; i < 1000; ++i) {
    const gen::Pair pair = gen::fosd_pair(rng);
    const Coupling c =
        comonotone_couple(distribution(pair.x), distribution(pair.y), pair.x.bounds());
    bool dominated = true, strict = false;
    for (std::size_t t = 0; t < c.common_cells.size(); ++t) {
      const Rat& xv = c.xp.cells()[t].outcome;
      const Rat& yv = c.yp.cells()[t].outcome;
      if (xv < yv) dominated = false;
      if (yv < xv) strict = true;
    }
    CHECK(dominated);
    CHECK(strict);
  }
}

TEST_CASE("check_fosd_preference on the spec examples") {
  const RegretFunction psi = RegretFunction::difference();
  const RegretFunctional v = RegretFunctional::expectation();

  const SimpleRV x = fx::blocks({{20, Scalar(1)}});
  const SimpleRV y = fx::blocks({{10, fx::half()}, {20, fx::half()}});
  const FosdPreferenceReport won = check_fosd_preference(psi, v, x, y);
  CHECK(won.order == FosdOrder::StrictDom);
  CHECK(won.comparable);
  CHECK(won.on_inputs->verdict == PreferVerdict::Prefer);
  CHECK(won.on_coupled->verdict == PreferVerdict::Prefer);
  CHECK(*won.on_inputs->exact == Scalar(5));
  CHECK(*won.on_coupled->exact == Scalar(5));  // both equal E[X] - E[Y]
  CHECK(won.cellwise_dominance);
  CHECK(won.strict_cell);

  const FosdPreferenceReport same = check_fosd_preference(psi, v, x, x);
  CHECK(same.order == FosdOrder::Equal);
  CHECK(same.on_inputs->verdict == PreferVerdict::Indifferent);

  const FosdPreferenceReport crossed = check_fosd_preference(
      psi, v, fx::blocks({{0, fx::half()}, {30, fx::half()}}), fx::blocks({{10, Scalar(1)}}));
  CHECK(crossed.order == FosdOrder::Incomparable);
  CHECK(!crossed.comparable);
  CHECK(!crossed.on_inputs.has_value());
}

TEST_CASE("exact agreement of input and coupled values for difference+expectation") {
  gen::Rng rng(73);
  for (int i = 0; i < 100; ++i) {
    const gen::Pair pair = gen::fosd_pair(rng);
    const FosdPreferenceReport report = check_fosd_preference(
        RegretFunction::difference(), RegretFunctional::expectation(), pair.x, pair.y);
    CHECK(report.order == FosdOrder::StrictDom);
    CHECK(report.on_inputs->verdict == PreferVerdict::Prefer);
    CHECK(report.on_coupled->verdict == PreferVerdict::Prefer);
    CHECK(*report.on_inputs->exact == *report.on_coupled->exact);
  }
}

TEST_CASE("skorokhod_represent on the spec examples") {
  const Distribution target = fx::dist({{10, fx::half()}, {20, fx::half()}});

  SUBCASE("constant sequence") {
    const std::vector<Distribution> seq(4, target);
    const SkorokhodReport report =
        skorokhod_represent(seq, target, {Rat(1, 8), Rat(1, 2)});
    for (const auto& row : report.rows) {
      CHECK(row.distribution_exact);
      CHECK(row.levy == Scalar(0));
      for (const auto& [eps, p] : row.exceed) CHECK(p == Scalar(0));
    }
  }

  SUBCASE("shrinking shifts: levy = 1/2^k, exceedance drops as the gap passes eps") {
    std::vector<Distribution> seq;
    for (int k = 1; k <= 12; ++k) {
      const Rat d = rat_pow2_inv(k);
      seq.push_back(Distribution::make(
          {{Rat(10) + d, fx::half()}, {Rat(20) - d, fx::half()}}));
    }
    const SkorokhodReport report = skorokhod_represent(seq, target, {Rat(1, 8)});
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
      const int k = static_cast<int>(i) + 1;
      CHECK(report.rows[i].distribution_exact);
      CHECK(report.rows[i].levy == Scalar(rat_pow2_inv(k)));
      // Pointwise gap is exactly 1/2^k; with the >= convention the
      // exceedance is full until the gap drops strictly below eps.
      const Scalar expected = k >= 4 ? Scalar(0) : Scalar(1);
      CHECK(report.rows[i].exceed.front().second == expected);
    }
  }

  SUBCASE("vanishing extra atom") {
    std::vector<Distribution> seq;
    const Distribution point = fx::dist({{10, Scalar(1)}});
    for (int k = 1; k <= 10; ++k) {
      const Rat d = rat_pow2_inv(k);
      seq.push_back(Distribution::make({{Rat(10), Scalar(Rat(1) - d)}, {Rat(20), Scalar(d)}}));
    }
    const SkorokhodReport report = skorokhod_represent(seq, point, {Rat(1)});
    for (std::size_t i = 0; i < report.rows.size(); ++i)
      CHECK(report.rows[i].exceed.front().second ==
            Scalar(rat_pow2_inv(static_cast<int>(i) + 1)));
  }

  CHECK_THROWS_AS(skorokhod_represent({}, target, {Rat(1)}), std::invalid_argument);
  CHECK_THROWS_AS(skorokhod_represent({target}, target, {}), std::invalid_argument);
}

TEST_CASE("levy convergence forces vanishing exceedance on quantile couplings") {
  // Monotone test families: if levy -> 0 then for each eps the exceedance
  // of the quantile realizations is eventually 0.
  gen::Rng rng(74);
  for (int trial = 0; trial < 20; ++trial) {
    const Distribution target = gen::random_distribution(rng);
    std::vector<Distribution> seq;
    for (int k = 1; k <= 14; ++k) {
      // Shift every outcome toward the target by 1/2^k.
      std::vector<Distribution::Atom> atoms;
      for (const auto& a : target.atoms())
        atoms.push_back({a.outcome + rat_pow2_inv(k), a.mass});
      seq.push_back(Distribution::make(std::move(atoms)));
    }
    const SkorokhodReport report = skorokhod_represent(seq, target, {Rat(1, 16)});
    CHECK(report.rows.back().levy == Scalar(rat_pow2_inv(14)));
    CHECK(report.rows.back().exceed.front().second == Scalar(0));
    // Once the shift is below eps the exceedance is 0 for good.
    bool vanished = false;
    for (const auto& row : report.rows) {
      if (row.exceed.front().second == Scalar(0)) vanished = true;
      if (vanished) CHECK(row.exceed.front().second == Scalar(0));
    }
    CHECK(vanished);
  }
}
