// Canonical test pairs used across the suites.
#ifndef PROBEQ_TESTS_FIXTURES_HPP
#define PROBEQ_TESTS_FIXTURES_HPP

#include <utility>
#include <vector>

#include "probeq/rv.hpp"

namespace probeq::fixtures {

inline OutcomeBounds bounds() { return OutcomeBounds::make(Rat(0), Rat(100)); }

/// Consecutive blocks from 0; widths must sum to 1.
inline SimpleRV blocks(const std::vector<std::pair<long, Scalar>>& spec) {
  std::vector<SimpleRV::Cell> cells;
  Scalar cursor(0);
  for (const auto& [outcome, width] : spec) {
    const Scalar next = cursor + width;
    cells.push_back({Event::interval(cursor, next), Rat(outcome)});
    cursor = next;
  }
  return SimpleRV::make(bounds(), std::move(cells));
}

inline Scalar half() { return Scalar(Rat(1, 2)); }
inline Scalar third() { return Scalar(Rat(1, 3)); }
inline Scalar sqrt2_over_2() { return Scalar(Rat(0), Rat(1, 2)); }

/// E1: two equiprobable halves with swapped values.
inline std::pair<SimpleRV, SimpleRV> e1() {
  return {blocks({{10, half()}, {20, half()}}), blocks({{20, half()}, {10, half()}})};
}

/// E2: thirds vs two-thirds; refinement cells of measure 1/3 each.
inline std::pair<SimpleRV, SimpleRV> e2() {
  return {blocks({{10, third()}, {20, Scalar(1) - third()}}),
          blocks({{20, Scalar(Rat(2, 3))}, {10, third()}})};
}

/// E3: the sqrt2/2 split; one refinement cell has irrational measure.
inline std::pair<SimpleRV, SimpleRV> e3() {
  const Scalar s = sqrt2_over_2();
  return {blocks({{10, s}, {20, Scalar(1) - s}}),
          blocks({{20, Scalar(1) - s}, {10, s}})};
}

/// Three-outcome Case 3 pair whose joint-mass matrix is asymmetric, so
/// the dyadic balancing step has nonempty flip sets (first at k = 4).
/// Row/column masses per outcome agree (equal distributions) but the
/// per-outcome cell multisets differ: X=10 sits in one cell of mass 7/24
/// while Y=10 splits into alpha and 7/24-alpha with alpha = 1/8+sqrt2/32.
inline std::pair<SimpleRV, SimpleRV> e3_asym() {
  const Scalar p1(Rat(7, 24));
  const Scalar p2(Rat(3, 8));
  const Scalar p3(Rat(1, 3));
  const Scalar alpha(Rat(1, 8), Rat(1, 32));
  return {blocks({{10, p1}, {20, p2}, {30, p3}}),
          blocks({{20, p1},
                  {10, alpha},
                  {30, p2 - alpha},
                  {10, p1 - alpha},
                  {20, p2 - p1},
                  {30, p3 - p2 + alpha}})};
}

inline Distribution dist(const std::vector<std::pair<long, Scalar>>& atoms) {
  std::vector<Distribution::Atom> parsed;
  for (const auto& [outcome, mass] : atoms) parsed.push_back({Rat(outcome), mass});
  return Distribution::make(std::move(parsed));
}

}  // namespace probeq::fixtures

#endif
