#ifndef PROBEQ_RV_HPP
#define PROBEQ_RV_HPP

#include <vector>

#include "probeq/event.hpp"

namespace probeq {

/// Closed outcome interval [lo, hi] every outcome must live in.
struct OutcomeBounds {
  Rat lo;
  Rat hi;

  static OutcomeBounds make(Rat lo, Rat hi);
  friend bool operator==(const OutcomeBounds& a, const OutcomeBounds& b) = default;
};

/// Finite-valued random variable on ([0,1), Lebesgue): a partition of
/// [0,1) into events, each mapped to a rational outcome. Cells may repeat
/// outcomes; canonicalized() merges them into one cell per outcome.
class SimpleRV {
 public:
  struct Cell {
    Event event;
    Rat outcome;
    friend bool operator==(const Cell& a, const Cell& b) = default;
  };

  /// Empty placeholder (no cells); real instances come from make().
  SimpleRV() = default;

  /// Validates: nonempty cells, pairwise disjoint events covering [0,1)
  /// with total measure exactly 1, outcomes within bounds.
  static SimpleRV make(OutcomeBounds bounds, std::vector<Cell> cells);

  const OutcomeBounds& bounds() const { return bounds_; }
  const std::vector<Cell>& cells() const { return cells_; }

  /// One cell per distinct outcome, sorted by outcome ascending.
  SimpleRV canonicalized() const;

  /// Outcome at a sample point p in [0, 1).
  const Rat& value_at(const Scalar& p) const;

  friend bool operator==(const SimpleRV& a, const SimpleRV& b) = default;

 private:
  OutcomeBounds bounds_{Rat(0), Rat(1)};
  std::vector<Cell> cells_;
};

/// Probability distribution of a SimpleRV: positive masses on strictly
/// increasing outcomes, summing to exactly 1.
class Distribution {
 public:
  struct Atom {
    Rat outcome;
    Scalar mass;
    friend bool operator==(const Atom& a, const Atom& b) = default;
  };

  /// Empty placeholder; real instances come from make().
  Distribution() = default;

  static Distribution make(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }

  /// F(t) = P(value <= t), exact.
  Scalar cdf(const Scalar& t) const;

  friend bool operator==(const Distribution& a, const Distribution& b) = default;

 private:
  std::vector<Atom> atoms_;
};

/// One cell of the common refinement of two RVs: the intersection event
/// with the outcome each variable takes on it.
struct RefinementCell {
  Event event;
  Rat x_val;
  Rat y_val;
  friend bool operator==(const RefinementCell& a, const RefinementCell& b) = default;
};

enum class FosdOrder { StrictDom, Equal, Dominated, Incomparable };

Distribution distribution(const SimpleRV& x);

bool equal_in_distribution(const SimpleRV& x, const SimpleRV& y);

/// First-order stochastic dominance of x over y, decided exactly at the
/// union of outcome breakpoints.
FosdOrder fosd_compare(const SimpleRV& x, const SimpleRV& y);

/// All nonempty intersections of x's and y's cells, in (x cell, y cell)
/// order. Cell measures sum to exactly 1.
std::vector<RefinementCell> common_refinement(const SimpleRV& x, const SimpleRV& y);

/// Exact measure of {|X - Y| >= eps}; eps must be positive.
Scalar prob_diff_exceeds(const SimpleRV& x, const SimpleRV& y, const Rat& eps);

/// Levy distance inf{h > 0 : F(t-h) - h <= G(t) <= F(t+h) + h for all t},
/// computed exactly over the finite candidate set of outcome differences
/// and cumulative-mass differences. Zero iff f == g.
Scalar levy_distance(const Distribution& f, const Distribution& g);

/// Canonical nondecreasing representation: outcome_i on the cumulative
/// mass interval. distribution(quantile_rv(f)) == f exactly.
SimpleRV quantile_rv(const Distribution& f);
SimpleRV quantile_rv(const Distribution& f, const OutcomeBounds& bounds);

}  // namespace probeq

#endif
