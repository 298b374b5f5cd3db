#ifndef PROBEQ_COUPLING_HPP
#define PROBEQ_COUPLING_HPP

#include <optional>
#include <vector>

#include "probeq/regret.hpp"
#include "probeq/rv.hpp"

namespace probeq {

/// Comonotone realization of two distributions on the shared space
/// [0,1): both quantile functions expressed on the merged breakpoint
/// cells. distribution(xp) == f and distribution(yp) == g exactly.
struct Coupling {
  SimpleRV xp;
  SimpleRV yp;
  std::vector<Event> common_cells;
};

Coupling comonotone_couple(const Distribution& f, const Distribution& g);
Coupling comonotone_couple(const Distribution& f, const Distribution& g,
                           const OutcomeBounds& bounds);

/// Skorokhod-style representation check: realizes each seq[k] and the
/// target as quantile functions on [0,1) and reports exact convergence
/// diagnostics per k.
struct SkorokhodRow {
  std::size_t index = 0;
  bool distribution_exact = false;            // F of the realization == seq[k]
  Scalar levy;                                 // levy_distance(seq[k], target)
  std::vector<std::pair<Rat, Scalar>> exceed;  // eps -> P(|Xbar_k - X| >= eps)
};

struct SkorokhodReport {
  std::vector<SkorokhodRow> rows;
};

SkorokhodReport skorokhod_represent(const std::vector<Distribution>& seq,
                                    const Distribution& target,
                                    const std::vector<Rat>& eps_grid);

/// FOSD monotonicity check of a regret preference: compares x and y by
/// FOSD, couples their distributions comonotonically when ordered, and
/// evaluates the preference on both the original pair and the coupled
/// pair.
struct FosdPreferenceReport {
  FosdOrder order = FosdOrder::Incomparable;
  bool comparable = false;
  std::optional<Preference> on_inputs;
  std::optional<Preference> on_coupled;
  std::optional<Coupling> coupling;
  bool cellwise_dominance = false;  // xp >= yp on every common cell
  bool strict_cell = false;         // strictly greater on at least one cell
};

FosdPreferenceReport check_fosd_preference(const RegretFunction& psi,
                                           const RegretFunctional& v,
                                           const SimpleRV& x, const SimpleRV& y,
                                           double tol = 1e-9);

}  // namespace probeq

#endif
