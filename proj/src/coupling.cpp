#include "probeq/coupling.hpp"

#include <algorithm>
#include <stdexcept>

namespace probeq {
namespace {

OutcomeBounds hull_bounds(const Distribution& f, const Distribution& g) {
  Rat lo = std::min(f.atoms().front().outcome, g.atoms().front().outcome);
  Rat hi = std::max(f.atoms().back().outcome, g.atoms().back().outcome);
  if (lo == hi) hi = lo + 1;
  return OutcomeBounds::make(std::move(lo), std::move(hi));
}

// Outcome of the quantile function of f on [cum, next) for a cell that
// never straddles a breakpoint of f.
const Rat& quantile_on(const Distribution& f, const Scalar& cell_lo) {
  Scalar cum(0);
  for (const auto& a : f.atoms()) {
    cum += a.mass;
    if (cell_lo < cum) return a.outcome;
  }
  return f.atoms().back().outcome;
}

}  // namespace

Coupling comonotone_couple(const Distribution& f, const Distribution& g,
                           const OutcomeBounds& bounds) {
  // Merge the cumulative-mass breakpoints of both distributions.
  std::vector<Scalar> cuts{Scalar(0)};
  Scalar cum(0);
  for (const auto& a : f.atoms()) {
    cum += a.mass;
    cuts.push_back(cum);
  }
  cum = Scalar(0);
  for (const auto& a : g.atoms()) {
    cum += a.mass;
    cuts.push_back(cum);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  Coupling out{SimpleRV::make(bounds, {{Event::full(), bounds.lo}}),
               SimpleRV::make(bounds, {{Event::full(), bounds.lo}}),
               {}};
  std::vector<SimpleRV::Cell> xp_cells, yp_cells;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Event cell = Event::interval(cuts[i], cuts[i + 1]);
    xp_cells.push_back({cell, quantile_on(f, cuts[i])});
    yp_cells.push_back({cell, quantile_on(g, cuts[i])});
    out.common_cells.push_back(std::move(cell));
  }
  out.xp = SimpleRV::make(bounds, std::move(xp_cells));
  out.yp = SimpleRV::make(bounds, std::move(yp_cells));
  return out;
}

Coupling comonotone_couple(const Distribution& f, const Distribution& g) {
  return comonotone_couple(f, g, hull_bounds(f, g));
}

SkorokhodReport skorokhod_represent(const std::vector<Distribution>& seq,
                                    const Distribution& target,
                                    const std::vector<Rat>& eps_grid) {
  if (seq.empty() || eps_grid.empty())
    throw std::invalid_argument("skorokhod_represent: need a sequence and an eps grid");
  // One shared bounds hull so the realizations can be compared pointwise.
  Rat lo = target.atoms().front().outcome;
  Rat hi = target.atoms().back().outcome;
  for (const auto& d : seq) {
    lo = std::min(lo, d.atoms().front().outcome);
    hi = std::max(hi, d.atoms().back().outcome);
  }
  if (lo == hi) hi = lo + 1;
  const OutcomeBounds bounds = OutcomeBounds::make(lo, hi);
  const SimpleRV x = quantile_rv(target, bounds);

  SkorokhodReport report;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    SimpleRV xbar = quantile_rv(seq[k], bounds);
    SkorokhodRow row;
    row.index = k;
    row.distribution_exact = distribution(xbar) == seq[k];
    row.levy = levy_distance(seq[k], target);
    for (const auto& eps : eps_grid)
      row.exceed.emplace_back(eps, prob_diff_exceeds(xbar, x, eps));
    report.rows.push_back(std::move(row));
  }
  return report;
}

FosdPreferenceReport check_fosd_preference(const RegretFunction& psi,
                                           const RegretFunctional& v,
                                           const SimpleRV& x, const SimpleRV& y,
                                           double tol) {
  FosdPreferenceReport report;
  report.order = fosd_compare(x, y);
  report.comparable = report.order != FosdOrder::Incomparable;
  if (!report.comparable) return report;

  report.on_inputs = prefer(psi, v, x, y, tol);
  if (report.order == FosdOrder::Equal) return report;

  if (!(x.bounds() == y.bounds()))
    throw std::invalid_argument("check_fosd_preference: x and y must share OutcomeBounds");
  Coupling coupling = comonotone_couple(distribution(x), distribution(y), x.bounds());
  report.on_coupled = prefer(psi, v, coupling.xp, coupling.yp, tol);

  report.cellwise_dominance = true;
  for (std::size_t i = 0; i < coupling.common_cells.size(); ++i) {
    const Rat& xv = coupling.xp.cells()[i].outcome;
    const Rat& yv = coupling.yp.cells()[i].outcome;
    if (xv < yv) report.cellwise_dominance = false;
    if (yv < xv) report.strict_cell = true;
  }
  if (report.order == FosdOrder::Dominated) {
    // y dominates x: dominance reads the other way around.
    report.cellwise_dominance = true;
    report.strict_cell = false;
    for (std::size_t i = 0; i < coupling.common_cells.size(); ++i) {
      const Rat& xv = coupling.xp.cells()[i].outcome;
      const Rat& yv = coupling.yp.cells()[i].outcome;
      if (yv < xv) report.cellwise_dominance = false;
      if (xv < yv) report.strict_cell = true;
    }
  }
  report.coupling = std::move(coupling);
  return report;
}

}  // namespace probeq
