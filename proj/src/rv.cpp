#include "probeq/rv.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace probeq {
namespace {

const Scalar kOne(1);

Scalar cdf_of(const std::vector<Distribution::Atom>& atoms, const Scalar& t) {
  Scalar acc(0);
  for (const auto& a : atoms) {
    if (t < Scalar(a.outcome)) break;
    acc += a.mass;
  }
  return acc;
}

}  // namespace

OutcomeBounds OutcomeBounds::make(Rat lo, Rat hi) {
  if (!(lo < hi)) throw std::invalid_argument("OutcomeBounds: need lo < hi");
  return OutcomeBounds{std::move(lo), std::move(hi)};
}

SimpleRV SimpleRV::make(OutcomeBounds bounds, std::vector<Cell> cells) {
  if (cells.empty()) throw std::invalid_argument("SimpleRV: no cells");
  Scalar total(0);
  for (const auto& c : cells) {
    if (c.event.empty()) throw std::invalid_argument("SimpleRV: zero-measure cell");
    if (c.outcome < bounds.lo || bounds.hi < c.outcome)
      throw std::invalid_argument("SimpleRV: outcome outside bounds");
    total += c.event.measure();
  }
  if (total != kOne) throw std::invalid_argument("SimpleRV: cell measures must sum to 1");
  // Disjointness sweep over all intervals; with total measure 1 this
  // also forces the union to be all of [0,1).
  std::vector<Interval> all;
  for (const auto& c : cells)
    all.insert(all.end(), c.event.intervals().begin(), c.event.intervals().end());
  std::sort(all.begin(), all.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (std::size_t i = 1; i < all.size(); ++i)
    if (all[i].lo < all[i - 1].hi)
      throw std::invalid_argument("SimpleRV: overlapping cells");
  SimpleRV rv;
  rv.bounds_ = std::move(bounds);
  rv.cells_ = std::move(cells);
  return rv;
}

SimpleRV SimpleRV::canonicalized() const {
  std::map<Rat, Event> merged;
  for (const auto& c : cells_) {
    auto [it, fresh] = merged.emplace(c.outcome, c.event);
    if (!fresh) it->second = event_union(it->second, c.event);
  }
  std::vector<Cell> cells;
  cells.reserve(merged.size());
  for (auto& [outcome, event] : merged) cells.push_back(Cell{std::move(event), outcome});
  return make(bounds_, std::move(cells));
}

const Rat& SimpleRV::value_at(const Scalar& p) const {
  for (const auto& c : cells_)
    if (c.event.contains_point(p)) return c.outcome;
  throw std::invalid_argument("SimpleRV::value_at: point outside [0,1)");
}

Distribution Distribution::make(std::vector<Atom> atoms) {
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.outcome < b.outcome; });
  Scalar total(0);
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].mass.sign() <= 0)
      throw std::invalid_argument("Distribution: nonpositive mass");
    if (i > 0 && atoms[i].outcome == atoms[i - 1].outcome)
      throw std::invalid_argument("Distribution: duplicate outcome");
    total += atoms[i].mass;
  }
  if (total != kOne) throw std::invalid_argument("Distribution: masses must sum to 1");
  Distribution d;
  d.atoms_ = std::move(atoms);
  return d;
}

Scalar Distribution::cdf(const Scalar& t) const { return cdf_of(atoms_, t); }

Distribution distribution(const SimpleRV& x) {
  std::map<Rat, Scalar> mass;
  for (const auto& c : x.cells()) {
    auto [it, fresh] = mass.emplace(c.outcome, c.event.measure());
    if (!fresh) it->second += c.event.measure();
  }
  std::vector<Distribution::Atom> atoms;
  atoms.reserve(mass.size());
  for (auto& [outcome, m] : mass)
    if (m.sign() > 0) atoms.push_back(Distribution::Atom{outcome, std::move(m)});
  return Distribution::make(std::move(atoms));
}

bool equal_in_distribution(const SimpleRV& x, const SimpleRV& y) {
  return distribution(x) == distribution(y);
}

FosdOrder fosd_compare(const SimpleRV& x, const SimpleRV& y) {
  const Distribution fx = distribution(x);
  const Distribution fy = distribution(y);
  std::vector<Rat> breaks;
  for (const auto& a : fx.atoms()) breaks.push_back(a.outcome);
  for (const auto& a : fy.atoms()) breaks.push_back(a.outcome);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  bool x_below = false, y_below = false;  // strictly smaller CDF somewhere
  for (const auto& t : breaks) {
    const Scalar st(t);
    switch (scalar_compare(fx.cdf(st), fy.cdf(st))) {
      case Ordering::LT: x_below = true; break;
      case Ordering::GT: y_below = true; break;
      case Ordering::EQ: break;
    }
  }
  if (!x_below && !y_below) return FosdOrder::Equal;
  if (x_below && !y_below) return FosdOrder::StrictDom;
  if (y_below && !x_below) return FosdOrder::Dominated;
  return FosdOrder::Incomparable;
}

std::vector<RefinementCell> common_refinement(const SimpleRV& x, const SimpleRV& y) {
  std::vector<RefinementCell> out;
  for (const auto& cx : x.cells()) {
    for (const auto& cy : y.cells()) {
      Event e = intersect(cx.event, cy.event);
      if (!e.empty()) out.push_back(RefinementCell{std::move(e), cx.outcome, cy.outcome});
    }
  }
  // Deterministic geometric order, independent of cell layout.
  std::sort(out.begin(), out.end(), [](const RefinementCell& a, const RefinementCell& b) {
    return a.event.intervals().front().lo < b.event.intervals().front().lo;
  });
  return out;
}

Scalar prob_diff_exceeds(const SimpleRV& x, const SimpleRV& y, const Rat& eps) {
  if (!(eps > 0)) throw std::invalid_argument("prob_diff_exceeds: eps must be positive");
  Scalar total(0);
  for (const auto& cell : common_refinement(x, y)) {
    Rat gap = cell.x_val - cell.y_val;
    if (gap < 0) gap = -gap;
    if (gap >= eps) total += cell.event.measure();
  }
  return total;
}

Scalar levy_distance(const Distribution& f, const Distribution& g) {
  if (f == g) return Scalar(0);
  // Candidate set: every constraint threshold is either an alignment of a
  // jump (outcome difference) or a cumulative-mass difference, so the
  // infimum is attained on this finite set.
  std::vector<Scalar> candidates;
  candidates.emplace_back(0);
  for (const auto& ax : f.atoms())
    for (const auto& ay : g.atoms()) {
      Rat d = ax.outcome - ay.outcome;
      if (d < 0) d = -d;
      candidates.emplace_back(d);
    }
  std::vector<Scalar> cum_f{Scalar(0)}, cum_g{Scalar(0)};
  for (const auto& a : f.atoms()) cum_f.push_back(cum_f.back() + a.mass);
  for (const auto& a : g.atoms()) cum_g.push_back(cum_g.back() + a.mass);
  for (const auto& cf : cum_f)
    for (const auto& cg : cum_g) {
      Scalar d = cf - cg;
      if (d.sign() < 0) d = -d;
      candidates.push_back(std::move(d));
    }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  const auto ok = [&](const Scalar& h) {
    // F(t-h) - h <= G(t) checked at t just right of x_i + h;
    // G(t) <= F(t+h) + h checked at t = y_j.
    for (const auto& ax : f.atoms()) {
      const Scalar t = Scalar(ax.outcome) + h;
      if (g.cdf(t) + h < f.cdf(Scalar(ax.outcome))) return false;
    }
    for (const auto& ay : g.atoms()) {
      const Scalar t = Scalar(ay.outcome) + h;
      if (f.cdf(t) + h < g.cdf(Scalar(ay.outcome))) return false;
    }
    return true;
  };

  // ok(h) is monotone in h and true at the largest candidate.
  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (ok(candidates[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return candidates[lo];
}

SimpleRV quantile_rv(const Distribution& f, const OutcomeBounds& bounds) {
  std::vector<SimpleRV::Cell> cells;
  Scalar cum(0);
  for (const auto& a : f.atoms()) {
    const Scalar next = cum + a.mass;
    cells.push_back(SimpleRV::Cell{Event::interval(cum, next), a.outcome});
    cum = next;
  }
  return SimpleRV::make(bounds, std::move(cells));
}

SimpleRV quantile_rv(const Distribution& f) {
  Rat lo = f.atoms().front().outcome;
  Rat hi = f.atoms().back().outcome;
  if (lo == hi) hi = lo + 1;
  return quantile_rv(f, OutcomeBounds::make(std::move(lo), std::move(hi)));
}

}  // namespace probeq
