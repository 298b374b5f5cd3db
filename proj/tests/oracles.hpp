// Test-only oracles, independent of the implementation paths they check.
#ifndef PROBEQ_TESTS_ORACLES_HPP
#define PROBEQ_TESTS_ORACLES_HPP

#include <map>
#include <vector>

#include <gmpxx.h>

#include "probeq/gen.hpp"
#include "probeq/rv.hpp"

namespace probeq::oracles {

// Sign comparison through >= 200-digit floating-point evaluation of
// a + b*sqrt2. Distinct operands from moderate fractions differ by far
// more than the 2^-600 equality window.
inline Ordering decimal_compare(const Scalar& a, const Scalar& b) {
  constexpr int kBits = 768;  // ~231 decimal digits
  mpf_class sqrt2(2, kBits);
  mpf_sqrt(sqrt2.get_mpf_t(), sqrt2.get_mpf_t());
  const auto value = [&](const Scalar& s) {
    return mpf_class(mpf_class(s.rat(), kBits) + mpf_class(s.surd(), kBits) * sqrt2, kBits);
  };
  mpf_class diff = value(a) - value(b);
  mpf_class window(1, kBits);
  window >>= 600;
  if (abs(diff) < window) return Ordering::EQ;
  return diff < 0 ? Ordering::LT : Ordering::GT;
}

// Monte Carlo estimate of event probabilities for a pair of RVs from
// uniform dyadic samples. Sample location uses a double fast path and
// falls back to exact comparison near cell boundaries (doubles are exact
// dyadic rationals, so the fallback is exact).
struct MonteCarlo {
  std::map<Rat, double> x_mass;               // empirical P(X = outcome)
  std::map<Rat, double> y_mass;
  double diff_exceeds = 0;                    // empirical P(|X - Y| >= eps)
  std::size_t samples = 0;
};

inline MonteCarlo monte_carlo(const SimpleRV& x, const SimpleRV& y, const Rat& eps,
                              std::size_t n, gen::Rng& rng) {
  struct FlatCell {
    double lo_d, hi_d;
    Scalar lo, hi;
    Rat outcome;
  };
  const auto flatten = [](const SimpleRV& rv) {
    std::vector<FlatCell> cells;
    for (const auto& c : rv.cells())
      for (const auto& iv : c.event.intervals())
        cells.push_back({iv.lo.to_double(), iv.hi.to_double(), iv.lo, iv.hi, c.outcome});
    return cells;
  };
  const auto locate = [](const std::vector<FlatCell>& cells, double u) -> const Rat& {
    for (const auto& c : cells) {
      if (u > c.lo_d + 1e-9 && u < c.hi_d - 1e-9) return c.outcome;
    }
    Rat exact;
    mpq_set_d(exact.get_mpq_t(), u);
    const Scalar p(exact);
    for (const auto& c : cells)
      if (!(p < c.lo) && p < c.hi) return c.outcome;
    throw std::logic_error("monte_carlo: sample outside [0,1)");
  };
  const std::vector<FlatCell> xs = flatten(x);
  const std::vector<FlatCell> ys = flatten(y);
  MonteCarlo mc;
  mc.samples = n;
  std::map<std::pair<Rat, Rat>, bool> exceeds_cache;
  std::size_t hits = 0;
  std::map<Rat, std::size_t> xc, yc;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const Rat& xv = locate(xs, u);
    const Rat& yv = locate(ys, u);
    ++xc[xv];
    ++yc[yv];
    auto [it, fresh] = exceeds_cache.try_emplace({xv, yv}, false);
    if (fresh) {
      Rat gap = xv - yv;
      if (gap < 0) gap = -gap;
      it->second = gap >= eps;
    }
    if (it->second) ++hits;
  }
  for (const auto& [outcome, count] : xc)
    mc.x_mass[outcome] = static_cast<double>(count) / static_cast<double>(n);
  for (const auto& [outcome, count] : yc)
    mc.y_mass[outcome] = static_cast<double>(count) / static_cast<double>(n);
  mc.diff_exceeds = static_cast<double>(hits) / static_cast<double>(n);
  return mc;
}

// Brute-force Levy oracle: walks h over a dyadic grid and tests the band
// condition straight from the definition at the plateau starts of
// F(. - h) and G. Returns the smallest grid h that satisfies the band;
// the exact distance lies in (result - step, result].
inline Scalar levy_grid(const Distribution& f, const Distribution& g, int grid_k = 10) {
  if (f == g) return Scalar(0);
  const Rat step = rat_pow2_inv(grid_k);
  const auto band_holds = [&](const Scalar& h) {
    std::vector<Scalar> ts;
    for (const auto& a : f.atoms()) ts.push_back(Scalar(a.outcome) + h);
    for (const auto& a : g.atoms()) ts.emplace_back(a.outcome);
    for (const auto& t : ts) {
      if (g.cdf(t) + h < f.cdf(t - h)) return false;
      if (f.cdf(t + h) + h < g.cdf(t)) return false;
    }
    return true;
  };
  // Range: distances never exceed outcome span + 1.
  Rat span = f.atoms().back().outcome - g.atoms().front().outcome;
  Rat other = g.atoms().back().outcome - f.atoms().front().outcome;
  if (other > span) span = other;
  if (span < 1) span = 1;
  for (Rat h = step; h <= span + 1; h += step)
    if (band_holds(Scalar(h))) return Scalar(h);
  throw std::logic_error("levy_grid: no h satisfied the band");
}

}  // namespace probeq::oracles

#endif
