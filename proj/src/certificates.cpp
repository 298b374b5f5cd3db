#include "probeq/certificates.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace probeq {
namespace {

const Scalar kOne(1);

std::vector<std::size_t> order_by_event(const std::vector<SimpleRV::Cell>& cells) {
  std::vector<std::size_t> idx(cells.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return cells[a].event.intervals().front().lo < cells[b].event.intervals().front().lo;
  });
  return idx;
}

std::vector<std::size_t> cycle_lengths(const std::vector<std::size_t>& pi) {
  std::vector<bool> seen(pi.size(), false);
  std::vector<std::size_t> lengths;
  for (std::size_t i = 0; i < pi.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0, j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = pi[j];
      ++len;
    }
    lengths.push_back(len);
  }
  return lengths;
}

Int lcm_of_cycles(const std::vector<std::size_t>& pi) {
  Int m(1);
  for (std::size_t len : cycle_lengths(pi))
    mpz_lcm_ui(m.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(len));
  return m;
}

std::vector<std::pair<Rat, Rat>> make_step_lottery(const std::vector<Rat>& xv,
                                                   const std::vector<Rat>& yv) {
  std::vector<std::pair<Rat, Rat>> pairs;
  pairs.reserve(xv.size());
  for (std::size_t i = 0; i < xv.size(); ++i) pairs.emplace_back(xv[i], yv[i]);
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

// Matches y values to x values: fixed points first, then remaining
// occurrences of each outcome in cell-index order.
std::vector<std::size_t> match_permutation(const std::vector<Rat>& xv,
                                           const std::vector<Rat>& yv) {
  const std::size_t n = xv.size();
  std::vector<std::size_t> pi(n, n);
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (xv[i] == yv[i]) {
      pi[i] = i;
      used[i] = true;
    }
  }
  std::map<Rat, std::deque<std::size_t>> pool;
  for (std::size_t j = 0; j < n; ++j)
    if (!used[j]) pool[xv[j]].push_back(j);
  for (std::size_t i = 0; i < n; ++i) {
    if (pi[i] != n) continue;
    auto it = pool.find(yv[i]);
    if (it == pool.end() || it->second.empty())
      throw std::invalid_argument("permutation match: value multisets differ");
    pi[i] = it->second.front();
    it->second.pop_front();
  }
  return pi;
}

PermutationChainCertificate build_chain(std::vector<Event> cells, std::vector<Rat> xv,
                                        std::vector<Rat> yv) {
  PermutationChainCertificate chain;
  chain.n_cells = cells.size();
  chain.pi_hat = match_permutation(xv, yv);
  chain.order_m = lcm_of_cycles(chain.pi_hat);
  chain.step_lottery = make_step_lottery(xv, yv);
  chain.cells = std::move(cells);
  chain.x_values = std::move(xv);
  chain.y_values = std::move(yv);
  return chain;
}

std::map<Rat, Event> outcome_events(const SimpleRV& canonical) {
  std::map<Rat, Event> out;
  for (const auto& c : canonical.cells()) out.emplace(c.outcome, c.event);
  return out;
}

std::string describe_first_mismatch(const Distribution& fx, const Distribution& fy) {
  const auto& a = fx.atoms();
  const auto& b = fy.atoms();
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i].outcome != b[i].outcome)
      return "outcome " + rat_to_string(a[i].outcome) + " vs " +
             rat_to_string(b[i].outcome) + " at atom " + std::to_string(i);
    if (a[i].mass != b[i].mass)
      return "P(=" + rat_to_string(a[i].outcome) + "): " + a[i].mass.to_string() +
             " vs " + b[i].mass.to_string();
  }
  return "atom counts " + std::to_string(a.size()) + " vs " + std::to_string(b.size());
}

Scalar measure_where_values_differ(const SimpleRV& a, const SimpleRV& b) {
  Scalar total(0);
  for (const auto& cell : common_refinement(a, b))
    if (cell.x_val != cell.y_val) total += cell.event.measure();
  return total;
}

}  // namespace

Rat pick_sentinel(const std::vector<Rat>& outcomes, const OutcomeBounds& bounds) {
  std::vector<Rat> sorted = outcomes;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.empty()) throw std::invalid_argument("pick_sentinel: no outcomes");
  std::vector<Rat> fence;
  fence.push_back(bounds.lo);
  fence.insert(fence.end(), sorted.begin(), sorted.end());
  fence.push_back(bounds.hi);
  std::size_t best = 0;
  Rat best_width(-1);
  for (std::size_t i = 0; i + 1 < fence.size(); ++i) {
    Rat width = fence[i + 1] - fence[i];
    if (width > best_width) {
      best_width = width;
      best = i;
    }
  }
  if (!(best_width > 0)) throw std::logic_error("pick_sentinel: no gap available");
  return (fence[best] + fence[best + 1]) / 2;
}

CaseKind classify_case(const SimpleRV& x, const SimpleRV& y) {
  const SimpleRV xc = x.canonicalized();
  const SimpleRV yc = y.canonicalized();
  const Distribution fx = distribution(xc);
  if (!(fx == distribution(yc)))
    throw DistributionsDiffer("classify_case: " +
                              describe_first_mismatch(fx, distribution(yc)));
  const std::size_t n = xc.cells().size();
  const auto xi = order_by_event(xc.cells());
  const auto yi = order_by_event(yc.cells());
  bool case1 = true;
  const Scalar equal_share(Rat(1, static_cast<unsigned long>(n)));
  for (std::size_t t = 0; t < n && case1; ++t) {
    const auto& ex = xc.cells()[xi[t]].event;
    const auto& ey = yc.cells()[yi[t]].event;
    case1 = ex == ey && ex.measure() == equal_share;
  }
  if (case1) return CaseKind::Case1;
  for (const auto& cell : common_refinement(xc, yc))
    if (!cell.event.measure().is_rational()) return CaseKind::Case3;
  return CaseKind::Case2;
}

PermutationChainCertificate build_case1(const SimpleRV& x, const SimpleRV& y) {
  const auto& xs = x.cells();
  const auto& ys = y.cells();
  if (xs.size() != ys.size())
    throw std::invalid_argument("build_case1: cell counts differ");
  const std::size_t n = xs.size();
  const auto xi = order_by_event(xs);
  const auto yi = order_by_event(ys);
  const Scalar equal_share(Rat(1, static_cast<unsigned long>(n)));
  std::vector<Event> cells;
  std::vector<Rat> xv, yv;
  cells.reserve(n);
  for (std::size_t t = 0; t < n; ++t) {
    const auto& cx = xs[xi[t]];
    const auto& cy = ys[yi[t]];
    if (!(cx.event == cy.event))
      throw std::invalid_argument("build_case1: partitions do not coincide");
    if (!(cx.event.measure() == equal_share))
      throw std::invalid_argument("build_case1: cells not equiprobable");
    cells.push_back(cx.event);
    xv.push_back(cx.outcome);
    yv.push_back(cy.outcome);
  }
  return build_chain(std::move(cells), std::move(xv), std::move(yv));
}

RefinementCertificate build_case2(const SimpleRV& x, const SimpleRV& y,
                                  std::int64_t forced_denominator) {
  RefinementCertificate cert;
  cert.refinement_cells = common_refinement(x, y);
  Int denom(1);
  for (const auto& cell : cert.refinement_cells) {
    const Scalar m = cell.event.measure();
    if (!m.is_rational())
      throw std::invalid_argument("build_case2: irrational refinement cell measure " +
                                  m.to_string());
    denom = lcm(denom, Int(m.rat().get_den()));
  }
  if (forced_denominator > 0) {
    if (!mpz_divisible_p(Int(forced_denominator).get_mpz_t(), denom.get_mpz_t()))
      throw std::invalid_argument("build_case2: forced denominator is not a common denominator");
    denom = forced_denominator;
  }
  if (!denom.fits_slong_p() || denom.get_si() > (1L << 30))
    throw std::invalid_argument("build_case2: common denominator too large");
  const std::int64_t n = denom.get_si();
  cert.common_denominator = n;

  const Scalar share(Rat(1, static_cast<unsigned long>(n)));
  std::vector<Event> subcells;
  std::vector<Rat> xv, yv;
  for (std::size_t j = 0; j < cert.refinement_cells.size(); ++j) {
    const auto& cell = cert.refinement_cells[j];
    Rat count_rat = cell.event.measure().rat() * n;
    if (!rat_is_integer(count_rat))
      throw std::logic_error("build_case2: denominator does not clear a cell measure");
    const long count = static_cast<long>(count_rat.get_num().get_si());
    Event rest = cell.event;
    for (long h = 0; h < count; ++h) {
      auto [head, tail] = split_prefix(rest, share);
      rest = std::move(tail);
      subcells.push_back(std::move(head));
      xv.push_back(cell.x_val);
      yv.push_back(cell.y_val);
      cert.parent_of.push_back(j);
    }
    if (!rest.empty()) throw std::logic_error("build_case2: leftover mass in a cell");
  }
  cert.chain = build_chain(std::move(subcells), std::move(xv), std::move(yv));
  return cert;
}

DyadicCertificate build_case3(const SimpleRV& x, const SimpleRV& y, int k_min,
                              int k_max) {
  if (!(x.bounds() == y.bounds()))
    throw std::invalid_argument("build_case3: x and y must share OutcomeBounds");
  const SimpleRV xc = x.canonicalized();
  const SimpleRV yc = y.canonicalized();
  const Distribution fx = distribution(xc);
  if (!(fx == distribution(yc)))
    throw DistributionsDiffer("build_case3: " +
                              describe_first_mismatch(fx, distribution(yc)));

  DyadicCertificate cert;
  cert.refinement_cells = common_refinement(xc, yc);
  const std::size_t m = cert.refinement_cells.size();

  Scalar min_measure = cert.refinement_cells.front().event.measure();
  for (const auto& cell : cert.refinement_cells)
    min_measure = std::min(min_measure, cell.event.measure(),
                           [](const Scalar& a, const Scalar& b) { return a < b; });
  if (k_min <= 0) {
    k_min = 1;
    while (k_min <= 62 && !(Scalar(rat_pow2_inv(k_min)) < min_measure)) ++k_min;
  } else if (!(Scalar(rat_pow2_inv(k_min)) < min_measure)) {
    throw std::invalid_argument("build_case3: k_min too small; need 1/2^k below " +
                                min_measure.to_string());
  }
  if (k_max <= 0) k_max = k_min + 12;
  if (k_max < k_min) throw std::invalid_argument("build_case3: k_max < k_min");
  if (k_max > 26)
    throw std::invalid_argument("build_case3: k_max > 26 would materialize too many cells");
  cert.k_min = k_min;
  cert.k_max = k_max;

  std::vector<Rat> outcomes;
  for (const auto& atom : fx.atoms()) outcomes.push_back(atom.outcome);
  cert.sentinel = pick_sentinel(outcomes, x.bounds());

  for (int k = k_min; k <= k_max; ++k) {
    DyadicRecord rec;
    rec.k = k;
    const Rat cell_rat = rat_pow2_inv(k);
    const Scalar share(cell_rat);
    for (std::size_t j = 0; j < m; ++j) {
      const auto& cell = cert.refinement_cells[j];
      const std::int64_t nu_j = nu(cell.event.measure(), k);
      rec.nu_values.push_back(nu_j);
      Event rest = cell.event;
      for (std::int64_t h = 0; h < nu_j; ++h) {
        auto [head, tail] = split_prefix(rest, share);
        rest = std::move(tail);
        rec.cells.push_back({std::move(head), j, false});
      }
      // Remainder mass is measure - nu/2^k, in (0, 1/2^k].
      rec.cells.push_back({std::move(rest), j, true});
    }

    std::vector<SimpleRV::Cell> xk_cells, yk_cells;
    xk_cells.reserve(rec.cells.size());
    yk_cells.reserve(rec.cells.size());
    for (const auto& cell : rec.cells) {
      const auto& parent = cert.refinement_cells[cell.parent];
      xk_cells.push_back({cell.event, cell.remainder ? cert.sentinel : parent.x_val});
      yk_cells.push_back({cell.event, cell.remainder ? cert.sentinel : parent.y_val});
    }
    rec.x_k = SimpleRV::make(x.bounds(), xk_cells);
    rec.y_k = SimpleRV::make(x.bounds(), yk_cells);

    // Balance: for each outcome flip the surplus side's full cells to the
    // sentinel, lowest cell index first.
    std::map<Rat, std::int64_t> surplus;
    for (std::size_t j = 0; j < m; ++j) {
      surplus[cert.refinement_cells[j].x_val] += rec.nu_values[j];
      surplus[cert.refinement_cells[j].y_val] -= rec.nu_values[j];
    }
    for (const auto& [outcome, d] : surplus) {
      if (d == 0) continue;
      const bool from_x = d > 0;
      std::int64_t need = from_x ? d : -d;
      auto& flips = from_x ? rec.x_flips : rec.y_flips;
      auto& rv_cells = from_x ? xk_cells : yk_cells;
      for (std::size_t t = 0; t < rec.cells.size() && need > 0; ++t) {
        if (rec.cells[t].remainder || rv_cells[t].outcome != outcome) continue;
        flips.push_back(t);
        rv_cells[t].outcome = cert.sentinel;
        --need;
      }
      if (need > 0)
        throw std::logic_error("build_case3: insufficient full cells to flip for outcome " +
                               rat_to_string(outcome));
    }
    std::sort(rec.x_flips.begin(), rec.x_flips.end());
    std::sort(rec.y_flips.begin(), rec.y_flips.end());
    rec.xbar = SimpleRV::make(x.bounds(), std::move(xk_cells));
    rec.ybar = SimpleRV::make(x.bounds(), std::move(yk_cells));

    rec.embedded = build_case2(rec.xbar.canonicalized(), rec.ybar.canonicalized(),
                               std::int64_t(1) << k);
    rec.bound_diff = Rat(static_cast<unsigned long>(m)) * cell_rat;
    rec.bound_change = Rat(static_cast<unsigned long>(m * m)) * cell_rat;
    cert.records.push_back(std::move(rec));
  }
  return cert;
}

EquivalenceCertificate certify_equivalence(const SimpleRV& x, const SimpleRV& y,
                                           const CertifyConfig& config) {
  const SimpleRV xc = x.canonicalized();
  const SimpleRV yc = y.canonicalized();
  const Distribution fx = distribution(xc);
  const Distribution fy = distribution(yc);
  if (!(fx == fy))
    throw DistributionsDiffer("certify_equivalence: " + describe_first_mismatch(fx, fy));

  EquivalenceCertificate cert;
  cert.dist = fx;
  cert.kind = classify_case(x, y);
  switch (cert.kind) {
    case CaseKind::Case1:
      cert.payload = build_case1(xc, yc);
      break;
    case CaseKind::Case2:
      cert.payload = build_case2(xc, yc);
      break;
    case CaseKind::Case3:
      cert.payload = build_case3(x, y, config.k_min, config.k_max);
      break;
  }
  return cert;
}

namespace {

class Checker {
 public:
  explicit Checker(VerificationReport& report) : report_(report) {}

  bool check(const std::string& name, bool ok, std::string detail = {}) {
    report_.items.push_back({name, ok, std::move(detail)});
    return ok;
  }

 private:
  VerificationReport& report_;
};

bool is_partition_of_unit(const std::vector<Event>& events) {
  Scalar total(0);
  std::vector<Interval> all;
  for (const auto& e : events) {
    total += e.measure();
    all.insert(all.end(), e.intervals().begin(), e.intervals().end());
  }
  if (!(total == kOne)) return false;
  std::sort(all.begin(), all.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (std::size_t i = 1; i < all.size(); ++i)
    if (all[i].lo < all[i - 1].hi) return false;
  return true;
}

void verify_chain(Checker& c, const std::string& p, const PermutationChainCertificate& chain,
                  const SimpleRV& xc, const SimpleRV& yc, const std::string& where) {
  const std::size_t n = chain.n_cells;
  const bool sized = n > 0 && chain.cells.size() == n && chain.x_values.size() == n &&
                     chain.y_values.size() == n && chain.pi_hat.size() == n;
  if (!c.check(p + "chain.sizes", sized, where)) return;

  c.check(p + "chain.partition", is_partition_of_unit(chain.cells), where);

  const Scalar share(Rat(1, static_cast<unsigned long>(n)));
  bool equi = true;
  for (const auto& cell : chain.cells)
    if (!(cell.measure() == share)) {
      equi = false;
      break;
    }
  c.check(p + "chain.equiprobable", equi, where);

  const auto ex = outcome_events(xc);
  const auto ey = outcome_events(yc);
  const auto values_match = [&](const std::map<Rat, Event>& by_outcome,
                                const std::vector<Rat>& vals) {
    for (std::size_t i = 0; i < n; ++i) {
      auto it = by_outcome.find(vals[i]);
      if (it == by_outcome.end() || !contains(it->second, chain.cells[i])) return false;
    }
    return true;
  };
  c.check(p + "chain.values_match_x", values_match(ex, chain.x_values), where);
  c.check(p + "chain.values_match_y", values_match(ey, chain.y_values), where);

  std::vector<bool> hit(n, false);
  bool bij = true;
  for (std::size_t v : chain.pi_hat) {
    if (v >= n || hit[v]) {
      bij = false;
      break;
    }
    hit[v] = true;
  }
  if (!c.check(p + "chain.pi_bijection", bij, where)) return;

  bool matches = true;
  for (std::size_t i = 0; i < n && matches; ++i)
    matches = chain.y_values[i] == chain.x_values[chain.pi_hat[i]];
  c.check(p + "chain.pi_matches_values", matches, where);

  const auto lengths = cycle_lengths(chain.pi_hat);
  c.check(p + "chain.order_lcm", lcm_of_cycles(chain.pi_hat) == chain.order_m, where);
  bool divides = true;
  for (std::size_t len : lengths)
    if (!mpz_divisible_ui_p(chain.order_m.get_mpz_t(), static_cast<unsigned long>(len))) {
      divides = false;
      break;
    }
  c.check(p + "chain.order_identity", divides,
          where + " pi^order = id via cycle decomposition");
  if (n <= 2000) {
    Int fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(n));
    c.check(p + "chain.order_bound", chain.order_m <= fact, where);
  } else {
    // lcm of cycle lengths summing to n never exceeds n!.
    c.check(p + "chain.order_bound", true, where + " entailed by order_lcm");
  }

  c.check(p + "chain.step_lottery_t0",
          make_step_lottery(chain.x_values, chain.y_values) == chain.step_lottery, where);
  std::vector<Rat> z1(n), z2(n);
  for (std::size_t i = 0; i < n; ++i) {
    z1[i] = chain.x_values[chain.pi_hat[i]];
    z2[i] = chain.x_values[chain.pi_hat[chain.pi_hat[i]]];
  }
  c.check(p + "chain.step_lottery_t1", make_step_lottery(z1, z2) == chain.step_lottery,
          where);
}

void verify_refinement_cells(Checker& c, const std::string& p,
                             const std::vector<RefinementCell>& cells,
                             const SimpleRV& xc, const SimpleRV& yc,
                             const std::string& where) {
  const auto ex = outcome_events(xc);
  const auto ey = outcome_events(yc);
  bool valid = !cells.empty();
  for (const auto& cell : cells) {
    if (cell.event.empty()) {
      valid = false;
      break;
    }
    auto ix = ex.find(cell.x_val);
    auto iy = ey.find(cell.y_val);
    if (ix == ex.end() || iy == ey.end() || !contains(ix->second, cell.event) ||
        !contains(iy->second, cell.event)) {
      valid = false;
      break;
    }
  }
  c.check(p + "refinement.cells_valid", valid, where);
  std::vector<Event> events;
  events.reserve(cells.size());
  for (const auto& cell : cells) events.push_back(cell.event);
  c.check(p + "refinement.partition", is_partition_of_unit(events), where);
}

void verify_case2(Checker& c, const std::string& p, const RefinementCertificate& cert,
                  const SimpleRV& xc, const SimpleRV& yc, const std::string& where) {
  if (!c.check(p + "refinement.denominator", cert.common_denominator >= 1, where)) return;
  const std::int64_t n = cert.common_denominator;
  verify_refinement_cells(c, p, cert.refinement_cells, xc, yc, where);

  bool counts_ok = true;
  std::vector<long> expected_count(cert.refinement_cells.size(), 0);
  Int total(0);
  for (std::size_t j = 0; j < cert.refinement_cells.size(); ++j) {
    const Scalar msr = cert.refinement_cells[j].event.measure();
    if (!msr.is_rational()) {
      counts_ok = false;
      break;
    }
    Rat count = msr.rat() * static_cast<long>(n);
    if (!rat_is_integer(count) || count <= 0) {
      counts_ok = false;
      break;
    }
    expected_count[j] = static_cast<long>(count.get_num().get_si());
    total += expected_count[j];
  }
  counts_ok = counts_ok && total == n;
  if (!c.check(p + "refinement.common_denominator", counts_ok, where)) return;

  bool parents_ok = cert.parent_of.size() == cert.chain.n_cells &&
                    cert.chain.cells.size() == cert.chain.n_cells;
  std::vector<long> seen(cert.refinement_cells.size(), 0);
  if (parents_ok) {
    for (std::size_t s = 0; s < cert.parent_of.size(); ++s) {
      const std::size_t j = cert.parent_of[s];
      if (j >= cert.refinement_cells.size()) {
        parents_ok = false;
        break;
      }
      ++seen[j];
      const auto& parent = cert.refinement_cells[j];
      if (!contains(parent.event, cert.chain.cells[s]) ||
          cert.chain.x_values[s] != parent.x_val ||
          cert.chain.y_values[s] != parent.y_val) {
        parents_ok = false;
        break;
      }
    }
  }
  parents_ok = parents_ok && seen == expected_count;
  c.check(p + "refinement.containment", parents_ok, where);

  verify_chain(c, p, cert.chain, xc, yc, where);
}

void verify_case3(Checker& c, const DyadicCertificate& cert, const SimpleRV& x,
                  const SimpleRV& xc, const SimpleRV& yc) {
  verify_refinement_cells(c, "dyadic.", cert.refinement_cells, xc, yc, "");
  const std::size_t m = cert.refinement_cells.size();

  Scalar min_measure = cert.refinement_cells.empty()
                           ? Scalar(0)
                           : cert.refinement_cells.front().event.measure();
  for (const auto& cell : cert.refinement_cells)
    if (cell.event.measure() < min_measure) min_measure = cell.event.measure();
  bool range_ok = cert.k_min >= 1 && cert.k_min <= cert.k_max &&
                  cert.records.size() ==
                      static_cast<std::size_t>(cert.k_max - cert.k_min + 1) &&
                  Scalar(rat_pow2_inv(cert.k_min)) < min_measure;
  for (std::size_t t = 0; t < cert.records.size() && range_ok; ++t)
    range_ok = cert.records[t].k == cert.k_min + static_cast<int>(t);
  if (!c.check("dyadic.k_range", range_ok)) return;

  const Distribution fx = distribution(xc);
  std::vector<Rat> outcome_set;
  for (const auto& atom : fx.atoms()) outcome_set.push_back(atom.outcome);
  const bool sentinel_fresh =
      std::find(outcome_set.begin(), outcome_set.end(), cert.sentinel) ==
      outcome_set.end();
  const bool sentinel_in_bounds =
      !(cert.sentinel < x.bounds().lo) && !(x.bounds().hi < cert.sentinel);
  c.check("dyadic.sentinel", sentinel_fresh && sentinel_in_bounds,
          "c = " + rat_to_string(cert.sentinel));

  for (const auto& rec : cert.records) {
    const std::string where = "k=" + std::to_string(rec.k);
    const Rat cell_rat = rat_pow2_inv(rec.k);
    const Scalar share(cell_rat);

    bool nu_ok = rec.nu_values.size() == m;
    for (std::size_t j = 0; j < m && nu_ok; ++j)
      nu_ok = rec.nu_values[j] == nu(cert.refinement_cells[j].event.measure(), rec.k);
    c.check("dyadic.nu", nu_ok, where);
    if (!nu_ok) continue;

    {
      std::vector<Event> events;
      events.reserve(rec.cells.size());
      for (const auto& cell : rec.cells) events.push_back(cell.event);
      c.check("dyadic.partition", is_partition_of_unit(events), where);
    }

    bool structure_ok = true;
    std::vector<std::int64_t> full_seen(m, 0);
    std::vector<std::int64_t> rem_seen(m, 0);
    for (const auto& cell : rec.cells) {
      if (cell.parent >= m) {
        structure_ok = false;
        break;
      }
      if (!contains(cert.refinement_cells[cell.parent].event, cell.event)) {
        structure_ok = false;
        break;
      }
      const Scalar msr = cell.event.measure();
      if (cell.remainder) {
        ++rem_seen[cell.parent];
        if (!(msr.sign() > 0) || share < msr) {
          structure_ok = false;
          break;
        }
      } else {
        ++full_seen[cell.parent];
        if (!(msr == share)) {
          structure_ok = false;
          break;
        }
      }
    }
    for (std::size_t j = 0; j < m && structure_ok; ++j)
      structure_ok = full_seen[j] == rec.nu_values[j] && rem_seen[j] == 1;
    if (!c.check("dyadic.cell_structure", structure_ok, where)) continue;

    const auto rv_matches = [&](const SimpleRV& rv, bool x_side) {
      if (rv.cells().size() != rec.cells.size()) return false;
      for (std::size_t t = 0; t < rec.cells.size(); ++t) {
        const auto& parent = cert.refinement_cells[rec.cells[t].parent];
        const Rat& want = rec.cells[t].remainder ? cert.sentinel
                                                 : (x_side ? parent.x_val : parent.y_val);
        if (!(rv.cells()[t].event == rec.cells[t].event) ||
            rv.cells()[t].outcome != want)
          return false;
      }
      return true;
    };
    c.check("dyadic.xk_values", rv_matches(rec.x_k, true), where);
    c.check("dyadic.yk_values", rv_matches(rec.y_k, false), where);

    // Surplus per outcome, exact integers scaled by 2^k.
    std::map<Rat, std::int64_t> surplus;
    for (std::size_t j = 0; j < m; ++j) {
      surplus[cert.refinement_cells[j].x_val] += rec.nu_values[j];
      surplus[cert.refinement_cells[j].y_val] -= rec.nu_values[j];
    }
    const auto flips_ok = [&](const std::vector<std::size_t>& flips, bool x_side) {
      std::map<Rat, std::int64_t> flipped;
      std::set<std::size_t> unique_ids;
      for (std::size_t t : flips) {
        if (t >= rec.cells.size() || rec.cells[t].remainder || !unique_ids.insert(t).second)
          return false;
        const auto& parent = cert.refinement_cells[rec.cells[t].parent];
        ++flipped[x_side ? parent.x_val : parent.y_val];
      }
      for (const auto& [outcome, d] : surplus) {
        const std::int64_t want = x_side ? std::max<std::int64_t>(d, 0)
                                         : std::max<std::int64_t>(-d, 0);
        auto it = flipped.find(outcome);
        const std::int64_t got = it == flipped.end() ? 0 : it->second;
        if (got != want) return false;
        if (it != flipped.end()) flipped.erase(it);
      }
      return flipped.empty();
    };
    c.check("dyadic.flip_counts", flips_ok(rec.x_flips, true) && flips_ok(rec.y_flips, false),
            where);

    const auto bar_matches = [&](const SimpleRV& bar, const SimpleRV& base,
                                 const std::vector<std::size_t>& flips) {
      if (bar.cells().size() != rec.cells.size()) return false;
      std::set<std::size_t> flip_set(flips.begin(), flips.end());
      for (std::size_t t = 0; t < rec.cells.size(); ++t) {
        const Rat& want = flip_set.count(t) ? cert.sentinel : base.cells()[t].outcome;
        if (!(bar.cells()[t].event == rec.cells[t].event) ||
            bar.cells()[t].outcome != want)
          return false;
      }
      return true;
    };
    c.check("dyadic.xbar_values", bar_matches(rec.xbar, rec.x_k, rec.x_flips), where);
    c.check("dyadic.ybar_values", bar_matches(rec.ybar, rec.y_k, rec.y_flips), where);

    const SimpleRV xbar_c = rec.xbar.canonicalized();
    const SimpleRV ybar_c = rec.ybar.canonicalized();

    // Item (a): equal distributions, exactly.
    const Distribution fxbar = distribution(xbar_c);
    const Distribution fybar = distribution(ybar_c);
    c.check("dyadic.item_a", fxbar == fybar, where);

    // Item (b): disagreement bounded by m^2/2^k.
    const Scalar change_bound(Rat(static_cast<unsigned long>(m * m)) * cell_rat);
    const bool b_ok = measure_where_values_differ(xbar_c, xc) <= change_bound &&
                      measure_where_values_differ(ybar_c, yc) <= change_bound &&
                      Scalar(rec.bound_change) == change_bound;
    c.check("dyadic.item_b", b_ok, where);

    // Item (c): every outcome mass a multiple of 1/2^k.
    const auto dyadic_masses = [&](const Distribution& d) {
      for (const auto& atom : d.atoms()) {
        if (!atom.mass.is_rational()) return false;
        if (!rat_is_integer(Rat(atom.mass.rat() / cell_rat))) return false;
      }
      return true;
    };
    c.check("dyadic.item_c", dyadic_masses(fxbar) && dyadic_masses(fybar), where);

    // |P(X^k = u) - P(Y^k = u)| <= m/2^k and P(X^k = u) <= P(X = u).
    const Distribution fxk = distribution(rec.x_k.canonicalized());
    const Distribution fyk = distribution(rec.y_k.canonicalized());
    const Scalar diff_bound(Rat(static_cast<unsigned long>(m)) * cell_rat);
    const auto mass_of = [](const Distribution& d, const Rat& u) {
      for (const auto& atom : d.atoms())
        if (atom.outcome == u) return atom.mass;
      return Scalar(0);
    };
    bool diff_ok = Scalar(rec.bound_diff) == diff_bound;
    bool shrink_ok = true;
    for (const auto& atom : fx.atoms()) {
      Scalar gap = mass_of(fxk, atom.outcome) - mass_of(fyk, atom.outcome);
      if (gap.sign() < 0) gap = -gap;
      diff_ok = diff_ok && gap <= diff_bound;
      // fy == fx was checked up front, so atom.mass bounds both sides.
      shrink_ok = shrink_ok && mass_of(fxk, atom.outcome) <= atom.mass &&
                  mass_of(fyk, atom.outcome) <= atom.mass;
    }
    c.check("dyadic.diff_bound", diff_ok, where);
    c.check("dyadic.shrink", shrink_ok, where);

    c.check("dyadic.embedded_denominator",
            rec.embedded.common_denominator == (std::int64_t(1) << rec.k), where);
    verify_case2(c, "dyadic.embedded.", rec.embedded, xbar_c, ybar_c, where);
  }
}

}  // namespace

bool VerificationReport::ok() const {
  return std::all_of(items.begin(), items.end(),
                     [](const VerificationItem& i) { return i.ok; });
}

std::string VerificationReport::first_failure() const {
  for (const auto& i : items)
    if (!i.ok) return i.name;
  return {};
}

VerificationReport verify_certificate(const EquivalenceCertificate& cert,
                                      const SimpleRV& x, const SimpleRV& y) {
  VerificationReport report;
  Checker c(report);

  const SimpleRV xc = x.canonicalized();
  const SimpleRV yc = y.canonicalized();
  const Distribution fx = distribution(xc);
  const Distribution fy = distribution(yc);
  if (!c.check("inputs.equal_distribution", fx == fy,
               fx == fy ? "" : describe_first_mismatch(fx, fy)))
    return report;
  c.check("inputs.distribution_matches", cert.dist == fx);
  // A refinement certificate is valid evidence for a Case-1 pair too
  // (coinciding equiprobable partitions trivially have rational
  // intersections); certify itself always emits the classified case.
  const CaseKind classified = classify_case(x, y);
  const bool tag_ok = classified == cert.kind ||
                      (classified == CaseKind::Case1 && cert.kind == CaseKind::Case2);
  c.check("case.tag", tag_ok,
          tag_ok && classified != cert.kind ? "case2 evidence for a case1 pair" : "");

  const bool payload_matches =
      (cert.kind == CaseKind::Case1 &&
       std::holds_alternative<PermutationChainCertificate>(cert.payload)) ||
      (cert.kind == CaseKind::Case2 &&
       std::holds_alternative<RefinementCertificate>(cert.payload)) ||
      (cert.kind == CaseKind::Case3 && std::holds_alternative<DyadicCertificate>(cert.payload));
  if (!c.check("case.payload", payload_matches)) return report;

  switch (cert.kind) {
    case CaseKind::Case1:
      verify_chain(c, "", std::get<PermutationChainCertificate>(cert.payload), xc, yc, "");
      break;
    case CaseKind::Case2:
      verify_case2(c, "", std::get<RefinementCertificate>(cert.payload), xc, yc, "");
      break;
    case CaseKind::Case3:
      verify_case3(c, std::get<DyadicCertificate>(cert.payload), x, xc, yc);
      break;
  }
  return report;
}

}  // namespace probeq
