#include "probeq/gen.hpp"

#include <algorithm>

#include "probeq/certificates.hpp"

namespace probeq::gen {
namespace {

const std::vector<long> kOutcomePool{0, 5, 10, 20, 30};

Rat rat_frac(long num, unsigned long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

template <typename T>
void shuffle(Rng& rng, std::vector<T>& v) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(rng, i)]);
}

std::vector<Rat> pick_outcomes(Rng& rng, std::size_t n) {
  std::vector<long> pool = kOutcomePool;
  shuffle(rng, pool);
  pool.resize(n);
  std::sort(pool.begin(), pool.end());
  std::vector<Rat> out;
  for (long v : pool) out.emplace_back(v);
  return out;
}

/// Random composition of total into n positive integer parts.
std::vector<long> composition(Rng& rng, long total, std::size_t n) {
  std::vector<long> cuts{0, total};
  while (cuts.size() < n + 1) {
    const long c = 1 + static_cast<long>(below(rng, static_cast<std::uint64_t>(total - 1)));
    if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<long> parts;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) parts.push_back(cuts[i + 1] - cuts[i]);
  return parts;
}

SimpleRV blocks_to_rv(const OutcomeBounds& bounds,
                      const std::vector<std::pair<Rat, Scalar>>& blocks) {
  std::vector<SimpleRV::Cell> cells;
  Scalar cursor(0);
  for (const auto& [outcome, width] : blocks) {
    const Scalar next = cursor + width;
    cells.push_back({Event::interval(cursor, next), outcome});
    cursor = next;
  }
  return SimpleRV::make(bounds, std::move(cells));
}

}  // namespace

std::uint64_t below(Rng& rng, std::uint64_t n) { return n ? rng() % n : 0; }

Pair case1_pair(Rng& rng, std::size_t max_cells) {
  const std::size_t n = 1 + below(rng, max_cells);
  const OutcomeBounds bounds = OutcomeBounds::make(Rat(-10), Rat(50));
  std::vector<Rat> xv;
  for (std::size_t i = 0; i < n; ++i)
    xv.emplace_back(kOutcomePool[below(rng, kOutcomePool.size())]);
  std::vector<Rat> yv = xv;
  shuffle(rng, yv);
  const Rat share(1, static_cast<unsigned long>(n));
  std::vector<SimpleRV::Cell> xc, yc;
  for (std::size_t i = 0; i < n; ++i) {
    Event cell = Event::interval(Scalar(share * static_cast<long>(i)),
                                 Scalar(share * static_cast<long>(i + 1)));
    xc.push_back({cell, xv[i]});
    yc.push_back({std::move(cell), yv[i]});
  }
  return Pair{SimpleRV::make(bounds, std::move(xc)), SimpleRV::make(bounds, std::move(yc))};
}

Pair case2_pair(Rng& rng) {
  const OutcomeBounds bounds = OutcomeBounds::make(Rat(-10), Rat(50));
  const long den = 2 + static_cast<long>(below(rng, 11));  // 2..12
  const std::size_t n_out =
      1 + below(rng, std::min<std::uint64_t>(5, static_cast<std::uint64_t>(den)));
  const std::vector<Rat> outcomes = pick_outcomes(rng, n_out);
  const std::vector<long> masses = composition(rng, den, n_out);

  // A block per atom; each side lays the blocks out in its own order.
  const auto layout = [&](Rng& r) {
    std::vector<std::pair<Rat, Scalar>> blocks;
    for (std::size_t i = 0; i < n_out; ++i)
      blocks.emplace_back(outcomes[i],
                          Scalar(rat_frac(masses[i], static_cast<unsigned long>(den))));
    shuffle(r, blocks);
    return blocks;
  };
  return Pair{blocks_to_rv(bounds, layout(rng)), blocks_to_rv(bounds, layout(rng))};
}

Pair case3_pair(Rng& rng) {
  const OutcomeBounds bounds = OutcomeBounds::make(Rat(-10), Rat(50));
  for (;;) {
    // s = a + b*sqrt2 in (5/8, 3/4), irrational.
    const Rat a = rat_frac(20 + static_cast<long>(below(rng, 4)), 32);
    const long b_den = 16L << below(rng, 2);
    const Rat b = rat_frac(below(rng, 2) ? 1 : -1, static_cast<unsigned long>(b_den));
    const Scalar s(a, b);
    if (!(Scalar(rat_frac(5, 8)) < s) || !(s < Scalar(rat_frac(3, 4)))) continue;

    const std::vector<Rat> outcomes = pick_outcomes(rng, 2);
    const Rat& u = outcomes[0];
    const Rat& v = outcomes[1];
    const Scalar one(1);
    std::vector<std::pair<Rat, Scalar>> x_blocks{{u, s}, {v, one - s}};

    std::vector<std::pair<Rat, Scalar>> y_blocks;
    if (below(rng, 3) == 0) {
      // Asymmetric layout (v w1)(u w2)(v rest_v)(u rest_u); triggers
      // balancing flips at some k.
      const Scalar w1(rat_frac(9 + static_cast<long>(below(rng, 3)), 64));  // 9..11 / 64
      const Scalar w2(rat_frac(9 + static_cast<long>(below(rng, 5)), 64));  // 9..13 / 64
      y_blocks = {{v, w1}, {u, w2}, {v, one - s - w1}, {u, s - w2}};
    } else {
      y_blocks = {{v, one - s}, {u, s}};
    }

    Pair pair{blocks_to_rv(bounds, x_blocks), blocks_to_rv(bounds, y_blocks)};
    if (!equal_in_distribution(pair.x, pair.y)) continue;
    if (classify_case(pair.x, pair.y) != CaseKind::Case3) continue;
    Scalar min_mass(1);
    for (const auto& cell : common_refinement(pair.x.canonicalized(), pair.y.canonicalized()))
      min_mass = std::min(min_mass, cell.event.measure(),
                          [](const Scalar& p, const Scalar& q) { return p < q; });
    if (!(Scalar(rat_frac(1, 8)) < min_mass)) continue;
    return pair;
  }
}

Pair case3_triple(Rng& rng) {
  const OutcomeBounds bounds = OutcomeBounds::make(Rat(-10), Rat(50));
  // Joint masses: X=u1 sits entirely where Y=u2, while Y=u1 splits into
  // alpha and p1-alpha; equal marginals, asymmetric cells.
  const Scalar p1(rat_frac(7, 24));
  const Scalar p2(rat_frac(3, 8));
  const Scalar p3(rat_frac(1, 3));
  const long t_den = 32 + 8 * static_cast<long>(below(rng, 3));  // 32, 40, 48
  const Scalar alpha(rat_frac(1, 8), rat_frac(1, static_cast<unsigned long>(t_den)));
  std::vector<Rat> outcomes = pick_outcomes(rng, 3);
  const Rat& u1 = outcomes[0];
  const Rat& u2 = outcomes[1];
  const Rat& u3 = outcomes[2];
  Pair pair{blocks_to_rv(bounds, {{u1, p1}, {u2, p2}, {u3, p3}}),
            blocks_to_rv(bounds, {{u2, p1},
                                  {u1, alpha},
                                  {u3, p2 - alpha},
                                  {u1, p1 - alpha},
                                  {u2, p2 - p1},
                                  {u3, p3 - p2 + alpha}})};
  if (classify_case(pair.x, pair.y) != CaseKind::Case3)
    throw std::logic_error("case3_triple: construction no longer classifies as case 3");
  return pair;
}

Pair fosd_pair(Rng& rng) {
  const OutcomeBounds bounds = OutcomeBounds::make(Rat(-10), Rat(50));
  for (;;) {
    const long den = 2 + static_cast<long>(below(rng, 11));
    const std::size_t n_out =
        1 + below(rng, std::min<std::uint64_t>(4, static_cast<std::uint64_t>(den)));
    const std::vector<Rat> outcomes = pick_outcomes(rng, n_out);
    const std::vector<long> masses = composition(rng, den, n_out);
    std::vector<std::pair<Rat, Scalar>> y_blocks;
    for (std::size_t i = 0; i < n_out; ++i)
      y_blocks.emplace_back(outcomes[i],
                            Scalar(rat_frac(masses[i], static_cast<unsigned long>(den))));
    shuffle(rng, y_blocks);

    std::vector<std::pair<Rat, Scalar>> x_blocks = y_blocks;
    bool bumped = false;
    for (auto& [outcome, width] : x_blocks) {
      if (below(rng, 2) == 0) continue;
      outcome = outcome + Rat(1 + static_cast<long>(below(rng, 5)));
      bumped = true;
    }
    if (!bumped) continue;
    return Pair{blocks_to_rv(bounds, x_blocks), blocks_to_rv(bounds, y_blocks)};
  }
}

Distribution random_distribution(Rng& rng) {
  const long den = 2 + static_cast<long>(below(rng, 15));
  const std::size_t n =
      1 + below(rng, std::min<std::uint64_t>(4, static_cast<std::uint64_t>(den)));
  const std::vector<Rat> outcomes = pick_outcomes(rng, n);
  const std::vector<long> masses = composition(rng, den, n);
  std::vector<Distribution::Atom> atoms;
  for (std::size_t i = 0; i < n; ++i)
    atoms.push_back({outcomes[i], Scalar(rat_frac(masses[i], static_cast<unsigned long>(den)))});
  return Distribution::make(std::move(atoms));
}

Scalar random_unit_scalar(Rng& rng) {
  for (;;) {
    const unsigned long den = 1 + below(rng, 40);
    const Rat a = rat_frac(static_cast<long>(below(rng, den + 1)), den);
    Rat b(0);
    if (below(rng, 2)) {
      const unsigned long bden = 4 + below(rng, 60);
      b = rat_frac(below(rng, 2) ? 1 : -1, bden) * static_cast<long>(1 + below(rng, 3));
    }
    const Scalar s(a, b);
    if (s.sign() > 0 && !(Scalar(1) < s)) return s;
  }
}

Scalar random_scalar(Rng& rng) {
  const unsigned long den = 1 + below(rng, 200);
  const long num = static_cast<long>(below(rng, 4 * den + 1)) - static_cast<long>(2 * den);
  Rat a = rat_frac(num, den);
  if (below(rng, 2) == 0) return Scalar(a);
  const unsigned long sden = 1 + below(rng, 200);
  const long snum = static_cast<long>(below(rng, 2 * sden + 1)) - static_cast<long>(sden);
  return Scalar(std::move(a), rat_frac(snum, sden));
}

Event random_event(Rng& rng) {
  const std::size_t pieces = 1 + below(rng, 3);
  std::vector<Scalar> cuts;
  while (cuts.size() < 2 * pieces) {
    Scalar s = random_unit_scalar(rng);
    if (std::find(cuts.begin(), cuts.end(), s) == cuts.end()) cuts.push_back(std::move(s));
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<Interval> ivs;
  for (std::size_t i = 0; i + 1 < cuts.size(); i += 2)
    ivs.push_back(Interval{cuts[i], cuts[i + 1]});
  return Event::from_intervals(std::move(ivs));
}

}  // namespace probeq::gen
