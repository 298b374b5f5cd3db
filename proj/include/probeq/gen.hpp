#ifndef PROBEQ_GEN_HPP
#define PROBEQ_GEN_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "probeq/rv.hpp"

namespace probeq::gen {

/// mt19937_64 keeps seeded corpora reproducible across platforms.
using Rng = std::mt19937_64;

std::uint64_t below(Rng& rng, std::uint64_t n);

struct Pair {
  SimpleRV x;
  SimpleRV y;
};

/// Equiprobable shared cells (N <= max_cells), outcomes drawn from a small
/// value set, y a value-permutation of x. Always equal in distribution.
Pair case1_pair(Rng& rng, std::size_t max_cells = 8);

/// Rational pair with <= 5 outcomes and block denominators <= 12, equal in
/// distribution by construction (same mass blocks, shuffled layouts).
Pair case2_pair(Rng& rng);

/// Q(sqrt2) pair with an irrational refinement-cell measure and every
/// refinement cell above 1/8, so dyadic certificates start at k <= 3.
Pair case3_pair(Rng& rng);

/// Three-outcome Q(sqrt2) pair whose joint-mass matrix is asymmetric, so
/// dyadic balancing flips occur at some levels. Smallest refinement cell
/// is 1/12 (certificates start at k = 4).
Pair case3_triple(Rng& rng);

/// Strict FOSD pair: y rational, x equals y with at least one outcome
/// bumped upward on a positive-measure cell.
Pair fosd_pair(Rng& rng);

/// Small rational distribution for quantile/metric property tests.
Distribution random_distribution(Rng& rng);

/// Scalar in (0, 1], rational or with a sqrt2 part.
Scalar random_unit_scalar(Rng& rng);

/// General-purpose scalar with moderate numerators and denominators.
Scalar random_scalar(Rng& rng);

/// Canonical event assembled from random breakpoints in [0, 1].
Event random_event(Rng& rng);

}  // namespace probeq::gen

#endif
