#ifndef PROBEQ_RATIONAL_HPP
#define PROBEQ_RATIONAL_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace probeq {

/// Arbitrary-precision rational, stored in lowest terms with positive
/// denominator (mpq canonical form).
using Rat = mpq_class;
using Int = mpz_class;

/// Raised when textual input (scalars, events, JSON payloads) is malformed.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Parses "p/q" or "p" (base 10). Rejects zero denominators and garbage.
Rat rat_from_string(const std::string& text);

/// Canonical "p/q" rendering; integers print without the "/1".
std::string rat_to_string(const Rat& r);

inline bool rat_is_integer(const Rat& r) { return r.get_den() == 1; }

/// 1/2^k as an exact rational.
Rat rat_pow2_inv(int k);

/// Truncating conversion; deterministic (mpq_get_d).
inline double rat_to_double(const Rat& r) { return mpq_get_d(r.get_mpq_t()); }

Int lcm(const Int& a, const Int& b);

}  // namespace probeq

#endif
