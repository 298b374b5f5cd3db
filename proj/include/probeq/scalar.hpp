#ifndef PROBEQ_SCALAR_HPP
#define PROBEQ_SCALAR_HPP

#include <cstdint>
#include <string>

#include "probeq/rational.hpp"

namespace probeq {

enum class Ordering { LT, EQ, GT };

/// Exact element of the quadratic field Q(sqrt 2), stored as
/// rat + surd * sqrt(2) with both coefficients in lowest terms.
///
/// Comparisons are exact and total: the sign of a + b*sqrt(2) is decided
/// from the signs of a and b, falling back to comparing a^2 with 2*b^2
/// when they disagree. Values are immutable and cheap to copy at the
/// magnitudes this library works with.
class Scalar {
 public:
  Scalar() : rat_(0), surd_(0) {}
  Scalar(const Rat& rational) : rat_(rational), surd_(0) {}  // NOLINT: implicit by design
  Scalar(long value) : rat_(value), surd_(0) {}              // NOLINT
  Scalar(int value) : rat_(value), surd_(0) {}               // NOLINT
  Scalar(Rat rational, Rat surd_coeff);

  const Rat& rat() const { return rat_; }
  const Rat& surd() const { return surd_; }

  bool is_rational() const { return surd_ == 0; }
  bool is_zero() const { return rat_ == 0 && surd_ == 0; }

  /// Exact sign of the represented real: -1, 0, +1.
  int sign() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.rat_ == b.rat_ && a.surd_ == b.surd_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  friend bool operator<(const Scalar& a, const Scalar& b) { return (a - b).sign() < 0; }
  friend bool operator<=(const Scalar& a, const Scalar& b) { return (a - b).sign() <= 0; }
  friend bool operator>(const Scalar& a, const Scalar& b) { return (a - b).sign() > 0; }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return (a - b).sign() >= 0; }

  /// Serialized form: "p/q" when rational, else "p/q+r/s*sqrt2"
  /// (negative surd coefficients render as "p/q-r/s*sqrt2").
  std::string to_string() const;
  static Scalar from_string(const std::string& text);

  /// Conversion through 256-bit floating point; display/report use only.
  double to_double() const;

  /// Decimal rendering with the requested number of significant digits.
  std::string to_decimal_string(int digits) const;

 private:
  Rat rat_;
  Rat surd_;
};

Ordering scalar_compare(const Scalar& a, const Scalar& b);

/// Largest integer f with f <= s.
Int floor_scalar(const Scalar& s);

/// The unique nu with nu/2^k < s <= (nu+1)/2^k, i.e. ceil(s*2^k) - 1.
/// Requires 0 < s <= 1 and 1 <= k <= 62.
std::int64_t nu(const Scalar& s, int k);

}  // namespace probeq

#endif
