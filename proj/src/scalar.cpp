#include "probeq/scalar.hpp"
#include <cctype>

#include <cmath>
#include <cstdio>
#include <vector>

namespace probeq {
namespace {

constexpr int kFloatBits = 256;

// a^2 compared with 2*b^2, as integers cross-multiplied.
int cmp_sq_vs_twice_sq(const Rat& a, const Rat& b) {
  Rat lhs = a * a;
  Rat rhs = b * b * 2;
  return cmp(lhs, rhs);
}

mpf_class sqrt2_mpf(int bits) {
  mpf_class s(2, bits);
  mpf_sqrt(s.get_mpf_t(), s.get_mpf_t());
  return s;
}

}  // namespace

Scalar::Scalar(Rat rational, Rat surd_coeff)
    : rat_(std::move(rational)), surd_(std::move(surd_coeff)) {}

int Scalar::sign() const {
  const int sa = sgn(rat_);
  const int sb = sgn(surd_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: |a| vs |b|*sqrt2 decides; a^2 = 2 b^2 would make
  // sqrt2 rational, so the comparison is never a tie here.
  const int c = cmp_sq_vs_twice_sq(rat_, surd_);
  if (c == 0) throw std::logic_error("Scalar::sign: a^2 == 2 b^2 with a,b != 0");
  return c > 0 ? sa : sb;
}

Scalar Scalar::operator-() const { return Scalar(-rat_, -surd_); }

Scalar& Scalar::operator+=(const Scalar& o) {
  rat_ += o.rat_;
  surd_ += o.surd_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  rat_ -= o.rat_;
  surd_ -= o.surd_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  // (a + b s)(c + d s) = ac + 2bd + (ad + bc) s, s = sqrt2.
  Rat a = rat_, b = surd_;
  rat_ = a * o.rat_ + 2 * b * o.surd_;
  surd_ = a * o.surd_ + b * o.rat_;
  return *this;
}

std::string Scalar::to_string() const {
  if (is_rational()) return rat_to_string(rat_);
  std::string out = rat_to_string(rat_);
  if (surd_ < 0) {
    out += '-';
    out += rat_to_string(Rat(-surd_));
  } else {
    out += '+';
    out += rat_to_string(surd_);
  }
  out += "*sqrt2";
  return out;
}

Scalar Scalar::from_string(const std::string& text) {
  const std::string suffix = "*sqrt2";
  const std::size_t pos = text.find(suffix);
  if (pos == std::string::npos) return Scalar(rat_from_string(text));
  if (pos + suffix.size() != text.size())
    throw ParseError("trailing characters after sqrt2 term: '" + text + "'");
  std::string head = text.substr(0, pos);
  // Split "rat(+|-)surd" at the sign separating the two fractions: the
  // last '+' or '-' directly after a digit (embedded signs follow '/',
  // a separator, or start the string).
  std::size_t split = std::string::npos;
  for (std::size_t i = head.size(); i-- > 1;) {
    if ((head[i] == '+' || head[i] == '-') &&
        std::isdigit(static_cast<unsigned char>(head[i - 1]))) {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) {
    // Pure surd term, e.g. "1/2*sqrt2".
    return Scalar(Rat(0), rat_from_string(head));
  }
  Rat rat_part = rat_from_string(head.substr(0, split));
  Rat surd_part = rat_from_string(head.substr(split + 1));
  if (head[split] == '-') surd_part = -surd_part;
  return Scalar(std::move(rat_part), std::move(surd_part));
}

double Scalar::to_double() const {
  if (is_rational()) return rat_to_double(rat_);
  mpf_class v(0, kFloatBits);
  v = mpf_class(rat_, kFloatBits) + mpf_class(surd_, kFloatBits) * sqrt2_mpf(kFloatBits);
  return v.get_d();
}

std::string Scalar::to_decimal_string(int digits) const {
  if (digits < 1) digits = 1;
  if (digits > 300) digits = 300;
  const int bits = static_cast<int>(digits * 3.33) + 64;
  mpf_class v(0, bits);
  v = mpf_class(rat_, bits) + mpf_class(surd_, bits) * sqrt2_mpf(bits);
  mp_exp_t exp10 = 0;
  std::string mant = v.get_str(exp10, 10, static_cast<std::size_t>(digits));
  if (mant.empty()) return "0";
  std::string sign;
  if (mant[0] == '-') {
    sign = "-";
    mant = mant.substr(1);
  }
  std::string out;
  if (exp10 <= 0) {
    out = "0." + std::string(static_cast<std::size_t>(-exp10), '0') + mant;
  } else if (static_cast<std::size_t>(exp10) >= mant.size()) {
    out = mant + std::string(static_cast<std::size_t>(exp10) - mant.size(), '0');
  } else {
    out = mant.substr(0, static_cast<std::size_t>(exp10)) + "." +
          mant.substr(static_cast<std::size_t>(exp10));
  }
  return sign + out;
}

Ordering scalar_compare(const Scalar& a, const Scalar& b) {
  const int s = (a - b).sign();
  if (s < 0) return Ordering::LT;
  if (s > 0) return Ordering::GT;
  return Ordering::EQ;
}

Int floor_scalar(const Scalar& s) {
  if (s.is_rational()) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), s.rat().get_num_mpz_t(), s.rat().get_den_mpz_t());
    return q;
  }
  Int f(static_cast<long>(std::floor(s.to_double())));
  // Exact fix-up around the floating estimate.
  while (Scalar(Rat(f)) > s) --f;
  while (Scalar(Rat(f + 1)) <= s) ++f;
  return f;
}

std::int64_t nu(const Scalar& s, int k) {
  if (k < 1 || k > 62) throw std::invalid_argument("nu: k out of range");
  if (s.sign() <= 0) throw std::invalid_argument("nu: s must be positive");
  if (Scalar(Rat(1)) < s) throw std::invalid_argument("nu: s must be <= 1");
  Rat two_k(1);
  two_k <<= static_cast<unsigned long>(k);
  const Scalar v = s * Scalar(two_k);
  Int result = floor_scalar(v);
  if (v.is_rational() && rat_is_integer(v.rat())) result -= 1;  // ceil(v) - 1 at integers
  if (result < 0 || !result.fits_slong_p())
    throw std::logic_error("nu: result out of range");
  return static_cast<std::int64_t>(result.get_si());
}

}  // namespace probeq
