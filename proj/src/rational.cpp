#include "probeq/rational.hpp"

#include <cctype>

namespace probeq {

Rat rat_from_string(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational literal");
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    const bool sign_ok = (c == '-' || c == '+') && (i == 0 || text[i - 1] == '/');
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '/' && !sign_ok)
      throw ParseError("bad rational literal: '" + text + "'");
  }
  Rat r;
  if (mpq_set_str(r.get_mpq_t(), text.c_str(), 10) != 0)
    throw ParseError("bad rational literal: '" + text + "'");
  if (r.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
  r.canonicalize();
  return r;
}

std::string rat_to_string(const Rat& r) { return r.get_str(); }

Rat rat_pow2_inv(int k) {
  if (k < 0 || k > 1024) throw std::invalid_argument("rat_pow2_inv: bad exponent");
  Rat r(1);
  r >>= static_cast<unsigned long>(k);
  return r;
}

Int lcm(const Int& a, const Int& b) {
  Int out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

}  // namespace probeq
