#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "probeq/gen.hpp"
#include "probeq/scalar.hpp"

using namespace probeq;

namespace {
Scalar s(const std::string& text) { return Scalar::from_string(text); }
}  // namespace

TEST_CASE("sign and compare on the spec examples") {
  CHECK(scalar_compare(s("1/2"), s("1/2")) == Ordering::EQ);
  // sqrt2/2 ~ 0.7071
  CHECK(scalar_compare(s("0+1/2*sqrt2"), s("3/4")) == Ordering::LT);
  CHECK(scalar_compare(s("0+1/2*sqrt2"), s("7/10")) == Ordering::GT);
}

TEST_CASE("field arithmetic stays exact") {
  const Scalar a(Rat(1, 2), Rat(1, 2));   // 1/2 + sqrt2/2
  const Scalar b(Rat(1, 2), Rat(-1, 2));  // conjugate
  CHECK((a * b) == Scalar(Rat(-1, 4)));   // 1/4 - 2/4
  CHECK((a + b) == Scalar(1));
  CHECK((a - a).is_zero());
  const Scalar sqrt2(Rat(0), Rat(1));
  CHECK(sqrt2 * sqrt2 == Scalar(2));
}

TEST_CASE("string round trip") {
  const char* cases[] = {"0",         "5",           "-3/4",
                         "1/2+1/2*sqrt2", "0+-2/3*sqrt2", "7/8-1/16*sqrt2"};
  for (const auto* text : cases) {
    const Scalar v = s(text);
    CHECK(Scalar::from_string(v.to_string()) == v);
  }
  CHECK(s("1/2+1/2*sqrt2") == Scalar(Rat(1, 2), Rat(1, 2)));
  CHECK(s("7/8-1/16*sqrt2") == Scalar(Rat(7, 8), Rat(-1, 16)));
  CHECK(s("1/2*sqrt2") == Scalar(Rat(0), Rat(1, 2)));
  CHECK_THROWS_AS(s("1/0"), ParseError);
  CHECK_THROWS_AS(s("abc"), ParseError);
  CHECK_THROWS_AS(s("1/2 + 1/2*sqrt2"), ParseError);
}

TEST_CASE("decimal rendering") {
  CHECK(s("1/2").to_decimal_string(3) == "0.5");
  CHECK(s("0+1*sqrt2").to_decimal_string(6).substr(0, 7) == "1.41421");
}

TEST_CASE("nu on the spec examples") {
  CHECK(nu(s("1/2"), 2) == 1);
  CHECK(nu(Scalar(Rat(1), Rat(-1, 2)), 4) == 4);  // 1 - sqrt2/2
  CHECK(nu(Scalar(1), 3) == 7);
  CHECK_THROWS_AS(nu(Scalar(0), 3), std::invalid_argument);
  CHECK_THROWS_AS(nu(Scalar(-1), 3), std::invalid_argument);
}

TEST_CASE("nu satisfies its defining double inequality") {
  gen::Rng rng(20240817);
  for (int i = 0; i < 1000; ++i) {
    const Scalar v = gen::random_unit_scalar(rng);
    for (int k = 1; k <= 30; ++k) {
      const std::int64_t n = nu(v, k);
      const Rat hi(n + 1);
      const Rat lo(n);
      const Scalar pow = Scalar(rat_pow2_inv(k));
      CHECK(Scalar(lo) * pow < v);
      CHECK(!(Scalar(hi) * pow < v));
    }
  }
}

TEST_CASE("scalar_compare agrees with the 200-digit decimal oracle") {
  gen::Rng rng(777);
  int equal_seen = 0;
  for (int i = 0; i < 10000; ++i) {
    Scalar a = gen::random_scalar(rng);
    Scalar b = (i % 10 == 0) ? a : gen::random_scalar(rng);  // force some ties
    if (i % 10 == 0) ++equal_seen;
    CHECK(scalar_compare(a, b) == oracles::decimal_compare(a, b));
  }
  CHECK(equal_seen > 0);
}

TEST_CASE("floor_scalar") {
  CHECK(floor_scalar(s("7/2")) == 3);
  CHECK(floor_scalar(s("-7/2")) == -4);
  CHECK(floor_scalar(s("0+1*sqrt2")) == 1);
  CHECK(floor_scalar(s("0+-1*sqrt2")) == -2);
  CHECK(floor_scalar(s("4")) == 4);
}
