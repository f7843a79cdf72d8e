#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <limits>
#include <random>
#include <string>

#include <divfree/scalar.hpp>

using divfree::DomainError;
using divfree::ParseError;
using divfree::Scalar;

TEST_CASE("construction canonicalizes sign and gcd") {
  CHECK(Scalar(2, 4) == Scalar(1, 2));
  CHECK(Scalar(3, -6) == Scalar(-1, 2));
  CHECK(Scalar(-3, -6) == Scalar(1, 2));
  CHECK(Scalar(0, 17).is_zero());
  CHECK(Scalar(7, 7).is_one());
  CHECK_THROWS_AS(Scalar(1, 0), DomainError);
}

TEST_CASE("string round trip and parse failures") {
  for (const char* s : {"0", "1", "-1", "5/3", "-22/7", "9223372036854775807",
                        "123456789012345678901234567891/18014398509481984"}) {
    const Scalar v = Scalar::from_string(s);
    CHECK(v.to_string() == s);
    CHECK(Scalar::from_string(v.to_string()) == v);
  }
  // Non-canonical inputs are reduced.
  CHECK(Scalar::from_string("4/6").to_string() == "2/3");
  CHECK(Scalar::from_string("000/5").to_string() == "0");

  CHECK_THROWS_AS(Scalar::from_string(""), ParseError);
  CHECK_THROWS_AS(Scalar::from_string("a"), ParseError);
  CHECK_THROWS_AS(Scalar::from_string("1/"), ParseError);
  CHECK_THROWS_AS(Scalar::from_string("/2"), ParseError);
  CHECK_THROWS_AS(Scalar::from_string("1.5"), ParseError);
  CHECK_THROWS_AS(Scalar::from_string("1/0"), ParseError);
  CHECK_THROWS_AS(Scalar::from_string("1/-2"), ParseError);
  CHECK_THROWS_AS(Scalar::from_string("1 / 2"), ParseError);
}

TEST_CASE("field operations agree with the GMP oracle") {
  std::mt19937_64 rng(20240817);
  std::uniform_int_distribution<std::int64_t> num(-1000000, 1000000);
  std::uniform_int_distribution<std::int64_t> den(1, 1000);
  for (int i = 0; i < 500; ++i) {
    const Scalar a(num(rng), den(rng));
    const Scalar b(num(rng), den(rng));
    const mpq_class qa = a.to_mpq();
    const mpq_class qb = b.to_mpq();
    CHECK((a + b).to_mpq() == qa + qb);
    CHECK((a - b).to_mpq() == qa - qb);
    CHECK((a * b).to_mpq() == qa * qb);
    if (!b.is_zero()) CHECK((a / b).to_mpq() == qa / qb);
    CHECK((-a).to_mpq() == -qa);
    CHECK((a < b) == (qa < qb));
    CHECK((a == b) == (qa == qb));
  }
  CHECK_THROWS_AS(Scalar(1) / Scalar(0), DomainError);
  CHECK_THROWS_AS(Scalar(0).reciprocal(), DomainError);
  CHECK(Scalar(3, 4).reciprocal() == Scalar(4, 3));
}

TEST_CASE("values outside int64 stay exact and demote when they fit again") {
  const std::int64_t big = std::numeric_limits<std::int64_t>::max();
  const Scalar a(big);
  const Scalar sq = a * a;  // overflows int64, must promote
  mpq_class expect(a.to_mpq());
  expect *= a.to_mpq();
  CHECK(sq.to_mpq() == expect);
  CHECK(sq > a);

  // The difference of two equal promoted values is exactly zero again.
  CHECK((sq - sq).is_zero());
  // A promoted value minus almost all of itself demotes to a small value
  // and compares equal to the directly constructed small scalar.
  const Scalar back = sq - sq + Scalar(5);
  CHECK(back == Scalar(5));

  // Mixed-representation ordering is consistent.
  const Scalar above = Scalar::from_string("9223372036854775808");  // 2^63
  CHECK(above > a);
  CHECK(a < above);
  CHECK(above != a);

  // Huge denominators survive a round trip through arithmetic.
  const Scalar tiny = Scalar(1) / sq;
  CHECK((tiny * sq).is_one());
}

TEST_CASE("integrality, sign, and comparisons") {
  CHECK(Scalar(4, 2).is_integer());
  CHECK(!Scalar(1, 2).is_integer());
  CHECK(Scalar(-7).sign() == -1);
  CHECK(Scalar(0).sign() == 0);
  CHECK(Scalar(2, 3).sign() == 1);
  CHECK(Scalar(-1, 2) < Scalar(-1, 3));
  CHECK(Scalar(-1, 3) < Scalar(0));
  CHECK(Scalar(1, 3) < Scalar(1, 2));
}

TEST_CASE("exact square roots") {
  auto r = Scalar(4, 9).sqrt_exact();
  REQUIRE(r.has_value());
  CHECK(*r == Scalar(2, 3));

  CHECK(Scalar(0).sqrt_exact().value() == Scalar(0));
  CHECK(Scalar(1).sqrt_exact().value() == Scalar(1));
  CHECK(!Scalar(2).sqrt_exact().has_value());
  CHECK(!Scalar(-4).sqrt_exact().has_value());
  CHECK(!Scalar(4, 7).sqrt_exact().has_value());

  // A square too large for int64.
  const Scalar base = Scalar::from_string("123456789123456789");
  const Scalar square = base * base;
  auto rb = square.sqrt_exact();
  REQUIRE(rb.has_value());
  CHECK(*rb == base);
}
