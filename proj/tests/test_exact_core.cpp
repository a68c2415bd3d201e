#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "structla/errors.hpp"
#include "structla/lem_float.hpp"
#include "structla/rational.hpp"
#include "test_util.hpp"

using namespace structla;

TEST_CASE("rat_arith: exact results in lowest terms") {
  CHECK(rat_arith(Rational(1, 3), Rational(1, 6), ArithOp::add) == Rational(1, 2));
  CHECK(rat_arith(Rational(-7, 9), Rational(0), ArithOp::mul).is_zero());
  CHECK(rat_arith(Rational(22, 7), Rational(1, 7), ArithOp::div) == Rational(22));
  CHECK_THROWS_AS(rat_arith(Rational(1), Rational(0), ArithOp::div), DivisionByZero);
  Rational r(Integer(6), Integer(-4));
  CHECK(r.num() == -3);
  CHECK(r.den() == 2);
  CHECK(Rational(0).den() == 1);
}

TEST_CASE("rational text round trip") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    Rational v = testutil::random_rational(rng, 40);
    CHECK(Rational::parse(v.to_string()) == v);
    CHECK(Rational::parse(v.to_string(16)) == v);
  }
  CHECK(Rational::parse("1.25") == Rational(5, 4));
  CHECK(Rational::parse("-3e-4") == Rational(-3, 10000));
  CHECK(Rational(-22, 7).to_string(16) == "-0x16/0x7");
  CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
  CHECK_THROWS_AS(Rational::parse("abc"), ParseError);
}

TEST_CASE("lem_to_rational") {
  CHECK(lem_to_rational(LemFloat(Integer(3), Integer(-2))) == Rational(3, 4));
  CHECK(lem_to_rational(LemFloat()) == Rational(0));
  CHECK(lem_to_rational(LemFloat(Integer(5), Integer(10))) == Rational(5120));
}

TEST_CASE("LemFloat canonical form") {
  LemFloat a(Integer(12), Integer(3));
  CHECK(a.fraction() == 3);
  CHECK(a.exponent() == 5);
  LemFloat z(Integer(0), Integer(17));
  CHECK(z.exponent() == 0);
  std::mt19937_64 rng(5);
  Precision p(20);
  for (int k = 0; k < 300; ++k) {
    LemFloat x = round_nearest(testutil::random_rational(rng, 50), p);
    LemFloat y = round_nearest(testutil::random_rational(rng, 50), p);
    for (const LemFloat& v : {add(x, y, p), sub(x, y, p), mul(x, y, p), mul_exact(x, y)}) {
      CHECK((v.is_zero() ? v.exponent() == 0 : v.fraction() % 2 != 0));
    }
  }
}

TEST_CASE("LemFloat text round trip") {
  LemFloat a(Integer(3), Integer(-2));
  CHECK(a.to_string() == "3p2^-2");
  CHECK(LemFloat::parse("3p2^-2") == a);
  CHECK(LemFloat::parse(a.to_string(16)) == a);
  std::mt19937_64 rng(3);
  for (int k = 0; k < 100; ++k) {
    LemFloat v = round_nearest(testutil::random_rational(rng, 60), Precision(30));
    CHECK(LemFloat::parse(v.to_string()) == v);
    CHECK(LemFloat::parse(v.to_string(16)) == v);
  }
}

TEST_CASE("round_nearest examples") {
  LemFloat r = round_nearest(Rational(1, 3), Precision(4));
  CHECK(r.fraction() == 11);
  CHECK(r.exponent() == -5);
  CHECK(r.to_rational() == oracle_t::round_by_enumeration(Rational(1, 3), 4));
  CHECK(round_nearest(Rational(7), Precision(10)).to_rational() == Rational(7));
  CHECK(round_nearest(Rational(0), Precision(53)).is_zero());
  CHECK_THROWS(Precision(1));
}

TEST_CASE("round_nearest agrees with significand enumeration, ties to even") {
  std::mt19937_64 rng(17);
  for (long p = 2; p <= 8; ++p) {
    for (int k = 0; k < 150; ++k) {
      Rational v = testutil::random_rational(rng, 12);
      CHECK(round_nearest(v, Precision(p)).to_rational() == oracle_t::round_by_enumeration(v, p));
    }
    // Exact midpoints between representable neighbours.
    for (long m = (1L << (p - 1)); m < (1L << p); ++m) {
      Rational mid = (Rational(2 * m + 1)) / Rational(4);
      CHECK(round_nearest(mid, Precision(p)).to_rational() ==
            oracle_t::round_by_enumeration(mid, p));
    }
  }
}

TEST_CASE("round_nearest error bound and idempotence") {
  std::mt19937_64 rng(23);
  for (long p : {2L, 5L, 24L, 53L, 113L}) {
    for (int k = 0; k < 200; ++k) {
      Rational v = testutil::random_rational(rng, 62) * pow2(static_cast<long>(rng() % 400) - 200);
      LemFloat r = round_nearest(v, Precision(p));
      CHECK((r.to_rational() - v).abs() <= pow2(-p) * v.abs());
      CHECK(round_nearest(r, Precision(p)) == r);
      CHECK(round_nearest(r.to_rational(), Precision(p)) == r);
    }
  }
}

TEST_CASE("size_bits convention") {
  CHECK(size_bits(LemFloat(Integer(1), Integer(0))) == 2);
  // bitlen(3) + sign + bitlen(7) + sign
  CHECK(size_bits(LemFloat(Integer(-3), Integer(-7))) == 7);
  Integer big = 1;
  big <<= 1024;
  LemFloat dense(Integer(big + 1), Integer(0));
  CHECK(size_bits(dense) == 1025 + 1);
  // 2^1024 alone is tiny in (f, e) form.
  CHECK(size_bits(LemFloat::pow2(Integer(1024))) == 1 + 11);
}

TEST_CASE("sparse_sum examples") {
  Precision p53(53);
  std::vector<LemFloat> a = {LemFloat::pow2(Integer(1000)), LemFloat(1)};
  CHECK(sparse_sum(a, p53) == LemFloat::pow2(Integer(1000)));
  std::vector<LemFloat> b = {LemFloat::pow2(Integer(1000)), -LemFloat::pow2(Integer(1000)),
                             LemFloat(5)};
  CHECK(sparse_sum(b, p53) == LemFloat(5));
  std::vector<LemFloat> c = {LemFloat(1), LemFloat::pow2(Integer(-1)), LemFloat::pow2(Integer(-2))};
  CHECK(sparse_sum(c, p53).to_rational() == Rational(7, 4));
  std::vector<LemFloat> z = {LemFloat(3), LemFloat(-3)};
  CHECK(sparse_sum(z, p53).is_zero());
  CHECK_THROWS_AS(sparse_sum(std::vector<LemFloat>{}, p53), PreconditionError);
}

TEST_CASE("sparse_sum equals rounding of the exact sum") {
  std::mt19937_64 rng(29);
  for (long p : {3L, 8L, 24L, 53L}) {
    Precision prec(p);
    for (int k = 0; k < 300; ++k) {
      std::vector<LemFloat> terms;
      Rational exact;
      const int count = 1 + static_cast<int>(rng() % 6);
      for (int t = 0; t < count; ++t) {
        long shift = static_cast<long>(rng() % 300) - 150;
        if (rng() % 3 == 0) shift = static_cast<long>(rng() % 8) - 4;
        LemFloat v(Integer(static_cast<long>(rng() % 2000001) - 1000000), Integer(shift));
        terms.push_back(v);
        exact += v.to_rational();
      }
      CHECK(sparse_sum(terms, prec) == round_nearest(exact, prec));
    }
  }
}

TEST_CASE("sparse_sum on near-cancelling lists") {
  std::mt19937_64 rng(31);
  Precision p(53);
  for (int k = 0; k < 300; ++k) {
    long e = static_cast<long>(rng() % 4000);
    Integer big = Integer(static_cast<long>(rng() % 1000000 + 1));
    LemFloat a(big, Integer(e));
    LemFloat tiny(Integer(static_cast<long>(rng() % 7) - 3), Integer(-static_cast<long>(rng() % 200)));
    LemFloat mid(Integer(static_cast<long>(rng() % 1000) + 1), Integer(e - 60));
    std::vector<LemFloat> terms = {a, tiny, -a, mid, -mid, tiny};
    Rational exact;
    for (const auto& t : terms) exact += t.to_rational();
    CHECK(sparse_sum(terms, p) == round_nearest(exact, p));
  }
}

TEST_CASE("sparse_sum cost grows polynomially in log of the exponent") {
  Precision p(53);
  std::vector<std::uint64_t> costs;
  for (int k = 4; k <= 40; k += 4) {
    CostCounter c;
    Integer e = 1;
    e <<= k;
    std::vector<LemFloat> terms = {LemFloat::pow2(e), LemFloat(1)};
    sparse_sum(terms, p, &c);
    costs.push_back(c.bit_ops);
  }
  // A dense sum would touch 2^k bits; 2^40 bits is out of reach, the
  // counter stays within a small polynomial of k.
  for (std::size_t i = 0; i < costs.size(); ++i) {
    const double k = 4.0 * static_cast<double>(i + 1);
    CHECK(static_cast<double>(costs[i]) <= 64.0 * (k + 53.0) * (k + 53.0));
  }
}

TEST_CASE("rounded operations obey the one-rounding model") {
  std::mt19937_64 rng(37);
  Precision p(24);
  for (int k = 0; k < 300; ++k) {
    Rational a = testutil::random_rational(rng, 40);
    Rational b = testutil::random_rational(rng, 40);
    LemFloat x = round_nearest(a, p);
    LemFloat y = round_nearest(b, p);
    Rational xr = x.to_rational();
    Rational yr = y.to_rational();
    CHECK(add(x, y, p) == round_nearest(xr + yr, p));
    CHECK(sub(x, y, p) == round_nearest(xr - yr, p));
    CHECK(mul(x, y, p) == round_nearest(xr * yr, p));
    CHECK(div(x, y, p) == round_nearest(xr / yr, p));
    Rational sq = xr.abs();
    LemFloat s = structla::sqrt(x.abs(), p);
    // |s^2 - v| <= (2u + u^2) v for a correctly rounded square root.
    CHECK((s.to_rational() * s.to_rational() - sq).abs() <= pow2(-22) * sq);
  }
  CHECK_THROWS_AS(div(LemFloat(1), LemFloat(), p), DivisionByZero);
}

TEST_CASE("pow with huge exponents stays cheap") {
  Precision p(53);
  LemFloat three(3);
  Integer k = 1;
  k <<= 40;
  CostCounter c;
  LemFloat r = pow(three, k, p, &c);
  CHECK(!r.is_zero());
  CHECK(c.bit_ops < 10000000);
  CHECK(pow(three, Integer(5), p) == LemFloat(243));
  CHECK(pow(LemFloat(2), Integer(-3), p).to_rational() == Rational(1, 8));
}
