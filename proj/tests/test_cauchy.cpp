#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "structla/arith.hpp"
#include "structla/cauchy.hpp"
#include "structla/errors.hpp"
#include "test_util.hpp"

using namespace structla;

namespace {

CauchyMatrix random_cauchy(std::mt19937_64& rng, std::size_t n) {
  CauchyMatrix c;
  // Positive nodes keep the matrix pole free and (generically) nonsingular.
  while (c.x.size() < n) {
    Rational v = testutil::positive_rational(rng, 10);
    if (std::find(c.x.begin(), c.x.end(), v) == c.x.end()) c.x.push_back(v);
  }
  while (c.y.size() < n) {
    Rational v = testutil::positive_rational(rng, 10);
    if (std::find(c.y.begin(), c.y.end(), v) == c.y.end()) c.y.push_back(v);
  }
  return c;
}

Matrix<Rational> permuted(const Matrix<Rational>& a, const std::vector<std::size_t>& rows,
                          const std::vector<std::size_t>& cols) {
  Matrix<Rational> b(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) b(i, j) = a(rows[i], cols[j]);
  return b;
}

Matrix<Rational> ldu_product(const LduFactors<Rational>& f) {
  const std::size_t n = f.D.size();
  Matrix<Rational> ld(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) ld(i, k) = f.L(i, k) * f.D[k];
  return oracle_t::matmul(ld, f.U);
}

int perm_sign(const std::vector<std::size_t>& p) {
  int s = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

}  // namespace

TEST_CASE("cauchy_det examples") {
  Precision p(53);
  CauchyMatrix one{{Rational(1)}, {Rational(1)}};
  CHECK(cauchy_det(one, p).to_rational() == Rational(1, 2));
  CauchyMatrix two{{Rational(1), Rational(2)}, {Rational(3), Rational(4)}};
  CHECK(cauchy_det_exact(two) == Rational(1, 600));
  CHECK(oracle_t::det_gauss(two.entries()) == Rational(1, 600));
  CHECK(cauchy_det(two, p) == round_nearest(Rational(1, 600), p));
  CauchyMatrix rep{{Rational(1), Rational(1), Rational(3)}, {Rational(0), Rational(1), Rational(2)}};
  CHECK(cauchy_det(rep, p).is_zero());
  CHECK(cauchy_det_exact(rep).is_zero());
}

TEST_CASE("cauchy_det poles name the entry") {
  CauchyMatrix c{{Rational(1), Rational(2)}, {Rational(0), Rational(-2)}};
  try {
    cauchy_det(c, Precision(53));
    FAIL("expected a pole");
  } catch (const PoleError& e) {
    CHECK(e.row() == 1);
    CHECK(e.col() == 1);
  }
}

TEST_CASE("cauchy_det accuracy against the exact determinant") {
  std::mt19937_64 rng(71);
  for (long bits : {24L, 53L}) {
    Precision p(bits);
    for (std::size_t n = 1; n <= 8; ++n) {
      for (int k = 0; k < 4; ++k) {
        CauchyMatrix c = random_cauchy(rng, n);
        Rational exact = oracle_t::det_gauss(c.entries());
        Rational bound = Rational(static_cast<long>(4 * n * n)) * pow2(-bits);
        CHECK(testutil::rel(cauchy_det(c, p), exact) <= bound);
      }
    }
    CauchyMatrix h = CauchyMatrix::hilbert(8);
    CHECK(testutil::rel(cauchy_det(h, p), oracle_t::det_gauss(h.entries())) <= Rational(256) * pow2(-bits));
  }
}

TEST_CASE("cauchy_minor") {
  Precision p(53);
  CauchyMatrix h = CauchyMatrix::hilbert(3);
  std::vector<std::size_t> all = {0, 1, 2};
  CHECK(cauchy_minor(h, all, all, p) == cauchy_det(h, p));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      std::vector<std::size_t> r = {i};
      std::vector<std::size_t> c = {j};
      CHECK(cauchy_minor(h, r, c, p) == round_nearest(h.entry(i, j), p));
    }
  std::vector<std::size_t> rows = {0, 1};
  std::vector<std::size_t> cols = {1, 2};
  Matrix<Rational> sub(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) sub(i, j) = h.entry(rows[i], cols[j]);
  CHECK(cauchy_minor_exact(h, rows, cols) == oracle_t::det_gauss(sub));
  CHECK(cauchy_minor(h, rows, cols, p) == round_nearest(oracle_t::det_gauss(sub), p));
  std::vector<std::size_t> bad = {0};
  CHECK_THROWS_AS(cauchy_minor(h, rows, bad, p), PreconditionError);
}

TEST_CASE("cauchy_lu examples") {
  CauchyMatrix one{{Rational(3)}, {Rational(1)}};
  auto f1 = cauchy_lu_exact(one, Pivoting::none);
  CHECK(f1.D[0] == Rational(1, 4));
  CHECK(f1.L(0, 0) == Rational(1));
  CHECK(f1.U(0, 0) == Rational(1));

  CauchyMatrix two{{Rational(1), Rational(2)}, {Rational(3), Rational(4)}};
  auto f = cauchy_lu_exact(two, Pivoting::none);
  CHECK(f.D[0] == Rational(1, 4));
  CHECK(f.D[1] == Rational(1, 600) / Rational(1, 4));
  CHECK(f.L(1, 0) == Rational(4, 5));
  CHECK(f.U(0, 1) == Rational(4, 5));
}

TEST_CASE("exact LU reconstructs P C Q under every pivoting") {
  std::mt19937_64 rng(73);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (Pivoting piv : {Pivoting::none, Pivoting::partial, Pivoting::complete}) {
      CauchyMatrix c = random_cauchy(rng, n);
      auto f = cauchy_lu_exact(c, piv);
      CHECK(permuted(c.entries(), f.row_perm, f.col_perm) == ldu_product(f));
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(f.L(i, i) == Rational(1));
        CHECK(f.U(i, i) == Rational(1));
        for (std::size_t j = i + 1; j < n; ++j) {
          CHECK(f.L(i, j).is_zero());
          CHECK(f.U(j, i).is_zero());
        }
      }
      // prod D = det(P C Q) = sign(P) sign(Q) det C
      Rational prod(1);
      for (const auto& d : f.D) prod *= d;
      CHECK(prod == Rational(perm_sign(f.row_perm) * perm_sign(f.col_perm)) *
                        oracle_t::det_gauss(c.entries()));
    }
  }
}

TEST_CASE("complete pivoting picks the largest remaining entry") {
  CauchyMatrix h = CauchyMatrix::hilbert(5);
  auto f = cauchy_lu_exact(h, Pivoting::complete);
  CHECK(f.row_perm[0] == 0);
  CHECK(f.col_perm[0] == 0);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t k = 0; k < i; ++k) CHECK(f.L(i, k).abs() <= Rational(1));
}

TEST_CASE("zero pivot without pivoting") {
  // x_0 + y_0 and x_1 + y_0 coincide pattern: a repeated x makes step 1 zero.
  CauchyMatrix c{{Rational(1), Rational(1)}, {Rational(0), Rational(1)}};
  CHECK_THROWS_AS(cauchy_lu(c, Pivoting::none, Precision(53)), SingularError);
  CHECK_THROWS_AS(cauchy_lu(c, Pivoting::complete, Precision(53)), SingularError);
}

TEST_CASE("rounded LU entries are accurate entrywise") {
  std::mt19937_64 rng(79);
  Precision p(53);
  for (std::size_t n : {3u, 6u, 9u}) {
    for (Pivoting piv : {Pivoting::partial, Pivoting::complete}) {
      CauchyMatrix c = n == 9 ? CauchyMatrix::hilbert(9) : random_cauchy(rng, n);
      auto exact = cauchy_lu_exact(c, piv);
      auto got = cauchy_lu(c, piv, p);
      CHECK(got.row_perm == exact.row_perm);
      CHECK(got.col_perm == exact.col_perm);
      const Rational bound = Rational(static_cast<long>(4 * n * n)) * pow2(-53);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(testutil::rel(got.D[i], exact.D[i]) <= bound);
        for (std::size_t j = 0; j < n; ++j) {
          CHECK(testutil::rel(got.L(i, j), exact.L(i, j)) <= bound);
          CHECK(testutil::rel(got.U(i, j), exact.U(i, j)) <= bound);
        }
      }
    }
  }
}

TEST_CASE("cauchy_inverse") {
  Precision p(53);
  CauchyMatrix one{{Rational(2)}, {Rational(5)}};
  CHECK(cauchy_inverse(one, p)(0, 0).to_rational() == Rational(7));
  Matrix<Rational> h2 = cauchy_inverse_exact(CauchyMatrix::hilbert(2));
  CHECK(h2(0, 0) == Rational(4));
  CHECK(h2(0, 1) == Rational(-6));
  CHECK(h2(1, 0) == Rational(-6));
  CHECK(h2(1, 1) == Rational(12));
  std::mt19937_64 rng(83);
  for (std::size_t n = 1; n <= 5; ++n) {
    CauchyMatrix c = random_cauchy(rng, n);
    Matrix<Rational> inv = cauchy_inverse_exact(c);
    Matrix<Rational> id(n, n);
    for (std::size_t i = 0; i < n; ++i) id(i, i) = 1;
    CHECK(oracle_t::matmul(c.entries(), inv) == id);
    CHECK(inv == oracle_t::inverse_gauss(c.entries()));
    Matrix<LemFloat> r = cauchy_inverse(c, p);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        CHECK(testutil::rel(r(i, j), inv(i, j)) <= Rational(static_cast<long>(4 * n * n)) * pow2(-53));
  }
  CauchyMatrix rep{{Rational(1), Rational(1)}, {Rational(0), Rational(1)}};
  CHECK_THROWS_AS(cauchy_inverse(rep, p), SingularError);
}

TEST_CASE("cauchy_rrd") {
  Precision p(53);
  Rrd one = cauchy_rrd(CauchyMatrix{{Rational(1)}, {Rational(1)}}, p);
  CHECK(one.X(0, 0) == LemFloat(1));
  CHECK(one.Y(0, 0) == LemFloat(1));
  CHECK(one.cond_x == Rational(1));
  CHECK(one.cond_y == Rational(1));

  CauchyMatrix h = CauchyMatrix::hilbert(4);
  Rrd r = cauchy_rrd(h, p);
  CHECK(r.cond_x <= Rational(100));
  CHECK(r.cond_y <= Rational(100));
  Rational cond_h = oracle_t::norm1(h.entries()) * oracle_t::norm1(oracle_t::inverse_gauss(h.entries()));
  CHECK(cond_h > Rational(10000));
  // X D Y reproduces the matrix to working accuracy.
  Matrix<LemFloat> prod = rrd_product(r, Precision(200));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(testutil::rel(prod(i, j), h.entry(i, j)) <= pow2(-48));
}

TEST_CASE("Cauchy algorithms never subtract computed quantities") {
  std::mt19937_64 rng(89);
  for (std::size_t n = 1; n <= 5; ++n) {
    CauchyMatrix c = random_cauchy(rng, n);
    {
      TraceArith t;
      t.set_output(cauchy_det_with(t, c));
      for (auto v : classify_admissible(t.program(), t.signs())) CHECK(v == Admissibility::admissible);
    }
    {
      TraceArith t;
      auto f = cauchy_lu_with(t, c, Pivoting::complete);
      t.set_output(f.D.back());
      for (auto v : classify_admissible(t.program(), t.signs())) CHECK(v == Admissibility::admissible);
    }
    {
      TraceArith t;
      auto inv = cauchy_inverse_with(t, c);
      t.set_output(inv(0, 0));
      for (auto v : classify_admissible(t.program(), t.signs())) CHECK(v == Admissibility::admissible);
    }
  }
}
