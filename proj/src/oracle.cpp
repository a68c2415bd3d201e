#include "structla/oracle.hpp"

#include <vector>

#include "structla/errors.hpp"

namespace structla::oracle {

Rational det(const Matrix<Rational>& a) {
  if (!a.square()) throw PreconditionError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return Rational(1);

  Matrix<Integer> m(n, n);
  Integer scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < n; ++j) {
      Integer d = a(i, j).den();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = a(i, j).num() * (l / a(i, j).den());
    }
    scale *= l;
  }

  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && m(r, k) == 0) ++r;
      if (r == n) return Rational(0);
      m.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = t;
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return Rational(Integer(sign * m(n - 1, n - 1)), scale);
}

Matrix<Rational> inverse(const Matrix<Rational>& a) {
  if (!a.square()) throw PreconditionError("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix<Rational> w = a;
  Matrix<Rational> inv(n, n);
  for (std::size_t i = 0; i < n; ++i) inv(i, i) = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t r = k;
    while (r < n && w(r, k).is_zero()) ++r;
    if (r == n) throw SingularError("matrix is singular", k);
    w.swap_rows(k, r);
    inv.swap_rows(k, r);
    Rational piv = w(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      w(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || w(i, k).is_zero()) continue;
      Rational f = w(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        w(i, j) -= f * w(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

Matrix<Rational> product(const Matrix<Rational>& a, const Matrix<Rational>& b) {
  if (a.cols() != b.rows()) throw PreconditionError("product: shape mismatch");
  Matrix<Rational> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

Matrix<Rational> submatrix(const Matrix<Rational>& a, std::span<const std::size_t> rows,
                           std::span<const std::size_t> cols) {
  Matrix<Rational> s(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = a(rows[i], cols[j]);
  return s;
}

Rational norm1(const Matrix<Rational>& a) {
  Rational best;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    Rational s;
    for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, j).abs();
    if (s > best) best = s;
  }
  return best;
}

int permutation_sign(std::span<const std::size_t> perm) {
  std::vector<bool> seen(perm.size(), false);
  int sign = 1;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

Rational relative_error(const Rational& computed, const Rational& exact) {
  if (exact.is_zero()) {
    if (computed.is_zero()) return Rational(0);
    throw PreconditionError("relative error against an exact zero");
  }
  return (computed - exact).abs() / exact.abs();
}

}  // namespace structla::oracle
