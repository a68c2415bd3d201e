#include "structla/conventional.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "structla/errors.hpp"

namespace structla::conventional {

Matrix<LemFloat> materialize(const Matrix<Rational>& a, Precision p) {
  return a.map([&](const Rational& v) { return round_nearest(v, p); });
}

LemFloat ge_det(const Matrix<Rational>& a, Precision p) {
  if (!a.square()) throw PreconditionError("determinant of a non-square matrix");
  Matrix<LemFloat> m = materialize(a, p);
  const std::size_t n = m.rows();
  int sign = 1;
  LemFloat det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (compare_abs(m(i, k), m(piv, k)) > 0) piv = i;
    if (m(piv, k).is_zero()) return LemFloat();
    if (piv != k) {
      m.swap_rows(k, piv);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      LemFloat l = div(m(i, k), m(k, k), p);
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = sub(m(i, j), mul(l, m(k, j), p), p);
    }
    det = mul(det, m(k, k), p);
  }
  return sign < 0 ? -det : det;
}

double ge_det_double(const Matrix<Rational>& a) {
  if (!a.square()) throw PreconditionError("determinant of a non-square matrix");
  Matrix<double> m = a.map([](const Rational& v) { return v.to_double(); });
  const std::size_t n = m.rows();
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
    if (m(piv, k) == 0.0) return 0.0;
    if (piv != k) {
      m.swap_rows(k, piv);
      det = -det;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      double l = m(i, k) / m(k, k);
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= l * m(k, j);
    }
    det *= m(k, k);
  }
  return det;
}

LduFactors<LemFloat> ge_lu(const Matrix<Rational>& a, Precision p) {
  if (!a.square()) throw PreconditionError("LU of a non-square matrix");
  Matrix<LemFloat> m = materialize(a, p);
  const std::size_t n = m.rows();
  LduFactors<LemFloat> out;
  out.L = Matrix<LemFloat>(n, n);
  out.U = Matrix<LemFloat>(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    out.row_perm.push_back(i);
    out.col_perm.push_back(i);
    out.L(i, i) = out.U(i, i) = LemFloat(1);
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (m(k, k).is_zero()) throw SingularError("zero pivot at step " + std::to_string(k), k);
    out.D.push_back(m(k, k));
    for (std::size_t j = k + 1; j < n; ++j) out.U(k, j) = div(m(k, j), m(k, k), p);
    for (std::size_t i = k + 1; i < n; ++i) {
      LemFloat l = div(m(i, k), m(k, k), p);
      out.L(i, k) = l;
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = sub(m(i, j), mul(l, m(k, j), p), p);
    }
  }
  return out;
}

Matrix<LemFloat> ge_inverse(const Matrix<Rational>& a, Precision p) {
  if (!a.square()) throw PreconditionError("inverse of a non-square matrix");
  Matrix<LemFloat> w = materialize(a, p);
  const std::size_t n = w.rows();
  Matrix<LemFloat> inv(n, n);
  for (std::size_t i = 0; i < n; ++i) inv(i, i) = LemFloat(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (compare_abs(w(i, k), w(piv, k)) > 0) piv = i;
    if (w(piv, k).is_zero()) throw SingularError("matrix is singular", k);
    w.swap_rows(k, piv);
    inv.swap_rows(k, piv);
    LemFloat d = w(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      w(k, j) = div(w(k, j), d, p);
      inv(k, j) = div(inv(k, j), d, p);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || w(i, k).is_zero()) continue;
      LemFloat f = w(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        w(i, j) = sub(w(i, j), mul(f, w(k, j), p), p);
        inv(i, j) = sub(inv(i, j), mul(f, inv(k, j), p), p);
      }
    }
  }
  return inv;
}

namespace {

// Sequential rounded dot product of columns a and b.
LemFloat col_dot(const Matrix<LemFloat>& m, std::size_t a, std::size_t b, Precision p) {
  LemFloat acc;
  for (std::size_t i = 0; i < m.rows(); ++i) acc = add(acc, mul(m(i, a), m(i, b), p), p);
  return acc;
}

void rotate(Matrix<LemFloat>& m, std::size_t a, std::size_t b, const LemFloat& c, const LemFloat& s,
            Precision p) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    LemFloat x = m(i, a);
    LemFloat y = m(i, b);
    m(i, a) = sub(mul(c, x, p), mul(s, y, p), p);
    m(i, b) = add(mul(s, x, p), mul(c, y, p), p);
  }
}

}  // namespace

SvdResult jacobi_svd(const Matrix<Rational>& a, Precision p, const Rational& tol) {
  Matrix<LemFloat> w = materialize(a, p);
  const std::size_t n = w.cols();
  Matrix<LemFloat> v(n, n);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = LemFloat(1);
  const LemFloat one(1);
  const LemFloat two(2);
  const LemFloat rtol = round_nearest(tol, p);

  SvdResult out;
  bool rotated = n > 1;
  while (rotated) {
    if (out.sweeps >= kDefaultSweepCap)
      throw ConvergenceError("conventional Jacobi did not converge", 0.0);
    ++out.sweeps;
    rotated = false;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        LemFloat alpha = col_dot(w, i, i, p);
        LemFloat beta = col_dot(w, j, j, p);
        LemFloat gamma = col_dot(w, i, j, p);
        if (gamma.is_zero() || alpha.is_zero() || beta.is_zero()) continue;
        LemFloat limit = mul(rtol, sqrt(mul(alpha, beta, p), p), p);
        if (compare_abs(gamma, limit) <= 0) continue;
        rotated = true;
        LemFloat zeta = div(sub(beta, alpha, p), mul(two, gamma, p), p);
        LemFloat root = sqrt(add(one, mul(zeta, zeta, p), p), p);
        LemFloat t = div(one, add(zeta.abs(), root, p), p);
        if (zeta.sign() < 0) t = -t;
        LemFloat c = div(one, sqrt(add(one, mul(t, t, p), p), p), p);
        LemFloat s = mul(c, t, p);
        rotate(w, i, j, c, s, p);
        rotate(v, i, j, c, s, p);
      }
    }
  }

  std::vector<LemFloat> sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = sqrt(col_dot(w, j, j, p), p);
  std::vector<std::size_t> order(n);
  for (std::size_t j = 0; j < n; ++j) order[j] = j;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return compare(sigma[x], sigma[y]) > 0; });
  const std::size_t m = w.rows();
  out.U = Matrix<LemFloat>(m, n);
  out.V = Matrix<LemFloat>(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    out.sigma.push_back(sigma[j]);
    int flip = 1;
    for (std::size_t i = 0; i < m; ++i) {
      if (!w(i, j).is_zero()) {
        flip = w(i, j).sign();
        break;
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      LemFloat u = sigma[j].is_zero() ? LemFloat() : div(w(i, j), sigma[j], p);
      out.U(i, k) = flip < 0 ? -u : u;
    }
    for (std::size_t i = 0; i < n; ++i) out.V(i, k) = flip < 0 ? -v(i, j) : v(i, j);
  }
  return out;
}

}  // namespace structla::conventional
