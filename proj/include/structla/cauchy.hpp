#pragma once

#include <span>
#include <string>
#include <vector>

#include "structla/arith.hpp"
#include "structla/errors.hpp"
#include "structla/matrix.hpp"
#include "structla/rational.hpp"
#include "structla/svd.hpp"

namespace structla {

// Cauchy matrix C_ij = 1 / (x_i + y_j), described by its nodes only.
struct CauchyMatrix {
  std::vector<Rational> x;
  std::vector<Rational> y;

  // x = (1..n), y = (0..n-1)
  static CauchyMatrix hilbert(std::size_t n);

  std::size_t size() const { return x.size(); }
  // Throws PreconditionError unless square, PoleError(i, j) on x_i + y_j = 0.
  void validate() const;
  Rational entry(std::size_t i, std::size_t j) const { return (x[i] + y[j]).reciprocal(); }
  Matrix<Rational> entries() const;
  CauchyMatrix sub(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;
  bool has_repeated_nodes() const;
};

enum class Pivoting { none, partial, complete };

// det C = prod_{i<j} (x_j - x_i)(y_j - y_i) / prod_{i,j} (x_i + y_j), as one
// running product: n(n-1) multiplications by node differences, then n^2
// divisions by node sums. No computed quantity is ever subtracted.
template <class A>
typename A::value_type cauchy_det_with(A& ar, const CauchyMatrix& c) {
  c.validate();
  const std::size_t n = c.size();
  using V = typename A::value_type;
  std::vector<V> x;
  std::vector<V> y;
  for (std::size_t i = 0; i < n; ++i) x.push_back(ar.input(c.x[i]));
  for (std::size_t i = 0; i < n; ++i) y.push_back(ar.input(c.y[i]));
  V r = ar.one();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      r = ar.mul(r, ar.sub(x[j], x[i]));
      r = ar.mul(r, ar.sub(y[j], y[i]));
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r = ar.div(r, ar.add(x[i], y[j]));
  return r;
}

// Gaussian elimination with the multiplicative Schur-complement update
//   a_ij <- a_ij * (x_i - x_k)/(x_i + y_k) * (y_j - y_k)/(x_k + y_j).
// Pivots are chosen from an exact rational shadow of the Schur complement;
// ties go to the first candidate in row-major order.
template <class A>
LduFactors<typename A::value_type> cauchy_lu_with(A& ar, const CauchyMatrix& c, Pivoting pivot) {
  c.validate();
  const std::size_t n = c.size();
  using V = typename A::value_type;
  std::vector<V> x;
  std::vector<V> y;
  for (std::size_t i = 0; i < n; ++i) x.push_back(ar.input(c.x[i]));
  for (std::size_t i = 0; i < n; ++i) y.push_back(ar.input(c.y[i]));
  std::vector<Rational> xs = c.x;
  std::vector<Rational> ys = c.y;

  Matrix<V> a(n, n);
  Matrix<Rational> shadow = c.entries();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = ar.div(ar.one(), ar.add(x[i], y[j]));

  LduFactors<V> out;
  out.row_perm.resize(n);
  out.col_perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.row_perm[i] = out.col_perm[i] = i;
  out.L = Matrix<V>(n, n);
  out.U = Matrix<V>(n, n);

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = k;
    std::size_t pc = k;
    if (pivot != Pivoting::none) {
      Rational best = shadow(k, k).abs();
      const std::size_t col_end = pivot == Pivoting::complete ? n : k + 1;
      for (std::size_t i = k; i < n; ++i)
        for (std::size_t j = k; j < col_end; ++j) {
          Rational m = shadow(i, j).abs();
          if (m > best) {
            best = m;
            pr = i;
            pc = j;
          }
        }
    }
    if (shadow(pr, pc).is_zero()) {
      throw SingularError("zero pivot at step " + std::to_string(k), k);
    }
    a.swap_rows(k, pr);
    shadow.swap_rows(k, pr);
    std::swap(x[k], x[pr]);
    std::swap(xs[k], xs[pr]);
    std::swap(out.row_perm[k], out.row_perm[pr]);
    for (std::size_t l = 0; l < k; ++l) std::swap(out.L(k, l), out.L(pr, l));
    a.swap_cols(k, pc);
    shadow.swap_cols(k, pc);
    std::swap(y[k], y[pc]);
    std::swap(ys[k], ys[pc]);
    std::swap(out.col_perm[k], out.col_perm[pc]);
    for (std::size_t l = 0; l < k; ++l) std::swap(out.U(l, k), out.U(l, pc));

    out.D.push_back(a(k, k));
    out.L(k, k) = ar.one();
    out.U(k, k) = ar.one();
    for (std::size_t i = k + 1; i < n; ++i) out.L(i, k) = ar.div(a(i, k), a(k, k));
    for (std::size_t j = k + 1; j < n; ++j) out.U(k, j) = ar.div(a(k, j), a(k, k));

    std::vector<V> row_factor(n);
    std::vector<V> col_factor(n);
    std::vector<Rational> row_shadow(n);
    std::vector<Rational> col_shadow(n);
    for (std::size_t i = k + 1; i < n; ++i) {
      row_factor[i] = ar.div(ar.sub(x[i], x[k]), ar.add(x[i], y[k]));
      row_shadow[i] = (xs[i] - xs[k]) / (xs[i] + ys[k]);
    }
    for (std::size_t j = k + 1; j < n; ++j) {
      col_factor[j] = ar.div(ar.sub(y[j], y[k]), ar.add(x[k], y[j]));
      col_shadow[j] = (ys[j] - ys[k]) / (xs[k] + ys[j]);
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = ar.mul(ar.mul(a(i, j), row_factor[i]), col_factor[j]);
        shadow(i, j) = shadow(i, j) * row_shadow[i] * col_shadow[j];
      }
  }
  // Zero the strict upper part of L and lower part of U.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (j > i) out.L(i, j) = V{};
      if (j < i) out.U(i, j) = V{};
    }
  return out;
}

// Cramer's rule: every entry of C^-1 is a quotient of two minors, each a
// subtraction-free product of node sums and differences,
//   (C^-1)_ji = prod_b (x_i + y_b) prod_a (x_a + y_j)
//             / ((x_i + y_j) prod_{a != i} (x_i - x_a) prod_{b != j} (y_j - y_b)).
template <class A>
Matrix<typename A::value_type> cauchy_inverse_with(A& ar, const CauchyMatrix& c) {
  c.validate();
  if (c.has_repeated_nodes()) throw SingularError("Cauchy matrix with repeated nodes", 0);
  const std::size_t n = c.size();
  using V = typename A::value_type;
  std::vector<V> x;
  std::vector<V> y;
  for (std::size_t i = 0; i < n; ++i) x.push_back(ar.input(c.x[i]));
  for (std::size_t i = 0; i < n; ++i) y.push_back(ar.input(c.y[i]));
  Matrix<V> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      V r = ar.one();
      for (std::size_t b = 0; b < n; ++b) r = ar.mul(r, ar.add(x[i], y[b]));
      for (std::size_t a = 0; a < n; ++a) r = ar.mul(r, ar.add(x[a], y[j]));
      r = ar.div(r, ar.add(x[i], y[j]));
      for (std::size_t a = 0; a < n; ++a)
        if (a != i) r = ar.div(r, ar.sub(x[i], x[a]));
      for (std::size_t b = 0; b < n; ++b)
        if (b != j) r = ar.div(r, ar.sub(y[j], y[b]));
      inv(j, i) = r;
    }
  return inv;
}

LemFloat cauchy_det(const CauchyMatrix& c, Precision p, CostCounter* cost = nullptr);
Rational cauchy_det_exact(const CauchyMatrix& c);

// Minor on the given rows and columns; it is the determinant of the
// Cauchy matrix on the selected nodes.
LemFloat cauchy_minor(const CauchyMatrix& c, std::span<const std::size_t> rows,
                      std::span<const std::size_t> cols, Precision p);
Rational cauchy_minor_exact(const CauchyMatrix& c, std::span<const std::size_t> rows,
                            std::span<const std::size_t> cols);

LduFactors<LemFloat> cauchy_lu(const CauchyMatrix& c, Pivoting pivot, Precision p);
LduFactors<Rational> cauchy_lu_exact(const CauchyMatrix& c, Pivoting pivot);

Matrix<LemFloat> cauchy_inverse(const CauchyMatrix& c, Precision p);
Matrix<Rational> cauchy_inverse_exact(const CauchyMatrix& c);

// Complete-pivoting LU as C = X * D * Y with X = P^T L and Y = U Q^T, and
// the 1-norm condition numbers of L and U as certificates.
Rrd cauchy_rrd(const CauchyMatrix& c, Precision p);

Pivoting parse_pivoting(const std::string& name);
std::string to_string(Pivoting p);

}  // namespace structla
