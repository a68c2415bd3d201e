#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "structla/lem_float.hpp"
#include "structla/matrix.hpp"
#include "structla/rational.hpp"

namespace structla {

// Rank-revealing decomposition A = X * diag(D) * Y with 1-norm condition
// certificates for X and Y.
struct Rrd {
  Matrix<LemFloat> X;
  std::vector<LemFloat> D;
  Matrix<LemFloat> Y;
  Rational cond_x;
  Rational cond_y;

  // Throws PreconditionError on shape mismatch or a zero entry in D.
  void validate() const;
};

// A = U * diag(sigma) * V^T with sigma nonincreasing. The first nonzero
// component of every column of U is nonnegative.
struct SvdResult {
  Matrix<LemFloat> U;
  std::vector<LemFloat> sigma;
  Matrix<LemFloat> V;
  int sweeps = 0;
};

struct Complex {
  LemFloat re;
  LemFloat im;
  friend bool operator==(const Complex&, const Complex&) = default;
};

// ||M||_1 * ||M^-1||_1 computed exactly from the entries of M. nullopt
// stands for an infinite certificate (zero diagonal of a triangular M, or a
// singular M).
std::optional<Rational> cond_certificate(const Matrix<LemFloat>& m);

constexpr int kDefaultSweepCap = 30;

// One-sided Jacobi on the columns of W (cyclic-by-rows order): W * V has
// mutually orthogonal columns to `tol`, sigma are their norms and U the
// normalized columns. Columns that are exactly zero get sigma = 0.
// Throws ConvergenceError after `max_sweeps` sweeps.
SvdResult one_sided_jacobi(const Matrix<LemFloat>& w, Precision p, const Rational& tol,
                           int max_sweeps = kDefaultSweepCap);

// SVD of X * D * Y: column-pivoted QR of X*D, W = R * P^T * Y formed
// explicitly, then one-sided Jacobi on W^T.
SvdResult svd_from_rrd(const Rrd& a, Precision p, const Rational& tol,
                       int max_sweeps = kDefaultSweepCap);

// SVD of the Vandermonde matrix V_ij = x_i^j (j = 0..n-1) for distinct real
// nodes. V times a shifted DFT (nodes on z^n = i) is a Cauchy-like matrix
// whose complete-pivoting LDU gives the rank-revealing factors; the complex
// pipeline of svd_from_rrd then runs on it and the DFT is multiplied back.
SvdResult vandermonde_svd(std::span<const Rational> x, Precision p, const Rational& tol,
                          int max_sweeps = kDefaultSweepCap);

// (cos 2*pi*t, sin 2*pi*t) each rounded once to p bits.
std::pair<LemFloat, LemFloat> cos_sin_turn(const Rational& t, Precision p);

// pi rounded to p bits.
LemFloat pi(Precision p);

// X * diag(D) * Y rounded entrywise (dot products with one rounding).
Matrix<LemFloat> rrd_product(const Rrd& a, Precision p);

}  // namespace structla
