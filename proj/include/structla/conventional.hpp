#pragma once

#include "structla/lem_float.hpp"
#include "structla/matrix.hpp"
#include "structla/rational.hpp"
#include "structla/svd.hpp"

// Conventional baselines: the entries are rounded to p bits and processed
// by textbook algorithms that round after every operation and exploit no
// structure.

namespace structla::conventional {

Matrix<LemFloat> materialize(const Matrix<Rational>& a, Precision p);

// Gaussian elimination with partial pivoting; det = +- prod of pivots.
LemFloat ge_det(const Matrix<Rational>& a, Precision p);
// Same algorithm in hardware double precision.
double ge_det_double(const Matrix<Rational>& a);

// Unpivoted elimination a_ij -= (a_ik / a_kk) * a_kj. Throws
// SingularError on a zero pivot.
LduFactors<LemFloat> ge_lu(const Matrix<Rational>& a, Precision p);

// Gauss-Jordan inverse with partial pivoting.
Matrix<LemFloat> ge_inverse(const Matrix<Rational>& a, Precision p);

// Textbook one-sided Jacobi on the rounded entries: sequential rounded dot
// products, every rotation step rounded.
SvdResult jacobi_svd(const Matrix<Rational>& a, Precision p, const Rational& tol);

}  // namespace structla::conventional
