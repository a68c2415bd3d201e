#pragma once

#include <span>

#include "structla/matrix.hpp"
#include "structla/rational.hpp"

// Exact-rational reference computations on materialized matrices. These
// never exploit structure and serve as the ground truth for accuracy
// reports and tests.

namespace structla::oracle {

// Fraction-free (Bareiss) elimination after scaling each row to integers.
Rational det(const Matrix<Rational>& a);

// Gauss-Jordan over the rationals. Throws SingularError.
Matrix<Rational> inverse(const Matrix<Rational>& a);

Matrix<Rational> product(const Matrix<Rational>& a, const Matrix<Rational>& b);

Matrix<Rational> submatrix(const Matrix<Rational>& a, std::span<const std::size_t> rows,
                           std::span<const std::size_t> cols);

// max_j sum_i |a_ij|
Rational norm1(const Matrix<Rational>& a);

// Sign (+1/-1) of the permutation given as an image vector.
int permutation_sign(std::span<const std::size_t> perm);

// |computed - exact| / |exact|; zero when both are zero. Throws
// PreconditionError if only the exact value is zero.
Rational relative_error(const Rational& computed, const Rational& exact);

}  // namespace structla::oracle
