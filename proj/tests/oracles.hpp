#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "structla/acyclic.hpp"
#include "structla/lem_float.hpp"
#include "structla/matrix.hpp"
#include "structla/rational.hpp"

// Reference computations used only by the tests. They share no code with
// the library algorithms they check.
namespace oracle_t {

using structla::Matrix;
using structla::Rational;

// Plain rational Gaussian elimination with first-nonzero pivoting.
Rational det_gauss(const Matrix<Rational>& a);
Matrix<Rational> inverse_gauss(const Matrix<Rational>& a);
Matrix<Rational> matmul(const Matrix<Rational>& a, const Matrix<Rational>& b);
Rational norm1(const Matrix<Rational>& a);
Rational rel_err(const Rational& computed, const Rational& exact);

// Nearest value with `p` significant bits found by scanning every p-bit
// significand at the right binade; ties to even. Small p only.
Rational round_by_enumeration(const Rational& v, long p);

// Singular values (nonincreasing) from Eigen's two-sided Jacobi SVD in
// binary floating point of the given precision (256 or 512 bits), returned
// as exact rationals of the decimal expansion.
std::vector<Rational> singular_values_mp(const Matrix<Rational>& a, int bits);

// Depth-first cycle search in the bipartite row/column graph.
bool has_cycle_dfs(const structla::SparsityPattern& p);

// Enumerates semistandard Young tableaux of a shape with entries 1..n.
std::size_t count_ssyt(const std::vector<long>& shape, std::size_t n);

}  // namespace oracle_t
