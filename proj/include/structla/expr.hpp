#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "structla/lem_float.hpp"
#include "structla/rational.hpp"

namespace structla {

// coeff * prod_v x_v^exps[v]; exponents stored only when positive.
struct Monomial {
  Integer coeff;
  std::map<std::size_t, unsigned long> exps;

  unsigned long degree() const;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

struct Factor {
  std::vector<Monomial> poly;
  Integer power;
  friend bool operator==(const Factor&, const Factor&) = default;
};

// prod_i poly_i(x)^power_i. Polynomials are kept in canonical form: like
// monomials merged, zero coefficients dropped, graded lexicographic order
// (higher total degree first, then larger exponent of x0, x1, ...).
struct FactoredExpr {
  std::vector<Factor> factors;

  // Grammar (whitespace is ignored):
  //   expr    := factor ('*' factor)*
  //   factor  := '(' poly ')' ['^' int]
  //   poly    := ['+'|'-'] term (('+'|'-') term)*
  //   term    := item ('*' item)*
  //   item    := digits | 'x' digits ['^' digits]
  // Throws ParseError with the offending position; a polynomial that is
  // identically zero or a zero power is rejected.
  static FactoredExpr parse(std::string_view text);
  std::string to_string() const;

  // Merges, drops zeros and sorts; throws PreconditionError on a zero
  // polynomial or zero power.
  void canonicalize();
  // 1 + largest variable index, 0 for a constant expression.
  std::size_t num_variables() const;
  friend bool operator==(const FactoredExpr&, const FactoredExpr&) = default;
};

// Exact value of one polynomial / of the whole expression. A zero factor
// with a negative power throws PoleError(factor, 0).
Rational eval_poly_exact(std::span<const Monomial> poly, std::span<const Rational> x);
Rational eval_exact(const FactoredExpr& r, std::span<const Rational> x);

// Three steps: every monomial exactly, each polynomial by one sparse sum,
// then powers and the product at a guard precision, rounded once to p at
// the end. Exact zero iff the value is zero.
LemFloat eval_factored(const FactoredExpr& r, std::span<const LemFloat> x, Precision p,
                       CostCounter* cost = nullptr);

// Sum over monomials of (coefficient bits + exponent bits) plus the bits of
// every power, with the size_bits conventions (bit_length(0) = 1, one extra
// bit per negative number).
std::uint64_t expr_size(const FactoredExpr& r);

enum class FactorVerdict { single_variable, difference, sum, attested, fails };

// Per-factor syntactic classification:
//   single_variable  one monomial with coefficient +-1 (x_i or a product of
//                    powers of variables, itself a product of x_i factors)
//   difference       +-(x_i - x_j), i != j
//   sum              +-(x_i + x_j), i != j
//   attested         anything else the caller vouches is bounded away
//                    from zero (indices into factors)
//   fails            otherwise, including constants that are not attested
struct ConditionAReport {
  std::vector<FactorVerdict> verdicts;
  bool satisfied() const;
};

ConditionAReport check_condition_A(const FactoredExpr& r,
                                   const std::set<std::size_t>& attestations = {});

enum class GapSign { plus, minus };

// |a -+ b| / (|a| + |b|) for minus/plus. Throws DomainError for a = b = 0.
Rational rel_gap(const Rational& a, const Rational& b, GapSign sign);

// First-order relative condition bound of an expression satisfying
// condition (A): |power| / rel_gap for each difference or sum factor,
// |power| * degree for a monomial factor, and for an attested factor
// |power| * sum_m |c_m| deg(m) |m(x)| / |poly(x)|. Throws
// PreconditionError if a factor fails condition (A) and DomainError when a
// factor vanishes at x (infinite condition).
Rational kappa_rel_bound(const FactoredExpr& r, std::span<const Rational> x,
                         const std::set<std::size_t>& attestations = {});

std::string to_string(FactorVerdict v);

}  // namespace structla
