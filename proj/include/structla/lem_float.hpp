#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "structla/rational.hpp"

namespace structla {

// Number of significand bits kept by rounded operations. The unit roundoff
// is 2^-p and the machine precision is eps = 2^(1-p).
class Precision {
 public:
  explicit Precision(long bits);
  long bits() const { return bits_; }
  // eps = 2^(1-p)
  Rational epsilon() const { return pow2(1 - bits_); }
  // u = 2^-p, the round-to-nearest error bound
  Rational unit_roundoff() const { return pow2(-bits_); }
  friend bool operator==(Precision a, Precision b) = default;

 private:
  long bits_;
};

// Abstract bit-operation counter. Operations charge it with the number of
// bits they touch, which makes cost assertions deterministic.
struct CostCounter {
  std::uint64_t bit_ops = 0;
  void charge(std::uint64_t n) { bit_ops += n; }
};

// A floating number f * 2^e with unbounded integer fraction and exponent.
// Canonical form: f == 0 implies e == 0, otherwise f is odd.
class LemFloat {
 public:
  LemFloat() = default;
  LemFloat(Integer f, Integer e);
  explicit LemFloat(long v) : LemFloat(Integer(v), Integer(0)) {}

  static LemFloat pow2(const Integer& e) { return LemFloat(Integer(1), e); }

  const Integer& fraction() const { return f_; }
  const Integer& exponent() const { return e_; }

  int sign() const { return sgn(f_); }
  bool is_zero() const { return f_ == 0; }
  // Position of the leading bit: |x| is in [2^top, 2^(top+1)). Nonzero only.
  Integer top_bit() const;

  LemFloat operator-() const { return LemFloat(Integer(-f_), e_); }
  LemFloat abs() const { return LemFloat(Integer(::abs(f_)), e_); }

  // Exact value. Throws std::overflow_error when |e| does not fit in a long.
  Rational to_rational() const;
  double to_double() const;

  // "3p2^-2" in base 10, "0x3p2^-0x2" in base 16.
  std::string to_string(int base = 10) const;
  static LemFloat parse(std::string_view text);

  friend bool operator==(const LemFloat& a, const LemFloat& b) {
    return a.f_ == b.f_ && a.e_ == b.e_;
  }

 private:
  Integer f_;
  Integer e_;
};

// Exact three-way comparisons.
int compare(const LemFloat& a, const LemFloat& b);
int compare_abs(const LemFloat& a, const LemFloat& b);

// lem_to_rational: f * 2^e exactly.
inline Rational lem_to_rational(const LemFloat& x) { return x.to_rational(); }

// Round-to-nearest, ties to even, with p significand bits.
LemFloat round_nearest(const Rational& v, Precision p, CostCounter* cost = nullptr);
LemFloat round_nearest(const LemFloat& v, Precision p, CostCounter* cost = nullptr);
// round(num / den * 2^exp2)
LemFloat round_scaled_ratio(const Integer& num, const Integer& den,
                            const Integer& exp2, Precision p,
                            CostCounter* cost = nullptr);

// Bit length of |f| plus bit length of |e|, one extra bit for each negative
// component, bit_length(0) == 1.
std::uint64_t size_bits(const LemFloat& x);

// Correctly rounded sum. Terms are grouped into clusters whose bit ranges
// overlap within p + 4 bits; only clusters are summed densely, and
// everything below the leading cluster collapses to a sticky bit. Cost is
// polynomial in the term sizes and p, independent of exponent gaps.
// An exactly cancelling sum returns exact zero.
LemFloat sparse_sum(std::span<const LemFloat> terms, Precision p,
                    CostCounter* cost = nullptr);

// Exact sum with no rounding (used by oracles and tests).
LemFloat exact_sum(std::span<const LemFloat> terms, CostCounter* cost = nullptr);

// Rounded arithmetic: every call returns round(a op b).
LemFloat add(const LemFloat& a, const LemFloat& b, Precision p, CostCounter* cost = nullptr);
LemFloat sub(const LemFloat& a, const LemFloat& b, Precision p, CostCounter* cost = nullptr);
LemFloat mul(const LemFloat& a, const LemFloat& b, Precision p, CostCounter* cost = nullptr);
LemFloat div(const LemFloat& a, const LemFloat& b, Precision p, CostCounter* cost = nullptr);
LemFloat sqrt(const LemFloat& a, Precision p, CostCounter* cost = nullptr);
// round(a^k) by binary powering at p + 2*bitlen(k) + 8 bits followed by a
// final rounding to p. Negative k divides.
LemFloat pow(const LemFloat& a, const Integer& k, Precision p, CostCounter* cost = nullptr);

// Exact product, no rounding.
LemFloat mul_exact(const LemFloat& a, const LemFloat& b, CostCounter* cost = nullptr);
// Exact scaling by 2^k.
LemFloat mul_pow2(const LemFloat& a, const Integer& k);

// Dot product sum_k a_k * b_k with a single rounding.
LemFloat dot(std::span<const LemFloat> a, std::span<const LemFloat> b,
             Precision p, CostCounter* cost = nullptr);

}  // namespace structla
