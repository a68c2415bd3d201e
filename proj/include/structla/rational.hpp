#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>

namespace structla {

using Integer = mpz_class;

// Number of bits in |v|; bit_length(0) == 1.
std::size_t bit_length(const Integer& v);

// Converts to long, throwing std::overflow_error when it does not fit.
long to_long(const Integer& v);

// Exact rational number kept in lowest terms with a positive denominator.
// Zero is 0/1.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT: implicit by intent
  Rational(const Integer& v) : q_(v) {}  // NOLINT
  Rational(const Integer& num, const Integer& den);
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  Integer num() const { return q_.get_num(); }
  Integer den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational abs() const { return Rational(mpq_class(::abs(q_))); }
  // Throws DivisionByZero for zero.
  Rational reciprocal() const;

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return cmp(a.q_, b.q_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

  // v * 2^k for any integer k.
  Rational mul_pow2(long k) const;
  // Integer power, negative exponents allowed for nonzero values.
  Rational pow(long k) const;

  // "num/den" (or "num" when den == 1) in base 10 or 16. Hex digits are
  // prefixed with 0x, e.g. "-0x16/0x7".
  std::string to_string(int base = 10) const;
  // Accepts "a", "a/b", decimals "1.25", "-3e-4", and the hex forms above.
  static Rational parse(std::string_view text);

  // Closest double (may overflow to infinity for huge values).
  double to_double() const;

 private:
  mpq_class q_;
};

// Exact operation dispatch used by the oracle paths and the CLI.
enum class ArithOp { add, sub, mul, div };
Rational rat_arith(const Rational& a, const Rational& b, ArithOp op);

// Scientific rendering with `digits` significant digits, e.g. "1.5002e+00".
// Truncation-free: the last digit is rounded half-up from the exact value.
std::string to_scientific(const Rational& v, int digits);

// 2^k as an exact rational.
Rational pow2(long k);

}  // namespace structla
