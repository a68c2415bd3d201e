#pragma once

#include <random>

#include "structla/lem_float.hpp"
#include "structla/rational.hpp"

namespace testutil {

using structla::LemFloat;
using structla::Rational;

inline Rational rel(const LemFloat& computed, const Rational& exact) {
  if (exact.is_zero()) return computed.is_zero() ? Rational(0) : Rational(1000000);
  return (computed.to_rational() - exact).abs() / exact.abs();
}

// Random rational num/den with |num| < 2^bits, 0 < den < 2^bits.
inline Rational random_rational(std::mt19937_64& rng, int bits, bool allow_negative = true) {
  std::uniform_int_distribution<long> d(1, (1L << bits) - 1);
  long num = d(rng);
  if (allow_negative && (rng() & 1)) num = -num;
  return Rational(structla::Integer(num), structla::Integer(d(rng)));
}

inline Rational positive_rational(std::mt19937_64& rng, int bits) {
  return random_rational(rng, bits, false);
}

}  // namespace testutil
