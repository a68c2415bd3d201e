#include "structla/rational.hpp"

#include <cctype>
#include <climits>
#include <stdexcept>

#include "structla/errors.hpp"

namespace structla {

std::size_t bit_length(const Integer& v) {
  return mpz_sizeinbase(v.get_mpz_t(), 2);
}

long to_long(const Integer& v) {
  if (!v.fits_slong_p()) throw std::overflow_error("integer does not fit in long");
  return v.get_si();
}

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::reciprocal() const {
  if (is_zero()) throw DivisionByZero();
  return Rational(mpq_class(1 / q_));
}

Rational& Rational::operator+=(const Rational& o) {
  q_ += o.q_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  q_ -= o.q_;
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  q_ *= o.q_;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DivisionByZero();
  q_ /= o.q_;
  return *this;
}

Rational Rational::mul_pow2(long k) const {
  mpq_class r;
  if (k >= 0) {
    mpq_mul_2exp(r.get_mpq_t(), q_.get_mpq_t(), static_cast<mp_bitcnt_t>(k));
  } else {
    mpq_div_2exp(r.get_mpq_t(), q_.get_mpq_t(), static_cast<mp_bitcnt_t>(-k));
  }
  return Rational(r);
}

Rational Rational::pow(long k) const {
  if (k < 0) return reciprocal().pow(-k);
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(k));
  mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(k));
  return Rational(n, d);
}

namespace {

std::string integer_to_string(const Integer& v, int base) {
  if (base == 10) return v.get_str(10);
  if (base != 16) throw PreconditionError("base must be 10 or 16");
  if (v < 0) return "-0x" + Integer(-v).get_str(16);
  return "0x" + v.get_str(16);
}

// Parses an optionally signed integer (decimal or 0x-hex) occupying all of
// `text`.
Integer parse_integer(std::string_view text, std::size_t offset) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  int base = 10;
  if (i + 1 < text.size() && text[i] == '0' &&
      (text[i + 1] == 'x' || text[i + 1] == 'X')) {
    base = 16;
    i += 2;
  }
  if (i >= text.size()) throw ParseError("expected digits", offset + i);
  for (std::size_t k = i; k < text.size(); ++k) {
    unsigned char c = static_cast<unsigned char>(text[k]);
    if (base == 10 ? !std::isdigit(c) : !std::isxdigit(c)) {
      throw ParseError("unexpected character in integer", offset + k);
    }
  }
  Integer v(std::string(text.substr(i)), base);
  return negative ? Integer(-v) : v;
}

}  // namespace

std::string Rational::to_string(int base) const {
  std::string s = integer_to_string(num(), base);
  if (!is_integer()) s += "/" + integer_to_string(den(), base);
  return s;
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty rational", 0);

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer n = parse_integer(text.substr(0, slash), 0);
    Integer d = parse_integer(text.substr(slash + 1), slash + 1);
    if (d == 0) throw ParseError("zero denominator", slash + 1);
    return Rational(n, d);
  }

  bool is_hex = text.find("0x") != std::string_view::npos ||
                text.find("0X") != std::string_view::npos;
  if (is_hex) return Rational(parse_integer(text, 0));

  // Decimal with optional fraction and exponent: [+-]ddd[.ddd][e[+-]ddd]
  std::size_t exp_pos = text.find_first_of("eE");
  std::string_view mantissa = text.substr(0, exp_pos);
  long exp10 = 0;
  if (exp_pos != std::string_view::npos) {
    Integer e = parse_integer(text.substr(exp_pos + 1), exp_pos + 1);
    exp10 = to_long(e);
  }
  std::string digits;
  bool negative = false;
  std::size_t i = 0;
  if (i < mantissa.size() && (mantissa[i] == '+' || mantissa[i] == '-')) {
    negative = mantissa[i] == '-';
    ++i;
  }
  bool seen_point = false;
  for (; i < mantissa.size(); ++i) {
    char c = mantissa[i];
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      if (seen_point) --exp10;
    } else {
      throw ParseError("unexpected character in number", i);
    }
  }
  if (digits.empty()) throw ParseError("expected digits", 0);
  Integer n(digits, 10);
  if (negative) n = -n;
  Integer ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10,
                static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  return exp10 >= 0 ? Rational(Integer(n * ten_pow)) : Rational(n, ten_pow);
}

double Rational::to_double() const { return q_.get_d(); }

Rational rat_arith(const Rational& a, const Rational& b, ArithOp op) {
  switch (op) {
    case ArithOp::add:
      return a + b;
    case ArithOp::sub:
      return a - b;
    case ArithOp::mul:
      return a * b;
    case ArithOp::div:
      return a / b;
  }
  throw PreconditionError("unknown arithmetic operation");
}

Rational pow2(long k) { return Rational(1).mul_pow2(k); }

std::string to_scientific(const Rational& v, int digits) {
  if (digits < 1) digits = 1;
  if (v.is_zero()) {
    std::string s = "0";
    if (digits > 1) s += "." + std::string(static_cast<std::size_t>(digits - 1), '0');
    return s + "e+00";
  }
  Rational a = v.abs();
  // Estimate the decimal exponent from bit lengths, then correct.
  long bits = static_cast<long>(bit_length(a.num())) -
              static_cast<long>(bit_length(a.den()));
  long exp10 = static_cast<long>(static_cast<double>(bits) * 0.30102999566398120);
  auto scaled = [&](long e) {
    // floor(a * 10^(digits-1-e) + 1/2)
    long k = digits - 1 - e;
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k < 0 ? -k : k));
    Rational s = k >= 0 ? a * Rational(p) : a / Rational(p);
    s += Rational(1, 2);
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), s.num().get_mpz_t(), s.den().get_mpz_t());
    return q;
  };
  Integer lo, hi;
  mpz_ui_pow_ui(lo.get_mpz_t(), 10, static_cast<unsigned long>(digits - 1));
  hi = lo * 10;
  Integer m = scaled(exp10);
  for (int guard = 0; guard < 8 && (m < lo || m >= hi); ++guard) {
    exp10 += (m >= hi) ? 1 : -1;
    m = scaled(exp10);
  }
  std::string d = m.get_str(10);
  std::string out = v.sign() < 0 ? "-" : "";
  out += d.substr(0, 1);
  if (d.size() > 1) out += "." + d.substr(1);
  out += 'e';
  out += exp10 < 0 ? '-' : '+';
  std::string e = std::to_string(exp10 < 0 ? -exp10 : exp10);
  if (e.size() < 2) e = "0" + e;
  return out + e;
}

}  // namespace structla
