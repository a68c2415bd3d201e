#include "structla/lem_float.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "structla/errors.hpp"

namespace structla {

namespace {

// Shifts beyond this many bits would not fit in memory anyway.
constexpr unsigned long kMaxShift = 1ul << 40;

mp_bitcnt_t to_shift(const Integer& k) {
  if (k < 0 || !k.fits_ulong_p() || k.get_ui() > kMaxShift) {
    throw std::overflow_error("bit shift out of range");
  }
  return static_cast<mp_bitcnt_t>(k.get_ui());
}

Integer shl(const Integer& v, mp_bitcnt_t k) {
  Integer r;
  mpz_mul_2exp(r.get_mpz_t(), v.get_mpz_t(), k);
  return r;
}

// Rounds the nonnegative integer q * 2^exp to p bits. `sticky` reports
// nonzero bits below q's last bit; the caller guarantees q then carries at
// least p + 2 bits so the guard bit is inside q.
LemFloat round_bits(Integer q, bool sticky, Integer exp, long p, int sign,
                    CostCounter* cost) {
  std::size_t len = bit_length(q);
  if (cost) cost->charge(len);
  long drop = static_cast<long>(len) - p;
  if (drop > 0) {
    mp_bitcnt_t k = static_cast<mp_bitcnt_t>(drop);
    bool guard = mpz_tstbit(q.get_mpz_t(), k - 1) != 0;
    bool below = sticky || (mpz_scan1(q.get_mpz_t(), 0) < k - 1);
    mpz_fdiv_q_2exp(q.get_mpz_t(), q.get_mpz_t(), k);
    exp += drop;
    bool odd = mpz_tstbit(q.get_mpz_t(), 0) != 0;
    if (guard && (below || odd)) q += 1;
  }
  return LemFloat(sign < 0 ? Integer(-q) : q, exp);
}

}  // namespace

Precision::Precision(long bits) : bits_(bits) {
  if (bits < 2) throw PreconditionError("precision must be at least 2 bits");
}

LemFloat::LemFloat(Integer f, Integer e) : f_(std::move(f)), e_(std::move(e)) {
  if (f_ == 0) {
    e_ = 0;
    return;
  }
  mp_bitcnt_t tz = mpz_scan1(f_.get_mpz_t(), 0);
  if (tz > 0) {
    mpz_tdiv_q_2exp(f_.get_mpz_t(), f_.get_mpz_t(), tz);
    e_ += static_cast<unsigned long>(tz);
  }
}

Integer LemFloat::top_bit() const {
  return e_ + static_cast<unsigned long>(bit_length(f_)) - 1;
}

Rational LemFloat::to_rational() const {
  return Rational(f_).mul_pow2(to_long(e_));
}

double LemFloat::to_double() const {
  if (is_zero()) return 0.0;
  LemFloat r = round_nearest(*this, Precision(53));
  if (r.e_ > 4096) return r.sign() * std::numeric_limits<double>::infinity();
  if (r.e_ < -4096) return r.sign() * 0.0;
  return std::ldexp(r.f_.get_d(), static_cast<int>(r.e_.get_si()));
}

std::string LemFloat::to_string(int base) const {
  auto str = [base](const Integer& v) {
    if (base == 10) return v.get_str(10);
    if (v < 0) return "-0x" + Integer(-v).get_str(16);
    return "0x" + v.get_str(16);
  };
  if (base != 10 && base != 16) throw PreconditionError("base must be 10 or 16");
  return str(f_) + "p2^" + str(e_);
}

LemFloat LemFloat::parse(std::string_view text) {
  std::size_t at = text.find("p2^");
  if (at == std::string_view::npos) {
    Rational r = Rational::parse(text);
    if (!r.is_integer()) throw ParseError("expected f p2^ e form", 0);
    return LemFloat(r.num(), Integer(0));
  }
  Rational f = Rational::parse(text.substr(0, at));
  Rational e = Rational::parse(text.substr(at + 3));
  if (!f.is_integer()) throw ParseError("fraction must be an integer", 0);
  if (!e.is_integer()) throw ParseError("exponent must be an integer", at + 3);
  return LemFloat(f.num(), e.num());
}

int compare_abs(const LemFloat& a, const LemFloat& b) {
  if (a.is_zero() || b.is_zero()) {
    return (a.is_zero() ? 0 : 1) - (b.is_zero() ? 0 : 1);
  }
  int c = cmp(a.top_bit(), b.top_bit());
  if (c != 0) return c < 0 ? -1 : 1;
  Integer base = std::min(a.exponent(), b.exponent());
  Integer fa = shl(::abs(a.fraction()), to_shift(a.exponent() - base));
  Integer fb = shl(::abs(b.fraction()), to_shift(b.exponent() - base));
  c = cmp(fa, fb);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

int compare(const LemFloat& a, const LemFloat& b) {
  if (a.sign() != b.sign()) return a.sign() < b.sign() ? -1 : 1;
  if (a.sign() == 0) return 0;
  return a.sign() * compare_abs(a, b);
}

LemFloat round_scaled_ratio(const Integer& num, const Integer& den,
                            const Integer& exp2, Precision p,
                            CostCounter* cost) {
  if (den == 0) throw DivisionByZero();
  if (num == 0) return LemFloat();
  int sign = sgn(num) * sgn(den);
  Integer a = ::abs(num);
  Integer b = ::abs(den);
  long s = p.bits() + 2 + static_cast<long>(bit_length(b)) -
           static_cast<long>(bit_length(a));
  if (s > 0) {
    a = shl(a, static_cast<mp_bitcnt_t>(s));
  } else if (s < 0) {
    b = shl(b, static_cast<mp_bitcnt_t>(-s));
  }
  Integer q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (cost) cost->charge(bit_length(a) * bit_length(b) / 64 + bit_length(a));
  return round_bits(std::move(q), r != 0, exp2 - s, p.bits(), sign, cost);
}

LemFloat round_nearest(const Rational& v, Precision p, CostCounter* cost) {
  return round_scaled_ratio(v.num(), v.den(), Integer(0), p, cost);
}

LemFloat round_nearest(const LemFloat& v, Precision p, CostCounter* cost) {
  if (bit_length(v.fraction()) <= static_cast<std::size_t>(p.bits())) {
    if (cost) cost->charge(bit_length(v.fraction()));
    return v;
  }
  return round_bits(::abs(v.fraction()), false, v.exponent(), p.bits(),
                    v.sign(), cost);
}

namespace {

std::uint64_t signed_bits(const Integer& v) {
  return bit_length(v) + (v < 0 ? 1 : 0);
}

}  // namespace

std::uint64_t size_bits(const LemFloat& x) {
  return signed_bits(x.fraction()) + signed_bits(x.exponent());
}

namespace {

struct Span {
  const LemFloat* x;
  Integer low;
  Integer high;
};

std::vector<Span> spans_of(std::span<const LemFloat> terms) {
  std::vector<Span> spans;
  spans.reserve(terms.size());
  for (const LemFloat& t : terms) {
    if (t.is_zero()) continue;
    spans.push_back({&t, t.exponent(), t.top_bit()});
  }
  return spans;
}

// Dense exact sum of spans[first, last) relative to their lowest bit.
LemFloat dense_sum(const std::vector<Span>& spans, std::size_t first,
                   std::size_t last, CostCounter* cost) {
  Integer base = spans[first].low;
  for (std::size_t i = first + 1; i < last; ++i) base = std::min(base, spans[i].low);
  Integer acc;
  for (std::size_t i = first; i < last; ++i) {
    mp_bitcnt_t k = to_shift(spans[i].low - base);
    acc += shl(spans[i].x->fraction(), k);
    if (cost) cost->charge(bit_length(spans[i].x->fraction()) + k);
  }
  return LemFloat(std::move(acc), std::move(base));
}

}  // namespace

LemFloat exact_sum(std::span<const LemFloat> terms, CostCounter* cost) {
  std::vector<Span> spans = spans_of(terms);
  if (spans.empty()) return LemFloat();
  return dense_sum(spans, 0, spans.size(), cost);
}

LemFloat sparse_sum(std::span<const LemFloat> terms, Precision p,
                    CostCounter* cost) {
  if (terms.empty()) throw PreconditionError("sparse_sum needs at least one term");
  std::vector<Span> spans = spans_of(terms);
  if (spans.empty()) return LemFloat();

  std::sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) {
    return a.high > b.high || (a.high == b.high && a.low > b.low);
  });
  if (cost) {
    std::uint64_t key_bits = 0;
    for (const Span& s : spans) key_bits = std::max<std::uint64_t>(key_bits, bit_length(s.high));
    std::uint64_t n = spans.size();
    std::uint64_t log_n = 1;
    while ((1ull << log_n) < n) ++log_n;
    cost->charge(n * log_n * key_bits);
  }

  // Sweep in decreasing order of leading bit; a span joins the current
  // cluster when its leading bit reaches within `gap` of the cluster's
  // lowest bit.
  const long gap = p.bits() + 4;
  std::vector<LemFloat> clusters;
  std::size_t start = 0;
  Integer cluster_low = spans[0].low;
  for (std::size_t i = 1; i <= spans.size(); ++i) {
    if (i < spans.size() && spans[i].high + gap >= cluster_low) {
      cluster_low = std::min(cluster_low, spans[i].low);
      continue;
    }
    LemFloat c = dense_sum(spans, start, i, cost);
    if (!c.is_zero()) clusters.push_back(std::move(c));
    if (i < spans.size()) {
      start = i;
      cluster_low = spans[i].low;
    }
  }
  if (clusters.empty()) return LemFloat();
  if (clusters.size() == 1) return round_nearest(clusters[0], p, cost);

  // Everything below the leading cluster is smaller than 2^q in magnitude,
  // so it only matters through its sign: replace it by sign * 2^(q-1).
  const LemFloat& lead = clusters[0];
  Integer q = std::min(lead.exponent(), Integer(lead.top_bit() - 1 - p.bits()));
  Integer sticky_exp = q - 1;
  Integer f = shl(lead.fraction(), to_shift(lead.exponent() - sticky_exp));
  f += clusters[1].sign();
  if (cost) cost->charge(bit_length(f));
  return round_nearest(LemFloat(std::move(f), std::move(sticky_exp)), p, cost);
}

LemFloat add(const LemFloat& a, const LemFloat& b, Precision p, CostCounter* cost) {
  const LemFloat terms[2] = {a, b};
  return sparse_sum(terms, p, cost);
}

LemFloat sub(const LemFloat& a, const LemFloat& b, Precision p, CostCounter* cost) {
  const LemFloat terms[2] = {a, -b};
  return sparse_sum(terms, p, cost);
}

LemFloat mul_exact(const LemFloat& a, const LemFloat& b, CostCounter* cost) {
  if (cost) {
    cost->charge(bit_length(a.fraction()) * bit_length(b.fraction()) +
                 std::max(bit_length(a.exponent()), bit_length(b.exponent())));
  }
  return LemFloat(a.fraction() * b.fraction(), a.exponent() + b.exponent());
}

LemFloat mul_pow2(const LemFloat& a, const Integer& k) {
  return LemFloat(a.fraction(), a.exponent() + k);
}

LemFloat mul(const LemFloat& a, const LemFloat& b, Precision p, CostCounter* cost) {
  return round_nearest(mul_exact(a, b, cost), p, cost);
}

LemFloat div(const LemFloat& a, const LemFloat& b, Precision p, CostCounter* cost) {
  if (b.is_zero()) throw DivisionByZero();
  return round_scaled_ratio(a.fraction(), b.fraction(),
                            a.exponent() - b.exponent(), p, cost);
}

LemFloat sqrt(const LemFloat& a, Precision p, CostCounter* cost) {
  if (a.sign() < 0) throw DomainError("square root of a negative number");
  if (a.is_zero()) return LemFloat();
  // a = N * 2^(e - t) with e - t even and N carrying >= 2p + 4 bits.
  long want = 2 * p.bits() + 4 - static_cast<long>(bit_length(a.fraction()));
  long t = std::max(want, 0L);
  Integer e_minus_t = a.exponent() - t;
  if (mpz_odd_p(e_minus_t.get_mpz_t())) {
    ++t;
    e_minus_t -= 1;
  }
  Integer n = shl(a.fraction(), static_cast<mp_bitcnt_t>(t));
  Integer root, rem;
  mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t());
  if (cost) cost->charge(bit_length(n) * bit_length(n) / 64 + bit_length(n));
  Integer half_exp;
  mpz_fdiv_q_2exp(half_exp.get_mpz_t(), e_minus_t.get_mpz_t(), 1);
  return round_bits(std::move(root), rem != 0, half_exp, p.bits(), 1, cost);
}

LemFloat pow(const LemFloat& a, const Integer& k, Precision p, CostCounter* cost) {
  if (k == 0) return LemFloat(1);
  if (a.is_zero()) {
    if (k < 0) throw DivisionByZero("zero raised to a negative power");
    return LemFloat();
  }
  Integer n = ::abs(k);
  Precision work(p.bits() + 2 * static_cast<long>(bit_length(n)) + 8);
  LemFloat result(1);
  LemFloat base = a;
  for (std::size_t bit = 0, len = bit_length(n); bit < len; ++bit) {
    if (mpz_tstbit(n.get_mpz_t(), bit)) result = mul(result, base, work, cost);
    if (bit + 1 < len) base = mul(base, base, work, cost);
  }
  if (k < 0) return div(LemFloat(1), result, p, cost);
  return round_nearest(result, p, cost);
}

LemFloat dot(std::span<const LemFloat> a, std::span<const LemFloat> b,
             Precision p, CostCounter* cost) {
  if (a.size() != b.size()) throw PreconditionError("dot: length mismatch");
  if (a.empty()) return LemFloat();
  std::vector<LemFloat> products;
  products.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) products.push_back(mul_exact(a[i], b[i], cost));
  return sparse_sum(products, p, cost);
}

}  // namespace structla
