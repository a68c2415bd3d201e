#include "structla/expr.hpp"

#include <algorithm>
#include <cctype>

#include "structla/errors.hpp"

namespace structla {

unsigned long Monomial::degree() const {
  unsigned long d = 0;
  for (const auto& [v, e] : exps) d += e;
  return d;
}

namespace {

// Graded lexicographic: higher degree first, then larger exponent of the
// smallest variable index.
bool grlex_before(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() > b.degree();
  auto ia = a.exps.begin();
  auto ib = b.exps.begin();
  while (ia != a.exps.end() && ib != b.exps.end()) {
    if (ia->first != ib->first) return ia->first < ib->first;
    if (ia->second != ib->second) return ia->second > ib->second;
    ++ia;
    ++ib;
  }
  return ia != a.exps.end() && ib == b.exps.end();
}

class Parser {
 public:
  explicit Parser(std::string_view t) : text_(t) {}

  FactoredExpr expr() {
    FactoredExpr r;
    r.factors.push_back(factor());
    while (peek() == '*') {
      ++pos_;
      r.factors.push_back(factor());
    }
    skip();
    if (pos_ != text_.size()) fail("unexpected character");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::string digits() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }

  Factor factor() {
    const std::size_t start = pos_;
    expect('(');
    Factor f;
    f.poly = poly();
    expect(')');
    f.power = 1;
    if (peek() == '^') {
      ++pos_;
      bool neg = false;
      if (peek() == '-') {
        neg = true;
        ++pos_;
      } else if (peek() == '+') {
        ++pos_;
      }
      f.power = Integer(digits());
      if (neg) f.power = -f.power;
      if (f.power == 0) fail("zero power");
    }
    FactoredExpr probe{{f}};
    try {
      probe.canonicalize();
    } catch (const PreconditionError& e) {
      throw ParseError(e.what(), start);
    }
    return probe.factors.front();
  }

  std::vector<Monomial> poly() {
    std::vector<Monomial> out;
    int sign = 1;
    if (peek() == '+' || peek() == '-') {
      sign = text_[pos_] == '-' ? -1 : 1;
      ++pos_;
    }
    while (true) {
      Monomial m = term();
      if (sign < 0) m.coeff = -m.coeff;
      out.push_back(std::move(m));
      char c = peek();
      if (c != '+' && c != '-') break;
      sign = c == '-' ? -1 : 1;
      ++pos_;
    }
    return out;
  }

  Monomial term() {
    Monomial m;
    m.coeff = 1;
    while (true) {
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        m.coeff *= Integer(digits());
      } else if (c == 'x') {
        ++pos_;
        std::size_t var = std::stoul(digits());
        unsigned long e = 1;
        if (peek() == '^') {
          ++pos_;
          e = std::stoul(digits());
        }
        if (e > 0) m.exps[var] += e;
      } else {
        fail("expected a coefficient or a variable");
      }
      if (peek() != '*') break;
      // A '*' directly before '(' joins factors, not items.
      std::size_t save = pos_;
      ++pos_;
      if (peek() == '(') {
        pos_ = save;
        break;
      }
    }
    return m;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string monomial_body(const Monomial& m) {
  Integer mag = abs(m.coeff);
  std::string s;
  if (m.exps.empty()) return mag.get_str();
  if (mag != 1) s = mag.get_str() + "*";
  bool first = true;
  for (const auto& [v, e] : m.exps) {
    if (!first) s += "*";
    first = false;
    s += "x" + std::to_string(v);
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

LemFloat monomial_exact(const Monomial& m, std::span<const LemFloat> x, CostCounter* cost) {
  LemFloat v(m.coeff, Integer(0));
  for (const auto& [var, e] : m.exps) {
    Integer f;
    mpz_pow_ui(f.get_mpz_t(), x[var].fraction().get_mpz_t(), e);
    if (cost) cost->charge(bit_length(f));
    v = mul_exact(v, LemFloat(f, x[var].exponent() * e), cost);
  }
  return v;
}

void check_variables(const FactoredExpr& r, std::size_t have) {
  if (r.num_variables() > have) {
    throw PreconditionError("expression uses x" + std::to_string(r.num_variables() - 1) +
                            " but only " + std::to_string(have) + " values were given");
  }
}

}  // namespace

void FactoredExpr::canonicalize() {
  for (Factor& f : factors) {
    if (f.power == 0) throw PreconditionError("factor with zero power");
    std::vector<Monomial> merged;
    for (Monomial& m : f.poly) {
      auto it = std::find_if(merged.begin(), merged.end(),
                             [&](const Monomial& o) { return o.exps == m.exps; });
      if (it == merged.end()) {
        merged.push_back(std::move(m));
      } else {
        it->coeff += m.coeff;
      }
    }
    std::erase_if(merged, [](const Monomial& m) { return m.coeff == 0; });
    if (merged.empty()) throw PreconditionError("polynomial factor is identically zero");
    std::sort(merged.begin(), merged.end(), grlex_before);
    f.poly = std::move(merged);
  }
}

FactoredExpr FactoredExpr::parse(std::string_view text) { return Parser(text).expr(); }

std::string FactoredExpr::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) s += " * ";
    s += "(";
    const auto& poly = factors[i].poly;
    for (std::size_t k = 0; k < poly.size(); ++k) {
      const bool neg = poly[k].coeff < 0;
      if (k == 0) {
        if (neg) s += "-";
      } else {
        s += neg ? " - " : " + ";
      }
      s += monomial_body(poly[k]);
    }
    s += ")";
    if (factors[i].power != 1) s += "^" + factors[i].power.get_str();
  }
  return s;
}

std::size_t FactoredExpr::num_variables() const {
  std::size_t n = 0;
  for (const Factor& f : factors)
    for (const Monomial& m : f.poly)
      if (!m.exps.empty()) n = std::max(n, m.exps.rbegin()->first + 1);
  return n;
}

Rational eval_poly_exact(std::span<const Monomial> poly, std::span<const Rational> x) {
  Rational s;
  for (const Monomial& m : poly) {
    Rational t(m.coeff);
    for (const auto& [v, e] : m.exps) {
      if (v >= x.size()) throw PreconditionError("missing value for x" + std::to_string(v));
      t *= x[v].pow(to_long(Integer(e)));
    }
    s += t;
  }
  return s;
}

Rational eval_exact(const FactoredExpr& r, std::span<const Rational> x) {
  check_variables(r, x.size());
  std::vector<Rational> values;
  for (std::size_t i = 0; i < r.factors.size(); ++i) {
    values.push_back(eval_poly_exact(r.factors[i].poly, x));
    if (values.back().is_zero() && r.factors[i].power < 0) {
      throw PoleError("factor " + std::to_string(i) + " vanishes under a negative power", i, 0);
    }
  }
  Rational out(1);
  for (std::size_t i = 0; i < r.factors.size(); ++i) {
    out *= values[i].pow(to_long(r.factors[i].power));
  }
  return out;
}

LemFloat eval_factored(const FactoredExpr& r, std::span<const LemFloat> x, Precision p,
                       CostCounter* cost) {
  check_variables(r, x.size());
  const std::size_t m = r.factors.size();
  const Precision guard(p.bits() + static_cast<long>(bit_length(Integer(3 * m + 3))) + 4);
  std::vector<LemFloat> values;
  bool zero = false;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<LemFloat> terms;
    for (const Monomial& mono : r.factors[i].poly) terms.push_back(monomial_exact(mono, x, cost));
    values.push_back(sparse_sum(terms, guard, cost));
    if (values.back().is_zero()) {
      if (r.factors[i].power < 0) {
        throw PoleError("factor " + std::to_string(i) + " vanishes under a negative power", i, 0);
      }
      zero = true;
    }
  }
  if (zero) return LemFloat();
  LemFloat acc(1);
  for (std::size_t i = 0; i < m; ++i) {
    LemFloat v = pow(values[i], r.factors[i].power, guard, cost);
    acc = i == 0 ? v : mul(acc, v, guard, cost);
  }
  return round_nearest(acc, p, cost);
}

std::uint64_t expr_size(const FactoredExpr& r) {
  std::uint64_t s = 0;
  auto signed_bits = [](const Integer& v) { return bit_length(v) + (v < 0 ? 1 : 0); };
  for (const Factor& f : r.factors) {
    for (const Monomial& m : f.poly) {
      s += signed_bits(m.coeff);
      for (const auto& [v, e] : m.exps) s += bit_length(Integer(e));
    }
    s += signed_bits(f.power);
  }
  return s;
}

bool ConditionAReport::satisfied() const {
  return std::none_of(verdicts.begin(), verdicts.end(),
                      [](FactorVerdict v) { return v == FactorVerdict::fails; });
}

namespace {

bool is_unit_linear(const Monomial& m) {
  return abs(m.coeff) == 1 && m.exps.size() == 1 && m.exps.begin()->second == 1;
}

FactorVerdict classify(const Factor& f) {
  const auto& poly = f.poly;
  if (poly.size() == 1 && abs(poly[0].coeff) == 1 && !poly[0].exps.empty()) {
    return FactorVerdict::single_variable;
  }
  if (poly.size() == 2 && is_unit_linear(poly[0]) && is_unit_linear(poly[1]) &&
      poly[0].exps.begin()->first != poly[1].exps.begin()->first) {
    return sgn(poly[0].coeff) == sgn(poly[1].coeff) ? FactorVerdict::sum
                                                    : FactorVerdict::difference;
  }
  return FactorVerdict::fails;
}

}  // namespace

ConditionAReport check_condition_A(const FactoredExpr& r, const std::set<std::size_t>& attestations) {
  ConditionAReport rep;
  for (std::size_t i = 0; i < r.factors.size(); ++i) {
    FactorVerdict v = classify(r.factors[i]);
    if (v == FactorVerdict::fails && attestations.count(i)) v = FactorVerdict::attested;
    rep.verdicts.push_back(v);
  }
  return rep;
}

Rational rel_gap(const Rational& a, const Rational& b, GapSign sign) {
  Rational den = a.abs() + b.abs();
  if (den.is_zero()) throw DomainError("rel_gap(0, 0) is undefined");
  Rational num = sign == GapSign::minus ? a - b : a + b;
  return num.abs() / den;
}

Rational kappa_rel_bound(const FactoredExpr& r, std::span<const Rational> x,
                         const std::set<std::size_t>& attestations) {
  check_variables(r, x.size());
  ConditionAReport rep = check_condition_A(r, attestations);
  Rational kappa;
  for (std::size_t i = 0; i < r.factors.size(); ++i) {
    const Factor& f = r.factors[i];
    const Rational power = Rational(Integer(abs(f.power)));
    auto vanish = [&] {
      return DomainError("factor " + std::to_string(i) +
                         " vanishes at x: infinite relative condition number");
    };
    switch (rep.verdicts[i]) {
      case FactorVerdict::fails:
        throw PreconditionError("factor " + std::to_string(i) + " fails condition (A)");
      case FactorVerdict::single_variable: {
        if (eval_poly_exact(f.poly, x).is_zero()) throw vanish();
        kappa += power * Rational(static_cast<long>(f.poly[0].degree()));
        break;
      }
      case FactorVerdict::difference:
      case FactorVerdict::sum: {
        const Rational& a = x[f.poly[0].exps.begin()->first];
        const Rational& b = x[f.poly[1].exps.begin()->first];
        GapSign s = rep.verdicts[i] == FactorVerdict::sum ? GapSign::plus : GapSign::minus;
        if (a.is_zero() && b.is_zero()) throw vanish();
        Rational gap = rel_gap(a, b, s);
        if (gap.is_zero()) throw vanish();
        kappa += power / gap;
        break;
      }
      case FactorVerdict::attested: {
        Rational value = eval_poly_exact(f.poly, x);
        if (value.is_zero()) throw vanish();
        Rational spread;
        for (const Monomial& m : f.poly) {
          Rational mv = eval_poly_exact(std::span<const Monomial>(&m, 1), x);
          spread += mv.abs() * Rational(static_cast<long>(m.degree()));
        }
        kappa += power * spread / value.abs();
        break;
      }
    }
  }
  return kappa;
}

std::string to_string(FactorVerdict v) {
  switch (v) {
    case FactorVerdict::single_variable:
      return "single-variable";
    case FactorVerdict::difference:
      return "difference";
    case FactorVerdict::sum:
      return "sum";
    case FactorVerdict::attested:
      return "attested-bounded-away-from-zero";
    case FactorVerdict::fails:
      return "fails";
  }
  return "?";
}

}  // namespace structla
