#include "structla/schur.hpp"

#include <limits>

namespace structla {

void Partition::validate() const {
  for (std::size_t j = 0; j < parts.size(); ++j) {
    if (parts[j] < 0) throw PreconditionError("partition parts must be nonnegative");
    if (j > 0 && parts[j] > parts[j - 1]) {
      throw PreconditionError("partition parts must be nonincreasing");
    }
  }
}

Partition Partition::canonical() const {
  Partition p = *this;
  while (!p.parts.empty() && p.parts.back() == 0) p.parts.pop_back();
  return p;
}

long Partition::weight() const {
  long w = 0;
  for (long v : parts) w += v;
  return w;
}

std::string Partition::to_string() const {
  std::string s = "(";
  for (std::size_t j = 0; j < parts.size(); ++j) {
    if (j) s += ",";
    s += std::to_string(parts[j]);
  }
  return s + ")";
}

Partition Partition::parse(std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && text[pos] == ' ') ++pos;
  };
  skip();
  if (pos >= text.size() || text[pos] != '(') throw ParseError("expected '('", pos);
  ++pos;
  Partition p;
  skip();
  if (pos < text.size() && text[pos] == ')') {
    ++pos;
  } else {
    while (true) {
      skip();
      std::size_t start = pos;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
      if (start == pos) throw ParseError("expected a nonnegative integer", pos);
      p.parts.push_back(std::stol(std::string(text.substr(start, pos - start))));
      skip();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < text.size() && text[pos] == ')') {
        ++pos;
        break;
      }
      throw ParseError("expected ',' or ')'", pos);
    }
  }
  skip();
  if (pos != text.size()) throw ParseError("trailing characters", pos);
  try {
    p.validate();
  } catch (const PreconditionError& e) {
    throw ParseError(e.what(), 0);
  }
  return p;
}

Partition mu_to_lambda(std::span<const long> mu) {
  const std::size_t n = mu.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (mu[j] < 0) throw PreconditionError("exponents must be nonnegative");
    if (j > 0 && mu[j] <= mu[j - 1]) throw PreconditionError("exponents must be strictly increasing");
  }
  Partition p;
  for (std::size_t j = 0; j < n; ++j) p.parts.push_back(mu[n - 1 - j] - static_cast<long>(n - 1 - j));
  return p;
}

std::vector<long> lambda_to_mu(const Partition& lambda, std::size_t n) {
  lambda.validate();
  Partition c = lambda.canonical();
  if (c.parts.size() > n) throw PreconditionError("partition has more than n parts");
  c.parts.resize(n, 0);
  std::vector<long> mu(n);
  for (std::size_t j = 0; j < n; ++j) mu[n - 1 - j] = c.parts[j] + static_cast<long>(n - 1 - j);
  return mu;
}

void GenVandermonde::validate() const {
  if (x.size() != mu.size()) throw PreconditionError("generalized Vandermonde needs |x| = |mu|");
  mu_to_lambda(mu);
  for (const Rational& v : x)
    if (v.sign() < 0) throw DomainError("generalized Vandermonde needs nonnegative x");
}

Matrix<Rational> GenVandermonde::entries() const {
  validate();
  Matrix<Rational> m(x.size(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < mu.size(); ++j) m(i, j) = x[i].pow(mu[j]);
  return m;
}

std::size_t schur_memo_bound(const Partition& lambda, std::size_t n) {
  std::size_t b = n;
  for (long v : lambda.parts) {
    std::size_t f = static_cast<std::size_t>(v) + 1;
    if (b > std::numeric_limits<std::size_t>::max() / f) return std::numeric_limits<std::size_t>::max();
    b *= f;
  }
  return b;
}

LemFloat schur_eval(const Partition& lambda, std::span<const Rational> x, Precision p,
                    SchurStats* stats) {
  RoundedArith ar(p);
  return ar.result(schur_eval_with(ar, lambda, x, stats));
}

Rational schur_eval_exact(const Partition& lambda, std::span<const Rational> x, SchurStats* stats) {
  ExactArith ar;
  return schur_eval_with(ar, lambda, x, stats);
}

namespace {

// Fills the cells of the diagram row by row; rows weakly increase, columns
// strictly increase.
struct TableauWalk {
  const std::vector<long>& shape;
  std::span<const Rational> x;
  std::vector<std::vector<std::size_t>> t;
  Rational total;

  void fill(std::size_t r, std::size_t c, const Rational& mono) {
    if (r == shape.size()) {
      total += mono;
      return;
    }
    if (c == static_cast<std::size_t>(shape[r])) {
      fill(r + 1, 0, mono);
      return;
    }
    std::size_t lo = 0;
    if (c > 0) lo = t[r][c - 1];
    if (r > 0) lo = std::max(lo, t[r - 1][c] + 1);
    for (std::size_t v = lo; v < x.size(); ++v) {
      t[r][c] = v;
      fill(r, c + 1, mono * x[v]);
    }
  }
};

}  // namespace

Rational schur_brute(const Partition& lambda, std::span<const Rational> x, long cap) {
  lambda.validate();
  Partition c = lambda.canonical();
  if (c.weight() > cap) {
    throw PreconditionError("schur_brute: |lambda| = " + std::to_string(c.weight()) +
                            " exceeds the cap " + std::to_string(cap));
  }
  TableauWalk w{c.parts, x, {}, Rational(0)};
  for (long len : c.parts) w.t.emplace_back(static_cast<std::size_t>(len));
  w.fill(0, 0, Rational(1));
  return w.total;
}

LemFloat gv_det(const GenVandermonde& g, Precision p) {
  RoundedArith ar(p);
  return ar.result(gv_det_with(ar, g));
}

Rational gv_det_exact(const GenVandermonde& g) {
  ExactArith ar;
  return gv_det_with(ar, g);
}

}  // namespace structla
