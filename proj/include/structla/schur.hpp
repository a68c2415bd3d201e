#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "structla/arith.hpp"
#include "structla/errors.hpp"
#include "structla/lem_float.hpp"
#include "structla/matrix.hpp"
#include "structla/rational.hpp"

namespace structla {

// Nonincreasing list of nonnegative parts. Trailing zeros are allowed in
// the input and stripped by canonical().
struct Partition {
  std::vector<long> parts;

  // Throws PreconditionError if negative or increasing.
  void validate() const;
  Partition canonical() const;
  long weight() const;
  std::size_t length() const { return canonical().parts.size(); }
  // "(3,1,1)"; the empty partition prints as "()".
  std::string to_string() const;
  static Partition parse(std::string_view text);
  friend bool operator==(const Partition& a, const Partition& b) {
    return a.canonical().parts == b.canonical().parts;
  }
};

// lambda_j = mu_{n+1-j} - (n-j) for strictly increasing mu >= 0.
Partition mu_to_lambda(std::span<const long> mu);
// Inverse map for a partition with at most n parts.
std::vector<long> lambda_to_mu(const Partition& lambda, std::size_t n);

// G_ij = x_i^mu_j with 0 <= mu_0 < mu_1 < ... and x_i >= 0.
struct GenVandermonde {
  std::vector<Rational> x;
  std::vector<long> mu;

  void validate() const;
  Matrix<Rational> entries() const;
};

struct SchurStats {
  std::size_t memo_entries = 0;
  // n * prod_j (lambda_j + 1)
  std::size_t memo_bound = 0;
};

// n * prod_j (lambda_j + 1), saturating.
std::size_t schur_memo_bound(const Partition& lambda, std::size_t n);

// Memo table reusable across schur_eval calls on the same x. Not
// synchronized: concurrent calls sharing one table need external locking.
template <class V>
class SchurMemo {
 public:
  using Key = std::pair<std::vector<long>, std::size_t>;

  // Clears the table when x changes.
  void bind(std::span<const Rational> x) {
    if (!std::equal(x.begin(), x.end(), x_.begin(), x_.end())) {
      x_.assign(x.begin(), x.end());
      table_.clear();
    }
  }
  std::map<Key, V>& table() { return table_; }
  std::size_t size() const { return table_.size(); }

 private:
  std::vector<Rational> x_;
  std::map<Key, V> table_;
};

namespace detail {

template <class A>
struct SchurRecursion {
  using V = typename A::value_type;
  A& ar;
  std::vector<V> xs;
  // powers[m][k] = x_m^k, k >= 1
  std::vector<std::vector<V>> powers;
  std::map<typename SchurMemo<V>::Key, V>& memo;

  const V& power(std::size_t m, long k) {
    auto& row = powers[m];
    if (row.empty()) row.push_back(xs[m]);
    while (static_cast<long>(row.size()) < k) row.push_back(ar.mul(row.back(), xs[m]));
    return row[k - 1];
  }

  // s_lambda(x_0 .. x_{m-1}); lambda canonical, nonempty, length <= m.
  V eval(const std::vector<long>& lambda, std::size_t m) {
    auto key = std::make_pair(lambda, m);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const long weight = [&] {
      long w = 0;
      for (long p : lambda) w += p;
      return w;
    }();
    // Branching rule: s_lambda(x_0..x_{m-1}) = sum over nu interlacing
    // lambda with at most m-1 parts of x_{m-1}^{|lambda|-|nu|} s_nu(x_0..x_{m-2}).
    std::optional<V> sum;
    std::vector<long> nu(lambda.size());
    auto visit = [&](auto&& self, std::size_t j, long nu_weight) -> void {
      if (j == lambda.size()) {
        std::vector<long> trimmed = nu;
        while (!trimmed.empty() && trimmed.back() == 0) trimmed.pop_back();
        if (trimmed.size() + 1 > m) return;
        std::optional<V> term;
        if (!trimmed.empty()) term = eval(trimmed, m - 1);
        const long k = weight - nu_weight;
        if (k > 0) term = term ? ar.mul(*term, power(m - 1, k)) : power(m - 1, k);
        if (!term) term = ar.one();
        sum = sum ? ar.add(*sum, *term) : *term;
        return;
      }
      const long hi = lambda[j];
      const long lo = j + 1 < lambda.size() ? lambda[j + 1] : 0;
      for (long v = hi; v >= lo; --v) {
        nu[j] = v;
        self(self, j + 1, nu_weight + v);
      }
    };
    visit(visit, 0, 0);
    memo.emplace(key, *sum);
    return *sum;
  }
};

}  // namespace detail

// Schur polynomial s_lambda(x) by the branching rule, memoized on
// (sub-partition, number of variables). Subtraction-free for x >= 0.
// Throws DomainError on a negative input.
template <class A>
typename A::value_type schur_eval_with(A& ar, const Partition& lambda,
                                       std::span<const Rational> x,
                                       SchurStats* stats = nullptr,
                                       SchurMemo<typename A::value_type>* shared = nullptr) {
  using V = typename A::value_type;
  lambda.validate();
  for (const Rational& v : x)
    if (v.sign() < 0) throw DomainError("schur_eval needs nonnegative inputs");
  const std::vector<long> parts = lambda.canonical().parts;
  std::map<typename SchurMemo<V>::Key, V> local;
  if (shared) shared->bind(x);
  auto& memo = shared ? shared->table() : local;
  if (stats) stats->memo_bound = schur_memo_bound(lambda, x.size());

  std::vector<V> xs;
  for (const Rational& v : x) xs.push_back(ar.input(v, SignDomain::nonneg));
  V result;
  if (parts.empty()) {
    result = ar.one();
  } else if (parts.size() > x.size()) {
    V one = ar.one();
    result = ar.sub(one, one);
  } else {
    detail::SchurRecursion<A> rec{ar, xs, std::vector<std::vector<V>>(x.size()), memo};
    result = rec.eval(parts, x.size());
  }
  if (stats) stats->memo_entries = memo.size();
  return result;
}

LemFloat schur_eval(const Partition& lambda, std::span<const Rational> x, Precision p,
                    SchurStats* stats = nullptr);
Rational schur_eval_exact(const Partition& lambda, std::span<const Rational> x,
                          SchurStats* stats = nullptr);

constexpr long kSchurBruteCap = 12;

// Sum over semistandard Young tableaux of shape lambda with entries in
// 1..n of the monomial x^T. Throws PreconditionError when |lambda| > cap.
Rational schur_brute(const Partition& lambda, std::span<const Rational> x,
                     long cap = kSchurBruteCap);

// det G = prod_{i<j} (x_j - x_i) * s_lambda(x), lambda = mu_to_lambda(mu).
template <class A>
typename A::value_type gv_det_with(A& ar, const GenVandermonde& g) {
  g.validate();
  using V = typename A::value_type;
  V r = schur_eval_with(ar, mu_to_lambda(g.mu), g.x);
  std::vector<V> xs;
  for (const Rational& v : g.x) xs.push_back(ar.input(v, SignDomain::nonneg));
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j) r = ar.mul(r, ar.sub(xs[j], xs[i]));
  return r;
}

LemFloat gv_det(const GenVandermonde& g, Precision p);
Rational gv_det_exact(const GenVandermonde& g);

}  // namespace structla
