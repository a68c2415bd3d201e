#pragma once

#include <cstddef>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "structla/arith.hpp"
#include "structla/errors.hpp"
#include "structla/lem_float.hpp"
#include "structla/matrix.hpp"
#include "structla/rational.hpp"

namespace structla {

using Position = std::pair<std::size_t, std::size_t>;

// Positions (row, col), 0-based, that may hold a nonzero.
struct SparsityPattern {
  std::size_t n = 0;
  std::size_t m = 0;
  std::set<Position> support;

  void validate() const;
};

struct SparseMatrix {
  SparsityPattern pattern;
  std::map<Position, Rational> values;

  // Upper bidiagonal: diagonal d (n entries), superdiagonal e (n-1 entries).
  static SparseMatrix bidiagonal(std::span<const Rational> d, std::span<const Rational> e);

  void validate() const;
  // Value at (i, j); zero off the support.
  Rational at(std::size_t i, std::size_t j) const;
  Matrix<Rational> dense() const;
};

// True iff the bipartite row/column graph of the support is a forest.
bool is_acyclic(const SparsityPattern& p);

struct MatchingStats {
  // Degree-1 elimination never got stuck on a vertex set with all degrees
  // >= 2. Always true on forests.
  bool eliminated_cleanly = true;
  std::size_t eliminations = 0;
};

// A signed single-monomial minor: sign * prod of the listed entries.
struct MonomialMinor {
  int sign = 1;
  std::vector<Position> entries;
};

// The unique perfect matching of the bipartite graph on rows x cols, or
// nullopt when none exists (the minor is structurally zero). Throws
// DomainError for a cyclic pattern.
std::optional<MonomialMinor> acyclic_minor_monomial(const SparsityPattern& p,
                                                    std::span<const std::size_t> rows,
                                                    std::span<const std::size_t> cols,
                                                    MatchingStats* stats = nullptr);

template <class A>
typename A::value_type evaluate_monomial_quotient(A& ar, const SparseMatrix& a,
                                                  const MonomialMinor& num,
                                                  const MonomialMinor* den) {
  std::multiset<Position> top(num.entries.begin(), num.entries.end());
  std::multiset<Position> bottom;
  if (den) {
    for (const Position& pos : den->entries) {
      auto it = top.find(pos);
      if (it != top.end()) {
        top.erase(it);
      } else {
        bottom.insert(pos);
      }
    }
  }
  // Start from an exact entry so that e.g. a quotient of two entries rounds once.
  typename A::value_type r = top.empty() ? ar.one() : ar.input(a.at(top.begin()->first, top.begin()->second));
  for (auto it = top.empty() ? top.end() : std::next(top.begin()); it != top.end(); ++it) {
    r = ar.mul(r, ar.input(a.at(it->first, it->second)));
  }
  for (const Position& pos : bottom) r = ar.div(r, ar.input(a.at(pos.first, pos.second)));
  const int sign = num.sign * (den ? den->sign : 1);
  if (sign < 0) r = ar.mul(r, ar.input(Rational(-1)));
  return r;
}

// det A[rows, cols] as +- a product of matched entries, exact zero when
// there is no perfect matching.
template <class A>
typename A::value_type acyclic_minor_with(A& ar, const SparseMatrix& a,
                                          std::span<const std::size_t> rows,
                                          std::span<const std::size_t> cols,
                                          MatchingStats* stats = nullptr) {
  a.validate();
  auto mono = acyclic_minor_monomial(a.pattern, rows, cols, stats);
  if (!mono) {
    auto one = ar.one();
    return ar.sub(one, one);
  }
  return evaluate_monomial_quotient(ar, a, *mono, nullptr);
}

LemFloat acyclic_minor(const SparseMatrix& a, std::span<const std::size_t> rows,
                       std::span<const std::size_t> cols, Precision p,
                       MatchingStats* stats = nullptr);
Rational acyclic_minor_exact(const SparseMatrix& a, std::span<const std::size_t> rows,
                             std::span<const std::size_t> cols);

// Unpivoted LDU, entries as quotients of monomial minors with common
// factors cancelled:
//   D_k = M(0..k; 0..k) / M(0..k-1; 0..k-1)
//   L_ik = M(0..k-1,i; 0..k) / M(0..k; 0..k)
//   U_kj = M(0..k; 0..k-1,j) / M(0..k; 0..k)
// Throws SingularError(k) when a leading minor is (structurally or
// numerically) zero.
template <class A>
LduFactors<typename A::value_type> acyclic_lu_with(A& ar, const SparseMatrix& a) {
  a.validate();
  if (a.pattern.n != a.pattern.m) throw PreconditionError("acyclic_lu needs a square matrix");
  if (!is_acyclic(a.pattern)) {
    throw DomainError("sparsity pattern has a cycle; accurate LU needs a general method");
  }
  using V = typename A::value_type;
  const std::size_t n = a.pattern.n;
  LduFactors<V> out;
  out.row_perm.resize(n);
  out.col_perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.row_perm[i] = out.col_perm[i] = i;
  out.L = Matrix<V>(n, n);
  out.U = Matrix<V>(n, n);
  V zero = [&] {
    auto one = ar.one();
    return ar.sub(one, one);
  }();

  std::optional<MonomialMinor> prev = MonomialMinor{};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::size_t> lead(k + 1);
    for (std::size_t t = 0; t <= k; ++t) lead[t] = t;
    auto cur = acyclic_minor_monomial(a.pattern, lead, lead);
    if (!cur) throw SingularError("leading minor " + std::to_string(k) + " is structurally zero", k);
    for (const Position& pos : cur->entries)
      if (a.at(pos.first, pos.second).is_zero()) {
        throw SingularError("leading minor " + std::to_string(k) + " is zero", k);
      }
    out.D.push_back(evaluate_monomial_quotient(ar, a, *cur, &*prev));
    out.L(k, k) = ar.one();
    out.U(k, k) = ar.one();
    std::vector<std::size_t> head(lead.begin(), lead.end() - 1);
    for (std::size_t i = k + 1; i < n; ++i) {
      std::vector<std::size_t> rows = head;
      rows.push_back(i);
      auto m = acyclic_minor_monomial(a.pattern, rows, lead);
      out.L(i, k) = m ? evaluate_monomial_quotient(ar, a, *m, &*cur) : zero;
      auto u = acyclic_minor_monomial(a.pattern, lead, rows);
      out.U(k, i) = u ? evaluate_monomial_quotient(ar, a, *u, &*cur) : zero;
    }
    for (std::size_t j = k + 1; j < n; ++j) {
      out.L(k, j) = zero;
      out.U(j, k) = zero;
    }
    prev = std::move(cur);
  }
  return out;
}

LduFactors<LemFloat> acyclic_lu(const SparseMatrix& a, Precision p);
LduFactors<Rational> acyclic_lu_exact(const SparseMatrix& a);

}  // namespace structla
