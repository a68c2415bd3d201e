#include "structla/acyclic.hpp"

#include <numeric>
#include <string>

#include "structla/oracle.hpp"

namespace structla {

void SparsityPattern::validate() const {
  for (const Position& pos : support)
    if (pos.first >= n || pos.second >= m) {
      throw PreconditionError("support position (" + std::to_string(pos.first) + "," +
                              std::to_string(pos.second) + ") outside " + std::to_string(n) +
                              "x" + std::to_string(m));
    }
}

SparseMatrix SparseMatrix::bidiagonal(std::span<const Rational> d, std::span<const Rational> e) {
  if (d.empty() ? !e.empty() : e.size() + 1 != d.size()) {
    throw PreconditionError("bidiagonal needs n diagonal and n-1 superdiagonal entries");
  }
  SparseMatrix a;
  a.pattern.n = a.pattern.m = d.size();
  for (std::size_t i = 0; i < d.size(); ++i) {
    a.pattern.support.insert({i, i});
    a.values[{i, i}] = d[i];
  }
  for (std::size_t i = 0; i < e.size(); ++i) {
    a.pattern.support.insert({i, i + 1});
    a.values[{i, i + 1}] = e[i];
  }
  return a;
}

void SparseMatrix::validate() const {
  pattern.validate();
  for (const auto& [pos, v] : values)
    if (!pattern.support.count(pos)) throw PreconditionError("value outside the support");
}

Rational SparseMatrix::at(std::size_t i, std::size_t j) const {
  auto it = values.find({i, j});
  return it == values.end() ? Rational(0) : it->second;
}

Matrix<Rational> SparseMatrix::dense() const {
  Matrix<Rational> d(pattern.n, pattern.m);
  for (const auto& [pos, v] : values) d(pos.first, pos.second) = v;
  return d;
}

bool is_acyclic(const SparsityPattern& p) {
  p.validate();
  // Union-find over rows 0..n-1 and columns n..n+m-1.
  std::vector<std::size_t> parent(p.n + p.m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (const Position& pos : p.support) {
    std::size_t a = find(pos.first);
    std::size_t b = find(p.n + pos.second);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

std::optional<MonomialMinor> acyclic_minor_monomial(const SparsityPattern& p,
                                                    std::span<const std::size_t> rows,
                                                    std::span<const std::size_t> cols,
                                                    MatchingStats* stats) {
  if (rows.size() != cols.size()) throw PreconditionError("minor needs as many rows as columns");
  for (std::size_t r : rows)
    if (r >= p.n) throw PreconditionError("row index out of range");
  for (std::size_t c : cols)
    if (c >= p.m) throw PreconditionError("column index out of range");
  if (!is_acyclic(p)) {
    throw DomainError("sparsity pattern has a cycle; its minors need a general method");
  }
  const std::size_t k = rows.size();
  // Vertices 0..k-1 are row slots, k..2k-1 column slots.
  std::vector<std::vector<std::size_t>> adj(2 * k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      if (p.support.count({rows[a], cols[b]})) {
        adj[a].push_back(k + b);
        adj[k + b].push_back(a);
      }
  std::vector<bool> alive(2 * k, true);
  std::vector<std::size_t> degree(2 * k);
  for (std::size_t v = 0; v < 2 * k; ++v) degree[v] = adj[v].size();
  std::vector<std::size_t> match(k, 0);
  std::size_t remaining = 2 * k;
  MatchingStats local;

  while (remaining > 0) {
    std::size_t pick = 2 * k;
    for (std::size_t v = 0; v < 2 * k; ++v) {
      if (!alive[v]) continue;
      if (degree[v] == 0) {
        if (stats) *stats = local;
        return std::nullopt;
      }
      if (degree[v] == 1 && pick == 2 * k) pick = v;
    }
    if (pick == 2 * k) {
      // All live degrees >= 2: impossible in a forest.
      local.eliminated_cleanly = false;
      if (stats) *stats = local;
      throw DomainError("degree-1 elimination stalled; the pattern is not a forest");
    }
    std::size_t mate = 2 * k;
    for (std::size_t w : adj[pick])
      if (alive[w]) mate = w;
    std::size_t r = pick < k ? pick : mate;
    std::size_t c = pick < k ? mate : pick;
    match[r] = c - k;
    for (std::size_t v : {pick, mate}) {
      alive[v] = false;
      for (std::size_t w : adj[v])
        if (alive[w]) --degree[w];
    }
    remaining -= 2;
    ++local.eliminations;
  }
  if (stats) *stats = local;
  MonomialMinor m;
  m.sign = oracle::permutation_sign(match);
  for (std::size_t a = 0; a < k; ++a) m.entries.push_back({rows[a], cols[match[a]]});
  return m;
}

LemFloat acyclic_minor(const SparseMatrix& a, std::span<const std::size_t> rows,
                       std::span<const std::size_t> cols, Precision p, MatchingStats* stats) {
  RoundedArith ar(p);
  return ar.result(acyclic_minor_with(ar, a, rows, cols, stats));
}

Rational acyclic_minor_exact(const SparseMatrix& a, std::span<const std::size_t> rows,
                             std::span<const std::size_t> cols) {
  ExactArith ar;
  return acyclic_minor_with(ar, a, rows, cols);
}

LduFactors<LemFloat> acyclic_lu(const SparseMatrix& a, Precision p) {
  RoundedArith ar(p);
  LduFactors<RoundedArith::Value> f = acyclic_lu_with(ar, a);
  auto conv = [&](const RoundedArith::Value& v) { return ar.result(v); };
  LduFactors<LemFloat> out{f.row_perm, f.col_perm, f.L.map(conv), {}, f.U.map(conv)};
  for (const auto& d : f.D) out.D.push_back(ar.result(d));
  return out;
}

LduFactors<Rational> acyclic_lu_exact(const SparseMatrix& a) {
  ExactArith ar;
  return acyclic_lu_with(ar, a);
}

}  // namespace structla
