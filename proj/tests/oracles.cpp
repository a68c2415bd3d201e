#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace oracle_t {

Rational det_gauss(const Matrix<Rational>& a) {
  const std::size_t n = a.rows();
  Matrix<Rational> m = a;
  Rational det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t r = k;
    while (r < n && m(r, k).is_zero()) ++r;
    if (r == n) return Rational(0);
    if (r != k) {
      m.swap_rows(k, r);
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      Rational f = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

Matrix<Rational> inverse_gauss(const Matrix<Rational>& a) {
  const std::size_t n = a.rows();
  Matrix<Rational> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t r = k;
    while (r < n && aug(r, k).is_zero()) ++r;
    if (r == n) throw std::runtime_error("singular");
    aug.swap_rows(k, r);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      Rational f = aug(i, k) / aug(k, k);
      for (std::size_t j = 0; j < 2 * n; ++j) aug(i, j) -= f * aug(k, j);
    }
  }
  Matrix<Rational> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j) / aug(i, i);
  return inv;
}

Matrix<Rational> matmul(const Matrix<Rational>& a, const Matrix<Rational>& b) {
  Matrix<Rational> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      for (std::size_t k = 0; k < a.cols(); ++k) c(i, j) += a(i, k) * b(k, j);
  return c;
}

Rational norm1(const Matrix<Rational>& a) {
  Rational best;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    Rational s;
    for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, j).abs();
    best = std::max(best, s);
  }
  return best;
}

Rational rel_err(const Rational& computed, const Rational& exact) {
  if (exact.is_zero()) return computed.is_zero() ? Rational(0) : Rational(1000000);
  return (computed - exact).abs() / exact.abs();
}

Rational round_by_enumeration(const Rational& v, long p) {
  if (v.is_zero()) return v;
  Rational mag = v.abs();
  // Find e with 2^(p-1) <= mag / 2^e < 2^p.
  long e = 0;
  while (mag / structla::pow2(e) >= structla::pow2(p)) ++e;
  while (mag / structla::pow2(e) < structla::pow2(p - 1)) --e;
  Rational best;
  Rational best_dist(-1);
  long best_m = 0;
  const long lo = 1L << (p - 1);
  const long hi = 1L << p;
  for (long m = lo; m <= hi; ++m) {
    Rational cand = Rational(m) * structla::pow2(e);
    Rational d = (cand - mag).abs();
    bool better = best_dist.sign() < 0 || d < best_dist ||
                  (d == best_dist && (m % 2 == 0) && (best_m % 2 != 0));
    if (better) {
      best = cand;
      best_dist = d;
      best_m = m;
    }
  }
  return v.sign() < 0 ? -best : best;
}

bool has_cycle_dfs(const structla::SparsityPattern& p) {
  const std::size_t v = p.n + p.m;
  std::vector<std::vector<std::size_t>> adj(v);
  for (const auto& [i, j] : p.support) {
    adj[i].push_back(p.n + j);
    adj[p.n + j].push_back(i);
  }
  std::vector<int> state(v, 0);
  std::function<bool(std::size_t, std::size_t)> dfs = [&](std::size_t u, std::size_t parent) {
    state[u] = 1;
    for (std::size_t w : adj[u]) {
      if (w == parent) continue;
      if (state[w] == 1) return true;
      if (state[w] == 0 && dfs(w, u)) return true;
    }
    state[u] = 2;
    return false;
  };
  for (std::size_t u = 0; u < v; ++u)
    if (state[u] == 0 && dfs(u, v)) return true;
  return false;
}

std::size_t count_ssyt(const std::vector<long>& shape, std::size_t n) {
  std::vector<std::vector<std::size_t>> t;
  for (long len : shape) t.emplace_back(static_cast<std::size_t>(len), 0);
  std::size_t count = 0;
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t r, std::size_t c) {
    if (r == shape.size()) {
      ++count;
      return;
    }
    if (c == t[r].size()) {
      go(r + 1, 0);
      return;
    }
    for (std::size_t v = 1; v <= n; ++v) {
      if (c > 0 && v < t[r][c - 1]) continue;
      if (r > 0 && v <= t[r - 1][c]) continue;
      t[r][c] = v;
      go(r, c + 1);
    }
  };
  go(0, 0);
  return count;
}

}  // namespace oracle_t
