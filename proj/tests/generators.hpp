#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "structla/acyclic.hpp"
#include "structla/schur.hpp"
#include "test_util.hpp"

namespace testutil {

// Random forest on n rows and m columns: candidate edges are accepted when
// they join two different trees (tracked by a plain label array).
inline structla::SparseMatrix random_acyclic(std::mt19937_64& rng, std::size_t n, std::size_t m,
                                             bool zeros) {
  structla::SparseMatrix a;
  a.pattern.n = n;
  a.pattern.m = m;
  std::vector<std::size_t> label(n + m);
  std::iota(label.begin(), label.end(), 0);
  const std::size_t tries = rng() % (2 * (n + m) + 1);
  for (std::size_t t = 0; t < tries; ++t) {
    std::size_t i = rng() % n;
    std::size_t j = rng() % m;
    std::size_t li = label[i];
    std::size_t lj = label[n + j];
    if (li == lj) continue;
    for (auto& l : label)
      if (l == lj) l = li;
    a.pattern.support.insert({i, j});
    Rational v = random_rational(rng, 12);
    if (zeros && rng() % 6 == 0) v = Rational(0);
    a.values[{i, j}] = v;
  }
  return a;
}

inline std::vector<std::size_t> random_subset(std::mt19937_64& rng, std::size_t universe,
                                              std::size_t k) {
  std::vector<std::size_t> all(universe);
  std::iota(all.begin(), all.end(), 0);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(k);
  std::sort(all.begin(), all.end());
  return all;
}

// All partitions of weight <= w with at most `len` parts.
inline std::vector<structla::Partition> partitions_up_to(long w, std::size_t len) {
  std::vector<structla::Partition> out;
  std::vector<long> cur;
  auto rec = [&](auto&& self, long remaining, long max_part) -> void {
    out.push_back(structla::Partition{cur});
    if (cur.size() == len) return;
    for (long v = std::min(remaining, max_part); v >= 1; --v) {
      cur.push_back(v);
      self(self, remaining - v, v);
      cur.pop_back();
    }
  };
  rec(rec, w, w);
  return out;
}

}  // namespace testutil
