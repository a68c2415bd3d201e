#include "structla/cauchy.hpp"

#include <set>

namespace structla {

CauchyMatrix CauchyMatrix::hilbert(std::size_t n) {
  CauchyMatrix c;
  for (std::size_t i = 0; i < n; ++i) {
    c.x.emplace_back(static_cast<long>(i + 1));
    c.y.emplace_back(static_cast<long>(i));
  }
  return c;
}

void CauchyMatrix::validate() const {
  if (x.size() != y.size()) throw PreconditionError("Cauchy matrix needs as many x as y nodes");
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j)
      if ((x[i] + y[j]).is_zero()) {
        throw PoleError("pole: x_" + std::to_string(i) + " + y_" + std::to_string(j) + " = 0", i,
                        j);
      }
}

Matrix<Rational> CauchyMatrix::entries() const {
  validate();
  Matrix<Rational> m(size(), size());
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j) m(i, j) = entry(i, j);
  return m;
}

CauchyMatrix CauchyMatrix::sub(std::span<const std::size_t> rows,
                               std::span<const std::size_t> cols) const {
  if (rows.size() != cols.size()) throw PreconditionError("minor needs as many rows as columns");
  CauchyMatrix s;
  for (std::size_t r : rows) {
    if (r >= x.size()) throw PreconditionError("row index out of range");
    s.x.push_back(x[r]);
  }
  for (std::size_t c : cols) {
    if (c >= y.size()) throw PreconditionError("column index out of range");
    s.y.push_back(y[c]);
  }
  return s;
}

bool CauchyMatrix::has_repeated_nodes() const {
  std::set<Rational> xs(x.begin(), x.end());
  std::set<Rational> ys(y.begin(), y.end());
  return xs.size() != x.size() || ys.size() != y.size();
}

LemFloat cauchy_det(const CauchyMatrix& c, Precision p, CostCounter* cost) {
  RoundedArith ar(p, cost);
  return ar.result(cauchy_det_with(ar, c));
}

Rational cauchy_det_exact(const CauchyMatrix& c) {
  ExactArith ar;
  return cauchy_det_with(ar, c);
}

LemFloat cauchy_minor(const CauchyMatrix& c, std::span<const std::size_t> rows,
                      std::span<const std::size_t> cols, Precision p) {
  return cauchy_det(c.sub(rows, cols), p);
}

Rational cauchy_minor_exact(const CauchyMatrix& c, std::span<const std::size_t> rows,
                            std::span<const std::size_t> cols) {
  return cauchy_det_exact(c.sub(rows, cols));
}

LduFactors<LemFloat> cauchy_lu(const CauchyMatrix& c, Pivoting pivot, Precision p) {
  RoundedArith ar(p);
  LduFactors<RoundedArith::Value> f = cauchy_lu_with(ar, c, pivot);
  auto conv = [&](const RoundedArith::Value& v) { return ar.result(v); };
  LduFactors<LemFloat> out{f.row_perm, f.col_perm, f.L.map(conv), {}, f.U.map(conv)};
  for (const auto& d : f.D) out.D.push_back(ar.result(d));
  return out;
}

LduFactors<Rational> cauchy_lu_exact(const CauchyMatrix& c, Pivoting pivot) {
  ExactArith ar;
  return cauchy_lu_with(ar, c, pivot);
}

Matrix<LemFloat> cauchy_inverse(const CauchyMatrix& c, Precision p) {
  RoundedArith ar(p);
  return cauchy_inverse_with(ar, c).map([&](const RoundedArith::Value& v) { return ar.result(v); });
}

Matrix<Rational> cauchy_inverse_exact(const CauchyMatrix& c) {
  ExactArith ar;
  return cauchy_inverse_with(ar, c);
}

Rrd cauchy_rrd(const CauchyMatrix& c, Precision p) {
  LduFactors<LemFloat> f = cauchy_lu(c, Pivoting::complete, p);
  const std::size_t n = c.size();
  Rrd r;
  r.X = Matrix<LemFloat>(n, n);
  r.Y = Matrix<LemFloat>(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) r.X(f.row_perm[i], k) = f.L(i, k);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) r.Y(k, f.col_perm[j]) = f.U(k, j);
  r.D = f.D;
  auto cx = cond_certificate(f.L);
  auto cy = cond_certificate(f.U);
  if (!cx || !cy) throw SingularError("triangular factor is singular", 0);
  r.cond_x = *cx;
  r.cond_y = *cy;
  return r;
}

Pivoting parse_pivoting(const std::string& name) {
  if (name == "none") return Pivoting::none;
  if (name == "partial") return Pivoting::partial;
  if (name == "complete") return Pivoting::complete;
  throw PreconditionError("unknown pivoting '" + name + "' (none, partial, complete)");
}

std::string to_string(Pivoting p) {
  switch (p) {
    case Pivoting::none:
      return "none";
    case Pivoting::partial:
      return "partial";
    case Pivoting::complete:
      return "complete";
  }
  return "?";
}

}  // namespace structla
