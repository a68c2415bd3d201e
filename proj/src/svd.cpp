#include "structla/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "structla/errors.hpp"
#include "structla/oracle.hpp"

namespace structla {

void Rrd::validate() const {
  if (X.cols() != D.size() || Y.rows() != D.size()) {
    throw PreconditionError("Rrd: inner dimensions of X, D, Y disagree");
  }
  for (std::size_t k = 0; k < D.size(); ++k) {
    if (D[k].is_zero()) throw PreconditionError("Rrd: D has a zero entry (rank deficient)");
  }
  if (X.rows() < D.size()) throw PreconditionError("Rrd: X must have at least as many rows as columns");
}

std::optional<Rational> cond_certificate(const Matrix<LemFloat>& m) {
  if (!m.square()) throw PreconditionError("cond_certificate needs a square matrix");
  Matrix<Rational> a = m.map([](const LemFloat& v) { return v.to_rational(); });
  const std::size_t n = a.rows();
  bool upper = true;
  bool lower = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j).is_zero()) continue;
      if (i > j) upper = false;
      if (i < j) lower = false;
    }
  if (upper || lower) {
    for (std::size_t i = 0; i < n; ++i)
      if (a(i, i).is_zero()) return std::nullopt;
  }
  try {
    return oracle::norm1(a) * oracle::norm1(oracle::inverse(a));
  } catch (const SingularError&) {
    return std::nullopt;
  }
}

namespace {

// Scalar fields for the generic QR / Jacobi kernels. Every operation is a
// single rounding of the exact result to p bits.
struct RealField {
  using S = LemFloat;
  Precision p;

  S zero() const { return {}; }
  S one() const { return LemFloat(1); }
  S from_real(const LemFloat& r) const { return r; }
  LemFloat real(const S& a) const { return a; }
  bool is_zero(const S& a) const { return a.is_zero(); }
  S neg(const S& a) const { return -a; }
  S conj(const S& a) const { return a; }
  S add(const S& a, const S& b) const { return structla::add(a, b, p); }
  S sub(const S& a, const S& b) const { return structla::sub(a, b, p); }
  S mul(const S& a, const S& b) const { return structla::mul(a, b, p); }
  S div(const S& a, const S& b) const { return structla::div(a, b, p); }
  S mul_real(const S& a, const LemFloat& r) const { return structla::mul(a, r, p); }
  S div_real(const S& a, const LemFloat& r) const { return structla::div(a, r, p); }
  // a*c + sign*b*s with one rounding
  S lincomb(const S& a, const LemFloat& c, const S& b, const LemFloat& s, int sign) const {
    LemFloat t[2] = {mul_exact(a, c), mul_exact(b, s)};
    if (sign < 0) t[1] = -t[1];
    return sparse_sum(t, p);
  }
  LemFloat abs2(const S& a) const { return mul_exact(a, a); }
  LemFloat abs(const S& a) const { return a.abs(); }
  S phase(const S& a) const { return LemFloat(a.sign() < 0 ? -1 : 1); }
  LemFloat norm2(std::span<const S> v) const {
    std::vector<LemFloat> t;
    t.reserve(v.size());
    for (const S& s : v) t.push_back(mul_exact(s, s));
    return t.empty() ? LemFloat() : sparse_sum(t, p);
  }
  S dotc(std::span<const S> a, std::span<const S> b) const { return structla::dot(a, b, p); }
  S dotu(std::span<const S> a, std::span<const S> b) const { return structla::dot(a, b, p); }
};

struct ComplexField {
  using S = Complex;
  Precision p;

  S zero() const { return {}; }
  S one() const { return {LemFloat(1), LemFloat()}; }
  S from_real(const LemFloat& r) const { return {r, LemFloat()}; }
  LemFloat real(const S& a) const { return a.re; }
  bool is_zero(const S& a) const { return a.re.is_zero() && a.im.is_zero(); }
  S neg(const S& a) const { return {-a.re, -a.im}; }
  S conj(const S& a) const { return {a.re, -a.im}; }
  S add(const S& a, const S& b) const {
    return {structla::add(a.re, b.re, p), structla::add(a.im, b.im, p)};
  }
  S sub(const S& a, const S& b) const {
    return {structla::sub(a.re, b.re, p), structla::sub(a.im, b.im, p)};
  }
  // sum of two exact products, one rounding
  LemFloat fma2(const LemFloat& a, const LemFloat& b, const LemFloat& c, const LemFloat& d,
                int sign) const {
    LemFloat t[2] = {mul_exact(a, b), mul_exact(c, d)};
    if (sign < 0) t[1] = -t[1];
    return sparse_sum(t, p);
  }
  S mul(const S& a, const S& b) const {
    return {fma2(a.re, b.re, a.im, b.im, -1), fma2(a.re, b.im, a.im, b.re, 1)};
  }
  S div(const S& a, const S& b) const {
    if (is_zero(b)) throw DivisionByZero();
    LemFloat den[2] = {mul_exact(b.re, b.re), mul_exact(b.im, b.im)};
    LemFloat d = exact_sum(den);
    LemFloat re[2] = {mul_exact(a.re, b.re), mul_exact(a.im, b.im)};
    LemFloat im[2] = {mul_exact(a.im, b.re), -mul_exact(a.re, b.im)};
    return {structla::div(exact_sum(re), d, p), structla::div(exact_sum(im), d, p)};
  }
  S mul_real(const S& a, const LemFloat& r) const {
    return {structla::mul(a.re, r, p), structla::mul(a.im, r, p)};
  }
  S div_real(const S& a, const LemFloat& r) const {
    return {structla::div(a.re, r, p), structla::div(a.im, r, p)};
  }
  S lincomb(const S& a, const LemFloat& c, const S& b, const LemFloat& s, int sign) const {
    return {fma2(a.re, c, b.re, s, sign), fma2(a.im, c, b.im, s, sign)};
  }
  LemFloat abs2(const S& a) const {
    LemFloat t[2] = {mul_exact(a.re, a.re), mul_exact(a.im, a.im)};
    return exact_sum(t);
  }
  LemFloat abs(const S& a) const { return structla::sqrt(abs2(a), p); }
  S phase(const S& a) const {
    if (is_zero(a)) return one();
    return div_real(a, abs(a));
  }
  LemFloat norm2(std::span<const S> v) const {
    std::vector<LemFloat> t;
    t.reserve(2 * v.size());
    for (const S& s : v) {
      t.push_back(mul_exact(s.re, s.re));
      t.push_back(mul_exact(s.im, s.im));
    }
    return t.empty() ? LemFloat() : sparse_sum(t, p);
  }
  S dot_impl(std::span<const S> a, std::span<const S> b, bool conjugate) const {
    std::vector<LemFloat> re;
    std::vector<LemFloat> im;
    const int s = conjugate ? -1 : 1;
    for (std::size_t k = 0; k < a.size(); ++k) {
      // (ar + s*i*ai)(br + i*bi)
      re.push_back(mul_exact(a[k].re, b[k].re));
      LemFloat t = mul_exact(a[k].im, b[k].im);
      re.push_back(s < 0 ? t : -t);
      im.push_back(mul_exact(a[k].re, b[k].im));
      LemFloat u = mul_exact(a[k].im, b[k].re);
      im.push_back(s < 0 ? -u : u);
    }
    if (re.empty()) return zero();
    return {sparse_sum(re, p), sparse_sum(im, p)};
  }
  S dotc(std::span<const S> a, std::span<const S> b) const { return dot_impl(a, b, true); }
  S dotu(std::span<const S> a, std::span<const S> b) const { return dot_impl(a, b, false); }
};

template <class S>
std::vector<S> column(const Matrix<S>& m, std::size_t j, std::size_t from = 0) {
  std::vector<S> c;
  c.reserve(m.rows() - from);
  for (std::size_t i = from; i < m.rows(); ++i) c.push_back(m(i, j));
  return c;
}

template <class S>
std::vector<S> row(const Matrix<S>& m, std::size_t i) {
  std::vector<S> r;
  r.reserve(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
  return r;
}

template <class F>
Matrix<typename F::S> identity(const F& f, std::size_t rows, std::size_t cols) {
  Matrix<typename F::S> m(rows, cols, f.zero());
  for (std::size_t i = 0; i < std::min(rows, cols); ++i) m(i, i) = f.one();
  return m;
}

template <class F>
Matrix<typename F::S> multiply(const F& f, const Matrix<typename F::S>& a,
                               const Matrix<typename F::S>& b) {
  Matrix<typename F::S> c(a.rows(), b.cols(), f.zero());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ai = row(a, i);
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = f.dotu(ai, column(b, j));
  }
  return c;
}

template <class F>
Matrix<typename F::S> adjoint(const F& f, const Matrix<typename F::S>& a) {
  Matrix<typename F::S> t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = f.conj(a(i, j));
  return t;
}

template <class S>
struct QrResult {
  Matrix<S> Q;
  Matrix<S> R;
  std::vector<std::size_t> perm;
};

// Householder QR with column pivoting: G(:, perm) = Q * R, Q thin.
template <class F>
QrResult<typename F::S> qr_column_pivoting(const F& f, Matrix<typename F::S> r) {
  using S = typename F::S;
  const std::size_t m = r.rows();
  const std::size_t n = r.cols();
  if (m < n) throw PreconditionError("QR needs at least as many rows as columns");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<S>> reflectors(n);
  std::vector<LemFloat> reflector_norm2(n);

  auto reflect = [&](const std::vector<S>& v, const LemFloat& vn2, Matrix<S>& a,
                     std::size_t k, std::size_t j) {
    std::vector<S> col = column(a, j, k);
    S w = f.dotc(v, col);
    if (f.is_zero(w)) return;
    S coef = f.div_real(f.mul_real(w, LemFloat(2)), vn2);
    for (std::size_t i = 0; i < col.size(); ++i) a(k + i, j) = f.sub(col[i], f.mul(v[i], coef));
  };

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = k;
    LemFloat best_norm = f.norm2(column(r, k, k));
    for (std::size_t j = k + 1; j < n; ++j) {
      LemFloat nj = f.norm2(column(r, j, k));
      if (compare(nj, best_norm) > 0) {
        best = j;
        best_norm = nj;
      }
    }
    r.swap_cols(k, best);
    std::swap(perm[k], perm[best]);
    if (best_norm.is_zero()) continue;

    std::vector<S> v = column(r, k, k);
    LemFloat nx = structla::sqrt(best_norm, f.p);
    S alpha = f.neg(f.mul_real(f.phase(v[0]), nx));
    v[0] = f.sub(v[0], alpha);  // x0 + phase(x0)*|x|, no cancellation
    LemFloat vn2 = f.norm2(v);
    for (std::size_t j = k + 1; j < n; ++j) reflect(v, vn2, r, k, j);
    r(k, k) = alpha;
    for (std::size_t i = k + 1; i < m; ++i) r(i, k) = f.zero();
    reflectors[k] = std::move(v);
    reflector_norm2[k] = vn2;
  }

  Matrix<S> q = identity(f, m, n);
  for (std::size_t k = n; k-- > 0;) {
    if (reflectors[k].empty()) continue;
    for (std::size_t j = 0; j < n; ++j) reflect(reflectors[k], reflector_norm2[k], q, k, j);
  }
  Matrix<S> rr(n, n, f.zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) rr(i, j) = r(i, j);
  return {std::move(q), std::move(rr), std::move(perm)};
}

template <class S>
struct JacobiOut {
  Matrix<S> U;
  std::vector<LemFloat> sigma;
  Matrix<S> V;
  int sweeps = 0;
};

// One-sided Jacobi on the columns of m. Returns U (normalized columns of
// m*V), sigma, V; unsorted.
template <class F>
JacobiOut<typename F::S> jacobi(const F& f, Matrix<typename F::S> m, const Rational& tol,
                                int max_sweeps) {
  using S = typename F::S;
  const std::size_t n = m.cols();
  Matrix<S> v = identity(f, n, n);
  const Precision wide(2 * f.p.bits() + 8);
  const LemFloat tol2 = round_nearest(tol * tol, wide);
  const LemFloat one(1);
  const LemFloat two(2);

  int sweeps = 0;
  bool converged = n < 2;
  double residual = 0.0;
  while (!converged) {
    if (sweeps >= max_sweeps) {
      throw ConvergenceError("one-sided Jacobi did not converge in " +
                                 std::to_string(max_sweeps) + " sweeps (residual " +
                                 std::to_string(residual) + ")",
                             residual);
    }
    ++sweeps;
    bool rotated = false;
    residual = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        std::vector<S> cp = column(m, p);
        std::vector<S> cq = column(m, q);
        LemFloat alpha = f.norm2(cp);
        LemFloat beta = f.norm2(cq);
        if (alpha.is_zero() || beta.is_zero()) continue;
        S gamma = f.dotc(cp, cq);
        if (f.is_zero(gamma)) continue;
        LemFloat g2 = round_nearest(f.abs2(gamma), wide);
        LemFloat bound = structla::mul(tol2, mul_exact(alpha, beta), wide);
        if (compare(g2, bound) <= 0) continue;
        rotated = true;
        residual = std::max(residual,
                            std::sqrt(structla::div(g2, mul_exact(alpha, beta), Precision(53)).to_double()));

        LemFloat g = f.abs(gamma);
        S conj_phase = f.conj(f.phase(gamma));
        LemFloat zeta = structla::div(structla::sub(beta, alpha, f.p), structla::mul(g, two, f.p), f.p);
        LemFloat root = structla::sqrt(structla::add(one, structla::mul(zeta, zeta, f.p), f.p), f.p);
        LemFloat t = structla::div(LemFloat(zeta.sign() < 0 ? -1 : 1),
                                   structla::add(zeta.abs(), root, f.p), f.p);
        LemFloat c = structla::div(one, structla::sqrt(structla::add(one, structla::mul(t, t, f.p), f.p), f.p), f.p);
        LemFloat s = structla::mul(c, t, f.p);

        auto rotate = [&](Matrix<S>& a) {
          for (std::size_t k = 0; k < a.rows(); ++k) {
            S x = a(k, p);
            S y = f.mul(a(k, q), conj_phase);
            a(k, p) = f.lincomb(x, c, y, s, -1);
            a(k, q) = f.lincomb(x, s, y, c, 1);
          }
        };
        rotate(m);
        rotate(v);
      }
    }
    converged = !rotated;
  }

  JacobiOut<S> out;
  out.sweeps = sweeps;
  out.U = m;
  out.V = std::move(v);
  out.sigma.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    LemFloat nrm = structla::sqrt(f.norm2(column(m, j)), f.p);
    out.sigma[j] = nrm;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      out.U(i, j) = nrm.is_zero() ? f.zero() : f.div_real(m(i, j), nrm);
    }
  }
  return out;
}

// Sorts sigma nonincreasing and rotates each (u_j, v_j) pair by a unit
// scalar so that the first nonzero component of u_j is real and positive.
template <class F>
void finalize(const F& f, JacobiOut<typename F::S>& r) {
  using S = typename F::S;
  const std::size_t n = r.sigma.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return compare(r.sigma[a], r.sigma[b]) > 0;
  });
  JacobiOut<S> s;
  s.sweeps = r.sweeps;
  s.U = Matrix<S>(r.U.rows(), n, f.zero());
  s.V = Matrix<S>(r.V.rows(), n, f.zero());
  s.sigma.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t src = order[j];
    s.sigma[j] = r.sigma[src];
    S unit = f.one();
    for (std::size_t i = 0; i < r.U.rows(); ++i) {
      if (!f.is_zero(r.U(i, src))) {
        unit = f.conj(f.phase(r.U(i, src)));
        break;
      }
    }
    for (std::size_t i = 0; i < r.U.rows(); ++i) s.U(i, j) = f.mul(r.U(i, src), unit);
    for (std::size_t i = 0; i < r.V.rows(); ++i) s.V(i, j) = f.mul(r.V(i, src), unit);
  }
  r = std::move(s);
}

// SVD of X * diag(D) * Y: returns U, sigma, V with A = U Sigma V^H.
template <class F>
JacobiOut<typename F::S> rrd_pipeline(const F& f, const Matrix<typename F::S>& x,
                                      const std::vector<typename F::S>& d,
                                      const Matrix<typename F::S>& y, const Rational& tol,
                                      int max_sweeps) {
  using S = typename F::S;
  const std::size_t r = d.size();
  Matrix<S> g(x.rows(), r);
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t k = 0; k < r; ++k) g(i, k) = f.mul(x(i, k), d[k]);
  QrResult<S> qr = qr_column_pivoting(f, std::move(g));

  Matrix<S> pty(r, y.cols());
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t j = 0; j < y.cols(); ++j) pty(k, j) = y(qr.perm[k], j);
  Matrix<S> w = multiply(f, qr.R, pty);

  JacobiOut<S> jac = jacobi(f, adjoint(f, w), tol, max_sweeps);
  // W^H = Ut Sigma Vj^H  =>  A = Q W = (Q Vj) Sigma Ut^H
  JacobiOut<S> out;
  out.sweeps = jac.sweeps;
  out.sigma = std::move(jac.sigma);
  out.U = multiply(f, qr.Q, jac.V);
  out.V = std::move(jac.U);
  finalize(f, out);
  return out;
}

}  // namespace

SvdResult one_sided_jacobi(const Matrix<LemFloat>& w, Precision p, const Rational& tol,
                           int max_sweeps) {
  RealField f{p};
  JacobiOut<LemFloat> r = jacobi(f, w, tol, max_sweeps);
  finalize(f, r);
  return {std::move(r.U), std::move(r.sigma), std::move(r.V), r.sweeps};
}

SvdResult svd_from_rrd(const Rrd& a, Precision p, const Rational& tol, int max_sweeps) {
  a.validate();
  RealField f{p};
  JacobiOut<LemFloat> r = rrd_pipeline(f, a.X, a.D, a.Y, tol, max_sweeps);
  return {std::move(r.U), std::move(r.sigma), std::move(r.V), r.sweeps};
}

Matrix<LemFloat> rrd_product(const Rrd& a, Precision p) {
  a.validate();
  Matrix<LemFloat> out(a.X.rows(), a.Y.cols());
  for (std::size_t i = 0; i < a.X.rows(); ++i)
    for (std::size_t j = 0; j < a.Y.cols(); ++j) {
      std::vector<LemFloat> terms;
      for (std::size_t k = 0; k < a.D.size(); ++k) {
        terms.push_back(mul_exact(mul_exact(a.X(i, k), a.D[k]), a.Y(k, j)));
      }
      out(i, j) = sparse_sum(terms, p);
    }
  return out;
}

namespace {

// Fixed-point arctan(1/k) scaled by 2^bits.
Integer atan_inverse(unsigned long k, unsigned long bits) {
  Integer one;
  mpz_ui_pow_ui(one.get_mpz_t(), 2, bits);
  Integer k2 = Integer(k) * k;
  Integer power = one / k;  // 1/k^(2n+1)
  Integer sum = power;
  for (unsigned long n = 1; power != 0; ++n) {
    power /= k2;
    Integer term = power / (2 * n + 1);
    if (n % 2) {
      sum -= term;
    } else {
      sum += term;
    }
  }
  return sum;
}

// pi * 2^bits, truncated, with a few guard bits of error.
Integer pi_fixed(unsigned long bits) {
  const unsigned long guard = 16;
  Integer v = 16 * atan_inverse(5, bits + guard) - 4 * atan_inverse(239, bits + guard);
  mpz_fdiv_q_2exp(v.get_mpz_t(), v.get_mpz_t(), guard);
  return v;
}

}  // namespace

LemFloat pi(Precision p) {
  const unsigned long bits = static_cast<unsigned long>(p.bits()) + 32;
  return round_scaled_ratio(pi_fixed(bits), Integer(1), Integer(-static_cast<long>(bits)), p);
}

std::pair<LemFloat, LemFloat> cos_sin_turn(const Rational& t, Precision p) {
  // Reduce to t in [0, 1), then to a quadrant q and a residue r in [0, 1/4).
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), t.num().get_mpz_t(), t.den().get_mpz_t());
  Rational frac = t - Rational(fl);
  Rational four = frac * 4;
  Integer quadrant;
  mpz_fdiv_q(quadrant.get_mpz_t(), four.num().get_mpz_t(), four.den().get_mpz_t());
  Rational r = frac - Rational(quadrant, Integer(4));

  const unsigned long bits = static_cast<unsigned long>(p.bits()) + 48;
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, bits);
  // theta = 2*pi*r in fixed point
  Integer theta = pi_fixed(bits) * 2 * r.num() / r.den();

  Integer theta2 = theta * theta;
  mpz_fdiv_q_2exp(theta2.get_mpz_t(), theta2.get_mpz_t(), bits);
  Integer s = theta;
  Integer c = scale;
  Integer term_s = theta;
  Integer term_c = scale;
  for (unsigned long n = 1; term_s != 0 || term_c != 0; ++n) {
    term_s = -(term_s * theta2);
    mpz_fdiv_q_2exp(term_s.get_mpz_t(), term_s.get_mpz_t(), bits);
    term_s /= (2 * n) * (2 * n + 1);
    term_c = -(term_c * theta2);
    mpz_fdiv_q_2exp(term_c.get_mpz_t(), term_c.get_mpz_t(), bits);
    term_c /= (2 * n - 1) * (2 * n);
    s += term_s;
    c += term_c;
  }
  Integer cos_v;
  Integer sin_v;
  switch (quadrant.get_si()) {
    case 0:
      cos_v = c;
      sin_v = s;
      break;
    case 1:
      cos_v = -s;
      sin_v = c;
      break;
    case 2:
      cos_v = -c;
      sin_v = -s;
      break;
    default:
      cos_v = s;
      sin_v = -c;
      break;
  }
  const Integer e(-static_cast<long>(bits));
  return {round_scaled_ratio(cos_v, Integer(1), e, p),
          round_scaled_ratio(sin_v, Integer(1), e, p)};
}

namespace {

// Complete-pivoting LDU of the Cauchy-like matrix
//   a_ij = r_i * c_j / (u_i + w_j)
// with real exact u and complex w, via the multiplicative Schur update.
struct ComplexLdu {
  std::vector<std::size_t> row_perm;
  std::vector<std::size_t> col_perm;
  Matrix<Complex> L;
  std::vector<Complex> D;
  Matrix<Complex> U;
};

ComplexLdu cauchy_like_gecp(const ComplexField& f, std::vector<Rational> u,
                            std::vector<Complex> w, const std::vector<Complex>& rs,
                            const std::vector<Complex>& cs) {
  const std::size_t n = u.size();
  auto node_sum = [&](const Rational& ui, const Complex& wj) {
    return Complex{round_nearest(ui + wj.re.to_rational(), f.p), wj.im};
  };
  Matrix<Complex> a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex den = node_sum(u[i], w[j]);
      if (f.is_zero(den)) throw PoleError("pole in Cauchy-like matrix", i, j);
      a(i, j) = f.div(f.mul(rs[i], cs[j]), den);
    }

  ComplexLdu out;
  out.row_perm.resize(n);
  out.col_perm.resize(n);
  std::iota(out.row_perm.begin(), out.row_perm.end(), 0);
  std::iota(out.col_perm.begin(), out.col_perm.end(), 0);
  out.L = identity(f, n, n);
  out.U = identity(f, n, n);
  out.D.resize(n);

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = k;
    std::size_t pc = k;
    LemFloat best = f.abs2(a(k, k));
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < n; ++j) {
        LemFloat m = f.abs2(a(i, j));
        if (compare(m, best) > 0) {
          best = m;
          pr = i;
          pc = j;
        }
      }
    if (best.is_zero()) throw SingularError("Cauchy-like matrix is singular", k);
    a.swap_rows(k, pr);
    std::swap(u[k], u[pr]);
    std::swap(out.row_perm[k], out.row_perm[pr]);
    for (std::size_t l = 0; l < k; ++l) std::swap(out.L(k, l), out.L(pr, l));
    a.swap_cols(k, pc);
    std::swap(w[k], w[pc]);
    std::swap(out.col_perm[k], out.col_perm[pc]);
    for (std::size_t l = 0; l < k; ++l) std::swap(out.U(l, k), out.U(l, pc));

    const Complex pivot = a(k, k);
    out.D[k] = pivot;
    for (std::size_t i = k + 1; i < n; ++i) out.L(i, k) = f.div(a(i, k), pivot);
    for (std::size_t j = k + 1; j < n; ++j) out.U(k, j) = f.div(a(k, j), pivot);

    // a_ij *= (u_i - u_k)(w_j - w_k) / ((u_i + w_k)(u_k + w_j))
    std::vector<Complex> row_factor(n);
    std::vector<Complex> col_factor(n);
    for (std::size_t i = k + 1; i < n; ++i) {
      Complex diff = f.from_real(round_nearest(u[i] - u[k], f.p));
      row_factor[i] = f.div(diff, node_sum(u[i], w[k]));
    }
    for (std::size_t j = k + 1; j < n; ++j) {
      Complex diff = f.sub(w[j], w[k]);
      col_factor[j] = f.div(diff, node_sum(u[k], w[j]));
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = f.mul(f.mul(a(i, j), row_factor[i]), col_factor[j]);
  }
  return out;
}

}  // namespace

SvdResult vandermonde_svd(std::span<const Rational> x, Precision p, const Rational& tol,
                          int max_sweeps) {
  const std::size_t n = x.size();
  if (n == 0) throw PreconditionError("vandermonde_svd needs at least one node");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (x[i] == x[j]) throw SingularError("Vandermonde nodes must be distinct", j);

  ComplexField f{p};
  const long nn = static_cast<long>(n);
  // zeta_j = exp(2 pi i (4j+1)/(4n)); zeta_j^n = i, never a real number.
  auto zeta_power = [&](std::size_t j, std::size_t k) {
    auto [c, s] = cos_sin_turn(Rational(Integer(static_cast<long>((4 * j + 1) * k)),
                                        Integer(4 * nn)),
                               p);
    return Complex{c, s};
  };

  // (V F)_ij = sum_k (x_i zeta_j)^k = (1 - i x_i^n) conj(zeta_j) / (conj(zeta_j) - x_i)
  std::vector<Rational> u(n);
  std::vector<Complex> w(n);
  std::vector<Complex> rs(n);
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = -x[i];
    rs[i] = Complex{LemFloat(1), round_nearest(-x[i].pow(nn), p)};
  }
  for (std::size_t j = 0; j < n; ++j) w[j] = f.conj(zeta_power(j, 1));

  ComplexLdu ldu = cauchy_like_gecp(f, u, w, rs, w);

  Matrix<Complex> xm(n, n, f.zero());
  Matrix<Complex> ym(n, n, f.zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) xm(ldu.row_perm[i], k) = ldu.L(i, k);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) ym(k, ldu.col_perm[j]) = ldu.U(k, j);

  JacobiOut<Complex> a = rrd_pipeline(f, xm, ldu.D, ym, tol, max_sweeps);

  // V = U_A (Sigma / sqrt(n)) (Fhat V_A)^H with Fhat_kj = zeta_j^k / sqrt(n).
  const LemFloat root_n = structla::sqrt(LemFloat(nn), p);
  Matrix<Complex> fhat(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) fhat(k, j) = f.div_real(zeta_power(j, k), root_n);
  Matrix<Complex> right = multiply(f, fhat, a.V);

  SvdResult out;
  out.sweeps = a.sweeps;
  out.sigma.resize(n);
  out.U = Matrix<LemFloat>(n, n);
  out.V = Matrix<LemFloat>(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.sigma[j] = structla::div(a.sigma[j], root_n, p);
    // For a real matrix with simple singular values each pair is real up
    // to one unit scalar; take it from the largest left component.
    std::size_t big = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (compare(f.abs2(a.U(i, j)), f.abs2(a.U(big, j))) > 0) big = i;
    Complex unit = f.conj(f.phase(a.U(big, j)));
    for (std::size_t i = 0; i < n; ++i) {
      out.U(i, j) = f.mul(a.U(i, j), unit).re;
      out.V(i, j) = f.mul(right(i, j), unit).re;
    }
    int flip = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (!out.U(i, j).is_zero()) {
        flip = out.U(i, j).sign();
        break;
      }
    }
    if (flip < 0) {
      for (std::size_t i = 0; i < n; ++i) {
        out.U(i, j) = -out.U(i, j);
        out.V(i, j) = -out.V(i, j);
      }
    }
  }
  return out;
}

}  // namespace structla
