// Raw extension module. Rationals cross the boundary as strings ("-3/7");
// the structla package turns them into fractions.Fraction.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <tuple>
#include <vector>

#include "structla/acyclic.hpp"
#include "structla/cauchy.hpp"
#include "structla/errors.hpp"
#include "structla/expr.hpp"
#include "structla/schur.hpp"
#include "structla/svd.hpp"
#include "structla/tm.hpp"

namespace py = pybind11;
using namespace structla;

namespace {

using Strings = std::vector<std::string>;
using StringMatrix = std::vector<Strings>;
using Entries = std::vector<std::tuple<std::size_t, std::size_t, std::string>>;

std::vector<Rational> rationals(const Strings& v) {
  std::vector<Rational> out;
  out.reserve(v.size());
  for (const std::string& s : v) out.push_back(Rational::parse(s));
  return out;
}

std::string str(const Rational& v) { return v.to_string(); }
std::string str(const LemFloat& v) { return v.to_rational().to_string(); }

template <class T>
Strings strs(const std::vector<T>& v) {
  Strings out;
  for (const T& x : v) out.push_back(str(x));
  return out;
}

template <class T>
StringMatrix strs(const Matrix<T>& m) {
  StringMatrix out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i].push_back(str(m(i, j)));
  return out;
}

template <class T>
py::dict ldu(const LduFactors<T>& f) {
  py::dict d;
  d["row_perm"] = f.row_perm;
  d["col_perm"] = f.col_perm;
  d["L"] = strs(f.L);
  d["D"] = strs(f.D);
  d["U"] = strs(f.U);
  return d;
}

py::dict svd(const SvdResult& s) {
  py::dict d;
  d["sigma"] = strs(s.sigma);
  d["U"] = strs(s.U);
  d["V"] = strs(s.V);
  d["sweeps"] = s.sweeps;
  return d;
}

CauchyMatrix cauchy(const Strings& x, const Strings& y) {
  CauchyMatrix c{rationals(x), rationals(y)};
  c.validate();
  return c;
}

SparseMatrix sparse(std::size_t n, std::size_t m, const Entries& entries) {
  SparseMatrix a;
  a.pattern.n = n;
  a.pattern.m = m;
  for (const auto& [i, j, v] : entries) {
    a.pattern.support.insert({i, j});
    a.values[{i, j}] = Rational::parse(v);
  }
  a.validate();
  return a;
}

Rational tolerance(const std::string& tol, long prec) {
  return tol.empty() ? pow2(6 - prec) : Rational::parse(tol);
}

}  // namespace

PYBIND11_MODULE(_structla, m) {
  m.doc() = "Accurate structured linear algebra over exact rationals and p-bit floats.";

  auto error = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  auto domain = py::register_exception<DomainError>(m, "DomainError", error.ptr());
  py::register_exception<PoleError>(m, "PoleError", domain.ptr());
  py::register_exception<SingularError>(m, "SingularError", domain.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", domain.ptr());
  py::register_exception<DivisionByZero>(m, "DivisionByZero", domain.ptr());
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", error.ptr());

  m.def("round_nearest", [](const std::string& v, long prec) {
    return str(round_nearest(Rational::parse(v), Precision(prec)));
  });

  m.def("cauchy_det", [](const Strings& x, const Strings& y, long prec) {
    return str(cauchy_det(cauchy(x, y), Precision(prec)));
  });
  m.def("cauchy_det_exact", [](const Strings& x, const Strings& y) {
    return str(cauchy_det_exact(cauchy(x, y)));
  });
  m.def("cauchy_lu", [](const Strings& x, const Strings& y, const std::string& pivot, long prec) {
    return ldu(cauchy_lu(cauchy(x, y), parse_pivoting(pivot), Precision(prec)));
  });
  m.def("cauchy_inverse", [](const Strings& x, const Strings& y, long prec) {
    return strs(cauchy_inverse(cauchy(x, y), Precision(prec)));
  });
  m.def("cauchy_svd", [](const Strings& x, const Strings& y, long prec, const std::string& tol) {
    Precision p(prec);
    return svd(svd_from_rrd(cauchy_rrd(cauchy(x, y), p), p, tolerance(tol, prec)));
  });
  m.def("vandermonde_svd", [](const Strings& x, long prec, const std::string& tol) {
    return svd(vandermonde_svd(rationals(x), Precision(prec), tolerance(tol, prec)));
  });

  m.def("schur", [](const std::string& lambda, const Strings& x, long prec) {
    SchurStats stats;
    std::vector<Rational> xs = rationals(x);
    std::string v = str(schur_eval(Partition::parse(lambda), xs, Precision(prec), &stats));
    return std::make_tuple(v, stats.memo_entries, stats.memo_bound);
  });
  m.def("schur_exact", [](const std::string& lambda, const Strings& x) {
    std::vector<Rational> xs = rationals(x);
    return str(schur_eval_exact(Partition::parse(lambda), xs));
  });
  m.def("gv_det", [](const Strings& x, const std::vector<long>& mu, long prec) {
    GenVandermonde g{rationals(x), mu};
    g.validate();
    return str(gv_det(g, Precision(prec)));
  });
  m.def("gv_det_exact", [](const Strings& x, const std::vector<long>& mu) {
    GenVandermonde g{rationals(x), mu};
    g.validate();
    return str(gv_det_exact(g));
  });

  m.def("is_acyclic", [](std::size_t n, std::size_t mcols,
                         const std::vector<std::pair<std::size_t, std::size_t>>& support) {
    SparsityPattern p{n, mcols, {support.begin(), support.end()}};
    p.validate();
    return is_acyclic(p);
  });
  m.def("acyclic_minor", [](std::size_t n, std::size_t mcols, const Entries& entries,
                            const std::vector<std::size_t>& rows,
                            const std::vector<std::size_t>& cols, long prec) {
    return str(acyclic_minor(sparse(n, mcols, entries), rows, cols, Precision(prec)));
  });
  m.def("acyclic_minor_exact", [](std::size_t n, std::size_t mcols, const Entries& entries,
                                  const std::vector<std::size_t>& rows,
                                  const std::vector<std::size_t>& cols) {
    return str(acyclic_minor_exact(sparse(n, mcols, entries), rows, cols));
  });
  m.def("acyclic_lu", [](std::size_t n, std::size_t mcols, const Entries& entries, long prec) {
    return ldu(acyclic_lu(sparse(n, mcols, entries), Precision(prec)));
  });

  m.def("eval_expr", [](const std::string& expr, const Strings& x, long prec) {
    Precision p(prec);
    std::vector<LemFloat> xs;
    for (const Rational& v : rationals(x)) xs.push_back(round_nearest(v, p));
    CostCounter cost;
    std::string v = str(eval_factored(FactoredExpr::parse(expr), xs, p, &cost));
    return std::make_tuple(v, cost.bit_ops);
  });
  m.def("eval_expr_exact", [](const std::string& expr, const Strings& x) {
    return str(eval_exact(FactoredExpr::parse(expr), rationals(x)));
  });

  m.def("eval_program", [](const std::string& prog, const Strings& x) {
    return str(eval_exact(SlProgram::parse(prog), rationals(x)));
  });
  m.def("admissible_bound", [](const std::string& prog, const std::string& eps) {
    return str(admissible_error_bound(SlProgram::parse(prog), Rational::parse(eps)));
  });
  m.def("adversary", [](const std::string& prog, const std::string& eps, std::size_t budget,
                        std::uint64_t seed) {
    AdversaryWitness w = adversary_search(SlProgram::parse(prog), Rational::parse(eps), budget, seed);
    py::dict d;
    d["x"] = strs(w.x);
    d["deltas"] = strs(w.deltas.deltas);
    d["rel_error"] = str(w.rel_error);
    d["evaluations"] = w.evaluations;
    return d;
  });
}
