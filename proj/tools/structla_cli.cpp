// structla: accurate structured linear algebra from the command line.
//
// Exit codes: 0 success, 1 domain error (pole, singular, zero division,
// no convergence), 2 usage error. Errors are reported as JSON on stdout.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json_io.hpp"
#include "structla/acyclic.hpp"
#include "structla/cauchy.hpp"
#include "structla/conventional.hpp"
#include "structla/errors.hpp"
#include "structla/expr.hpp"
#include "structla/oracle.hpp"
#include "structla/schur.hpp"
#include "structla/svd.hpp"
#include "structla/tm.hpp"

using namespace structla;
using io::json;
using io::MatrixSpec;

namespace {

constexpr long kConventionalBits = 53;
constexpr const char* kReportSchema = "structla-report/1";
constexpr const char* kResultSchema = "structla-result/1";

struct Options {
  long prec = 53;
  std::string tol;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out;
  std::string matrix;
  std::vector<std::string> matrices;
  std::string expr;
  std::string prog;
  std::vector<std::string> x;
  std::string lambda;
  std::string pivot = "complete";
  std::string eps = "1/4";
  std::size_t budget = 10000;
  bool hardware = false;
};

Precision working(const Options& o) {
  if (o.prec < 2) throw PreconditionError("--prec must be at least 2");
  return Precision(o.prec);
}

// "2^-50" or any rational / decimal literal.
Rational parse_tolerance(const std::string& text, Precision p) {
  if (text.empty()) return pow2(6 - p.bits());
  if (text.rfind("2^", 0) == 0) return pow2(to_long(Rational::parse(text.substr(2)).num()));
  Rational t = Rational::parse(text);
  if (t.sign() <= 0) throw PreconditionError("--tol must be positive");
  return t;
}

long oracle_bits() {
  const char* env = std::getenv("STRUCTLA_ORACLE_PREC");
  if (!env || !*env) return 512;
  long bits = to_long(Rational::parse(env).num());
  if (bits < 64) throw PreconditionError("STRUCTLA_ORACLE_PREC must be at least 64");
  return bits;
}

std::vector<Rational> parse_values(const std::vector<std::string>& items) {
  std::vector<Rational> out;
  for (const std::string& s : items) out.push_back(Rational::parse(s));
  return out;
}

// Relative error rendered after an exact computation. A nonzero result for
// an exact zero is reported as "inf".
std::string rel_error(const Rational& computed, const Rational& exact) {
  if (exact.is_zero()) return computed.is_zero() ? io::render_error(Rational(0)) : "inf";
  return io::render_error((computed - exact).abs() / exact.abs());
}

// Largest entrywise relative error; nullopt when an exact zero is missed.
std::optional<Rational> max_rel_error(const Matrix<LemFloat>& got, const Matrix<Rational>& exact) {
  Rational worst;
  for (std::size_t i = 0; i < got.rows(); ++i)
    for (std::size_t j = 0; j < got.cols(); ++j) {
      const Rational& e = exact(i, j);
      const Rational g = got(i, j).to_rational();
      if (e.is_zero()) {
        if (!g.is_zero()) return std::nullopt;
        continue;
      }
      worst = std::max(worst, (g - e).abs() / e.abs());
    }
  return worst;
}

std::optional<Rational> max_rel_error(const std::vector<LemFloat>& got, const std::vector<Rational>& exact) {
  Matrix<LemFloat> g(1, got.size());
  Matrix<Rational> e(1, exact.size());
  for (std::size_t k = 0; k < got.size(); ++k) {
    g(0, k) = got[k];
    e(0, k) = exact[k];
  }
  return max_rel_error(g, e);
}

std::string render(const std::optional<Rational>& e) { return e ? io::render_error(*e) : "inf"; }

std::optional<Rational> worst(std::optional<Rational> a, std::optional<Rational> b) {
  if (!a || !b) return std::nullopt;
  return std::max(*a, *b);
}

template <class T>
std::optional<Rational> ldu_error(const LduFactors<LemFloat>& got, const LduFactors<T>& exact) {
  return worst(worst(max_rel_error(got.L, exact.L), max_rel_error(got.U, exact.U)),
               max_rel_error(got.D, exact.D));
}

Matrix<Rational> permuted(const Matrix<Rational>& a, const std::vector<std::size_t>& rows,
                          const std::vector<std::size_t>& cols) {
  Matrix<Rational> out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = a(rows[i], cols[j]);
  return out;
}

std::vector<long> range_mu(std::size_t n) {
  std::vector<long> mu(n);
  std::iota(mu.begin(), mu.end(), 0L);
  return mu;
}

void require_square(const Matrix<Rational>& a) {
  if (!a.square()) throw PreconditionError("the matrix must be square");
}

// ---------------------------------------------------------------- det

LemFloat accurate_det(const MatrixSpec& m, Precision p) {
  switch (m.kind) {
    case MatrixSpec::Kind::cauchy: return cauchy_det(m.cauchy, p);
    case MatrixSpec::Kind::vandermonde:
      return gv_det(GenVandermonde{m.nodes, range_mu(m.nodes.size())}, p);
    case MatrixSpec::Kind::genvan: return gv_det(m.genvan, p);
    case MatrixSpec::Kind::sparse: {
      if (m.sparse.pattern.n != m.sparse.pattern.m) throw PreconditionError("the matrix must be square");
      std::vector<std::size_t> all(m.sparse.pattern.n);
      std::iota(all.begin(), all.end(), 0);
      return acyclic_minor(m.sparse, all, all, p);
    }
    default:
      throw PreconditionError("no accurate determinant for " + io::to_string(m.kind) + " matrices");
  }
}

json cmd_det(const Options& o) {
  const Precision p = working(o);
  MatrixSpec m = io::parse_matrix_spec(o.matrix);
  Matrix<Rational> a = m.entries();
  require_square(a);
  LemFloat acc = accurate_det(m, p);
  const Rational exact = oracle::det(a);
  LemFloat conv = conventional::ge_det(a, Precision(kConventionalBits));
  json out = {{"command", "det"},
              {"matrix", m.label},
              {"n", a.rows()},
              {"accurate", {{"precision", p.bits()}, {"det", io::to_json(acc)},
                            {"rel_error", rel_error(acc.to_rational(), exact)}}},
              {"conventional", {{"precision", kConventionalBits}, {"det", io::to_json(conv)},
                                {"rel_error", rel_error(conv.to_rational(), exact)}}},
              {"oracle", {{"det", io::to_json(exact)}, {"decimal", to_scientific(exact, 17)}}}};
  if (o.hardware) {
    double d = conventional::ge_det_double(a);
    std::ostringstream text;
    text.precision(17);
    text << d;
    json hw = {{"det", text.str()}};
    if (std::isfinite(d)) {
      hw["rel_error"] = rel_error(Rational(mpq_class(d)), exact);
    } else {
      hw["error"] = "overflow in hardware double precision";
    }
    out["hardware_double"] = hw;
  }
  return out;
}

// ---------------------------------------------------------------- lu

json cmd_lu(const Options& o) {
  const Precision p = working(o);
  MatrixSpec m = io::parse_matrix_spec(o.matrix);
  Matrix<Rational> a = m.entries();
  require_square(a);
  LduFactors<LemFloat> acc;
  LduFactors<Rational> exact;
  std::string method;
  if (m.kind == MatrixSpec::Kind::cauchy) {
    Pivoting piv = parse_pivoting(o.pivot);
    acc = cauchy_lu(m.cauchy, piv, p);
    exact = cauchy_lu_exact(m.cauchy, piv);
    method = "cauchy/" + to_string(piv);
  } else if (m.kind == MatrixSpec::Kind::sparse) {
    acc = acyclic_lu(m.sparse, p);
    exact = acyclic_lu_exact(m.sparse);
    method = "acyclic";
  } else {
    throw PreconditionError("lu supports cauchy and acyclic sparse matrices");
  }
  json conv;
  try {
    LduFactors<LemFloat> c =
        conventional::ge_lu(permuted(a, exact.row_perm, exact.col_perm), Precision(kConventionalBits));
    conv = {{"precision", kConventionalBits}, {"max_rel_error", render(ldu_error(c, exact))}};
  } catch (const SingularError& e) {
    conv = {{"precision", kConventionalBits}, {"error", e.what()}};
  }
  return {{"command", "lu"},
          {"matrix", m.label},
          {"method", method},
          {"accurate", {{"precision", p.bits()}, {"factors", io::to_json(acc)},
                        {"max_rel_error", render(ldu_error(acc, exact))}}},
          {"conventional", conv},
          {"oracle", {{"factors", io::to_json(exact)}}}};
}

// ---------------------------------------------------------------- inv

json cmd_inv(const Options& o) {
  const Precision p = working(o);
  MatrixSpec m = io::parse_matrix_spec(o.matrix);
  if (m.kind != MatrixSpec::Kind::cauchy) throw PreconditionError("inv supports cauchy matrices");
  Matrix<Rational> a = m.entries();
  Matrix<LemFloat> acc = cauchy_inverse(m.cauchy, p);
  Matrix<Rational> exact = oracle::inverse(a);
  Matrix<LemFloat> conv = conventional::ge_inverse(a, Precision(kConventionalBits));
  return {{"command", "inv"},
          {"matrix", m.label},
          {"accurate", {{"precision", p.bits()}, {"inverse", io::to_json(acc)},
                        {"max_rel_error", render(max_rel_error(acc, exact))}}},
          {"conventional", {{"precision", kConventionalBits},
                            {"max_rel_error", render(max_rel_error(conv, exact))}}},
          {"oracle", {{"inverse", io::to_json(exact)}}}};
}

// ---------------------------------------------------------------- svd

SvdResult accurate_svd(const MatrixSpec& m, Precision p, const Rational& tol) {
  switch (m.kind) {
    case MatrixSpec::Kind::cauchy: return svd_from_rrd(cauchy_rrd(m.cauchy, p), p, tol);
    case MatrixSpec::Kind::vandermonde: return vandermonde_svd(m.nodes, p, tol);
    case MatrixSpec::Kind::rrd: return svd_from_rrd(m.rrd, p, tol);
    default:
      throw PreconditionError("no accurate SVD for " + io::to_string(m.kind) + " matrices");
  }
}

// Unstructured Jacobi at the oracle precision on the exact entries.
std::vector<LemFloat> oracle_sigma(const Matrix<Rational>& a) {
  const long bits = oracle_bits();
  return conventional::jacobi_svd(a, Precision(bits), pow2(10 - bits)).sigma;
}

std::vector<std::string> per_sigma_errors(const std::vector<LemFloat>& got, const std::vector<LemFloat>& ref) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < got.size(); ++i) out.push_back(rel_error(got[i].to_rational(), ref[i].to_rational()));
  return out;
}

json cmd_svd(const Options& o) {
  const Precision p = working(o);
  MatrixSpec m = io::parse_matrix_spec(o.matrix);
  const Rational tol = parse_tolerance(o.tol, p);
  SvdResult acc = accurate_svd(m, p, tol);
  Matrix<Rational> a = m.entries();
  const Precision cp(kConventionalBits);
  SvdResult conv = conventional::jacobi_svd(a, cp, parse_tolerance("", cp));
  std::vector<LemFloat> ref = oracle_sigma(a);
  return {{"command", "svd"},
          {"matrix", m.label},
          {"accurate", {{"precision", p.bits()}, {"tolerance", io::to_json(tol)}, {"svd", io::to_json(acc)},
                        {"rel_error", per_sigma_errors(acc.sigma, ref)}}},
          {"conventional", {{"precision", kConventionalBits}, {"sigma", io::to_json(conv.sigma)},
                            {"rel_error", per_sigma_errors(conv.sigma, ref)}}},
          {"oracle", {{"precision", oracle_bits()}, {"sigma", io::to_json(ref)}}}};
}

// ---------------------------------------------------------------- schur

json cmd_schur(const Options& o) {
  const Precision p = working(o);
  Partition lambda = Partition::parse(o.lambda);
  std::vector<Rational> x = parse_values(o.x);
  SchurStats stats;
  LemFloat acc = schur_eval(lambda, x, p, &stats);
  Rational exact = schur_eval_exact(lambda, x);
  return {{"command", "schur"},
          {"lambda", lambda.canonical().to_string()},
          {"x", io::to_json(x)},
          {"accurate", {{"precision", p.bits()}, {"value", io::to_json(acc)},
                        {"rel_error", rel_error(acc.to_rational(), exact)}}},
          {"oracle", {{"value", io::to_json(exact)}}},
          {"memo", {{"entries", stats.memo_entries}, {"bound", stats.memo_bound}}}};
}

// ---------------------------------------------------------------- eval

json program_summary(const SlProgram& prog) {
  std::vector<SignDomain> any(prog.num_inputs(), SignDomain::any);
  std::vector<Admissibility> cls = classify_admissible(prog, any);
  json steps = json::array();
  bool all = true;
  for (Admissibility a : cls) {
    all = all && a == Admissibility::admissible;
    steps.push_back(a == Admissibility::admissible     ? "admissible"
                    : a == Admissibility::inadmissible ? "inadmissible"
                                                       : "unknown");
  }
  return {{"text", prog.to_text()}, {"steps", steps}, {"all_admissible", all}};
}

json cmd_eval(const Options& o) {
  const Precision p = working(o);
  std::vector<Rational> x = parse_values(o.x);
  if (!o.prog.empty()) {
    SlProgram prog = SlProgram::parse(io::inline_or_file(o.prog));
    if (x.size() != prog.num_inputs()) throw PreconditionError("--x must give one value per program input");
    return {{"command", "eval"}, {"program", program_summary(prog)}, {"x", io::to_json(x)},
            {"exact", io::to_json(eval_exact(prog, x))}};
  }
  if (o.expr.empty()) throw PreconditionError("eval needs --expr or --prog");
  FactoredExpr r = FactoredExpr::parse(io::inline_or_file(o.expr));
  // Non-dyadic inputs are rounded to the working precision first; the
  // exact value refers to the inputs actually used.
  std::vector<LemFloat> xl;
  std::vector<Rational> used;
  bool rounded = false;
  for (const Rational& v : x) {
    LemFloat l = round_nearest(v, p);
    rounded = rounded || l.to_rational() != v;
    xl.push_back(l);
    used.push_back(l.to_rational());
  }
  CostCounter cost;
  LemFloat value = eval_factored(r, xl, p, &cost);
  Rational exact = eval_exact(r, used);
  ConditionAReport report = check_condition_A(r);
  json verdicts = json::array();
  for (FactorVerdict v : report.verdicts) verdicts.push_back(to_string(v));
  json out = {{"command", "eval"},
              {"expr", r.to_string()},
              {"x", io::to_json(used)},
              {"inputs_rounded", rounded},
              {"value", io::to_json(value)},
              {"exact", io::to_json(exact)},
              {"rel_error", rel_error(value.to_rational(), exact)},
              {"precision", p.bits()},
              {"size_bits", expr_size(r)},
              {"bit_ops", cost.bit_ops},
              {"condition_A", {{"satisfied", report.satisfied()}, {"verdicts", verdicts}}}};
  if (report.satisfied()) {
    try {
      out["kappa_rel_bound"] = io::render_error(kappa_rel_bound(r, used));
    } catch (const DomainError&) {
      out["kappa_rel_bound"] = "inf";
    }
  }
  return out;
}

// ---------------------------------------------------------------- adversary

json cmd_adversary(const Options& o) {
  if (o.prog.empty()) throw PreconditionError("adversary needs --prog");
  SlProgram prog = SlProgram::parse(io::inline_or_file(o.prog));
  Rational eps = Rational::parse(o.eps);
  AdversaryWitness w = adversary_search(prog, eps, o.budget, o.seed);
  json out = {{"command", "adversary"},
              {"program", program_summary(prog)},
              {"epsilon", io::to_json(eps)},
              {"budget", o.budget},
              {"seed", o.seed},
              {"witness", io::to_json(w)}};
  if (out["program"]["all_admissible"].get<bool>()) {
    out["admissible_bound"] = io::to_json(admissible_error_bound(prog, eps));
  }
  return out;
}

// ---------------------------------------------------------------- report

struct Row {
  std::string label;
  std::string quantity;
  std::string provenance;
  std::string value;
  std::string error;
};

void add_triplet(std::vector<Row>& rows, const std::string& label, const std::string& quantity,
                 const LemFloat& acc, const LemFloat& conv, const Rational& exact) {
  rows.push_back({label, quantity, "accurate", to_scientific(acc.to_rational(), 17),
                  rel_error(acc.to_rational(), exact)});
  rows.push_back({label, quantity, "conventional", to_scientific(conv.to_rational(), 17),
                  rel_error(conv.to_rational(), exact)});
  rows.push_back({label, quantity, "oracle", to_scientific(exact, 17), io::render_error(Rational(0))});
}

std::vector<Row> report_rows(const MatrixSpec& m, Precision p, const Rational& tol) {
  std::vector<Row> rows;
  Matrix<Rational> a = m.entries();
  const Precision cp(kConventionalBits);
  if (a.square() && m.kind != MatrixSpec::Kind::rrd && m.kind != MatrixSpec::Kind::dense) {
    add_triplet(rows, m.label, "det", accurate_det(m, p), conventional::ge_det(a, cp), oracle::det(a));
  }
  if (m.kind == MatrixSpec::Kind::cauchy || m.kind == MatrixSpec::Kind::vandermonde ||
      m.kind == MatrixSpec::Kind::rrd) {
    SvdResult acc = accurate_svd(m, p, tol);
    SvdResult conv = conventional::jacobi_svd(a, cp, parse_tolerance("", cp));
    std::vector<LemFloat> ref = oracle_sigma(a);
    const std::size_t last = ref.size() - 1;
    add_triplet(rows, m.label, "sigma_max", acc.sigma[0], conv.sigma[0], ref[0].to_rational());
    add_triplet(rows, m.label, "sigma_min", acc.sigma[last], conv.sigma[last], ref[last].to_rational());
  }
  return rows;
}

json cmd_report(const Options& o) {
  const Precision p = working(o);
  const Rational tol = parse_tolerance(o.tol, p);
  std::vector<std::string> specs = o.matrices;
  if (specs.empty()) specs = {"hilbert(4)", "hilbert(8)", "hilbert(12)", "vandermonde(1,2,3)",
                              "bidiagonal(3,5/4,-7/8,9;11/2,13,-1/16)"};
  json rows = json::array();
  for (const std::string& s : specs) {
    for (const Row& r : report_rows(io::parse_matrix_spec(s), p, tol)) {
      rows.push_back({{"case", r.label}, {"quantity", r.quantity}, {"provenance", r.provenance},
                      {"value", r.value}, {"rel_error", r.error}});
    }
  }
  return {{"command", "report"}, {"schema", kReportSchema}, {"precision", p.bits()}, {"rows", rows}};
}

// ---------------------------------------------------------------- output

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

std::string render_output(const json& result, const std::string& format) {
  std::ostringstream out;
  const bool is_report = result.contains("schema") && result["schema"] == kReportSchema;
  if (format == "json") {
    out << result.dump(2) << "\n";
  } else if (format == "csv") {
    if (is_report) {
      out << "# " << kReportSchema << "\n";
      out << "case,quantity,provenance,value,rel_error\n";
      for (const json& r : result["rows"]) {
        out << csv_field(r["case"]) << "," << r["quantity"].get<std::string>() << ","
            << r["provenance"].get<std::string>() << "," << r["value"].get<std::string>() << ","
            << r["rel_error"].get<std::string>() << "\n";
      }
    } else {
      out << "# " << kResultSchema << "\n";
      out << "path,value\n";
      const json flat = result.flatten();
      for (const auto& [path, v] : flat.items()) out << csv_field(path) << "," << csv_field(scalar_text(v)) << "\n";
    }
  } else if (format == "text") {
    if (is_report) {
      char line[256];
      std::snprintf(line, sizeof line, "%-40s %-10s %-13s %-26s %s\n", "case", "quantity", "provenance",
                    "value", "rel_error");
      out << line;
      for (const json& r : result["rows"]) {
        std::snprintf(line, sizeof line, "%-40s %-10s %-13s %-26s %s\n",
                      r["case"].get<std::string>().c_str(), r["quantity"].get<std::string>().c_str(),
                      r["provenance"].get<std::string>().c_str(), r["value"].get<std::string>().c_str(),
                      r["rel_error"].get<std::string>().c_str());
        out << line;
      }
    } else {
      const json flat = result.flatten();
      for (const auto& [path, v] : flat.items()) out << path << " = " << scalar_text(v) << "\n";
    }
  } else {
    throw PreconditionError("--format must be json, csv or text");
  }
  return out.str();
}

json error_json(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

int report_error(const json& err, int code) {
  std::cout << err.dump(2) << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Accurate floating point linear algebra for structured matrices"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--prec", o.prec, "Working precision in bits")->capture_default_str();
    sub->add_option("--tol", o.tol, "Jacobi tolerance, e.g. 2^-50 (default 2^(6-prec))");
    sub->add_option("--seed", o.seed, "Random seed")->capture_default_str();
    sub->add_option("--format", o.format, "json, csv or text")->capture_default_str();
    sub->add_option("--out", o.out, "Write the result to this file instead of stdout");
  };
  auto matrix = [&](CLI::App* sub) {
    sub->add_option("--matrix", o.matrix,
                    "hilbert(n), vandermonde(a,b,..), cauchy(x..;y..), bidiagonal(d..;e..), inline JSON or a file")
        ->required();
  };

  CLI::App* eval = app.add_subcommand("eval", "Evaluate a factored expression or a straight-line program");
  common(eval);
  eval->add_option("--expr", o.expr, "Factored expression or a file containing one");
  eval->add_option("--prog", o.prog, "Straight-line program text or file");
  eval->add_option("--x", o.x, "Input values")->allow_extra_args()->delimiter(',');

  CLI::App* det = app.add_subcommand("det", "Accurate determinant with conventional and exact comparison");
  common(det);
  matrix(det);
  det->add_flag("--hardware", o.hardware, "Also run elimination in hardware double precision");

  CLI::App* lu = app.add_subcommand("lu", "Accurate LDU factorization");
  common(lu);
  matrix(lu);
  lu->add_option("--pivot", o.pivot, "none, partial or complete (Cauchy only)")->capture_default_str();

  CLI::App* inv = app.add_subcommand("inv", "Accurate inverse of a Cauchy matrix");
  common(inv);
  matrix(inv);

  CLI::App* svd = app.add_subcommand("svd", "Accurate singular value decomposition");
  common(svd);
  matrix(svd);

  CLI::App* schur = app.add_subcommand("schur", "Schur function evaluation");
  common(schur);
  schur->add_option("--lambda", o.lambda, "Partition, e.g. (3,1)")->required();
  schur->add_option("--x", o.x, "Nonnegative inputs")->required()->allow_extra_args()->delimiter(',');

  CLI::App* adversary = app.add_subcommand("adversary", "Search for worst-case rounding errors");
  common(adversary);
  adversary->add_option("--prog", o.prog, "Straight-line program text or file")->required();
  adversary->add_option("--eps", o.eps, "Per-step relative error bound")->capture_default_str();
  adversary->add_option("--budget", o.budget, "Number of evaluations")->capture_default_str();

  CLI::App* report = app.add_subcommand("report", "Accuracy table: accurate vs conventional vs exact");
  common(report);
  report->add_option("--matrix", o.matrices, "Matrices to include (default: a fixed suite)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error(error_json("usage", e.what()), 2);
  }

  try {
    json result;
    if (*eval) result = cmd_eval(o);
    else if (*det) result = cmd_det(o);
    else if (*lu) result = cmd_lu(o);
    else if (*inv) result = cmd_inv(o);
    else if (*svd) result = cmd_svd(o);
    else if (*schur) result = cmd_schur(o);
    else if (*adversary) result = cmd_adversary(o);
    else result = cmd_report(o);
    std::string text = render_output(result, o.format);
    if (o.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream file(o.out);
      if (!file) return report_error(error_json("usage", "cannot write " + o.out), 2);
      file << text;
    }
    return 0;
  } catch (const PoleError& e) {
    json err = error_json("pole", e.what());
    err["error"]["row"] = e.row();
    err["error"]["col"] = e.col();
    return report_error(err, 1);
  } catch (const SingularError& e) {
    json err = error_json("singular", e.what());
    err["error"]["step"] = e.step();
    return report_error(err, 1);
  } catch (const ConvergenceError& e) {
    json err = error_json("convergence", e.what());
    err["error"]["residual"] = e.residual();
    return report_error(err, 1);
  } catch (const DivisionByZero& e) {
    return report_error(error_json("division_by_zero", e.what()), 1);
  } catch (const DomainError& e) {
    return report_error(error_json("domain", e.what()), 1);
  } catch (const ParseError& e) {
    json err = error_json("parse", e.what());
    err["error"]["position"] = e.position();
    return report_error(err, 2);
  } catch (const PreconditionError& e) {
    return report_error(error_json("usage", e.what()), 2);
  } catch (const json::exception& e) {
    return report_error(error_json("usage", e.what()), 2);
  } catch (const std::exception& e) {
    return report_error(error_json("internal", e.what()), 2);
  }
}
