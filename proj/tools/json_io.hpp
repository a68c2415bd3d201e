#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "structla/acyclic.hpp"
#include "structla/cauchy.hpp"
#include "structla/schur.hpp"
#include "structla/svd.hpp"
#include "structla/tm.hpp"

// JSON encodings shared by the command-line tool. Rationals are strings
// ("-3/7"), LemFloats are objects {"value": "f p2^ e", "decimal": ...}, and
// matrices are arrays of rows.
namespace structla::io {

using json = nlohmann::json;

Rational rational_from(const json& j);
std::vector<Rational> rationals_from(const json& j);

json to_json(const Rational& v);
json to_json(const LemFloat& v);
json to_json(const Complex& v);

template <class T>
json to_json(const std::vector<T>& v) {
  json out = json::array();
  for (const T& x : v) out.push_back(to_json(x));
  return out;
}

template <class T>
json to_json(const Matrix<T>& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

template <class T>
json to_json(const LduFactors<T>& f) {
  return {{"row_perm", f.row_perm}, {"col_perm", f.col_perm}, {"L", to_json(f.L)},
          {"D", to_json(f.D)},      {"U", to_json(f.U)}};
}

json to_json(const Rrd& r);
json to_json(const SvdResult& s);
json to_json(const AdversaryWitness& w);

// Rendering of a relative error, e.g. "3.62e-16".
std::string render_error(const Rational& e);

// Matrix inputs accepted by --matrix.
struct MatrixSpec {
  enum class Kind { cauchy, vandermonde, genvan, sparse, dense, rrd };
  Kind kind = Kind::dense;
  std::string label;
  CauchyMatrix cauchy;
  std::vector<Rational> nodes;
  GenVandermonde genvan;
  SparseMatrix sparse;
  Matrix<Rational> dense;
  Rrd rrd;

  // Exact entries. For an rrd this is X * diag(D) * Y over the rationals.
  Matrix<Rational> entries() const;
  json to_json() const;
};

std::string to_string(MatrixSpec::Kind k);

// Shorthands: hilbert(n), vandermonde(a,b,...), bidiagonal(d1,...;e1,...),
// cauchy(x1,...;y1,...). Text starting with '{' is inline JSON; anything
// else is a path to a JSON file. JSON form: {"type": "cauchy", "x": [...],
// "y": [...]}, {"type": "vandermonde", "x": [...]}, {"type": "genvan",
// "x": [...], "mu": [...]}, {"type": "sparse", "n": n, "m": m, "entries":
// [[i, j, "v"], ...]}, {"type": "bidiagonal", "d": [...], "e": [...]},
// {"type": "dense", "rows": [[...], ...]}, {"type": "rrd", "X": [[...]],
// "D": [...], "Y": [[...]]}.
MatrixSpec parse_matrix_spec(std::string_view text);
MatrixSpec matrix_spec_from_json(const json& j);

// Reads the file at `text` when it names an existing file, otherwise
// returns `text` itself.
std::string inline_or_file(std::string_view text);

}  // namespace structla::io
