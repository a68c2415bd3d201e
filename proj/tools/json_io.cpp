#include "json_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "structla/errors.hpp"

namespace structla::io {

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t at = s.find(sep, start);
    std::string piece(s.substr(start, at == std::string_view::npos ? at : at - start));
    std::size_t a = piece.find_first_not_of(" \t");
    std::size_t b = piece.find_last_not_of(" \t");
    out.push_back(a == std::string::npos ? std::string() : piece.substr(a, b - a + 1));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return out;
}

std::vector<Rational> parse_list(std::string_view s) {
  std::vector<Rational> out;
  if (s.find_first_not_of(" \t") == std::string_view::npos) return out;
  for (const std::string& item : split(s, ',')) out.push_back(Rational::parse(item));
  return out;
}

// Exact LemFloat of a dyadic rational.
LemFloat dyadic(const Rational& v) {
  Integer den = v.den();
  if ((den & (den - 1)) != 0) {
    throw PreconditionError("rrd entries must be dyadic rationals, got " + v.to_string());
  }
  return LemFloat(v.num(), Integer(-static_cast<long>(bit_length(den) - 1)));
}

Matrix<LemFloat> dyadic_matrix(const json& rows) {
  if (!rows.is_array() || rows.empty()) throw PreconditionError("expected a nonempty array of rows");
  const std::size_t n = rows.size();
  const std::size_t m = rows[0].size();
  Matrix<LemFloat> out(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != m) throw PreconditionError("ragged matrix rows");
    for (std::size_t j = 0; j < m; ++j) out(i, j) = dyadic(rational_from(rows[i][j]));
  }
  return out;
}

Matrix<Rational> rational_matrix(const json& rows) {
  if (!rows.is_array() || rows.empty()) throw PreconditionError("expected a nonempty array of rows");
  const std::size_t n = rows.size();
  const std::size_t m = rows[0].size();
  Matrix<Rational> out(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != m) throw PreconditionError("ragged matrix rows");
    for (std::size_t j = 0; j < m; ++j) out(i, j) = rational_from(rows[i][j]);
  }
  return out;
}

Rrd make_rrd(Matrix<LemFloat> x, std::vector<LemFloat> d, Matrix<LemFloat> y) {
  Rrd r{std::move(x), std::move(d), std::move(y), Rational(), Rational()};
  r.validate();
  auto cx = cond_certificate(r.X);
  auto cy = cond_certificate(r.Y);
  if (!cx || !cy) throw PreconditionError("rrd factors X and Y must be nonsingular");
  r.cond_x = *cx;
  r.cond_y = *cy;
  return r;
}

}  // namespace

Rational rational_from(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw PreconditionError("numbers must be integers or strings, got " + j.dump());
}

std::vector<Rational> rationals_from(const json& j) {
  if (!j.is_array()) throw PreconditionError("expected an array, got " + j.dump());
  std::vector<Rational> out;
  for (const json& v : j) out.push_back(rational_from(v));
  return out;
}

json to_json(const Rational& v) { return v.to_string(); }

json to_json(const LemFloat& v) {
  return {{"value", v.to_string()}, {"decimal", to_scientific(v.to_rational(), 17)}};
}

json to_json(const Complex& v) { return {{"re", to_json(v.re)}, {"im", to_json(v.im)}}; }

json to_json(const Rrd& r) {
  return {{"X", to_json(r.X)},
          {"D", to_json(r.D)},
          {"Y", to_json(r.Y)},
          {"cond_x", to_json(r.cond_x)},
          {"cond_y", to_json(r.cond_y)}};
}

json to_json(const SvdResult& s) {
  return {{"sigma", to_json(s.sigma)}, {"U", to_json(s.U)}, {"V", to_json(s.V)}, {"sweeps", s.sweeps}};
}

json to_json(const AdversaryWitness& w) {
  return {{"x", to_json(w.x)},
          {"deltas", to_json(w.deltas.deltas)},
          {"epsilon", to_json(w.deltas.epsilon)},
          {"rel_error", to_json(w.rel_error)},
          {"rel_error_decimal", render_error(w.rel_error)},
          {"evaluations", w.evaluations}};
}

std::string render_error(const Rational& e) { return to_scientific(e, 3); }

std::string to_string(MatrixSpec::Kind k) {
  switch (k) {
    case MatrixSpec::Kind::cauchy: return "cauchy";
    case MatrixSpec::Kind::vandermonde: return "vandermonde";
    case MatrixSpec::Kind::genvan: return "genvan";
    case MatrixSpec::Kind::sparse: return "sparse";
    case MatrixSpec::Kind::dense: return "dense";
    case MatrixSpec::Kind::rrd: return "rrd";
  }
  return "unknown";
}

Matrix<Rational> MatrixSpec::entries() const {
  switch (kind) {
    case Kind::cauchy: return cauchy.entries();
    case Kind::vandermonde: {
      const std::size_t n = nodes.size();
      Matrix<Rational> v(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        Rational pw(1);
        for (std::size_t j = 0; j < n; ++j, pw *= nodes[i]) v(i, j) = pw;
      }
      return v;
    }
    case Kind::genvan: return genvan.entries();
    case Kind::sparse: return sparse.dense();
    case Kind::dense: return dense;
    case Kind::rrd: {
      Matrix<Rational> out(rrd.X.rows(), rrd.Y.cols());
      for (std::size_t i = 0; i < out.rows(); ++i)
        for (std::size_t j = 0; j < out.cols(); ++j)
          for (std::size_t k = 0; k < rrd.D.size(); ++k)
            out(i, j) += rrd.X(i, k).to_rational() * rrd.D[k].to_rational() * rrd.Y(k, j).to_rational();
      return out;
    }
  }
  return {};
}

json MatrixSpec::to_json() const {
  json j = {{"type", io::to_string(kind)}, {"label", label}};
  switch (kind) {
    case Kind::cauchy:
      j["x"] = io::to_json(cauchy.x);
      j["y"] = io::to_json(cauchy.y);
      break;
    case Kind::vandermonde: j["x"] = io::to_json(nodes); break;
    case Kind::genvan:
      j["x"] = io::to_json(genvan.x);
      j["mu"] = genvan.mu;
      break;
    case Kind::sparse: {
      j["n"] = sparse.pattern.n;
      j["m"] = sparse.pattern.m;
      json e = json::array();
      for (const auto& pos : sparse.pattern.support) e.push_back({pos.first, pos.second, io::to_json(sparse.at(pos.first, pos.second))});
      j["entries"] = e;
      break;
    }
    case Kind::dense: j["rows"] = io::to_json(dense); break;
    case Kind::rrd: j["rrd"] = io::to_json(rrd); break;
  }
  return j;
}

MatrixSpec matrix_spec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type")) throw PreconditionError("matrix JSON needs a \"type\"");
  const std::string type = j.at("type").get<std::string>();
  MatrixSpec s;
  s.label = j.value("label", type);
  if (type == "cauchy") {
    s.kind = MatrixSpec::Kind::cauchy;
    s.cauchy = CauchyMatrix{rationals_from(j.at("x")), rationals_from(j.at("y"))};
    s.cauchy.validate();
  } else if (type == "vandermonde") {
    s.kind = MatrixSpec::Kind::vandermonde;
    s.nodes = rationals_from(j.at("x"));
  } else if (type == "genvan") {
    s.kind = MatrixSpec::Kind::genvan;
    s.genvan = GenVandermonde{rationals_from(j.at("x")), j.at("mu").get<std::vector<long>>()};
    s.genvan.validate();
  } else if (type == "sparse") {
    s.kind = MatrixSpec::Kind::sparse;
    s.sparse.pattern.n = j.at("n").get<std::size_t>();
    s.sparse.pattern.m = j.at("m").get<std::size_t>();
    for (const json& e : j.at("entries")) {
      Position pos{e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>()};
      s.sparse.pattern.support.insert(pos);
      s.sparse.values[pos] = rational_from(e.at(2));
    }
    s.sparse.validate();
  } else if (type == "bidiagonal") {
    s.kind = MatrixSpec::Kind::sparse;
    s.sparse = SparseMatrix::bidiagonal(rationals_from(j.at("d")), rationals_from(j.at("e")));
  } else if (type == "dense") {
    s.kind = MatrixSpec::Kind::dense;
    s.dense = rational_matrix(j.at("rows"));
  } else if (type == "rrd") {
    s.kind = MatrixSpec::Kind::rrd;
    std::vector<LemFloat> d;
    for (const Rational& v : rationals_from(j.at("D"))) d.push_back(dyadic(v));
    s.rrd = make_rrd(dyadic_matrix(j.at("X")), std::move(d), dyadic_matrix(j.at("Y")));
  } else {
    throw PreconditionError("unknown matrix type \"" + type + "\"");
  }
  return s;
}

MatrixSpec parse_matrix_spec(std::string_view text) {
  std::size_t open = text.find('(');
  if (open != std::string_view::npos && !text.empty() && text.back() == ')' &&
      text.find('{') == std::string_view::npos) {
    std::string name(text.substr(0, open));
    std::string_view args = text.substr(open + 1, text.size() - open - 2);
    MatrixSpec s;
    s.label = std::string(text);
    if (name == "hilbert") {
      long n = to_long(Rational::parse(args).num());
      if (n < 1) throw PreconditionError("hilbert(n) needs n >= 1");
      s.kind = MatrixSpec::Kind::cauchy;
      s.cauchy = CauchyMatrix::hilbert(static_cast<std::size_t>(n));
      return s;
    }
    if (name == "vandermonde") {
      s.kind = MatrixSpec::Kind::vandermonde;
      s.nodes = parse_list(args);
      return s;
    }
    if (name == "bidiagonal" || name == "cauchy") {
      std::vector<std::string> parts = split(args, ';');
      if (parts.size() != 2) throw ParseError(name + "(...) needs two ';'-separated lists", open + 1);
      std::vector<Rational> a = parse_list(parts[0]);
      std::vector<Rational> b = parse_list(parts[1]);
      if (name == "cauchy") {
        s.kind = MatrixSpec::Kind::cauchy;
        s.cauchy = CauchyMatrix{std::move(a), std::move(b)};
        s.cauchy.validate();
      } else {
        s.kind = MatrixSpec::Kind::sparse;
        s.sparse = SparseMatrix::bidiagonal(a, b);
      }
      return s;
    }
    throw ParseError("unknown matrix shorthand \"" + name + "\"", 0);
  }
  std::string body = inline_or_file(text);
  json j;
  try {
    j = json::parse(body);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("matrix JSON: ") + e.what(), e.byte);
  }
  MatrixSpec s = matrix_spec_from_json(j);
  if (!j.contains("label") && body != text) s.label = std::string(text);
  return s;
}

std::string inline_or_file(std::string_view text) {
  std::error_code ec;
  std::filesystem::path path{std::string(text)};
  if (text.size() < 4096 && std::filesystem::is_regular_file(path, ec)) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  return std::string(text);
}

}  // namespace structla::io
