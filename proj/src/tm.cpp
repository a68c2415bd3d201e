#include "structla/tm.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "structla/errors.hpp"

namespace structla {

std::string to_string(TmOp op) {
  switch (op) {
    case TmOp::add:
      return "add";
    case TmOp::sub:
      return "sub";
    case TmOp::mul:
      return "mul";
    case TmOp::div:
      return "div";
  }
  return "?";
}

Ref SlProgram::add_step(TmOp op, Ref lhs, Ref rhs) {
  steps_.push_back({op, lhs, rhs});
  output_ = Ref::step(steps_.size() - 1);
  return output_;
}

void SlProgram::set_output(Ref r) { output_ = r; }

void SlProgram::validate() const {
  auto check = [&](Ref r, std::size_t limit, std::size_t at) {
    if (r.is_input() ? r.index >= num_inputs_ : r.index >= limit) {
      throw PreconditionError("step " + std::to_string(at) +
                              " references an undefined value");
    }
  };
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    check(steps_[i].lhs, i, i);
    check(steps_[i].rhs, i, i);
  }
  check(output_, steps_.size(), steps_.size());
}

namespace {

std::optional<TmOp> op_from_name(std::string_view s) {
  if (s == "add" || s == "+") return TmOp::add;
  if (s == "sub" || s == "-") return TmOp::sub;
  if (s == "mul" || s == "*") return TmOp::mul;
  if (s == "div" || s == "/") return TmOp::div;
  return std::nullopt;
}

bool is_input_name(std::string_view s) {
  if (s.size() < 2 || s[0] != 'x') return false;
  return std::all_of(s.begin() + 1, s.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::string ref_name(Ref r) {
  return (r.is_input() ? "x" : "t") + std::to_string(r.index);
}

}  // namespace

SlProgram SlProgram::parse(std::string_view text) {
  SlProgram prog;
  std::map<std::string, std::size_t, std::less<>> names;
  std::optional<std::size_t> declared_inputs;
  std::size_t max_input = 0;
  bool any_input = false;
  bool have_output = false;

  auto resolve = [&](const std::string& tok, std::size_t pos) -> Ref {
    if (is_input_name(tok)) {
      std::size_t k = std::stoul(tok.substr(1));
      max_input = std::max(max_input, k);
      any_input = true;
      return Ref::input(k);
    }
    auto it = names.find(tok);
    if (it == names.end()) throw ParseError("undefined name '" + tok + "'", pos);
    return Ref::step(it->second);
  };

  std::size_t offset = 0;
  while (offset <= text.size()) {
    std::size_t eol = text.find('\n', offset);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(offset, eol - offset);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::istringstream in{std::string(line)};
    std::vector<std::string> tok;
    for (std::string t; in >> t;) tok.push_back(t);

    if (!tok.empty()) {
      if (tok[0] == "inputs" && tok.size() == 2) {
        declared_inputs = std::stoul(tok[1]);
      } else if (tok[0] == "output" && tok.size() == 2) {
        prog.output_ = resolve(tok[1], offset);
        have_output = true;
      } else if (tok.size() == 5 && tok[1] == "=") {
        auto op = op_from_name(tok[3]);
        if (!op) throw ParseError("unknown operation '" + tok[3] + "'", offset);
        if (is_input_name(tok[0])) throw ParseError("cannot assign to an input", offset);
        if (names.count(tok[0])) throw ParseError("name '" + tok[0] + "' redefined", offset);
        Ref lhs = resolve(tok[2], offset);
        Ref rhs = resolve(tok[4], offset);
        prog.steps_.push_back({*op, lhs, rhs});
        names.emplace(tok[0], prog.steps_.size() - 1);
      } else {
        throw ParseError("expected 'name = lhs op rhs'", offset);
      }
    }
    if (eol == text.size()) break;
    offset = eol + 1;
  }
  if (!have_output) throw ParseError("missing output line", text.size());
  prog.num_inputs_ = declared_inputs.value_or(any_input ? max_input + 1 : 0);
  prog.validate();
  return prog;
}

std::string SlProgram::to_text() const {
  std::string out = "inputs " + std::to_string(num_inputs_) + "\n";
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    out += "t" + std::to_string(i) + " = " + ref_name(steps_[i].lhs) + " " +
           to_string(steps_[i].op) + " " + ref_name(steps_[i].rhs) + "\n";
  }
  out += "output " + ref_name(output_) + "\n";
  return out;
}

DeltaAssignment DeltaAssignment::zero(std::size_t steps, const Rational& epsilon) {
  return {std::vector<Rational>(steps), epsilon};
}

void DeltaAssignment::validate() const {
  if (epsilon <= 0 || epsilon >= 1) throw PreconditionError("epsilon must lie in (0, 1)");
  for (const Rational& d : deltas) {
    if (d.abs() > epsilon) throw PreconditionError("|delta| exceeds epsilon");
  }
}

namespace {

std::vector<Rational> trace_values(const SlProgram& prog, std::span<const Rational> x,
                                   const std::vector<Rational>* deltas) {
  std::vector<Rational> v;
  v.reserve(prog.steps().size());
  auto get = [&](Ref r) -> const Rational& { return r.is_input() ? x[r.index] : v[r.index]; };
  for (std::size_t i = 0; i < prog.steps().size(); ++i) {
    const SlStep& s = prog.steps()[i];
    const Rational& a = get(s.lhs);
    const Rational& b = get(s.rhs);
    Rational r;
    switch (s.op) {
      case TmOp::add:
        r = a + b;
        break;
      case TmOp::sub:
        r = a - b;
        break;
      case TmOp::mul:
        r = a * b;
        break;
      case TmOp::div:
        if (b.is_zero()) throw DivisionByZero("division by zero at step t" + std::to_string(i));
        r = a / b;
        break;
    }
    if (deltas) r *= Rational(1) + (*deltas)[i];
    v.push_back(std::move(r));
  }
  return v;
}

Rational output_of(const SlProgram& prog, std::span<const Rational> x,
                   const std::vector<Rational>& values) {
  Ref out = prog.output();
  return out.is_input() ? x[out.index] : values[out.index];
}

void check_arity(const SlProgram& prog, std::span<const Rational> x) {
  if (x.size() != prog.num_inputs()) throw PreconditionError("input count mismatch");
}

}  // namespace

Rational eval_tm(const SlProgram& prog, std::span<const Rational> x,
                 const DeltaAssignment& d) {
  check_arity(prog, x);
  if (d.deltas.size() != prog.steps().size()) throw PreconditionError("delta count mismatch");
  d.validate();
  return output_of(prog, x, trace_values(prog, x, &d.deltas));
}

Rational eval_exact(const SlProgram& prog, std::span<const Rational> x) {
  check_arity(prog, x);
  return output_of(prog, x, trace_values(prog, x, nullptr));
}

namespace {

SignDomain negate(SignDomain s) {
  if (s == SignDomain::nonneg) return SignDomain::nonpos;
  if (s == SignDomain::nonpos) return SignDomain::nonneg;
  return SignDomain::any;
}

SignDomain product_sign(SignDomain a, SignDomain b) {
  if (a == SignDomain::any || b == SignDomain::any) return SignDomain::any;
  return a == b ? SignDomain::nonneg : SignDomain::nonpos;
}

struct ValueInfo {
  SignDomain sign;
  std::vector<bool> deps;
  bool is_input;
};

struct Classified {
  std::vector<Admissibility> verdicts;
  std::vector<ValueInfo> info;
};

Classified classify(const SlProgram& prog, std::span<const SignDomain> signs) {
  const std::size_t k = prog.num_inputs();
  if (!signs.empty() && signs.size() != k) throw PreconditionError("sign domain count mismatch");
  std::vector<ValueInfo> inputs(k);
  for (std::size_t i = 0; i < k; ++i) {
    inputs[i].sign = signs.empty() ? SignDomain::any : signs[i];
    inputs[i].deps.assign(k, false);
    inputs[i].deps[i] = true;
    inputs[i].is_input = true;
  }
  Classified out;
  auto get = [&](Ref r) -> const ValueInfo& {
    return r.is_input() ? inputs[r.index] : out.info[r.index];
  };
  for (const SlStep& s : prog.steps()) {
    const ValueInfo& a = get(s.lhs);
    const ValueInfo& b = get(s.rhs);
    ValueInfo r;
    r.is_input = false;
    r.deps.assign(k, false);
    for (std::size_t i = 0; i < k; ++i) r.deps[i] = a.deps[i] || b.deps[i];
    Admissibility verdict = Admissibility::unknown;
    const bool same = s.lhs == s.rhs;

    if (s.op == TmOp::mul || s.op == TmOp::div) {
      verdict = Admissibility::admissible;
      r.sign = same ? SignDomain::nonneg : product_sign(a.sign, b.sign);
    } else {
      SignDomain eb = s.op == TmOp::add ? b.sign : negate(b.sign);
      bool like_signed = a.sign != SignDomain::any && a.sign == eb;
      bool opposite = a.sign != SignDomain::any && eb != SignDomain::any && a.sign != eb;
      bool disjoint = true;
      for (std::size_t i = 0; i < k; ++i) disjoint = disjoint && !(a.deps[i] && b.deps[i]);

      if (a.is_input && b.is_input) {
        verdict = Admissibility::admissible;
      } else if (same) {
        verdict = Admissibility::admissible;  // 2t, or t - t == 0 exactly
      } else if (like_signed) {
        verdict = Admissibility::admissible;
      } else if (opposite || disjoint) {
        verdict = Admissibility::inadmissible;
      }
      if (same && s.op == TmOp::sub) {
        r.sign = SignDomain::nonneg;
      } else {
        r.sign = like_signed ? a.sign : SignDomain::any;
      }
    }
    out.verdicts.push_back(verdict);
    out.info.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::vector<Admissibility> classify_admissible(const SlProgram& prog,
                                               std::span<const SignDomain> signs) {
  prog.validate();
  return classify(prog, signs).verdicts;
}

Rational admissible_error_bound(const SlProgram& prog, const Rational& epsilon,
                                std::span<const SignDomain> signs) {
  prog.validate();
  if (epsilon <= 0 || epsilon >= 1) throw PreconditionError("epsilon must lie in (0, 1)");
  Classified c = classify(prog, signs);
  for (std::size_t i = 0; i < c.verdicts.size(); ++i) {
    if (c.verdicts[i] != Admissibility::admissible) {
      throw PreconditionError("step t" + std::to_string(i) + " is not admissible");
    }
  }
  const Rational down = Rational(1) - epsilon;
  const Rational up = Rational(1) + epsilon;
  struct Interval {
    Rational lo{1};
    Rational hi{1};
  };
  std::vector<Interval> iv;
  iv.reserve(prog.steps().size());
  auto get = [&](Ref r) { return r.is_input() ? Interval{} : iv[r.index]; };
  for (const SlStep& s : prog.steps()) {
    Interval a = get(s.lhs);
    Interval b = get(s.rhs);
    Interval r;
    switch (s.op) {
      case TmOp::mul:
        r = {a.lo * b.lo * down, a.hi * b.hi * up};
        break;
      case TmOp::div:
        r = {a.lo / b.hi * down, a.hi / b.lo * up};
        break;
      case TmOp::add:
      case TmOp::sub:
        if (s.op == TmOp::sub && s.lhs == s.rhs) {
          r = {};  // exactly zero
        } else {
          r = {std::min(a.lo, b.lo) * down, std::max(a.hi, b.hi) * up};
        }
        break;
    }
    iv.push_back(r);
  }
  Interval out = get(prog.output());
  return std::max(out.hi - 1, Rational(1) - out.lo);
}

namespace {

class SearchRng {
 public:
  explicit SearchRng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  // Small dyadic rational with random sign: m / 2^k, m in [1, 1024].
  Rational small() {
    Rational v(static_cast<long>(below(1024) + 1));
    v = v.mul_pow2(-static_cast<long>(below(7)));
    return below(2) ? -v : v;
  }
  // +-2^-k with k in [1, 60].
  Rational theta() {
    Rational t = pow2(-static_cast<long>(below(60) + 1));
    return below(2) ? -t : t;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace

AdversaryWitness adversary_search(const SlProgram& prog, const Rational& epsilon,
                                  std::size_t budget, std::uint64_t seed) {
  prog.validate();
  if (budget < 1) throw PreconditionError("budget must be at least 1");
  if (epsilon <= 0 || epsilon >= 1) throw PreconditionError("epsilon must lie in (0, 1)");
  const std::size_t k = prog.num_inputs();
  const std::size_t s = prog.steps().size();
  SearchRng rng(seed);

  AdversaryWitness best;
  best.deltas = DeltaAssignment::zero(s, epsilon);
  best.x.assign(k, Rational(1));
  bool have_best = false;
  std::size_t used = 0;

  // Per-step input dependencies, for the step-cancellation template.
  std::vector<std::vector<bool>> deps(s, std::vector<bool>(k, false));
  auto deps_of = [&](Ref r) {
    if (!r.is_input()) return deps[r.index];
    std::vector<bool> d(k, false);
    d[r.index] = true;
    return d;
  };
  std::vector<std::size_t> cancel_steps;
  for (std::size_t i = 0; i < s; ++i) {
    const SlStep& st = prog.steps()[i];
    auto a = deps_of(st.lhs);
    auto b = deps_of(st.rhs);
    for (std::size_t j = 0; j < k; ++j) deps[i][j] = a[j] || b[j];
    if ((st.op == TmOp::add || st.op == TmOp::sub) &&
        (st.lhs.is_input() || st.rhs.is_input()) && !(st.lhs == st.rhs)) {
      cancel_steps.push_back(i);
    }
  }

  auto try_eval = [&](const std::vector<Rational>& x, const std::vector<Rational>* d)
      -> std::optional<std::vector<Rational>> {
    ++used;
    try {
      return trace_values(prog, x, d);
    } catch (const DivisionByZero&) {
      return std::nullopt;
    }
  };

  for (std::size_t restart = 0; used < budget; ++restart) {
    std::vector<Rational> x(k);
    for (auto& xi : x) xi = rng.small();
    const std::size_t pattern = restart % 3;
    if (pattern == 1 && k >= 2) {
      std::size_t i = rng.below(k);
      std::size_t j = (i + 1 + rng.below(k - 1)) % k;
      x[j] = -x[i] * (Rational(1) + rng.theta());
    } else if (pattern == 2 && !cancel_steps.empty()) {
      const SlStep& st = prog.steps()[cancel_steps[rng.below(cancel_steps.size())]];
      bool target_rhs = st.rhs.is_input() && (!st.lhs.is_input() || rng.below(2));
      Ref target = target_rhs ? st.rhs : st.lhs;
      Ref other = target_rhs ? st.lhs : st.rhs;
      if (!deps_of(other)[target.index]) {
        auto values = try_eval(x, nullptr);
        if (!values) continue;
        Rational v = other.is_input() ? x[other.index] : (*values)[other.index];
        if (v.is_zero()) continue;
        Rational near = v * (Rational(1) + rng.theta());
        // Make `target op other` nearly cancel.
        x[target.index] = st.op == TmOp::add ? -near : near;
      }
    }
    if (used >= budget) break;

    auto exact_values = try_eval(x, nullptr);
    if (!exact_values) continue;
    Rational exact = output_of(prog, x, *exact_values);
    if (exact.is_zero()) continue;

    const Rational choices[3] = {-epsilon, Rational(0), epsilon};
    std::vector<Rational> d(s);
    for (auto& di : d) di = choices[rng.below(3)];
    auto rel_error = [&](const std::vector<Rational>& deltas) -> std::optional<Rational> {
      auto v = try_eval(x, &deltas);
      if (!v) return std::nullopt;
      return (output_of(prog, x, *v) - exact).abs() / exact.abs();
    };
    if (used >= budget) break;
    auto current = rel_error(d);
    if (!current) continue;

    auto record = [&](const Rational& err, const std::vector<Rational>& deltas) {
      if (!have_best || err > best.rel_error) {
        best.x = x;
        best.deltas.deltas = deltas;
        best.rel_error = err;
        have_best = true;
      }
    };
    record(*current, d);

    // Coordinate ascent over the vertices {-eps, 0, +eps}.
    bool improved = true;
    while (improved && used < budget) {
      improved = false;
      for (std::size_t i = 0; i < s && used < budget; ++i) {
        for (const Rational& c : choices) {
          if (c == d[i] || used >= budget) continue;
          std::vector<Rational> trial = d;
          trial[i] = c;
          auto err = rel_error(trial);
          if (err && *err > *current) {
            d = std::move(trial);
            current = err;
            improved = true;
            record(*current, d);
          }
        }
      }
    }
  }
  best.evaluations = used;
  return best;
}

}  // namespace structla
