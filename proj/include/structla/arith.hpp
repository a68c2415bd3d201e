#pragma once

#include <optional>

#include "structla/lem_float.hpp"
#include "structla/rational.hpp"
#include "structla/tm.hpp"

// Arithmetic policies shared by the structured-matrix algorithms. Each
// algorithm is written once against this interface and instantiated in
// exact mode (Rational), rounded mode (LemFloat at a fixed precision) or
// trace mode (emits an SlProgram for the admissibility classifier).
//
// A policy provides:
//   value_type
//   value_type input(const Rational&, SignDomain)   exact input datum
//   value_type one()
//   value_type add/sub/mul/div(const value_type&, const value_type&)

namespace structla {

class ExactArith {
 public:
  using value_type = Rational;

  value_type input(const Rational& v, SignDomain = SignDomain::any) const { return v; }
  value_type one() const { return Rational(1); }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type div(const value_type& a, const value_type& b) const { return a / b; }

  static Rational exact_value(const value_type& v) { return v; }
};

// Rounded arithmetic with one rounding per operation. Inputs stay exact:
// a sum or difference of two inputs is carried exactly into the next
// operation, which rounds once. Every other result is rounded to p bits.
class RoundedArith {
 public:
  struct Value {
    LemFloat rounded;
    std::optional<Rational> exact;  // set for inputs and input +- input
    bool is_input = false;
  };
  using value_type = Value;

  explicit RoundedArith(Precision p, CostCounter* cost = nullptr) : prec_(p), cost_(cost) {}

  Precision precision() const { return prec_; }

  value_type input(const Rational& v, SignDomain = SignDomain::any) const {
    return {LemFloat(), v, true};
  }
  value_type one() const { return {LemFloat(1), std::nullopt, false}; }
  value_type from_lem(const LemFloat& v) const { return {v, std::nullopt, false}; }

  value_type add(const value_type& a, const value_type& b) const;
  value_type sub(const value_type& a, const value_type& b) const;
  value_type mul(const value_type& a, const value_type& b) const;
  value_type div(const value_type& a, const value_type& b) const;

  // Rounded value; an exact operand is rounded on the way out.
  LemFloat result(const value_type& v) const;

 private:
  value_type combine(const value_type& a, const value_type& b, ArithOp op) const;

  Precision prec_;
  CostCounter* cost_;
};

// Records the operation sequence as a straight-line program over the
// inputs it sees. Constants are registered as extra (exact) inputs.
class TraceArith {
 public:
  struct Value {
    Ref ref;
  };
  using value_type = Value;

  value_type input(const Rational& v, SignDomain domain = SignDomain::any);
  value_type one();
  value_type add(const value_type& a, const value_type& b) { return emit(TmOp::add, a, b); }
  value_type sub(const value_type& a, const value_type& b) { return emit(TmOp::sub, a, b); }
  value_type mul(const value_type& a, const value_type& b) { return emit(TmOp::mul, a, b); }
  value_type div(const value_type& a, const value_type& b) { return emit(TmOp::div, a, b); }

  void set_output(const value_type& v) { prog_.set_output(v.ref); }
  const SlProgram& program() const { return prog_; }
  const std::vector<SignDomain>& signs() const { return signs_; }
  const std::vector<Rational>& inputs() const { return inputs_; }

 private:
  value_type emit(TmOp op, const value_type& a, const value_type& b) {
    return {prog_.add_step(op, a.ref, b.ref)};
  }

  SlProgram prog_;
  std::vector<SignDomain> signs_;
  std::vector<Rational> inputs_;
  std::optional<Ref> one_;
};

}  // namespace structla
