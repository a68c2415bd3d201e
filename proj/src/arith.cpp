#include "structla/arith.hpp"

#include "structla/errors.hpp"

namespace structla {

RoundedArith::value_type RoundedArith::combine(const value_type& a, const value_type& b,
                                               ArithOp op) const {
  if (a.exact && b.exact && a.is_input && b.is_input &&
      (op == ArithOp::add || op == ArithOp::sub)) {
    return {LemFloat(), rat_arith(*a.exact, *b.exact, op), false};
  }
  if (!a.exact && !b.exact) {
    switch (op) {
      case ArithOp::add:
        return from_lem(structla::add(a.rounded, b.rounded, prec_, cost_));
      case ArithOp::sub:
        return from_lem(structla::sub(a.rounded, b.rounded, prec_, cost_));
      case ArithOp::mul:
        return from_lem(structla::mul(a.rounded, b.rounded, prec_, cost_));
      case ArithOp::div:
        return from_lem(structla::div(a.rounded, b.rounded, prec_, cost_));
    }
  }
  Rational x = a.exact ? *a.exact : a.rounded.to_rational();
  Rational y = b.exact ? *b.exact : b.rounded.to_rational();
  return from_lem(round_nearest(rat_arith(x, y, op), prec_, cost_));
}

RoundedArith::value_type RoundedArith::add(const value_type& a, const value_type& b) const {
  return combine(a, b, ArithOp::add);
}

RoundedArith::value_type RoundedArith::sub(const value_type& a, const value_type& b) const {
  return combine(a, b, ArithOp::sub);
}

RoundedArith::value_type RoundedArith::mul(const value_type& a, const value_type& b) const {
  return combine(a, b, ArithOp::mul);
}

RoundedArith::value_type RoundedArith::div(const value_type& a, const value_type& b) const {
  return combine(a, b, ArithOp::div);
}

LemFloat RoundedArith::result(const value_type& v) const {
  if (v.exact) return round_nearest(*v.exact, prec_, cost_);
  return v.rounded;
}

TraceArith::value_type TraceArith::input(const Rational& v, SignDomain domain) {
  signs_.push_back(domain);
  inputs_.push_back(v);
  return {Ref::input(prog_.add_input())};
}

TraceArith::value_type TraceArith::one() {
  if (!one_) one_ = input(Rational(1), SignDomain::nonneg).ref;
  return {*one_};
}

}  // namespace structla
