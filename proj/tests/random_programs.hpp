#pragma once

#include <random>
#include <vector>

#include "structla/rational.hpp"
#include "structla/tm.hpp"

namespace testutil {

// Random tree-shaped program with exactly `steps` steps over `inputs`
// positive inputs. Every step result is used once. Sums only combine
// operands known to be positive; a difference of two distinct inputs is
// allowed and then only feeds products and quotients.
struct ProgramGen {
  std::mt19937_64& rng;
  std::size_t inputs;
  structla::SlProgram prog;

  struct Node {
    structla::Ref ref;
    bool positive;
  };

  Node leaf() { return {structla::Ref::input(rng() % inputs), true}; }

  Node build(std::size_t size) {
    using structla::TmOp;
    if (size == 0) return leaf();
    if (size == 1 && inputs >= 2 && rng() % 5 == 0) {
      std::size_t i = rng() % inputs;
      std::size_t j = (i + 1 + rng() % (inputs - 1)) % inputs;
      return {prog.add_step(TmOp::sub, structla::Ref::input(i), structla::Ref::input(j)), false};
    }
    std::size_t left = rng() % size;
    Node a = build(left);
    Node b = build(size - 1 - left);
    TmOp op;
    if (a.positive && b.positive) {
      const TmOp ops[] = {TmOp::add, TmOp::mul, TmOp::div};
      op = ops[rng() % 3];
    } else {
      op = rng() % 2 ? TmOp::mul : TmOp::div;
    }
    bool positive = a.positive && b.positive;
    return {prog.add_step(op, a.ref, b.ref), positive};
  }

  structla::SlProgram make(std::size_t steps) {
    prog = structla::SlProgram(inputs);
    Node out = build(steps);
    prog.set_output(out.ref);
    return prog;
  }
};

}  // namespace testutil
