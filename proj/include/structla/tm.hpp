#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "structla/rational.hpp"

namespace structla {

enum class TmOp { add, sub, mul, div };

// Names an input x_k or the result of an earlier step t_k.
struct Ref {
  enum class Kind { input, step };
  Kind kind = Kind::input;
  std::size_t index = 0;

  static Ref input(std::size_t k) { return {Kind::input, k}; }
  static Ref step(std::size_t k) { return {Kind::step, k}; }
  bool is_input() const { return kind == Kind::input; }
  friend bool operator==(const Ref&, const Ref&) = default;
};

struct SlStep {
  TmOp op;
  Ref lhs;
  Ref rhs;
};

// Straight-line program over k inputs. Steps may only reference inputs and
// strictly earlier steps; there is one output.
class SlProgram {
 public:
  SlProgram() = default;
  explicit SlProgram(std::size_t num_inputs) : num_inputs_(num_inputs) {}

  std::size_t num_inputs() const { return num_inputs_; }
  const std::vector<SlStep>& steps() const { return steps_; }
  Ref output() const { return output_; }

  std::size_t add_input() { return num_inputs_++; }
  Ref add_step(TmOp op, Ref lhs, Ref rhs);
  void set_output(Ref r);

  // Throws PreconditionError when a reference is dangling.
  void validate() const;

  // Text form, one step per line:
  //   inputs 3
  //   t0 = x0 add x1
  //   t1 = t0 add x2
  //   output t1
  // `#` starts a comment. The inputs line is optional.
  static SlProgram parse(std::string_view text);
  std::string to_text() const;

 private:
  std::size_t num_inputs_ = 0;
  std::vector<SlStep> steps_;
  Ref output_;
};

// One relative perturbation per step, each bounded by epsilon.
struct DeltaAssignment {
  std::vector<Rational> deltas;
  Rational epsilon;

  static DeltaAssignment zero(std::size_t steps, const Rational& epsilon);
  void validate() const;
};

// Exact value of the perturbed computation fl(a op b) = (a op b)(1 + delta).
// A division by an exact zero throws DivisionByZero naming the step.
Rational eval_tm(const SlProgram& prog, std::span<const Rational> x,
                 const DeltaAssignment& d);
// Unperturbed value.
Rational eval_exact(const SlProgram& prog, std::span<const Rational> x);

enum class SignDomain { nonneg, nonpos, any };
enum class Admissibility { admissible, inadmissible, unknown };

// Per-step classification. Products and quotients are admissible; sums are
// admissible when both operands are inputs or when their signs provably
// agree. A sum whose operands can have opposite signs (definite opposite
// signs, or independent operands of unconstrained sign) is inadmissible;
// anything else is unknown.
std::vector<Admissibility> classify_admissible(const SlProgram& prog,
                                               std::span<const SignDomain> signs);

// Sound worst-case relative error of an all-admissible program. Each value
// carries an interval [lo, hi] for its multiplicative error factor; the
// bound is max(hi - 1, 1 - lo) at the output. For division-free programs in
// which every step is used exactly once this equals (1 + eps)^s - 1.
// Throws PreconditionError if a step is not admissible. An empty `signs`
// means every input is unconstrained.
Rational admissible_error_bound(const SlProgram& prog, const Rational& epsilon,
                                std::span<const SignDomain> signs = {});

struct AdversaryWitness {
  std::vector<Rational> x;
  DeltaAssignment deltas;
  Rational rel_error;
  std::size_t evaluations = 0;
};

// Deterministic seeded search for inputs and deltas maximizing the exact
// relative error. Deltas range over {-eps, 0, +eps}; inputs come from
// random draws and cancellation templates (an input set to nearly cancel
// another input, or the other operand of a sum). `budget` counts eval_tm
// calls; the result for budget b is the best of a fixed sequence's first
// b evaluations, so it is nondecreasing in b.
AdversaryWitness adversary_search(const SlProgram& prog, const Rational& epsilon,
                                  std::size_t budget, std::uint64_t seed);

std::string to_string(TmOp op);

}  // namespace structla
