#include <random>

#include "doctest.h"
#include "random_programs.hpp"
#include "structla/errors.hpp"
#include "structla/tm.hpp"
#include "test_util.hpp"

using namespace structla;

namespace {

const char* kSum3 = "t0 = x0 add x1\nt1 = t0 add x2\noutput t1\n";
const char* kProd3 = "t0 = x0 mul x1\nt1 = t0 mul x2\noutput t1\n";

Rational random_delta(std::mt19937_64& rng, const Rational& eps) {
  const long scale = 1L << 20;
  long k = static_cast<long>(rng() % (2 * scale + 1)) - scale;
  return eps * Rational(Integer(k), Integer(scale));
}

}  // namespace

TEST_CASE("program text round trip") {
  SlProgram p = SlProgram::parse(kSum3);
  CHECK(p.num_inputs() == 3);
  CHECK(p.steps().size() == 2);
  SlProgram q = SlProgram::parse(p.to_text());
  CHECK(q.to_text() == p.to_text());
  SlProgram r = SlProgram::parse("# comment\ninputs 2\nt0 = x0 - x1\noutput t0");
  CHECK(r.steps()[0].op == TmOp::sub);
  CHECK_THROWS_AS(SlProgram::parse("t0 = x0 add t3\noutput t0"), ParseError);
  CHECK_THROWS_AS(SlProgram::parse("t0 = x0 pow x1\noutput t0"), ParseError);
  CHECK_THROWS_AS(SlProgram::parse("t0 = x0 add x1"), ParseError);
}

TEST_CASE("eval_tm examples") {
  SlProgram sum2 = SlProgram::parse("t0 = x0 add x1\noutput t0");
  std::vector<Rational> x = {Rational(1, 3), Rational(2, 7)};
  CHECK(eval_tm(sum2, x, DeltaAssignment::zero(1, Rational(1, 4))) == Rational(13, 21));

  SlProgram sum3 = SlProgram::parse(kSum3);
  Rational t(5, 9);
  Rational d1(1, 8);
  Rational d2(-1, 16);
  std::vector<Rational> x3 = {Rational(1), Rational(-1), t};
  DeltaAssignment d{{d1, d2}, Rational(1, 4)};
  CHECK(eval_tm(sum3, x3, d) == t * (Rational(1) + d2));

  SlProgram prod = SlProgram::parse("t0 = x0 mul x1\noutput t0");
  Rational eps(1, 1024);
  std::vector<Rational> x2 = {Rational(3), Rational(-5, 2)};
  CHECK(eval_tm(prod, x2, DeltaAssignment{{eps}, eps}) == Rational(-15, 2) * (Rational(1) + eps));
}

TEST_CASE("eval_tm with zero deltas equals exact evaluation") {
  std::mt19937_64 rng(41);
  for (int k = 0; k < 200; ++k) {
    testutil::ProgramGen gen{rng, 4, {}};
    SlProgram p = gen.make(1 + rng() % 12);
    std::vector<Rational> x;
    for (int i = 0; i < 4; ++i) x.push_back(testutil::positive_rational(rng, 20));
    try {
      CHECK(eval_tm(p, x, DeltaAssignment::zero(p.steps().size(), Rational(1, 2))) ==
            eval_exact(p, x));
    } catch (const DivisionByZero&) {
      // x_i - x_j may vanish; not the point of this check.
    }
  }
}

TEST_CASE("eval_tm reports the dividing step") {
  SlProgram p = SlProgram::parse("t0 = x0 sub x1\nt1 = x0 div t0\noutput t1");
  std::vector<Rational> x = {Rational(2), Rational(2)};
  CHECK_THROWS_AS(eval_exact(p, x), DivisionByZero);
  try {
    eval_exact(p, x);
  } catch (const DivisionByZero& e) {
    CHECK(std::string(e.what()).find("t1") != std::string::npos);
  }
}

TEST_CASE("classify_admissible examples") {
  std::vector<SignDomain> any3(3, SignDomain::any);
  auto prod = classify_admissible(SlProgram::parse(kProd3), any3);
  CHECK(prod == std::vector<Admissibility>{Admissibility::admissible, Admissibility::admissible});

  auto sum = classify_admissible(SlProgram::parse(kSum3), any3);
  CHECK(sum[0] == Admissibility::admissible);
  CHECK(sum[1] == Admissibility::inadmissible);

  std::vector<SignDomain> any2(2, SignDomain::any);
  auto diff = classify_admissible(SlProgram::parse("t0 = x0 sub x1\noutput t0"), any2);
  CHECK(diff[0] == Admissibility::admissible);

  std::vector<SignDomain> pos3(3, SignDomain::nonneg);
  auto pos = classify_admissible(SlProgram::parse(kSum3), pos3);
  CHECK(pos[1] == Admissibility::admissible);

  // Difference of two computed like-signed quantities.
  auto sub = classify_admissible(
      SlProgram::parse("t0 = x0 mul x1\nt1 = x1 mul x2\nt2 = t0 sub t1\noutput t2"), pos3);
  CHECK(sub[2] == Admissibility::inadmissible);
}

TEST_CASE("admissible_error_bound examples") {
  std::vector<SignDomain> any2(2, SignDomain::any);
  SlProgram one = SlProgram::parse("t0 = x0 mul x1\noutput t0");
  CHECK(admissible_error_bound(one, Rational(1, 8)) == Rational(1, 8));
  CHECK(admissible_error_bound(SlProgram::parse("t0 = x0 mul x1\nt1 = t0 mul x2\nt2 = t1 mul x0\noutput t2"),
                               Rational(1, 10)) == Rational(331, 1000));
  CHECK_THROWS_AS(admissible_error_bound(SlProgram::parse(kSum3), Rational(1, 4)), PreconditionError);
}

TEST_CASE("admissible bound holds for random admissible programs") {
  std::mt19937_64 rng(43);
  const Rational eps = pow2(-10);
  for (int k = 0; k < 60; ++k) {
    testutil::ProgramGen gen{rng, 3, {}};
    const std::size_t s = 1 + rng() % 10;
    SlProgram p = gen.make(s);
    std::vector<SignDomain> pos(3, SignDomain::nonneg);
    for (auto v : classify_admissible(p, pos)) REQUIRE(v == Admissibility::admissible);
    const Rational bound = admissible_error_bound(p, eps, pos);
    std::vector<Rational> x;
    for (int i = 0; i < 3; ++i) x.push_back(testutil::positive_rational(rng, 16));
    Rational exact;
    try {
      exact = eval_exact(p, x);
    } catch (const DivisionByZero&) {
      continue;
    }
    if (exact.is_zero()) continue;
    for (int j = 0; j < 100; ++j) {
      DeltaAssignment d{{}, eps};
      for (std::size_t t = 0; t < s; ++t) d.deltas.push_back(random_delta(rng, eps));
      Rational err = (eval_tm(p, x, d) - exact).abs() / exact.abs();
      CHECK(err <= bound);
    }
  }
}

TEST_CASE("error bound is sound even at the delta vertices") {
  // Division and reuse are where (1 + eps)^s - 1 alone would be too small.
  SlProgram p = SlProgram::parse("t0 = x0 mul x1\nt1 = x0 div t0\nt2 = t1 mul t1\noutput t2");
  std::vector<SignDomain> pos(2, SignDomain::nonneg);
  Rational eps(1, 16);
  Rational bound = admissible_error_bound(p, eps, pos);
  std::vector<Rational> x = {Rational(3), Rational(5)};
  Rational exact = eval_exact(p, x);
  Rational worst;
  for (int mask = 0; mask < 27; ++mask) {
    DeltaAssignment d{{}, eps};
    int m = mask;
    for (int t = 0; t < 3; ++t) {
      d.deltas.push_back(eps * Rational(m % 3 - 1));
      m /= 3;
    }
    worst = std::max(worst, (eval_tm(p, x, d) - exact).abs() / exact.abs());
  }
  CHECK(worst <= bound);
  CHECK(worst > (Rational(1) + eps).pow(3) - Rational(1));
}

TEST_CASE("adversary finds the x+y+z blowup") {
  AdversaryWitness w = adversary_search(SlProgram::parse(kSum3), Rational(1, 4), 2000, 7);
  CHECK(w.rel_error >= Rational(1));
  CHECK(w.evaluations <= 2000);
  // The witness reproduces exactly.
  SlProgram p = SlProgram::parse(kSum3);
  Rational exact = eval_exact(p, w.x);
  CHECK((eval_tm(p, w.x, w.deltas) - exact).abs() / exact.abs() == w.rel_error);
}

TEST_CASE("adversary stays within the admissible bound") {
  Rational eps(1, 4);
  AdversaryWitness prod =
      adversary_search(SlProgram::parse("t0 = x0 mul x1\noutput t0"), eps, 500, 1);
  CHECK(prod.rel_error <= eps);
  AdversaryWitness diff =
      adversary_search(SlProgram::parse("t0 = x0 sub x1\noutput t0"), Rational(1, 2), 500, 2);
  CHECK(diff.rel_error <= Rational(1, 2));
}

TEST_CASE("adversary is deterministic and monotone in budget") {
  SlProgram p = SlProgram::parse(kSum3);
  AdversaryWitness a = adversary_search(p, Rational(1, 4), 300, 99);
  AdversaryWitness b = adversary_search(p, Rational(1, 4), 300, 99);
  CHECK(a.rel_error == b.rel_error);
  CHECK(a.x == b.x);
  CHECK(a.deltas.deltas == b.deltas.deltas);
  Rational prev;
  for (std::size_t budget : {1u, 5u, 20u, 80u, 320u, 1000u}) {
    AdversaryWitness w = adversary_search(p, Rational(1, 4), budget, 5);
    CHECK(w.rel_error >= prev);
    prev = w.rel_error;
  }
}

TEST_CASE("delta assignment validation") {
  DeltaAssignment d{{Rational(1, 2)}, Rational(1, 4)};
  CHECK_THROWS_AS(d.validate(), PreconditionError);
  SlProgram p = SlProgram::parse("t0 = x0 mul x1\noutput t0");
  std::vector<Rational> x = {Rational(1), Rational(2)};
  CHECK_THROWS(eval_tm(p, x, d));
  CHECK_THROWS_AS(adversary_search(p, Rational(1, 4), 0, 1), PreconditionError);
}
