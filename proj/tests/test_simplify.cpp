#include "doctest.h"
#include "support.hpp"

using namespace loopbound;
using ts::c;
using ts::k;
using ts::s;

TEST_SUITE_BEGIN("simplify");

TEST_CASE("constant and max folding") {
  CHECK(to_string(simplify(max_of({c(0), c(3)}))) == "3");
  CHECK(to_string(simplify(add(c(0), c(1)))) == "1");
  CHECK(to_string(simplify(sub(add(mul(c(2), s("a")), c(1)), c(2)))) ==
        "2*$a - 1");
  CHECK(to_string(simplify(max_of({c(0), s("n"), c(3)}))) ==
        "max{3, $n}");
  CHECK(to_string(simplify(min_of({s("n"), s("n")}))) == "$n");
}

TEST_CASE("unknown is absorbing") {
  CHECK(simplify(add(unknown(), s("x")))->kind == ExprKind::Unknown);
  CHECK(simplify(max_of({c(0), unknown()}))->kind == ExprKind::Unknown);
  CHECK(simplify(ite(f_lt(unknown(), c(1)), c(0), c(1)))->kind ==
        ExprKind::Unknown);
}

TEST_CASE("division and rounding rules") {
  CHECK(to_string(simplify(div_of(s("n"), c(1)))) == "$n");
  CHECK(to_string(simplify(ceil_of(div_of(s("n"), c(1))))) == "$n");
  CHECK(to_string(simplify(ceil_of(div_of(c(7), c(2))))) == "4");
  CHECK(to_string(simplify(floor_of(div_of(c(7), c(2))))) == "3");
  CHECK(to_string(simplify(ceil_of(div_of(c(-7), c(2))))) == "-3");
  // exact constant division folds, inexact stays
  CHECK(to_string(simplify(div_of(c(6), c(2)))) == "3");
  CHECK(to_string(simplify(div_of(c(7), c(2)))) == "7/2");
  // rounding of an integer-valued argument is the identity
  CHECK(to_string(simplify(ceil_of(sub(s("n"), c(1))))) == "$n - 1");
  // but a symbolic ratio is kept
  CHECK(to_string(simplify(ceil_of(div_of(sub(s("x"), c(5)), c(2))))) ==
        "ceil(($x - 5)/2)");
}

TEST_CASE("pow and log rules") {
  CHECK(to_string(simplify(pow_of(c(2), c(5)))) == "32");
  CHECK(to_string(simplify(pow_of(s("a"), c(1)))) == "$a");
  CHECK(to_string(simplify(log_of(2, c(1)))) == "0");
  CHECK(to_string(simplify(log_of(2, c(8)))) == "3");
  CHECK(to_string(simplify(log_of(2, c(100)))) == "log(2, 100)");
  CHECK(to_string(simplify(sub(log_of(2, s("n")), log_of(2, c(1))))) ==
        "log(2, $n)");
  CHECK(to_string(simplify(mul(c(1), pow_of(c(2), k(1))))) == "pow(2, k1)");
}

TEST_CASE("bounded sums") {
  // empty range
  CHECK(to_string(simplify(bounded_sum("K", c(0), c(-1), s("n")))) == "0");
  // constant range with index-free body
  CHECK(to_string(simplify(bounded_sum(
            "K", c(0), c(2), max_of({c(0), add(c(5), mul(c(0), s("K")))})))) ==
        "15");
  // small constant range unrolls
  CHECK(to_string(simplify(bounded_sum("K", c(0), c(2), s("K")))) == "3");
  // symbolic upper bound is kept
  Expr body = max_of({c(0), sub(sub(s("n"), s("K")), c(1))});
  Expr sum = bounded_sum("K", c(0), sub(s("n"), c(2)), body);
  CHECK(simplify(sum)->kind == ExprKind::BoundedSum);
}

TEST_CASE("formula simplification") {
  CHECK(simplify(f_not(f_lt(s("a"), s("b"))))->kind == FormulaKind::Le);
  CHECK(to_string(simplify(f_not(f_and({f_lt(s("i"), s("n")),
                                        f_lt(s("k"), c(3))})))) ==
        "$n <= $i || 3 <= $k");
  CHECK(simplify(f_and({f_true(), f_lt(c(0), c(1))}))->kind ==
        FormulaKind::True);
  CHECK(simplify(f_and({f_true(), f_lt(c(1), c(0))}))->kind ==
        FormulaKind::False);
  CHECK(simplify(f_or({f_false(), f_true()}))->kind == FormulaKind::True);
}

TEST_CASE("match of the affine counter form") {
  // max{0, n - k1 - 1}
  Expr e = simplify(max_of({c(0), sub(sub(s("n"), k(1)), c(1))}));
  auto m = match_affine_counter_form(e);
  REQUIRE(m.has_value());
  CHECK(to_string(m->c) == "0");
  CHECK(to_string(m->b) == "$n - 1");
  REQUIRE(m->coeffs.size() == 1);
  CHECK(to_string(m->coeffs.at(1)) == "-1");

  // no max / kappa structure
  CHECK(!match_affine_counter_form(simplify(add(s("n"), c(5)))));

  // max{1, 2 + 3k1 + k2}
  Expr e2 = simplify(
      max_of({c(1), add(add(c(2), mul(c(3), k(1))), k(2))}));
  auto m2 = match_affine_counter_form(e2);
  REQUIRE(m2.has_value());
  CHECK(to_string(m2->c) == "1");
  CHECK(to_string(m2->b) == "2");
  CHECK(to_string(m2->coeffs.at(1)) == "3");
  CHECK(to_string(m2->coeffs.at(2)) == "1");

  // nonlinear counter occurrence fails
  CHECK(!match_affine_counter_form(
      simplify(max_of({c(0), mul(k(1), k(1))}))));

  // reconstruction is evaluate-equal
  ts::ExprGen gen(11);
  Valuation v = gen.random_valuation();
  auto rebuilt = [&](const AffineCounterForm &f) {
    std::vector<Expr> terms{f.b};
    for (const auto &[id, co] : f.coeffs)
      terms.push_back(mul(co, path_counter(id)));
    return max_of({f.c, add_n(terms)});
  };
  CHECK(evaluate(rebuilt(*m), v) == evaluate(e, v));
  CHECK(evaluate(rebuilt(*m2), v) == evaluate(e2, v));
}

TEST_CASE("simplify preserves evaluation on random expressions") {
  ts::ExprGen gen(20250810);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    Expr e = gen.gen(4);
    Expr se = simplify(e);
    for (int j = 0; j < 25; ++j) {
      Valuation v = gen.random_valuation();
      auto a = evaluate(e, v);
      auto b = evaluate(se, v);
      CAPTURE(to_string(e));
      CAPTURE(to_string(se));
      CHECK(a == b);
      ++checked;
    }
  }
  CHECK(checked == 300 * 25);
}

TEST_CASE("simplify is idempotent") {
  ts::ExprGen gen(99);
  for (int i = 0; i < 200; ++i) {
    Expr e = simplify(gen.gen(4));
    CHECK(equal(e, simplify(e)));
  }
}

TEST_SUITE_END();
