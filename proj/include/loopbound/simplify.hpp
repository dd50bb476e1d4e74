#pragma once

// Fixed rewrite set over symbolic expressions.  All rules are
// evaluation-preserving (under the wrap-around integer semantics of
// evaluate); the simplifier exists so that summary and bound expressions
// reach the syntactic shapes the analysis matches on.

#include <functional>
#include <map>
#include <optional>

#include "loopbound/expr.hpp"

namespace loopbound {

Expr simplify(const Expr &e);
Formula simplify(const Formula &f);

// negation pushed to atoms (negation normal form step)
Formula negate(const Formula &f);

// max{c, b + sum a_i * k_i} with c, b and all a_i kappa-free
struct AffineCounterForm {
  Expr c;
  Expr b;
  std::map<int, Expr> coeffs; // counter id -> kappa-free coefficient
};

std::optional<AffineCounterForm> match_affine_counter_form(const Expr &e);

// e == sum of coeffs[k] * counter(k) + rest, with rest kappa-free and all
// coefficients kappa-free; fails if a counter occurs non-linearly
bool decompose_counter_linear(const Expr &e, std::map<int, Expr> &coeffs,
                              Expr &rest);

// observation hook: called as simplify(input) -> output on every top-level
// simplification when set (used by the acceptance suite to audit
// preservation on the expressions the analyzer actually produces)
void set_simplify_observer(std::function<void(const Expr &, const Expr &)> f);

} // namespace loopbound
