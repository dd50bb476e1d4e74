#pragma once

// Shared helpers for the test suites: expression shorthands, a seeded
// random expression generator, and small valuation builders.

#include <random>
#include <string>
#include <vector>

#include "loopbound/expr.hpp"
#include "loopbound/simplify.hpp"

namespace ts {

using namespace loopbound;

inline Expr c(long long v) { return int_const(v); }
inline Expr s(const std::string &n) { return symbol(n); }
inline Expr k(int id) { return path_counter(id); }

inline ArrayFun table(std::vector<long long> vals) {
  return [vals = std::move(vals)](
             std::span<const long long> idx) -> std::optional<long long> {
    if (idx.size() != 1 || idx[0] < 0 ||
        idx[0] >= static_cast<long long>(vals.size()))
      return std::nullopt;
    return vals[static_cast<size_t>(idx[0])];
  };
}

inline ArrayFun cyclic(std::vector<long long> vals) {
  return [vals = std::move(vals)](
             std::span<const long long> idx) -> std::optional<long long> {
    if (idx.size() != 1 || vals.empty())
      return std::nullopt;
    long long m = static_cast<long long>(vals.size());
    long long i = ((idx[0] % m) + m) % m;
    return vals[static_cast<size_t>(i)];
  };
}

// random expression trees over a fixed vocabulary of symbols, counters and
// one array; depth-bounded, all node kinds reachable
class ExprGen {
public:
  explicit ExprGen(unsigned seed, bool with_unknown = true)
      : rng_(seed), with_unknown_(with_unknown) {}

  Expr gen(int depth = 4) { return gen_expr(depth); }

  Formula gen_formula(int depth = 3) {
    std::uniform_int_distribution<int> d(0, depth <= 0 ? 2 : 6);
    switch (d(rng_)) {
    case 0:
      return f_lt(gen_expr(depth - 1), gen_expr(depth - 1));
    case 1:
      return f_le(gen_expr(depth - 1), gen_expr(depth - 1));
    case 2:
      return pick_bool() ? f_eq(gen_expr(depth - 1), gen_expr(depth - 1))
                         : f_neq(gen_expr(depth - 1), gen_expr(depth - 1));
    case 3:
      return f_and({gen_formula(depth - 1), gen_formula(depth - 1)});
    case 4:
      return f_or({gen_formula(depth - 1), gen_formula(depth - 1)});
    case 5:
      return f_not(gen_formula(depth - 1));
    default:
      return pick_bool() ? f_true() : f_false();
    }
  }

  Valuation random_valuation() {
    Valuation v;
    std::uniform_int_distribution<long long> d(-8, 8);
    for (const char *n : {"a", "b", "x", "y", "n"})
      v.scalars[n] = d(rng_);
    std::vector<long long> tab;
    for (int i = 0; i < 5; ++i)
      tab.push_back(d(rng_));
    v.arrays["A"] = cyclic(tab);
    for (int i = 1; i <= 3; ++i)
      v.counters[i] = std::uniform_int_distribution<long long>(0, 6)(rng_);
    return v;
  }

private:
  std::mt19937_64 rng_;
  bool with_unknown_;

  bool pick_bool() { return std::uniform_int_distribution<int>(0, 1)(rng_); }

  Expr leaf() {
    std::uniform_int_distribution<int> d(0, with_unknown_ ? 9 : 8);
    switch (d(rng_)) {
    case 0:
    case 1:
    case 2:
      return int_const(std::uniform_int_distribution<long long>(-9, 9)(rng_));
    case 3:
      return s("a");
    case 4:
      return s("b");
    case 5:
      return s("x");
    case 6:
      return s("n");
    case 7:
      return k(std::uniform_int_distribution<int>(1, 3)(rng_));
    case 8:
      return s("y");
    default:
      return unknown();
    }
  }

  Expr gen_expr(int depth) {
    if (depth <= 0)
      return leaf();
    std::uniform_int_distribution<int> d(0, 13);
    switch (d(rng_)) {
    case 0:
      return add(gen_expr(depth - 1), gen_expr(depth - 1));
    case 1:
      return sub(gen_expr(depth - 1), gen_expr(depth - 1));
    case 2:
      return mul(gen_expr(depth - 1), gen_expr(depth - 1));
    case 3:
      return div_of(gen_expr(depth - 1), gen_expr(depth - 1));
    case 4:
      return max_of({gen_expr(depth - 1), gen_expr(depth - 1)});
    case 5:
      return min_of({gen_expr(depth - 1), gen_expr(depth - 1)});
    case 6:
      return ceil_of(div_of(gen_expr(depth - 1), gen_expr(depth - 1)));
    case 7:
      return floor_of(div_of(gen_expr(depth - 1), gen_expr(depth - 1)));
    case 8:
      return ite(gen_formula(depth - 1), gen_expr(depth - 1),
                 gen_expr(depth - 1));
    case 9:
      return array_read("A", {gen_expr(depth - 1)});
    case 10:
      return bounded_sum("K", gen_expr(depth - 1),
                         int_const(std::uniform_int_distribution<long long>(
                             0, 6)(rng_)),
                         gen_expr(depth - 1));
    case 11:
      return pow_of(gen_expr(depth - 1),
                    int_const(std::uniform_int_distribution<long long>(
                        0, 4)(rng_)));
    case 12:
      return log_of(2, gen_expr(depth - 1));
    default:
      return leaf();
    }
  }
};

} // namespace ts
