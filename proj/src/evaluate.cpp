#include <cstdint>

#include "loopbound/expr.hpp"

namespace loopbound {

namespace {

// Arithmetic wraps modulo 2^64 (two's complement view).  This keeps
// evaluation total on pure arithmetic, so algebraic rewrites (reordering,
// combining, cancelling) are exactly evaluation-preserving.
long long wadd(long long a, long long b) {
  return static_cast<long long>(static_cast<unsigned long long>(a) +
                                static_cast<unsigned long long>(b));
}
long long wsub(long long a, long long b) {
  return static_cast<long long>(static_cast<unsigned long long>(a) -
                                static_cast<unsigned long long>(b));
}
long long wmul(long long a, long long b) {
  return static_cast<long long>(static_cast<unsigned long long>(a) *
                                static_cast<unsigned long long>(b));
}

std::optional<long long> trunc_div(long long a, long long b) {
  if (b == 0)
    return std::nullopt;
  if (a == INT64_MIN && b == -1) // wraps
    return INT64_MIN;
  return a / b;
}

// floor(a/b) for b != 0, exact
long long floor_div(long long a, long long b) {
  long long q = *trunc_div(a, b);
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    --q;
  return q;
}

long long ceil_div(long long a, long long b) {
  long long q = *trunc_div(a, b);
  if ((a % b != 0) && ((a < 0) == (b < 0)))
    ++q;
  return q;
}

std::optional<long long> wpow(long long base, long long exp) {
  if (exp < 0)
    return std::nullopt;
  long long r = 1;
  // cap the loop; wrapping makes huge exponents uninformative anyway
  if (exp > 4096)
    return std::nullopt;
  for (long long i = 0; i < exp; ++i)
    r = wmul(r, base);
  return r;
}

// exact log_base(v) for v a positive power of base, else nullopt
std::optional<long long> exact_log(long long base, long long v) {
  if (v < 1)
    return std::nullopt;
  long long t = 0, p = 1;
  while (p < v) {
    p = wmul(p, base);
    ++t;
    if (t > 64)
      return std::nullopt;
  }
  return p == v ? std::optional<long long>(t) : std::nullopt;
}

// smallest integer t with scale * base^t >= target, for scale >= 1,
// target >= 1; this is ceil(log_base(target / scale)) exactly
std::optional<long long> ceil_log_ratio(long long base, long long target,
                                        long long scale) {
  if (scale < 1 || target < 1)
    return std::nullopt;
  if (scale >= target) {
    // non-positive result: largest s >= 0 with target * base^s <= scale
    long long s = 0;
    long long v = target;
    while (true) {
      long long next = wmul(v, base);
      if (next <= 0 || next > scale)
        break;
      v = next;
      ++s;
      if (s > 64)
        return std::nullopt;
    }
    return -s;
  }
  long long t = 0, v = scale;
  while (v < target) {
    v = wmul(v, base);
    ++t;
    if (t > 64 || v <= 0)
      return std::nullopt;
  }
  return t;
}

struct Ctx {
  const Valuation &v;
  std::map<std::string, long long> locals; // bounded-sum index vars
};

std::optional<long long> eval_e(const Expr &e, Ctx &c);
std::optional<bool> eval_f(const Formula &f, Ctx &c);

// Ceil/Floor arguments: one level of exact rational structure is
// recognized (a division, a log, or a difference of logs with the same
// base); any other argument is integer-valued already.
std::optional<long long> eval_round(const Expr &arg, bool up, Ctx &c) {
  if (arg->kind == ExprKind::Div) {
    auto p = eval_e(arg->kids[0], c);
    auto q = eval_e(arg->kids[1], c);
    if (!p || !q || *q == 0)
      return std::nullopt;
    return up ? ceil_div(*p, *q) : floor_div(*p, *q);
  }
  if (up && arg->kind == ExprKind::Log) {
    auto b = eval_e(arg->kids[0], c);
    if (!b)
      return std::nullopt;
    return ceil_log_ratio(arg->value, *b, 1);
  }
  if (up && arg->kind == ExprKind::Add && arg->kids.size() == 2) {
    // log(c, b) - log(c, a), canonically Add(log(c,b), Mul(-1, log(c,a)))
    const Expr &x = arg->kids[0];
    const Expr &y = arg->kids[1];
    if (x->kind == ExprKind::Log && y->kind == ExprKind::Mul &&
        y->kids.size() == 2 && is_int_const(y->kids[0], -1) &&
        y->kids[1]->kind == ExprKind::Log &&
        y->kids[1]->value == x->value) {
      auto b = eval_e(x->kids[0], c);
      auto a = eval_e(y->kids[1]->kids[0], c);
      if (!a || !b)
        return std::nullopt;
      return ceil_log_ratio(x->value, *b, *a);
    }
  }
  if (arg->kind == ExprKind::Sub && arg->kids.size() == 2 &&
      arg->kids[0]->kind == ExprKind::Log &&
      arg->kids[1]->kind == ExprKind::Log &&
      arg->kids[0]->value == arg->kids[1]->value && up) {
    auto b = eval_e(arg->kids[0]->kids[0], c);
    auto a = eval_e(arg->kids[1]->kids[0], c);
    if (!a || !b)
      return std::nullopt;
    return ceil_log_ratio(arg->kids[0]->value, *b, *a);
  }
  return eval_e(arg, c); // integer argument: rounding is the identity
}

std::optional<long long> eval_e(const Expr &e, Ctx &c) {
  if (e->has_unknown)
    return std::nullopt;
  switch (e->kind) {
  case ExprKind::IntConst:
    return e->value;
  case ExprKind::Symbol: {
    auto it = c.locals.find(e->name);
    if (it != c.locals.end())
      return it->second;
    auto it2 = c.v.scalars.find(e->name);
    if (it2 == c.v.scalars.end())
      return std::nullopt;
    return it2->second;
  }
  case ExprKind::PathCounter: {
    auto it = c.v.counters.find(e->counter);
    if (it == c.v.counters.end())
      return std::nullopt;
    return it->second;
  }
  case ExprKind::Unknown:
    return std::nullopt;
  case ExprKind::ArrayRead: {
    auto it = c.v.arrays.find(e->name);
    if (it == c.v.arrays.end())
      return std::nullopt;
    std::vector<long long> idx;
    idx.reserve(e->kids.size());
    for (const auto &k : e->kids) {
      auto x = eval_e(k, c);
      if (!x)
        return std::nullopt;
      idx.push_back(*x);
    }
    return it->second(idx);
  }
  case ExprKind::Add: {
    long long acc = 0;
    for (const auto &k : e->kids) {
      auto x = eval_e(k, c);
      if (!x)
        return std::nullopt;
      acc = wadd(acc, *x);
    }
    return acc;
  }
  case ExprKind::Sub: {
    auto a = eval_e(e->kids[0], c), b = eval_e(e->kids[1], c);
    if (!a || !b)
      return std::nullopt;
    return wsub(*a, *b);
  }
  case ExprKind::Mul: {
    long long acc = 1;
    for (const auto &k : e->kids) {
      auto x = eval_e(k, c);
      if (!x)
        return std::nullopt;
      acc = wmul(acc, *x);
    }
    return acc;
  }
  case ExprKind::Div: {
    auto a = eval_e(e->kids[0], c), b = eval_e(e->kids[1], c);
    if (!a || !b)
      return std::nullopt;
    return trunc_div(*a, *b);
  }
  case ExprKind::Max:
  case ExprKind::Min: {
    std::optional<long long> best;
    for (const auto &k : e->kids) {
      auto x = eval_e(k, c);
      if (!x)
        return std::nullopt;
      if (!best)
        best = *x;
      else
        best = e->kind == ExprKind::Max ? std::max(*best, *x)
                                        : std::min(*best, *x);
    }
    return best;
  }
  case ExprKind::Ceil:
    return eval_round(e->kids[0], /*up=*/true, c);
  case ExprKind::Floor:
    return eval_round(e->kids[0], /*up=*/false, c);
  case ExprKind::Ite: {
    auto b = eval_f(e->cond, c);
    if (!b)
      return std::nullopt;
    return eval_e(*b ? e->kids[0] : e->kids[1], c);
  }
  case ExprKind::BoundedSum: {
    auto lo = eval_e(e->kids[0], c), hi = eval_e(e->kids[1], c);
    if (!lo || !hi)
      return std::nullopt;
    if (*hi < *lo)
      return 0;
    const Expr &body = e->kids[2];
    std::set<std::string> free;
    collect_symbols(body, free);
    if (!free.count(e->name)) {
      // index-independent body: count * body, exact modulo 2^64
      auto b = eval_e(body, c);
      if (!b)
        return std::nullopt;
      long long count = wadd(wsub(*hi, *lo), 1);
      return wmul(count, *b);
    }
    if (static_cast<unsigned long long>(*hi) -
            static_cast<unsigned long long>(*lo) >
        1000000ull)
      return std::nullopt;
    long long acc = 0;
    auto saved = c.locals.find(e->name) != c.locals.end()
                     ? std::optional<long long>(c.locals[e->name])
                     : std::nullopt;
    for (long long k = *lo;; ++k) {
      c.locals[e->name] = k;
      auto x = eval_e(body, c);
      if (!x) {
        if (saved)
          c.locals[e->name] = *saved;
        else
          c.locals.erase(e->name);
        return std::nullopt;
      }
      acc = wadd(acc, *x);
      if (k == *hi)
        break;
    }
    if (saved)
      c.locals[e->name] = *saved;
    else
      c.locals.erase(e->name);
    return acc;
  }
  case ExprKind::Pow: {
    auto b = eval_e(e->kids[0], c), x = eval_e(e->kids[1], c);
    if (!b || !x)
      return std::nullopt;
    return wpow(*b, *x);
  }
  case ExprKind::Log: {
    auto a = eval_e(e->kids[0], c);
    if (!a)
      return std::nullopt;
    return exact_log(e->value, *a);
  }
  }
  return std::nullopt;
}

std::optional<bool> eval_f(const Formula &f, Ctx &c) {
  if (f->has_unknown)
    return std::nullopt;
  switch (f->kind) {
  case FormulaKind::True:
    return true;
  case FormulaKind::False:
    return false;
  case FormulaKind::Lt:
  case FormulaKind::Le:
  case FormulaKind::Eq:
  case FormulaKind::Neq: {
    auto a = eval_e(f->args[0], c);
    auto rb = eval_e(f->args[1], c);
    if (!a || !rb)
      return std::nullopt;
    switch (f->kind) {
    case FormulaKind::Lt:
      return *a < *rb;
    case FormulaKind::Le:
      return *a <= *rb;
    case FormulaKind::Eq:
      return *a == *rb;
    default:
      return *a != *rb;
    }
  }
  case FormulaKind::And: {
    // Kleene three-valued: false dominates unknown
    bool any_unknown = false;
    for (const auto &g : f->fs) {
      auto x = eval_f(g, c);
      if (!x)
        any_unknown = true;
      else if (!*x)
        return false;
    }
    if (any_unknown)
      return std::nullopt;
    return true;
  }
  case FormulaKind::Or: {
    bool any_unknown = false;
    for (const auto &g : f->fs) {
      auto x = eval_f(g, c);
      if (!x)
        any_unknown = true;
      else if (*x)
        return true;
    }
    if (any_unknown)
      return std::nullopt;
    return false;
  }
  case FormulaKind::Not: {
    auto x = eval_f(f->fs[0], c);
    if (!x)
      return std::nullopt;
    return !*x;
  }
  }
  return std::nullopt;
}

} // namespace

std::optional<long long> evaluate(const Expr &e, const Valuation &v) {
  Ctx c{v, {}};
  return eval_e(e, c);
}

std::optional<bool> evaluate(const Formula &f, const Valuation &v) {
  Ctx c{v, {}};
  return eval_f(f, c);
}

} // namespace loopbound
