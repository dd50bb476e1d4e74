#include "loopbound/simplify.hpp"

#include <algorithm>
#include <cassert>

namespace loopbound {

namespace {

long long wadd(long long a, long long b) {
  return static_cast<long long>(static_cast<unsigned long long>(a) +
                                static_cast<unsigned long long>(b));
}
long long wmul(long long a, long long b) {
  return static_cast<long long>(static_cast<unsigned long long>(a) *
                                static_cast<unsigned long long>(b));
}

std::function<void(const Expr &, const Expr &)> g_observer;

bool contains_kind(const Expr &e, ExprKind k1, ExprKind k2) {
  if (e->kind == k1 || e->kind == k2)
    return true;
  for (const auto &kid : e->kids)
    if (contains_kind(kid, k1, k2))
      return true;
  if (e->cond) {
    for (const auto &a : e->cond->args)
      if (contains_kind(a, k1, k2))
        return true;
    // formula subtrees of the condition
    std::vector<Formula> stack(e->cond->fs.begin(), e->cond->fs.end());
    while (!stack.empty()) {
      Formula f = stack.back();
      stack.pop_back();
      for (const auto &a : f->args)
        if (contains_kind(a, k1, k2))
          return true;
      for (const auto &g : f->fs)
        stack.push_back(g);
    }
  }
  return false;
}

Expr simp_e(const Expr &e);
Formula simp_f(const Formula &f);

// --- additive normal form ---------------------------------------------------

// term list: coefficient * term, plus a constant
struct LinAcc {
  std::map<Expr, long long, ExprLess> terms;
  long long cst = 0;

  void add_const(long long v) { cst = wadd(cst, v); }
  void add_term(long long coeff, const Expr &t) {
    auto [it, fresh] = terms.emplace(t, coeff);
    if (!fresh)
      it->second = wadd(it->second, coeff);
  }
};

// peel an integer coefficient off a canonical product
void split_coeff(const Expr &e, long long &coeff, Expr &rest) {
  if (e->kind == ExprKind::Mul && !e->kids.empty() &&
      e->kids[0]->kind == ExprKind::IntConst) {
    coeff = e->kids[0]->value;
    std::vector<Expr> kids(e->kids.begin() + 1, e->kids.end());
    rest = kids.size() == 1 ? kids[0] : mul_n(std::move(kids));
    return;
  }
  coeff = 1;
  rest = e;
}

void collect_add(const Expr &e, long long sign, LinAcc &acc) {
  switch (e->kind) {
  case ExprKind::IntConst:
    acc.add_const(wmul(sign, e->value));
    return;
  case ExprKind::Add:
    for (const auto &k : e->kids)
      collect_add(k, sign, acc);
    return;
  case ExprKind::Sub:
    collect_add(e->kids[0], sign, acc);
    collect_add(e->kids[1], wmul(sign, -1), acc);
    return;
  default: {
    long long c;
    Expr rest;
    split_coeff(e, c, rest);
    acc.add_term(wmul(sign, c), rest);
    return;
  }
  }
}

Expr rebuild_add(LinAcc &acc) {
  std::vector<Expr> kids;
  for (const auto &[t, c] : acc.terms) {
    if (c == 0) {
      // cancel only when evaluation of the term cannot be undefined
      if (!t->partial)
        continue;
      kids.push_back(mul_n({int_const(0), t}));
      continue;
    }
    if (c == 1)
      kids.push_back(t);
    else
      kids.push_back(mul_n({int_const(c), t}));
  }
  if (acc.cst != 0 || kids.empty())
    kids.push_back(int_const(acc.cst));
  return kids.size() == 1 ? kids[0] : add_n(std::move(kids));
}

Expr simp_additive(const Expr &e) {
  LinAcc acc;
  collect_add(e, 1, acc);
  return rebuild_add(acc);
}

// --- products ----------------------------------------------------------------

Expr simp_mul(const Expr &e) {
  long long coeff = 1;
  std::vector<Expr> factors;
  bool all_total = true;
  std::vector<Expr> stack(e->kids.rbegin(), e->kids.rend());
  while (!stack.empty()) {
    Expr k = stack.back();
    stack.pop_back();
    if (k->kind == ExprKind::IntConst) {
      coeff = wmul(coeff, k->value);
    } else if (k->kind == ExprKind::Mul) {
      for (auto it = k->kids.rbegin(); it != k->kids.rend(); ++it)
        stack.push_back(*it);
    } else {
      factors.push_back(k);
      all_total &= !k->partial;
    }
  }
  if (factors.empty())
    return int_const(coeff);
  if (coeff == 0 && all_total)
    return int_const(0);
  std::sort(factors.begin(), factors.end(), ExprLess{});
  if (coeff != 1)
    factors.insert(factors.begin(), int_const(coeff));
  return factors.size() == 1 ? factors[0] : mul_n(std::move(factors));
}

// --- max / min ---------------------------------------------------------------

Expr simp_maxmin(ExprKind kind, const Expr &e) {
  std::optional<long long> cst;
  std::vector<Expr> members;
  std::vector<Expr> stack(e->kids.rbegin(), e->kids.rend());
  while (!stack.empty()) {
    Expr k = stack.back();
    stack.pop_back();
    if (k->kind == kind) {
      for (auto it = k->kids.rbegin(); it != k->kids.rend(); ++it)
        stack.push_back(*it);
    } else if (k->kind == ExprKind::IntConst) {
      if (!cst)
        cst = k->value;
      else
        cst = kind == ExprKind::Max ? std::max(*cst, k->value)
                                    : std::min(*cst, k->value);
    } else {
      members.push_back(k);
    }
  }
  if (cst)
    members.push_back(int_const(*cst));
  std::sort(members.begin(), members.end(), ExprLess{});
  members.erase(std::unique(members.begin(), members.end(),
                            [](const Expr &a, const Expr &b) {
                              return equal(a, b);
                            }),
                members.end());
  if (members.size() == 1)
    return members[0];
  return kind == ExprKind::Max ? max_of(std::move(members))
                               : min_of(std::move(members));
}

// --- top-level dispatch --------------------------------------------------------

long long floor_div64(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    --q;
  return q;
}

long long ceil_div64(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0)))
    ++q;
  return q;
}

Expr simp_round(bool up, const Expr &arg0) {
  Expr arg = arg0;
  if (arg->kind == ExprKind::Div) {
    const Expr &p = arg->kids[0];
    const Expr &q = arg->kids[1];
    if (p->kind == ExprKind::IntConst && q->kind == ExprKind::IntConst &&
        q->value != 0 &&
        !(p->value == INT64_MIN && q->value == -1))
      return int_const(up ? ceil_div64(p->value, q->value)
                          : floor_div64(p->value, q->value));
  }
  // integer-valued argument: rounding is the identity
  if (!contains_kind(arg, ExprKind::Div, ExprKind::Log))
    return arg;
  return up ? ceil_of(arg) : floor_of(arg);
}

Expr simp_e(const Expr &e) {
  if (e->has_unknown)
    return unknown(); // absorbing
  switch (e->kind) {
  case ExprKind::IntConst:
  case ExprKind::Symbol:
  case ExprKind::PathCounter:
  case ExprKind::Unknown:
    return e;
  case ExprKind::ArrayRead: {
    std::vector<Expr> idx;
    idx.reserve(e->kids.size());
    for (const auto &k : e->kids)
      idx.push_back(simp_e(k));
    return array_read(e->name, std::move(idx));
  }
  case ExprKind::Add:
  case ExprKind::Sub: {
    std::vector<Expr> kids;
    kids.reserve(e->kids.size());
    for (const auto &k : e->kids)
      kids.push_back(simp_e(k));
    Expr flat = e->kind == ExprKind::Add ? add_n(std::move(kids))
                                         : sub(kids[0], kids[1]);
    return simp_additive(flat);
  }
  case ExprKind::Mul: {
    std::vector<Expr> kids;
    kids.reserve(e->kids.size());
    for (const auto &k : e->kids)
      kids.push_back(simp_e(k));
    Expr m = simp_mul(mul_n(std::move(kids)));
    // re-normalize products that collapsed into sums' shapes
    return m;
  }
  case ExprKind::Div: {
    Expr a = simp_e(e->kids[0]);
    Expr b = simp_e(e->kids[1]);
    if (is_int_const(b, 1))
      return a;
    if (a->kind == ExprKind::IntConst && b->kind == ExprKind::IntConst &&
        b->value != 0 && a->value % b->value == 0 &&
        !(a->value == INT64_MIN && b->value == -1))
      return int_const(a->value / b->value);
    if (is_int_const(a, 0) && b->kind == ExprKind::IntConst && b->value != 0)
      return int_const(0);
    return div_of(a, b);
  }
  case ExprKind::Max:
  case ExprKind::Min: {
    std::vector<Expr> kids;
    kids.reserve(e->kids.size());
    for (const auto &k : e->kids)
      kids.push_back(simp_e(k));
    if (kids.size() == 1)
      return kids[0];
    Expr flat = e->kind == ExprKind::Max ? max_of(std::move(kids))
                                         : min_of(std::move(kids));
    return simp_maxmin(e->kind, flat);
  }
  case ExprKind::Ceil:
    return simp_round(true, simp_e(e->kids[0]));
  case ExprKind::Floor:
    return simp_round(false, simp_e(e->kids[0]));
  case ExprKind::Ite: {
    Formula c = simp_f(e->cond);
    Expr t = simp_e(e->kids[0]);
    Expr f = simp_e(e->kids[1]);
    if (c->kind == FormulaKind::True)
      return t;
    if (c->kind == FormulaKind::False)
      return f;
    return ite(c, t, f);
  }
  case ExprKind::BoundedSum: {
    Expr lo = simp_e(e->kids[0]);
    Expr hi = simp_e(e->kids[1]);
    Expr body = simp_e(e->kids[2]);
    if (lo->kind == ExprKind::IntConst && hi->kind == ExprKind::IntConst) {
      if (hi->value < lo->value)
        return int_const(0);
      unsigned long long count =
          static_cast<unsigned long long>(hi->value) -
          static_cast<unsigned long long>(lo->value) + 1;
      std::set<std::string> free;
      collect_symbols(body, free);
      if (!free.count(e->name))
        return simp_e(mul(int_const(static_cast<long long>(count)), body));
      if (count <= 8) {
        std::vector<Expr> terms;
        for (long long k = lo->value; k <= hi->value; ++k) {
          Bindings b;
          b.symbols.emplace(e->name, int_const(k));
          terms.push_back(substitute(body, b));
        }
        return simp_e(add_n(std::move(terms)));
      }
    }
    return bounded_sum(e->name, lo, hi, body);
  }
  case ExprKind::Pow: {
    Expr b = simp_e(e->kids[0]);
    Expr x = simp_e(e->kids[1]);
    if (is_int_const(x, 0) && !b->partial)
      return int_const(1);
    if (is_int_const(x, 1))
      return b;
    if (b->kind == ExprKind::IntConst && x->kind == ExprKind::IntConst &&
        x->value >= 0 && x->value <= 63) {
      long long r = 1;
      for (long long i = 0; i < x->value; ++i)
        r = wmul(r, b->value);
      return int_const(r);
    }
    return pow_of(b, x);
  }
  case ExprKind::Log: {
    Expr a = simp_e(e->kids[0]);
    if (a->kind == ExprKind::IntConst && a->value >= 1) {
      long long t = 0, p = 1;
      while (p < a->value && t <= 64) {
        p = wmul(p, e->value);
        ++t;
      }
      if (p == a->value)
        return int_const(t);
    }
    return log_of(e->value, a);
  }
  }
  return e;
}

// --- formulas ----------------------------------------------------------------

Formula negate_raw(const Formula &f) {
  switch (f->kind) {
  case FormulaKind::True:
    return f_false();
  case FormulaKind::False:
    return f_true();
  case FormulaKind::Lt: // !(a < b) -> b <= a
    return f_le(f->args[1], f->args[0]);
  case FormulaKind::Le: // !(a <= b) -> b < a
    return f_lt(f->args[1], f->args[0]);
  case FormulaKind::Eq:
    return f_neq(f->args[0], f->args[1]);
  case FormulaKind::Neq:
    return f_eq(f->args[0], f->args[1]);
  case FormulaKind::And:
  case FormulaKind::Or: {
    std::vector<Formula> fs;
    fs.reserve(f->fs.size());
    for (const auto &g : f->fs)
      fs.push_back(negate_raw(g));
    return f->kind == FormulaKind::And ? f_or(std::move(fs))
                                       : f_and(std::move(fs));
  }
  case FormulaKind::Not:
    return f->fs[0];
  }
  return f_not(f);
}

Formula simp_f(const Formula &f) {
  switch (f->kind) {
  case FormulaKind::True:
  case FormulaKind::False:
    return f;
  case FormulaKind::Lt:
  case FormulaKind::Le:
  case FormulaKind::Eq:
  case FormulaKind::Neq: {
    Expr a = simp_e(f->args[0]);
    Expr b = simp_e(f->args[1]);
    if (a->kind == ExprKind::IntConst && b->kind == ExprKind::IntConst) {
      bool v;
      switch (f->kind) {
      case FormulaKind::Lt:
        v = a->value < b->value;
        break;
      case FormulaKind::Le:
        v = a->value <= b->value;
        break;
      case FormulaKind::Eq:
        v = a->value == b->value;
        break;
      default:
        v = a->value != b->value;
        break;
      }
      return v ? f_true() : f_false();
    }
    switch (f->kind) {
    case FormulaKind::Lt:
      return f_lt(a, b);
    case FormulaKind::Le:
      return f_le(a, b);
    case FormulaKind::Eq:
      return f_eq(a, b);
    default:
      return f_neq(a, b);
    }
  }
  case FormulaKind::And:
  case FormulaKind::Or: {
    const bool is_and = f->kind == FormulaKind::And;
    std::vector<Formula> out;
    std::vector<Formula> stack(f->fs.rbegin(), f->fs.rend());
    while (!stack.empty()) {
      Formula g = simp_f(stack.back());
      stack.pop_back();
      if (g->kind == f->kind) {
        for (auto it = g->fs.rbegin(); it != g->fs.rend(); ++it)
          stack.push_back(*it);
        continue;
      }
      if (is_and) {
        if (g->kind == FormulaKind::False)
          return f_false();
        if (g->kind == FormulaKind::True)
          continue;
      } else {
        if (g->kind == FormulaKind::True)
          return f_true();
        if (g->kind == FormulaKind::False)
          continue;
      }
      out.push_back(g);
    }
    if (out.empty())
      return is_and ? f_true() : f_false();
    return is_and ? f_and(std::move(out)) : f_or(std::move(out));
  }
  case FormulaKind::Not:
    return simp_f(negate_raw(f->fs[0]));
  }
  return f;
}

} // namespace

Expr simplify(const Expr &e) {
  Expr out = simp_e(e);
  if (g_observer)
    g_observer(e, out);
  return out;
}

Formula simplify(const Formula &f) { return simp_f(f); }

Formula negate(const Formula &f) { return simp_f(negate_raw(f)); }

void set_simplify_observer(
    std::function<void(const Expr &, const Expr &)> f) {
  g_observer = std::move(f);
}

// --- counter-linear decomposition ------------------------------------------

bool decompose_counter_linear(const Expr &e, std::map<int, Expr> &coeffs,
                              Expr &rest) {
  coeffs.clear();
  if (!e->has_counter) {
    rest = e;
    return true;
  }
  LinAcc others;
  std::vector<Expr> kids =
      e->kind == ExprKind::Add ? e->kids : std::vector<Expr>{e};
  for (const auto &term : kids) {
    if (!term->has_counter) {
      collect_add(term, 1, others);
      continue;
    }
    if (term->kind == ExprKind::PathCounter) {
      auto [it, fresh] = coeffs.emplace(term->counter, int_const(1));
      if (!fresh)
        return false; // canonical form holds each counter once
      continue;
    }
    if (term->kind == ExprKind::Mul) {
      // exactly one factor must be the counter; the rest is the coefficient
      int cid = -1;
      std::vector<Expr> coeff_parts;
      for (const auto &fac : term->kids) {
        if (fac->kind == ExprKind::PathCounter) {
          if (cid != -1)
            return false; // counter squared
          cid = fac->counter;
        } else if (fac->has_counter) {
          return false; // counter nested in a non-linear position
        } else {
          coeff_parts.push_back(fac);
        }
      }
      if (cid == -1)
        return false;
      Expr coeff = coeff_parts.empty() ? int_const(1)
                                       : simp_e(mul_n(std::move(coeff_parts)));
      auto [it, fresh] = coeffs.emplace(cid, coeff);
      if (!fresh)
        return false;
      continue;
    }
    return false; // counter under max/ite/div/...: not linear
  }
  rest = rebuild_add(others);
  return true;
}

std::optional<AffineCounterForm> match_affine_counter_form(const Expr &e) {
  if (e->kind != ExprKind::Max || e->kids.size() != 2 || !e->has_counter)
    return std::nullopt;
  const Expr *cpart = nullptr;
  const Expr *kpart = nullptr;
  for (const auto &k : e->kids) {
    if (k->has_counter)
      kpart = &k;
    else
      cpart = &k;
  }
  if (!cpart || !kpart)
    return std::nullopt;
  AffineCounterForm out;
  out.c = *cpart;
  if (!decompose_counter_linear(*kpart, out.coeffs, out.b))
    return std::nullopt;
  if (out.b->has_counter)
    return std::nullopt;
  for (const auto &[id, coeff] : out.coeffs)
    if (coeff->has_counter || coeff->has_unknown)
      return std::nullopt;
  return out;
}

} // namespace loopbound
