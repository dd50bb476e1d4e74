#include "loopbound/expr.hpp"

#include <algorithm>
#include <cassert>

#include "loopbound/errors.hpp"

namespace loopbound {

namespace {

std::shared_ptr<ExprNode> base(ExprKind k) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  return n;
}

void absorb(ExprNode &n, const Expr &kid) {
  n.has_counter |= kid->has_counter;
  n.has_unknown |= kid->has_unknown;
  n.partial |= kid->partial;
}

void absorb(ExprNode &n, const Formula &f) {
  n.has_counter |= f->has_counter;
  n.has_unknown |= f->has_unknown;
  n.partial |= f->partial;
}

Expr nary(ExprKind k, std::vector<Expr> kids, bool partial_kind = false) {
  auto n = base(k);
  n->partial = partial_kind;
  for (const auto &kid : kids)
    absorb(*n, kid);
  n->kids = std::move(kids);
  return n;
}

} // namespace

Expr int_const(long long v) {
  auto n = base(ExprKind::IntConst);
  n->value = v;
  return n;
}

Expr symbol(const std::string &name) {
  auto n = base(ExprKind::Symbol);
  n->name = name;
  return n;
}

Expr array_read(const std::string &array, std::vector<Expr> indices) {
  auto n = nary(ExprKind::ArrayRead, std::move(indices), /*partial=*/true);
  const_cast<ExprNode &>(*n).name = array;
  return n;
}

Expr path_counter(int id) {
  auto n = base(ExprKind::PathCounter);
  n->counter = id;
  n->has_counter = true;
  return n;
}

Expr unknown() {
  auto n = base(ExprKind::Unknown);
  n->has_unknown = true;
  return n;
}

Expr add(Expr a, Expr b) { return add_n({std::move(a), std::move(b)}); }

Expr add_n(std::vector<Expr> kids) {
  assert(!kids.empty());
  if (kids.size() == 1)
    return kids[0];
  return nary(ExprKind::Add, std::move(kids));
}

Expr sub(Expr a, Expr b) {
  return nary(ExprKind::Sub, {std::move(a), std::move(b)});
}

Expr mul(Expr a, Expr b) { return mul_n({std::move(a), std::move(b)}); }

Expr mul_n(std::vector<Expr> kids) {
  assert(!kids.empty());
  if (kids.size() == 1)
    return kids[0];
  return nary(ExprKind::Mul, std::move(kids));
}

Expr div_of(Expr a, Expr b) {
  return nary(ExprKind::Div, {std::move(a), std::move(b)}, /*partial=*/true);
}

Expr max_of(std::vector<Expr> kids) {
  assert(!kids.empty());
  if (kids.size() == 1)
    return kids[0];
  return nary(ExprKind::Max, std::move(kids));
}

Expr min_of(std::vector<Expr> kids) {
  assert(!kids.empty());
  if (kids.size() == 1)
    return kids[0];
  return nary(ExprKind::Min, std::move(kids));
}

Expr ceil_of(Expr a) {
  return nary(ExprKind::Ceil, {std::move(a)}, /*partial=*/true);
}

Expr floor_of(Expr a) {
  return nary(ExprKind::Floor, {std::move(a)}, /*partial=*/true);
}

Expr ite(Formula c, Expr t, Expr e) {
  auto n = base(ExprKind::Ite);
  absorb(*n, c);
  absorb(*n, t);
  absorb(*n, e);
  n->cond = std::move(c);
  n->kids = {std::move(t), std::move(e)};
  return n;
}

Expr bounded_sum(const std::string &index, Expr lo, Expr hi, Expr body) {
  auto n = nary(ExprKind::BoundedSum,
                {std::move(lo), std::move(hi), std::move(body)},
                /*partial=*/true);
  const_cast<ExprNode &>(*n).name = index;
  return n;
}

Expr pow_of(Expr b, Expr e) {
  return nary(ExprKind::Pow, {std::move(b), std::move(e)}, /*partial=*/true);
}

Expr log_of(long long base_, Expr arg) {
  assert(base_ >= 2);
  auto n = nary(ExprKind::Log, {std::move(arg)}, /*partial=*/true);
  const_cast<ExprNode &>(*n).value = base_;
  return n;
}

// ---- formulas -------------------------------------------------------------

namespace {

std::shared_ptr<FormulaNode> fbase(FormulaKind k) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  return n;
}

Formula atom(FormulaKind k, Expr a, Expr b) {
  auto n = fbase(k);
  n->has_counter = a->has_counter || b->has_counter;
  n->has_unknown = a->has_unknown || b->has_unknown;
  n->partial = a->partial || b->partial;
  n->args = {std::move(a), std::move(b)};
  return n;
}

} // namespace

Formula f_true() { return fbase(FormulaKind::True); }
Formula f_false() { return fbase(FormulaKind::False); }
Formula f_lt(Expr a, Expr b) {
  return atom(FormulaKind::Lt, std::move(a), std::move(b));
}
Formula f_le(Expr a, Expr b) {
  return atom(FormulaKind::Le, std::move(a), std::move(b));
}
Formula f_eq(Expr a, Expr b) {
  return atom(FormulaKind::Eq, std::move(a), std::move(b));
}
Formula f_neq(Expr a, Expr b) {
  return atom(FormulaKind::Neq, std::move(a), std::move(b));
}

Formula f_and(std::vector<Formula> fs) {
  assert(!fs.empty());
  if (fs.size() == 1)
    return fs[0];
  auto n = fbase(FormulaKind::And);
  for (const auto &f : fs) {
    n->has_counter |= f->has_counter;
    n->has_unknown |= f->has_unknown;
    n->partial |= f->partial;
  }
  n->fs = std::move(fs);
  return n;
}

Formula f_or(std::vector<Formula> fs) {
  assert(!fs.empty());
  if (fs.size() == 1)
    return fs[0];
  auto n = fbase(FormulaKind::Or);
  for (const auto &f : fs) {
    n->has_counter |= f->has_counter;
    n->has_unknown |= f->has_unknown;
    n->partial |= f->partial;
  }
  n->fs = std::move(fs);
  return n;
}

Formula f_not(Formula f) {
  auto n = fbase(FormulaKind::Not);
  n->has_counter = f->has_counter;
  n->has_unknown = f->has_unknown;
  n->partial = f->partial;
  n->fs = {std::move(f)};
  return n;
}

// ---- predicates and ordering ----------------------------------------------

bool is_int_const(const Expr &e, long long v) {
  return e->kind == ExprKind::IntConst && e->value == v;
}

namespace {

template <typename T> int cmp3(const T &a, const T &b) {
  if (a < b)
    return -1;
  if (b < a)
    return 1;
  return 0;
}

} // namespace

int compare(const Expr &a, const Expr &b) {
  if (a.get() == b.get())
    return 0;
  if (int c = cmp3(static_cast<int>(a->kind), static_cast<int>(b->kind)))
    return c;
  if (int c = cmp3(a->value, b->value))
    return c;
  if (int c = a->name.compare(b->name))
    return c < 0 ? -1 : 1;
  if (int c = cmp3(a->counter, b->counter))
    return c;
  if (int c = cmp3(a->kids.size(), b->kids.size()))
    return c;
  for (size_t i = 0; i < a->kids.size(); ++i)
    if (int c = compare(a->kids[i], b->kids[i]))
      return c;
  const bool ha = a->cond != nullptr, hb = b->cond != nullptr;
  if (ha != hb)
    return ha ? 1 : -1;
  if (ha)
    return compare(a->cond, b->cond);
  return 0;
}

int compare(const Formula &a, const Formula &b) {
  if (a.get() == b.get())
    return 0;
  if (int c = cmp3(static_cast<int>(a->kind), static_cast<int>(b->kind)))
    return c;
  if (int c = cmp3(a->args.size(), b->args.size()))
    return c;
  for (size_t i = 0; i < a->args.size(); ++i)
    if (int c = compare(a->args[i], b->args[i]))
      return c;
  if (int c = cmp3(a->fs.size(), b->fs.size()))
    return c;
  for (size_t i = 0; i < a->fs.size(); ++i)
    if (int c = compare(a->fs[i], b->fs[i]))
      return c;
  return 0;
}

// ---- collectors -----------------------------------------------------------

void collect_symbols(const Expr &e, std::set<std::string> &out) {
  if (e->kind == ExprKind::Symbol)
    out.insert(e->name);
  for (const auto &k : e->kids)
    collect_symbols(k, out);
  if (e->cond)
    collect_symbols(e->cond, out);
  if (e->kind == ExprKind::BoundedSum)
    out.erase(e->name); // bound index is not free
}

void collect_symbols(const Formula &f, std::set<std::string> &out) {
  for (const auto &a : f->args)
    collect_symbols(a, out);
  for (const auto &g : f->fs)
    collect_symbols(g, out);
}

void collect_counters(const Expr &e, std::set<int> &out) {
  if (!e->has_counter)
    return;
  if (e->kind == ExprKind::PathCounter)
    out.insert(e->counter);
  for (const auto &k : e->kids)
    collect_counters(k, out);
  if (e->cond)
    collect_counters(e->cond, out);
}

void collect_counters(const Formula &f, std::set<int> &out) {
  if (!f->has_counter)
    return;
  for (const auto &a : f->args)
    collect_counters(a, out);
  for (const auto &g : f->fs)
    collect_counters(g, out);
}

void collect_arrays(const Expr &e, std::map<std::string, size_t> &out) {
  if (e->kind == ExprKind::ArrayRead)
    out.emplace(e->name, e->kids.size());
  for (const auto &k : e->kids)
    collect_arrays(k, out);
  if (e->cond)
    collect_arrays(e->cond, out);
}

void collect_arrays(const Formula &f, std::map<std::string, size_t> &out) {
  for (const auto &a : f->args)
    collect_arrays(a, out);
  for (const auto &g : f->fs)
    collect_arrays(g, out);
}

// ---- substitution ---------------------------------------------------------

namespace {

Expr subst_expr(const Expr &e, const Bindings &b);

Formula subst_formula(const Formula &f, const Bindings &b) {
  switch (f->kind) {
  case FormulaKind::True:
  case FormulaKind::False:
    return f;
  case FormulaKind::Lt:
  case FormulaKind::Le:
  case FormulaKind::Eq:
  case FormulaKind::Neq: {
    Expr l = subst_expr(f->args[0], b);
    Expr r = subst_expr(f->args[1], b);
    switch (f->kind) {
    case FormulaKind::Lt:
      return f_lt(l, r);
    case FormulaKind::Le:
      return f_le(l, r);
    case FormulaKind::Eq:
      return f_eq(l, r);
    default:
      return f_neq(l, r);
    }
  }
  case FormulaKind::And:
  case FormulaKind::Or: {
    std::vector<Formula> fs;
    fs.reserve(f->fs.size());
    for (const auto &g : f->fs)
      fs.push_back(subst_formula(g, b));
    return f->kind == FormulaKind::And ? f_and(std::move(fs))
                                       : f_or(std::move(fs));
  }
  case FormulaKind::Not:
    return f_not(subst_formula(f->fs[0], b));
  }
  return f;
}

Expr subst_expr(const Expr &e, const Bindings &b) {
  switch (e->kind) {
  case ExprKind::Symbol: {
    auto it = b.symbols.find(e->name);
    return it != b.symbols.end() ? it->second : e;
  }
  case ExprKind::PathCounter: {
    auto it = b.counters.find(e->counter);
    return it != b.counters.end() ? it->second : e;
  }
  case ExprKind::IntConst:
  case ExprKind::Unknown:
    return e;
  case ExprKind::BoundedSum: {
    // the index variable shadows any symbol binding of the same name
    const Bindings *inner = &b;
    Bindings shadowed;
    if (b.symbols.count(e->name)) {
      shadowed = b;
      shadowed.symbols.erase(e->name);
      inner = &shadowed;
    }
    return bounded_sum(e->name, subst_expr(e->kids[0], b),
                       subst_expr(e->kids[1], b),
                       subst_expr(e->kids[2], *inner));
  }
  case ExprKind::Ite:
    return ite(subst_formula(e->cond, b), subst_expr(e->kids[0], b),
               subst_expr(e->kids[1], b));
  default: {
    std::vector<Expr> kids;
    kids.reserve(e->kids.size());
    for (const auto &k : e->kids)
      kids.push_back(subst_expr(k, b));
    auto n = std::make_shared<ExprNode>();
    n->kind = e->kind;
    n->value = e->value;
    n->name = e->name;
    n->counter = e->counter;
    n->partial = e->partial && e->kids.empty();
    // recompute flags from the new children
    switch (e->kind) {
    case ExprKind::ArrayRead:
    case ExprKind::Div:
    case ExprKind::Ceil:
    case ExprKind::Floor:
    case ExprKind::Pow:
    case ExprKind::Log:
      n->partial = true;
      break;
    default:
      break;
    }
    for (const auto &k : kids) {
      n->has_counter |= k->has_counter;
      n->has_unknown |= k->has_unknown;
      n->partial |= k->partial;
    }
    n->kids = std::move(kids);
    return n;
  }
  }
}

} // namespace

Expr substitute(const Expr &e, const Bindings &b) { return subst_expr(e, b); }
Formula substitute(const Formula &f, const Bindings &b) {
  return subst_formula(f, b);
}

// ---- symbolic memory ------------------------------------------------------

SymbolicMemory SymbolicMemory::initial(const std::set<std::string> &scalars,
                                       const std::set<std::string> &arrays) {
  SymbolicMemory m;
  for (const auto &s : scalars)
    m.scalars_.emplace(s, symbol(s));
  m.arrays_ = arrays;
  return m;
}

const Expr &SymbolicMemory::get(const std::string &var) const {
  auto it = scalars_.find(var);
  if (it == scalars_.end())
    throw UnknownVariable(var);
  return it->second;
}

void SymbolicMemory::set(const std::string &var, Expr value) {
  scalars_[var] = std::move(value);
}

namespace {

// Shared walker for compose/apply_memory.  Replacement values are inserted
// as-is (simultaneous substitution).
Expr memory_walk(const SymbolicMemory &theta, const Expr &e, bool require) {
  switch (e->kind) {
  case ExprKind::Symbol: {
    auto it = theta.scalars().find(e->name);
    if (it != theta.scalars().end())
      return it->second;
    if (require)
      throw UnknownVariable(e->name);
    return e;
  }
  case ExprKind::ArrayRead: {
    if (require && !theta.arrays().count(e->name))
      throw UnknownVariable(e->name);
    std::vector<Expr> idx;
    idx.reserve(e->kids.size());
    for (const auto &k : e->kids)
      idx.push_back(memory_walk(theta, k, require));
    return array_read(e->name, std::move(idx));
  }
  case ExprKind::IntConst:
  case ExprKind::PathCounter:
  case ExprKind::Unknown:
    return e;
  default:
    break;
  }
  // generic rebuild via substitute-style recursion
  Bindings b;
  std::set<std::string> syms;
  collect_symbols(e, syms);
  bool any = false;
  for (const auto &s : syms) {
    auto it = theta.scalars().find(s);
    if (it != theta.scalars().end()) {
      b.symbols.emplace(s, it->second);
      any = true;
    } else if (require) {
      throw UnknownVariable(s);
    }
  }
  if (require) {
    std::map<std::string, size_t> arrs;
    collect_arrays(e, arrs);
    for (const auto &[a, arity] : arrs) {
      (void)arity;
      if (!theta.arrays().count(a))
        throw UnknownVariable(a);
    }
  }
  if (!any)
    return e;
  return substitute(e, b);
}

} // namespace

Expr compose(const SymbolicMemory &theta, const Expr &psi) {
  return memory_walk(theta, psi, false);
}

Formula compose(const SymbolicMemory &theta, const Formula &psi) {
  Bindings b;
  std::set<std::string> syms;
  collect_symbols(psi, syms);
  for (const auto &s : syms) {
    auto it = theta.scalars().find(s);
    if (it != theta.scalars().end())
      b.symbols.emplace(s, it->second);
  }
  return substitute(psi, b);
}

Expr apply_memory(const SymbolicMemory &theta, const Expr &expr) {
  return memory_walk(theta, expr, true);
}

Formula apply_memory(const SymbolicMemory &theta, const Formula &expr) {
  std::set<std::string> syms;
  collect_symbols(expr, syms);
  Bindings b;
  for (const auto &s : syms)
    b.symbols.emplace(s, theta.get(s));
  std::map<std::string, size_t> arrs;
  collect_arrays(expr, arrs);
  for (const auto &[a, arity] : arrs) {
    (void)arity;
    if (!theta.arrays().count(a))
      throw UnknownVariable(a);
  }
  return substitute(expr, b);
}

} // namespace loopbound
