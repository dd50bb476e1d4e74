#include <sstream>

#include "loopbound/expr.hpp"

namespace loopbound {

namespace {

// precedence levels: 0 atom, 1 add/sub, 2 mul/div
int prec(const Expr &e) {
  switch (e->kind) {
  case ExprKind::Add:
  case ExprKind::Sub:
    return 1;
  case ExprKind::Mul:
  case ExprKind::Div:
    return 2;
  default:
    return 3;
  }
}

void emit(std::ostream &os, const Expr &e, Syntax s, int parent_prec);
void emit(std::ostream &os, const Formula &f, Syntax s, bool parens);

// splits a canonical additive child into sign and magnitude for printing
// "a - b" instead of "a + -1*b"
bool negative_term(const Expr &e, Expr &abs_out) {
  if (e->kind == ExprKind::IntConst && e->value < 0 &&
      e->value != INT64_MIN) {
    abs_out = int_const(-e->value);
    return true;
  }
  if (e->kind == ExprKind::Mul && !e->kids.empty() &&
      e->kids[0]->kind == ExprKind::IntConst && e->kids[0]->value < 0 &&
      e->kids[0]->value != INT64_MIN) {
    std::vector<Expr> kids = e->kids;
    long long c = -kids[0]->value;
    if (c == 1) {
      kids.erase(kids.begin());
      abs_out = kids.size() == 1 ? kids[0] : mul_n(std::move(kids));
    } else {
      kids[0] = int_const(c);
      abs_out = mul_n(std::move(kids));
    }
    return true;
  }
  return false;
}

void emit_list(std::ostream &os, const std::vector<Expr> &kids, Syntax s) {
  for (size_t i = 0; i < kids.size(); ++i) {
    if (i)
      os << ", ";
    emit(os, kids[i], s, 0);
  }
}

void emit(std::ostream &os, const Expr &e, Syntax s, int parent_prec) {
  const int p = prec(e);
  const bool need = p < parent_prec && p <= 2;
  if (need)
    os << '(';
  switch (e->kind) {
  case ExprKind::IntConst:
    os << e->value;
    break;
  case ExprKind::Symbol:
    if (s == Syntax::Symbolic)
      os << '$';
    os << e->name;
    break;
  case ExprKind::ArrayRead:
    if (s == Syntax::Symbolic) {
      os << '$' << e->name << '(';
      emit_list(os, e->kids, s);
      os << ')';
    } else {
      os << e->name;
      for (const auto &k : e->kids) {
        os << '[';
        emit(os, k, s, 0);
        os << ']';
      }
    }
    break;
  case ExprKind::PathCounter:
    os << 'k' << e->counter;
    break;
  case ExprKind::Unknown:
    os << '*';
    break;
  case ExprKind::Add: {
    for (size_t i = 0; i < e->kids.size(); ++i) {
      Expr abs;
      if (i == 0) {
        emit(os, e->kids[i], s, 1);
      } else if (negative_term(e->kids[i], abs)) {
        os << " - ";
        emit(os, abs, s, 2);
      } else {
        os << " + ";
        emit(os, e->kids[i], s, 2);
      }
    }
    break;
  }
  case ExprKind::Sub:
    emit(os, e->kids[0], s, 1);
    os << " - ";
    emit(os, e->kids[1], s, 2);
    break;
  case ExprKind::Mul: {
    // canonical -1 coefficient renders as a leading minus
    size_t start = 0;
    if (e->kids.size() >= 2 && is_int_const(e->kids[0], -1)) {
      os << '-';
      start = 1;
    }
    for (size_t i = start; i < e->kids.size(); ++i) {
      if (i > start)
        os << '*';
      emit(os, e->kids[i], s, 3);
    }
    break;
  }
  case ExprKind::Div:
    emit(os, e->kids[0], s, 3);
    os << '/';
    emit(os, e->kids[1], s, 3);
    break;
  case ExprKind::Max:
  case ExprKind::Min:
    os << (e->kind == ExprKind::Max ? "max{" : "min{");
    emit_list(os, e->kids, s);
    os << '}';
    break;
  case ExprKind::Ceil:
  case ExprKind::Floor:
    os << (e->kind == ExprKind::Ceil ? "ceil(" : "floor(");
    emit(os, e->kids[0], s, 0);
    os << ')';
    break;
  case ExprKind::Ite:
    os << "ite(";
    emit(os, e->cond, s, false);
    os << ", ";
    emit(os, e->kids[0], s, 0);
    os << ", ";
    emit(os, e->kids[1], s, 0);
    os << ')';
    break;
  case ExprKind::BoundedSum:
    os << "sum(" << e->name << '=';
    emit(os, e->kids[0], s, 0);
    os << "..";
    emit(os, e->kids[1], s, 0);
    os << ", ";
    emit(os, e->kids[2], s, 0);
    os << ')';
    break;
  case ExprKind::Pow:
    os << "pow(";
    emit(os, e->kids[0], s, 0);
    os << ", ";
    emit(os, e->kids[1], s, 0);
    os << ')';
    break;
  case ExprKind::Log:
    os << "log(" << e->value << ", ";
    emit(os, e->kids[0], s, 0);
    os << ')';
    break;
  }
  if (need)
    os << ')';
}

void emit(std::ostream &os, const Formula &f, Syntax s, bool parens) {
  switch (f->kind) {
  case FormulaKind::True:
    os << "true";
    break;
  case FormulaKind::False:
    os << "false";
    break;
  case FormulaKind::Lt:
  case FormulaKind::Le:
  case FormulaKind::Eq:
  case FormulaKind::Neq: {
    emit(os, f->args[0], s, 1);
    switch (f->kind) {
    case FormulaKind::Lt:
      os << " < ";
      break;
    case FormulaKind::Le:
      os << " <= ";
      break;
    case FormulaKind::Eq:
      os << " == ";
      break;
    default:
      os << " != ";
      break;
    }
    emit(os, f->args[1], s, 1);
    break;
  }
  case FormulaKind::And:
  case FormulaKind::Or: {
    if (parens)
      os << '(';
    const char *op = f->kind == FormulaKind::And ? " && " : " || ";
    for (size_t i = 0; i < f->fs.size(); ++i) {
      if (i)
        os << op;
      const auto &g = f->fs[i];
      bool inner = g->kind == FormulaKind::And || g->kind == FormulaKind::Or;
      emit(os, g, s, inner);
    }
    if (parens)
      os << ')';
    break;
  }
  case FormulaKind::Not:
    os << "!(";
    emit(os, f->fs[0], s, false);
    os << ')';
    break;
  }
}

} // namespace

std::string to_string(const Expr &e, Syntax s) {
  std::ostringstream os;
  emit(os, e, s, 0);
  return os.str();
}

std::string to_string(const Formula &f, Syntax s) {
  std::ostringstream os;
  emit(os, f, s, false);
  return os.str();
}

} // namespace loopbound
