#pragma once

// Symbolic expression kernel: integer expressions over input symbols,
// uninterpreted array symbols, path counters and the absorbing unknown
// value, plus the boolean formulas built over them.  Trees are immutable
// and shared; all operations return fresh trees.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace loopbound {

enum class ExprKind : std::uint8_t {
  IntConst,
  Symbol,
  ArrayRead,
  PathCounter,
  Unknown,
  Add,
  Sub,
  Mul,
  Div,
  Max,
  Min,
  Ceil,
  Floor,
  Ite,
  BoundedSum,
  Pow,
  Log,
};

enum class FormulaKind : std::uint8_t {
  True,
  False,
  Lt,
  Le,
  Eq,
  Neq,
  And,
  Or,
  Not,
};

class ExprNode;
class FormulaNode;
using Expr = std::shared_ptr<const ExprNode>;
using Formula = std::shared_ptr<const FormulaNode>;

class ExprNode {
public:
  ExprKind kind;
  long long value = 0;    // IntConst value; Log base
  std::string name;       // Symbol / ArrayRead array / BoundedSum index var
  int counter = 0;        // PathCounter id
  std::vector<Expr> kids; // operands; BoundedSum: lower, upper, body
  Formula cond;           // Ite condition

  // cached structural facts
  bool has_counter = false; // contains some path counter
  bool has_unknown = false; // contains the unknown value
  bool partial = false;     // evaluation may be undefined (div, arrays, ...)
};

class FormulaNode {
public:
  FormulaKind kind;
  std::vector<Expr> args;      // atom operands (two for Lt/Le/Eq/Neq)
  std::vector<Formula> fs;     // And/Or/Not operands

  bool has_counter = false;
  bool has_unknown = false;
  bool partial = false;
};

// ---- constructors ---------------------------------------------------------

Expr int_const(long long v);
Expr symbol(const std::string &name);
Expr array_read(const std::string &array, std::vector<Expr> indices);
Expr path_counter(int id);
Expr unknown();
Expr add(Expr a, Expr b);
Expr add_n(std::vector<Expr> kids);
Expr sub(Expr a, Expr b);
Expr mul(Expr a, Expr b);
Expr mul_n(std::vector<Expr> kids);
Expr div_of(Expr a, Expr b);
Expr max_of(std::vector<Expr> kids);
Expr min_of(std::vector<Expr> kids);
Expr ceil_of(Expr a);
Expr floor_of(Expr a);
Expr ite(Formula c, Expr t, Expr e);
Expr bounded_sum(const std::string &index, Expr lo, Expr hi, Expr body);
Expr pow_of(Expr base, Expr exp);
Expr log_of(long long base, Expr arg); // base >= 2

Formula f_true();
Formula f_false();
Formula f_lt(Expr a, Expr b);
Formula f_le(Expr a, Expr b);
Formula f_eq(Expr a, Expr b);
Formula f_neq(Expr a, Expr b);
Formula f_and(std::vector<Formula> fs);
Formula f_or(std::vector<Formula> fs);
Formula f_not(Formula f);

// ---- predicates, ordering -------------------------------------------------

inline bool is_kappa_free(const Expr &e) { return !e->has_counter; }
inline bool is_kappa_free(const Formula &f) { return !f->has_counter; }
inline bool contains_unknown(const Expr &e) { return e->has_unknown; }
inline bool contains_unknown(const Formula &f) { return f->has_unknown; }

bool is_int_const(const Expr &e, long long v);

// total structural order; 0 iff structurally equal
int compare(const Expr &a, const Expr &b);
int compare(const Formula &a, const Formula &b);
inline bool equal(const Expr &a, const Expr &b) { return compare(a, b) == 0; }
inline bool equal(const Formula &a, const Formula &b) {
  return compare(a, b) == 0;
}

struct ExprLess {
  bool operator()(const Expr &a, const Expr &b) const {
    return compare(a, b) < 0;
  }
};
struct FormulaLess {
  bool operator()(const Formula &a, const Formula &b) const {
    return compare(a, b) < 0;
  }
};

// set of bounds, deduplicated by structural identity
using ExprSet = std::set<Expr, ExprLess>;

void collect_symbols(const Expr &e, std::set<std::string> &out);
void collect_symbols(const Formula &f, std::set<std::string> &out);
void collect_counters(const Expr &e, std::set<int> &out);
void collect_counters(const Formula &f, std::set<int> &out);
void collect_arrays(const Expr &e, std::map<std::string, size_t> &out);
void collect_arrays(const Formula &f, std::map<std::string, size_t> &out);

// ---- substitution ---------------------------------------------------------

// Simultaneous substitution: replacements are never re-visited, and the
// index variable of a bounded sum shadows a symbol binding of that name.
struct Bindings {
  std::map<std::string, Expr> symbols;
  std::map<int, Expr> counters;
};

Expr substitute(const Expr &e, const Bindings &b);
Formula substitute(const Formula &f, const Bindings &b);

// ---- symbolic memory ------------------------------------------------------

class SymbolicMemory {
public:
  SymbolicMemory() = default;

  static SymbolicMemory initial(const std::set<std::string> &scalars,
                                const std::set<std::string> &arrays);

  bool has(const std::string &var) const { return scalars_.count(var) != 0; }
  const Expr &get(const std::string &var) const;
  void set(const std::string &var, Expr value);

  const std::map<std::string, Expr> &scalars() const { return scalars_; }
  const std::set<std::string> &arrays() const { return arrays_; }
  void add_array(const std::string &name) { arrays_.insert(name); }

private:
  std::map<std::string, Expr> scalars_;
  std::set<std::string> arrays_;
};

// theta<psi>: replace every scalar symbol that has an entry in theta by its
// value; array symbols and path counters stay untouched.
Expr compose(const SymbolicMemory &theta, const Expr &psi);
Formula compose(const SymbolicMemory &theta, const Formula &psi);

// theta(expr) for program expressions: like compose, but every mentioned
// variable must have an entry (throws UnknownVariable otherwise).
Expr apply_memory(const SymbolicMemory &theta, const Expr &expr);
Formula apply_memory(const SymbolicMemory &theta, const Formula &expr);

// ---- evaluation -----------------------------------------------------------

// Concrete array content: partial function from index tuple to value.
using ArrayFun =
    std::function<std::optional<long long>(std::span<const long long>)>;

struct Valuation {
  std::map<std::string, long long> scalars;
  std::map<std::string, ArrayFun> arrays;
  std::map<int, long long> counters;
};

// Integer semantics with wrap-around on overflow (two's complement, 64 bit).
// Div truncates toward zero; ceil/floor round an exact rational one level
// deep (a division or log expression directly below them).  Anything
// containing the unknown value, a division by zero, or an array read outside
// the provided content evaluates to nullopt.
std::optional<long long> evaluate(const Expr &e, const Valuation &v);
std::optional<bool> evaluate(const Formula &f, const Valuation &v);

// ---- rendering ------------------------------------------------------------

enum class Syntax {
  Symbolic, // canonical report syntax: $a, $A(i), k1, max{...}
  Program,  // program syntax used in flowgraph labels: a, A[i]
};

std::string to_string(const Expr &e, Syntax s = Syntax::Symbolic);
std::string to_string(const Formula &f, Syntax s = Syntax::Symbolic);

} // namespace loopbound
