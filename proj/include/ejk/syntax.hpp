#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ejk {

enum class ErrorCode {
  SyntaxError,
  SortError,
  ImproperFormula,
  UnknownConstant,
  EmptyVariableSet,
  SideConditionViolated,
  AtomBudgetExceeded,
  ConstantInHypotheses,
  ConstantAbsent,
  VariableNotFresh,
  HypothesesPresent,
  SystemLacksAxNec,
  UnsupportedStep,
  OutsideModalFragment,
  BudgetExceeded,
  FormatError,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(error_name(code)) + ": " + msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Symbols that a substitution can act on. Ordering puts propositional
// variables first, then justification variables, then the two constant sorts.
enum class SymKind { VarP = 0, VarJ = 1, ConstD = 2, ConstC = 3 };

struct Sym {
  SymKind kind = SymKind::VarP;
  uint32_t index = 0;
  std::string name;

  static Sym p(uint32_t i) { return {SymKind::VarP, i, {}}; }
  static Sym j(uint32_t i) { return {SymKind::VarJ, i, {}}; }
  static Sym d(std::string n) { return {SymKind::ConstD, 0, std::move(n)}; }
  static Sym c(std::string n) { return {SymKind::ConstC, 0, std::move(n)}; }

  bool is_var() const { return kind == SymKind::VarP || kind == SymKind::VarJ; }
  bool is_prop_sort() const { return kind == SymKind::VarP || kind == SymKind::ConstD; }
  std::string str() const;

  auto operator<=>(const Sym&) const = default;
  bool operator==(const Sym&) const = default;
};

enum class TKind { Var, Const, Prod, Sum };

enum class FKind {
  Var,
  Const,
  Implies,
  Not,
  Ident,
  Refers,
  TermIdent,
  TermLe,
  IsTrue,
  IsFalse,
  Box,
  Member,
  Forall,
  JForall,
};

struct TermNode;
struct FormulaNode;

class Term {
 public:
  Term() = default;

  static Term var(uint32_t i);
  static Term cnst(std::string name);
  static Term prod(Term a, Term b);
  static Term sum(Term a, Term b);

  TKind kind() const;
  uint32_t index() const;
  const std::string& name() const;
  const Term& left() const;
  const Term& right() const;

  // sorted, duplicate free
  const std::vector<uint32_t>& vars() const;
  const std::vector<std::string>& consts() const;
  std::size_t hash() const;
  std::size_t size() const;

  bool valid() const { return n_ != nullptr; }
  bool operator==(const Term& o) const;
  bool operator!=(const Term& o) const { return !(*this == o); }

 private:
  explicit Term(std::shared_ptr<const TermNode> n) : n_(std::move(n)) {}
  std::shared_ptr<const TermNode> n_;
};

class Formula {
 public:
  Formula() = default;

  static Formula var(uint32_t i);
  static Formula cnst(std::string name);
  static Formula implies(Formula a, Formula b);
  static Formula neg(Formula a);
  static Formula ident(Formula a, Formula b);
  static Formula refers(Formula a, Formula b);
  static Formula term_ident(Term s, Term t);
  static Formula term_le(Term s, Term t);
  static Formula is_true(Formula a);
  static Formula is_false(Formula a);
  static Formula box(Formula a);
  static Formula member(Formula a, Term t);
  // Both binders throw ImproperFormula when the variable is not free in the body.
  static Formula forall(uint32_t x, Formula body);
  static Formula jforall(uint32_t u, Formula body);
  static Formula forall_unchecked(uint32_t x, Formula body);
  static Formula jforall_unchecked(uint32_t u, Formula body);

  FKind kind() const;
  // variable index for Var, bound variable for Forall/JForall
  uint32_t index() const;
  const std::string& name() const;
  const Formula& a() const;
  const Formula& b() const;
  const Term& s() const;
  const Term& t() const;
  const Formula& body() const { return a(); }

  const std::vector<uint32_t>& fvp() const;
  const std::vector<uint32_t>& fvj() const;
  const std::vector<std::string>& cons_d() const;
  const std::vector<std::string>& cons_c() const;
  bool has_fvp(uint32_t x) const;
  bool has_fvj(uint32_t u) const;
  std::size_t hash() const;
  std::size_t size() const;

  bool is_binary() const;
  bool is_binder() const { return kind() == FKind::Forall || kind() == FKind::JForall; }
  bool valid() const { return n_ != nullptr; }
  bool operator==(const Formula& o) const;
  bool operator!=(const Formula& o) const { return !(*this == o); }

 private:
  explicit Formula(std::shared_ptr<const FormulaNode> n) : n_(std::move(n)) {}
  static Formula make(FormulaNode&& n);
  std::shared_ptr<const FormulaNode> n_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};
struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Defined connectives, always expanded into core constructors.
Formula dia(Formula a);
Formula exists(uint32_t x, Formula body);
Formula jexists(uint32_t u, Formula body);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula iff(Formula a, Formula b);

struct Decls {
  std::set<std::string> props;
  std::set<std::string> justs;

  void add_prop(const std::string& n);
  void add_just(const std::string& n);
  void absorb(const Formula& f);
  void absorb(const Term& t);
};

// Constant names must not look like variables or keywords.
bool valid_const_name(std::string_view n);

using Expr = std::variant<Formula, Term>;

Formula parse_formula(std::string_view text, const Decls& decls);
Term parse_term(std::string_view text, const Decls& decls);
Expr parse_expr(std::string_view text, const Decls& decls);

std::string render(const Formula& f);
std::string render(const Term& t);

// Trees are always core; desugar exists for symmetry with the textual sugar.
Formula desugar(const Formula& f);

struct FreeVars {
  std::vector<uint32_t> p;
  std::vector<uint32_t> j;
};

FreeVars free_vars(const Formula& f);
std::vector<Sym> fcon(const Formula& f);
std::vector<Sym> varcon(const Term& t);
std::vector<Sym> vars_all(const Formula& f);  // free and bound variables
bool is_proper(const Formula& f);

// Sorted union helpers used throughout.
std::vector<uint32_t> merge_sorted(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
std::vector<std::string> merge_sorted(const std::vector<std::string>& a,
                                      const std::vector<std::string>& b);

}  // namespace ejk
