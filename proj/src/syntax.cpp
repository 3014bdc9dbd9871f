#include "ejk/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>

namespace ejk {

const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::SortError: return "SortError";
    case ErrorCode::ImproperFormula: return "ImproperFormula";
    case ErrorCode::UnknownConstant: return "UnknownConstant";
    case ErrorCode::EmptyVariableSet: return "EmptyVariableSet";
    case ErrorCode::SideConditionViolated: return "SideConditionViolated";
    case ErrorCode::AtomBudgetExceeded: return "AtomBudgetExceeded";
    case ErrorCode::ConstantInHypotheses: return "ConstantInHypotheses";
    case ErrorCode::ConstantAbsent: return "ConstantAbsent";
    case ErrorCode::VariableNotFresh: return "VariableNotFresh";
    case ErrorCode::HypothesesPresent: return "HypothesesPresent";
    case ErrorCode::SystemLacksAxNec: return "SystemLacksAxNec";
    case ErrorCode::UnsupportedStep: return "UnsupportedStep";
    case ErrorCode::OutsideModalFragment: return "OutsideModalFragment";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::FormatError: return "FormatError";
  }
  return "Error";
}

std::string Sym::str() const {
  switch (kind) {
    case SymKind::VarP: return "x" + std::to_string(index);
    case SymKind::VarJ: return "v" + std::to_string(index);
    default: return name;
  }
}

std::vector<uint32_t> merge_sorted(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  std::vector<uint32_t> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::string> merge_sorted(const std::vector<std::string>& a,
                                      const std::vector<std::string>& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  std::vector<std::string> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

namespace {

std::vector<uint32_t> without(const std::vector<uint32_t>& v, uint32_t x) {
  std::vector<uint32_t> out;
  out.reserve(v.size());
  for (auto e : v)
    if (e != x) out.push_back(e);
  return out;
}

bool contains(const std::vector<uint32_t>& v, uint32_t x) {
  return std::binary_search(v.begin(), v.end(), x);
}

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

struct TermNode {
  TKind kind = TKind::Var;
  uint32_t index = 0;
  std::string name;
  Term l, r;
  std::vector<uint32_t> vars;
  std::vector<std::string> consts;
  std::size_t hash = 0;
  std::size_t size = 1;
};

struct FormulaNode {
  FKind kind = FKind::Var;
  uint32_t index = 0;
  std::string name;
  Formula a, b;
  Term s, t;
  std::vector<uint32_t> fvp, fvj;
  std::vector<std::string> cd, cc;
  std::size_t hash = 0;
  std::size_t size = 1;
};

// ---- Term ----

Term Term::var(uint32_t i) {
  TermNode n;
  n.kind = TKind::Var;
  n.index = i;
  n.vars = {i};
  n.hash = mix(mix(11, 1), i);
  return Term(std::make_shared<const TermNode>(std::move(n)));
}

Term Term::cnst(std::string name) {
  TermNode n;
  n.kind = TKind::Const;
  n.hash = mix(mix(11, 2), std::hash<std::string>{}(name));
  n.consts = {name};
  n.name = std::move(name);
  return Term(std::make_shared<const TermNode>(std::move(n)));
}

Term Term::prod(Term a, Term b) {
  TermNode n;
  n.kind = TKind::Prod;
  n.vars = merge_sorted(a.vars(), b.vars());
  n.consts = merge_sorted(a.consts(), b.consts());
  n.hash = mix(mix(mix(11, 5), a.hash()), b.hash());
  n.size = 1 + a.size() + b.size();
  n.l = std::move(a);
  n.r = std::move(b);
  return Term(std::make_shared<const TermNode>(std::move(n)));
}

Term Term::sum(Term a, Term b) {
  TermNode n;
  n.kind = TKind::Sum;
  n.vars = merge_sorted(a.vars(), b.vars());
  n.consts = merge_sorted(a.consts(), b.consts());
  n.hash = mix(mix(mix(11, 6), a.hash()), b.hash());
  n.size = 1 + a.size() + b.size();
  n.l = std::move(a);
  n.r = std::move(b);
  return Term(std::make_shared<const TermNode>(std::move(n)));
}

TKind Term::kind() const { return n_->kind; }
uint32_t Term::index() const { return n_->index; }
const std::string& Term::name() const { return n_->name; }
const Term& Term::left() const { return n_->l; }
const Term& Term::right() const { return n_->r; }
const std::vector<uint32_t>& Term::vars() const { return n_->vars; }
const std::vector<std::string>& Term::consts() const { return n_->consts; }
std::size_t Term::hash() const { return n_->hash; }
std::size_t Term::size() const { return n_->size; }

bool Term::operator==(const Term& o) const {
  if (n_ == o.n_) return true;
  if (!n_ || !o.n_) return false;
  if (n_->hash != o.n_->hash || n_->kind != o.n_->kind || n_->size != o.n_->size) return false;
  switch (n_->kind) {
    case TKind::Var: return n_->index == o.n_->index;
    case TKind::Const: return n_->name == o.n_->name;
    default: return n_->l == o.n_->l && n_->r == o.n_->r;
  }
}

// ---- Formula ----

Formula Formula::make(FormulaNode&& n) {
  std::size_t h = mix(mix(mix(17, static_cast<std::size_t>(n.kind)), n.index),
                      std::hash<std::string>{}(n.name));
  std::size_t sz = 1;
  if (n.a.valid()) {
    h = mix(h, n.a.hash());
    sz += n.a.size();
  }
  if (n.b.valid()) {
    h = mix(h, n.b.hash());
    sz += n.b.size();
  }
  if (n.s.valid()) {
    h = mix(h, n.s.hash());
    sz += n.s.size();
  }
  if (n.t.valid()) {
    h = mix(h, n.t.hash());
    sz += n.t.size();
  }
  n.hash = h;
  n.size = sz;
  return Formula(std::make_shared<const FormulaNode>(std::move(n)));
}

Formula Formula::var(uint32_t i) {
  FormulaNode n;
  n.kind = FKind::Var;
  n.index = i;
  n.fvp = {i};
  return make(std::move(n));
}

Formula Formula::cnst(std::string name) {
  FormulaNode n;
  n.kind = FKind::Const;
  n.cd = {name};
  n.name = std::move(name);
  return make(std::move(n));
}

namespace {

struct Builder {
  static FormulaNode unary(FKind k, const Formula& a) {
    FormulaNode n;
    n.kind = k;
    n.fvp = a.fvp();
    n.fvj = a.fvj();
    n.cd = a.cons_d();
    n.cc = a.cons_c();
    n.a = a;
    return n;
  }
  static FormulaNode binary(FKind k, const Formula& a, const Formula& b) {
    FormulaNode n;
    n.kind = k;
    n.fvp = merge_sorted(a.fvp(), b.fvp());
    n.fvj = merge_sorted(a.fvj(), b.fvj());
    n.cd = merge_sorted(a.cons_d(), b.cons_d());
    n.cc = merge_sorted(a.cons_c(), b.cons_c());
    n.a = a;
    n.b = b;
    return n;
  }
  static FormulaNode terms(FKind k, const Term& s, const Term& t) {
    FormulaNode n;
    n.kind = k;
    n.fvj = merge_sorted(s.vars(), t.vars());
    n.cc = merge_sorted(s.consts(), t.consts());
    n.s = s;
    n.t = t;
    return n;
  }
};

}  // namespace

Formula Formula::implies(Formula a, Formula b) { return make(Builder::binary(FKind::Implies, a, b)); }
Formula Formula::neg(Formula a) { return make(Builder::unary(FKind::Not, a)); }
Formula Formula::ident(Formula a, Formula b) { return make(Builder::binary(FKind::Ident, a, b)); }
Formula Formula::refers(Formula a, Formula b) { return make(Builder::binary(FKind::Refers, a, b)); }
Formula Formula::term_ident(Term s, Term t) { return make(Builder::terms(FKind::TermIdent, s, t)); }
Formula Formula::term_le(Term s, Term t) { return make(Builder::terms(FKind::TermLe, s, t)); }
Formula Formula::is_true(Formula a) { return make(Builder::unary(FKind::IsTrue, a)); }
Formula Formula::is_false(Formula a) { return make(Builder::unary(FKind::IsFalse, a)); }
Formula Formula::box(Formula a) { return make(Builder::unary(FKind::Box, a)); }

Formula Formula::member(Formula a, Term t) {
  FormulaNode n = Builder::unary(FKind::Member, a);
  n.fvj = merge_sorted(n.fvj, t.vars());
  n.cc = merge_sorted(n.cc, t.consts());
  n.t = std::move(t);
  return make(std::move(n));
}

Formula Formula::forall_unchecked(uint32_t x, Formula body) {
  FormulaNode n = Builder::unary(FKind::Forall, body);
  n.index = x;
  n.fvp = without(n.fvp, x);
  return make(std::move(n));
}

Formula Formula::jforall_unchecked(uint32_t u, Formula body) {
  FormulaNode n = Builder::unary(FKind::JForall, body);
  n.index = u;
  n.fvj = without(n.fvj, u);
  return make(std::move(n));
}

Formula Formula::forall(uint32_t x, Formula body) {
  if (!body.has_fvp(x))
    throw Error(ErrorCode::ImproperFormula, "all x" + std::to_string(x) + " binds no free occurrence");
  return forall_unchecked(x, std::move(body));
}

Formula Formula::jforall(uint32_t u, Formula body) {
  if (!body.has_fvj(u))
    throw Error(ErrorCode::ImproperFormula, "jall v" + std::to_string(u) + " binds no free occurrence");
  return jforall_unchecked(u, std::move(body));
}

FKind Formula::kind() const { return n_->kind; }
uint32_t Formula::index() const { return n_->index; }
const std::string& Formula::name() const { return n_->name; }
const Formula& Formula::a() const { return n_->a; }
const Formula& Formula::b() const { return n_->b; }
const Term& Formula::s() const { return n_->s; }
const Term& Formula::t() const { return n_->t; }
const std::vector<uint32_t>& Formula::fvp() const { return n_->fvp; }
const std::vector<uint32_t>& Formula::fvj() const { return n_->fvj; }
const std::vector<std::string>& Formula::cons_d() const { return n_->cd; }
const std::vector<std::string>& Formula::cons_c() const { return n_->cc; }
bool Formula::has_fvp(uint32_t x) const { return contains(n_->fvp, x); }
bool Formula::has_fvj(uint32_t u) const { return contains(n_->fvj, u); }
std::size_t Formula::hash() const { return n_->hash; }
std::size_t Formula::size() const { return n_->size; }

bool Formula::is_binary() const {
  switch (kind()) {
    case FKind::Implies:
    case FKind::Ident:
    case FKind::Refers:
    case FKind::TermIdent:
    case FKind::TermLe: return true;
    default: return false;
  }
}

bool Formula::operator==(const Formula& o) const {
  if (n_ == o.n_) return true;
  if (!n_ || !o.n_) return false;
  const FormulaNode& x = *n_;
  const FormulaNode& y = *o.n_;
  if (x.hash != y.hash || x.kind != y.kind || x.size != y.size || x.index != y.index) return false;
  switch (x.kind) {
    case FKind::Var: return true;
    case FKind::Const: return x.name == y.name;
    case FKind::TermIdent:
    case FKind::TermLe: return x.s == y.s && x.t == y.t;
    case FKind::Member: return x.a == y.a && x.t == y.t;
    default: return x.a == y.a && x.b == y.b;
  }
}

// ---- sugar ----

Formula dia(Formula a) { return Formula::neg(Formula::box(Formula::neg(std::move(a)))); }
Formula exists(uint32_t x, Formula body) {
  return Formula::neg(Formula::forall(x, Formula::neg(std::move(body))));
}
Formula jexists(uint32_t u, Formula body) {
  return Formula::neg(Formula::jforall(u, Formula::neg(std::move(body))));
}
Formula conj(Formula a, Formula b) {
  return Formula::neg(Formula::implies(std::move(a), Formula::neg(std::move(b))));
}
Formula disj(Formula a, Formula b) { return Formula::implies(Formula::neg(std::move(a)), std::move(b)); }
Formula iff(Formula a, Formula b) {
  Formula ab = Formula::implies(a, b);
  Formula ba = Formula::implies(b, a);
  return conj(ab, ba);
}

Formula desugar(const Formula& f) { return f; }

// ---- declarations ----

static bool is_var_like(std::string_view n, char lead) {
  if (n.size() < 2 || n[0] != lead) return false;
  return std::all_of(n.begin() + 1, n.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

static bool is_keyword(std::string_view n) {
  static const char* kw[] = {"all", "ex", "jall", "jex", "box", "dia", "true", "false", "const", "prop", "just"};
  for (auto* k : kw)
    if (n == k) return true;
  return false;
}

bool valid_const_name(std::string_view n) {
  if (n.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(n[0])) && n[0] != '_') return false;
  for (char c : n)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '\'') return false;
  return !is_var_like(n, 'x') && !is_var_like(n, 'v') && !is_keyword(n);
}

void Decls::add_prop(const std::string& n) {
  if (!valid_const_name(n)) throw Error(ErrorCode::SyntaxError, "bad constant name '" + n + "'");
  if (justs.count(n)) throw Error(ErrorCode::SortError, "constant '" + n + "' already declared as just");
  props.insert(n);
}

void Decls::add_just(const std::string& n) {
  if (!valid_const_name(n)) throw Error(ErrorCode::SyntaxError, "bad constant name '" + n + "'");
  if (props.count(n)) throw Error(ErrorCode::SortError, "constant '" + n + "' already declared as prop");
  justs.insert(n);
}

void Decls::absorb(const Formula& f) {
  for (auto& n : f.cons_d()) add_prop(n);
  for (auto& n : f.cons_c()) add_just(n);
}

void Decls::absorb(const Term& t) {
  for (auto& n : t.consts()) add_just(n);
}

// ---- parser ----

namespace {

struct Tok {
  enum Kind { Ident, Punct, End } kind;
  std::string text;
  std::size_t pos;
};

std::vector<Tok> lex(std::string_view s) {
  std::vector<Tok> out;
  std::size_t i = 0;
  static const char* puncts[] = {"<->", "->", "==", "<=", "<", "~", "(", ")", ".", ":", "&", "|", "*", "+"};
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\''))
        ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    bool matched = false;
    for (auto* p : puncts) {
      std::string_view pv(p);
      if (s.substr(i, pv.size()) == pv) {
        out.push_back({Tok::Punct, std::string(pv), i});
        i += pv.size();
        matched = true;
        break;
      }
    }
    if (!matched)
      throw Error(ErrorCode::SyntaxError, "unexpected character '" + std::string(1, c) + "' at offset " +
                                              std::to_string(i));
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

bool parse_index(std::string_view n, char lead, uint32_t& out) {
  if (!is_var_like(n, lead)) return false;
  auto r = std::from_chars(n.data() + 1, n.data() + n.size(), out);
  return r.ec == std::errc() && r.ptr == n.data() + n.size();
}

class Parser {
 public:
  Parser(std::string_view src, const Decls& d) : toks_(lex(src)), decls_(d) {}

  Expr top() {
    Expr e = imp();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return e;
  }

 private:
  std::vector<Tok> toks_;
  std::size_t k_ = 0;
  const Decls& decls_;

  const Tok& peek() const { return toks_[k_]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::SyntaxError, msg + " at offset " + std::to_string(peek().pos));
  }
  bool is_punct(const char* p) const { return peek().kind == Tok::Punct && peek().text == p; }
  bool is_word(const char* w) const { return peek().kind == Tok::Ident && peek().text == w; }
  bool accept(const char* p) {
    if (is_punct(p)) {
      ++k_;
      return true;
    }
    return false;
  }
  void expect(const char* p) {
    if (!accept(p)) fail(std::string("expected '") + p + "'");
  }

  Formula as_formula(const Expr& e, const char* ctx) const {
    if (auto* f = std::get_if<Formula>(&e)) return *f;
    throw Error(ErrorCode::SortError, std::string("term used where a formula is required (") + ctx + ")");
  }
  Term as_term(const Expr& e, const char* ctx) const {
    if (auto* t = std::get_if<Term>(&e)) return *t;
    throw Error(ErrorCode::SortError, std::string("formula used where a term is required (") + ctx + ")");
  }

  Expr imp() {
    Expr l = iff_level();
    if (accept("->")) {
      Formula a = as_formula(l, "->");
      Formula b = as_formula(imp(), "->");
      return Formula::implies(a, b);
    }
    return l;
  }

  Expr iff_level() {
    Expr l = or_level();
    while (accept("<->")) {
      Formula a = as_formula(l, "<->");
      Formula b = as_formula(or_level(), "<->");
      l = iff(a, b);
    }
    return l;
  }

  Expr or_level() {
    Expr l = and_level();
    while (accept("|")) {
      Formula a = as_formula(l, "|");
      Formula b = as_formula(and_level(), "|");
      l = disj(a, b);
    }
    return l;
  }

  Expr and_level() {
    Expr l = mid();
    while (accept("&")) {
      Formula a = as_formula(l, "&");
      Formula b = as_formula(mid(), "&");
      l = conj(a, b);
    }
    return l;
  }

  Expr mid() {
    Expr l = add();
    if (accept("==")) {
      Expr r = add();
      if (l.index() != r.index()) throw Error(ErrorCode::SortError, "mixed sorts around ==");
      if (auto* f = std::get_if<Formula>(&l)) return Formula::ident(*f, std::get<Formula>(r));
      return Formula::term_ident(std::get<Term>(l), std::get<Term>(r));
    }
    if (accept("<=")) {
      Term s = as_term(l, "<=");
      Term t = as_term(add(), "<=");
      return Formula::term_le(s, t);
    }
    if (accept("<")) {
      Formula a = as_formula(l, "<");
      Formula b = as_formula(add(), "<");
      return Formula::refers(a, b);
    }
    return l;
  }

  Expr add() {
    Expr l = mul();
    while (accept("+")) {
      Term a = as_term(l, "+");
      Term b = as_term(mul(), "+");
      l = Term::sum(a, b);
    }
    return l;
  }

  Expr mul() {
    Expr l = unary();
    while (accept("*")) {
      Term a = as_term(l, "*");
      Term b = as_term(unary(), "*");
      l = Term::prod(a, b);
    }
    return l;
  }

  Expr unary() {
    if (accept("~")) return Formula::neg(as_formula(unary(), "~"));
    if (is_word("box")) {
      ++k_;
      return Formula::box(as_formula(unary(), "box"));
    }
    if (is_word("dia")) {
      ++k_;
      return dia(as_formula(unary(), "dia"));
    }
    for (const char* b : {"all", "ex", "jall", "jex"}) {
      if (is_word(b)) {
        ++k_;
        return binder(b);
      }
    }
    return postfix();
  }

  Expr binder(std::string_view which) {
    bool prop = which == "all" || which == "ex";
    const Tok& v = peek();
    uint32_t idx = 0;
    if (v.kind != Tok::Ident || !parse_index(v.text, prop ? 'x' : 'v', idx))
      fail(std::string("expected a ") + (prop ? "propositional" : "justification") + " variable after " +
           std::string(which));
    ++k_;
    expect(".");
    Formula body = as_formula(imp(), "binder body");
    if (which == "all") return Formula::forall(idx, body);
    if (which == "ex") return exists(idx, body);
    if (which == "jall") return Formula::jforall(idx, body);
    return jexists(idx, body);
  }

  Expr postfix() {
    Expr e = atom();
    while (accept(":")) {
      Formula f = as_formula(e, ":");
      if (is_word("true")) {
        ++k_;
        e = Formula::is_true(f);
      } else if (is_word("false")) {
        ++k_;
        e = Formula::is_false(f);
      } else {
        Term t = as_term(atom(), "right of :");
        e = Formula::member(f, t);
      }
    }
    return e;
  }

  Expr atom() {
    if (accept("(")) {
      Expr e = imp();
      expect(")");
      return e;
    }
    const Tok& t = peek();
    if (t.kind != Tok::Ident) fail(t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
    uint32_t idx = 0;
    if (parse_index(t.text, 'x', idx)) {
      ++k_;
      return Formula::var(idx);
    }
    if (parse_index(t.text, 'v', idx)) {
      ++k_;
      return Term::var(idx);
    }
    if (decls_.props.count(t.text)) {
      ++k_;
      return Formula::cnst(t.text);
    }
    if (decls_.justs.count(t.text)) {
      ++k_;
      return Term::cnst(t.text);
    }
    if (is_keyword(t.text)) fail("unexpected keyword '" + t.text + "'");
    throw Error(ErrorCode::UnknownConstant, "'" + t.text + "' at offset " + std::to_string(t.pos));
  }
};

}  // namespace

Expr parse_expr(std::string_view text, const Decls& decls) { return Parser(text, decls).top(); }

Formula parse_formula(std::string_view text, const Decls& decls) {
  Expr e = parse_expr(text, decls);
  if (auto* f = std::get_if<Formula>(&e)) return *f;
  throw Error(ErrorCode::SortError, "expected a formula, got a term");
}

Term parse_term(std::string_view text, const Decls& decls) {
  Expr e = parse_expr(text, decls);
  if (auto* t = std::get_if<Term>(&e)) return *t;
  throw Error(ErrorCode::SortError, "expected a term, got a formula");
}

// ---- printer ----

namespace {

void put(std::string& out, const Term& t);

void put_tchild(std::string& out, const Term& t) {
  bool wrap = t.kind() == TKind::Prod || t.kind() == TKind::Sum;
  if (wrap) out += '(';
  put(out, t);
  if (wrap) out += ')';
}

void put(std::string& out, const Term& t) {
  switch (t.kind()) {
    case TKind::Var:
      out += 'v';
      out += std::to_string(t.index());
      break;
    case TKind::Const: out += t.name(); break;
    case TKind::Prod:
      put_tchild(out, t.left());
      out += " * ";
      put_tchild(out, t.right());
      break;
    case TKind::Sum:
      put_tchild(out, t.left());
      out += " + ";
      put_tchild(out, t.right());
      break;
  }
}

void put(std::string& out, const Formula& f);

void put_child(std::string& out, const Formula& f) {
  bool wrap = f.is_binary() || f.is_binder();
  if (wrap) out += '(';
  put(out, f);
  if (wrap) out += ')';
}

void put_postfix_operand(std::string& out, const Formula& f) {
  bool wrap = f.kind() != FKind::Var && f.kind() != FKind::Const;
  if (wrap) out += '(';
  put(out, f);
  if (wrap) out += ')';
}

void put(std::string& out, const Formula& f) {
  switch (f.kind()) {
    case FKind::Var:
      out += 'x';
      out += std::to_string(f.index());
      break;
    case FKind::Const: out += f.name(); break;
    case FKind::Implies:
      put_child(out, f.a());
      out += " -> ";
      put_child(out, f.b());
      break;
    case FKind::Ident:
      put_child(out, f.a());
      out += " == ";
      put_child(out, f.b());
      break;
    case FKind::Refers:
      put_child(out, f.a());
      out += " < ";
      put_child(out, f.b());
      break;
    case FKind::TermIdent:
      put_tchild(out, f.s());
      out += " == ";
      put_tchild(out, f.t());
      break;
    case FKind::TermLe:
      put_tchild(out, f.s());
      out += " <= ";
      put_tchild(out, f.t());
      break;
    case FKind::Not:
      out += '~';
      put_child(out, f.a());
      break;
    case FKind::Box:
      out += "box ";
      put_child(out, f.a());
      break;
    case FKind::IsTrue:
      put_postfix_operand(out, f.a());
      out += " : true";
      break;
    case FKind::IsFalse:
      put_postfix_operand(out, f.a());
      out += " : false";
      break;
    case FKind::Member:
      put_postfix_operand(out, f.a());
      out += " : ";
      put_tchild(out, f.t());
      break;
    case FKind::Forall:
      out += "all x";
      out += std::to_string(f.index());
      out += ". ";
      put_child(out, f.a());
      break;
    case FKind::JForall:
      out += "jall v";
      out += std::to_string(f.index());
      out += ". ";
      put_child(out, f.a());
      break;
  }
}

}  // namespace

std::string render(const Formula& f) {
  std::string out;
  put(out, f);
  return out;
}

std::string render(const Term& t) {
  std::string out;
  put(out, t);
  return out;
}

// ---- variable sets ----

FreeVars free_vars(const Formula& f) { return {f.fvp(), f.fvj()}; }

std::vector<Sym> fcon(const Formula& f) {
  std::vector<Sym> out;
  for (auto x : f.fvp()) out.push_back(Sym::p(x));
  for (auto u : f.fvj()) out.push_back(Sym::j(u));
  for (auto& d : f.cons_d()) out.push_back(Sym::d(d));
  for (auto& c : f.cons_c()) out.push_back(Sym::c(c));
  return out;
}

std::vector<Sym> varcon(const Term& t) {
  std::vector<Sym> out;
  for (auto u : t.vars()) out.push_back(Sym::j(u));
  for (auto& c : t.consts()) out.push_back(Sym::c(c));
  return out;
}

static void collect_vars(const Formula& f, std::set<Sym>& acc) {
  switch (f.kind()) {
    case FKind::Var: acc.insert(Sym::p(f.index())); return;
    case FKind::Const: return;
    case FKind::TermIdent:
    case FKind::TermLe:
      for (auto u : f.s().vars()) acc.insert(Sym::j(u));
      for (auto u : f.t().vars()) acc.insert(Sym::j(u));
      return;
    case FKind::Member:
      for (auto u : f.t().vars()) acc.insert(Sym::j(u));
      collect_vars(f.a(), acc);
      return;
    case FKind::Forall:
      acc.insert(Sym::p(f.index()));
      collect_vars(f.a(), acc);
      return;
    case FKind::JForall:
      acc.insert(Sym::j(f.index()));
      collect_vars(f.a(), acc);
      return;
    default:
      collect_vars(f.a(), acc);
      if (f.b().valid()) collect_vars(f.b(), acc);
      return;
  }
}

std::vector<Sym> vars_all(const Formula& f) {
  std::set<Sym> acc;
  collect_vars(f, acc);
  return {acc.begin(), acc.end()};
}

bool is_proper(const Formula& f) {
  switch (f.kind()) {
    case FKind::Var:
    case FKind::Const:
    case FKind::TermIdent:
    case FKind::TermLe: return true;
    case FKind::Forall: return f.a().has_fvp(f.index()) && is_proper(f.a());
    case FKind::JForall: return f.a().has_fvj(f.index()) && is_proper(f.a());
    default: return is_proper(f.a()) && (!f.b().valid() || is_proper(f.b()));
  }
}

}  // namespace ejk
