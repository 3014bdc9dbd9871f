#include "ejk/subst.hpp"

#include <algorithm>
#include <cctype>

namespace ejk {

namespace {

Formula identity_formula(const Sym& k) {
  return k.kind == SymKind::VarP ? Formula::var(k.index) : Formula::cnst(k.name);
}

Term identity_term(const Sym& k) {
  return k.kind == SymKind::VarJ ? Term::var(k.index) : Term::cnst(k.name);
}

}  // namespace

Subst& Subst::set(const Sym& k, const Formula& v) {
  if (!k.is_prop_sort()) throw Error(ErrorCode::SortError, "formula bound to justification slot " + k.str());
  if (v == identity_formula(k))
    f_.erase(k);
  else
    f_[k] = v;
  return *this;
}

Subst& Subst::set(const Sym& k, const Term& v) {
  if (k.is_prop_sort()) throw Error(ErrorCode::SortError, "term bound to propositional slot " + k.str());
  if (v == identity_term(k))
    t_.erase(k);
  else
    t_[k] = v;
  return *this;
}

Subst& Subst::set(const Sym& k, const Expr& v) {
  if (auto* f = std::get_if<Formula>(&v)) return set(k, *f);
  return set(k, std::get<Term>(v));
}

Formula Subst::formula_at(const Sym& k) const {
  auto it = f_.find(k);
  return it == f_.end() ? identity_formula(k) : it->second;
}

Term Subst::term_at(const Sym& k) const {
  auto it = t_.find(k);
  return it == t_.end() ? identity_term(k) : it->second;
}

std::vector<Sym> Subst::support() const {
  std::vector<Sym> out;
  for (auto& [k, v] : f_) out.push_back(k);
  for (auto& [k, v] : t_) out.push_back(k);
  std::sort(out.begin(), out.end());
  return out;
}

Term apply(const Term& t, const Subst& s) {
  if (s.terms().empty()) return t;
  switch (t.kind()) {
    case TKind::Var: return s.term_at(Sym::j(t.index()));
    case TKind::Const: return s.term_at(Sym::c(t.name()));
    case TKind::Prod: return Term::prod(apply(t.left(), s), apply(t.right(), s));
    case TKind::Sum: return Term::sum(apply(t.left(), s), apply(t.right(), s));
  }
  return t;
}

uint32_t forced_variable(const Formula& f, const Subst& s) {
  bool prop = f.kind() == FKind::Forall;
  bool any = false;
  uint32_t top = 0;
  auto see = [&](const std::vector<uint32_t>& vs) {
    if (vs.empty()) return;
    any = true;
    top = std::max(top, vs.back());
  };
  auto see_formula = [&](const Formula& v) { see(prop ? v.fvp() : v.fvj()); };
  auto see_term = [&](const Term& v) {
    if (!prop) see(v.vars());
  };
  for (auto x : f.fvp()) see_formula(s.formula_at(Sym::p(x)));
  for (auto& d : f.cons_d()) see_formula(s.formula_at(Sym::d(d)));
  if (!prop) {
    for (auto u : f.fvj()) see_term(s.term_at(Sym::j(u)));
    for (auto& c : f.cons_c()) see_term(s.term_at(Sym::c(c)));
  }
  return any ? top + 1 : 0;
}

Formula apply(const Formula& f, const Subst& s) {
  switch (f.kind()) {
    case FKind::Var: return s.formula_at(Sym::p(f.index()));
    case FKind::Const: return s.formula_at(Sym::d(f.name()));
    case FKind::Implies: return Formula::implies(apply(f.a(), s), apply(f.b(), s));
    case FKind::Not: return Formula::neg(apply(f.a(), s));
    case FKind::Ident: return Formula::ident(apply(f.a(), s), apply(f.b(), s));
    case FKind::Refers: return Formula::refers(apply(f.a(), s), apply(f.b(), s));
    case FKind::TermIdent: return Formula::term_ident(apply(f.s(), s), apply(f.t(), s));
    case FKind::TermLe: return Formula::term_le(apply(f.s(), s), apply(f.t(), s));
    case FKind::IsTrue: return Formula::is_true(apply(f.a(), s));
    case FKind::IsFalse: return Formula::is_false(apply(f.a(), s));
    case FKind::Box: return Formula::box(apply(f.a(), s));
    case FKind::Member: return Formula::member(apply(f.a(), s), apply(f.t(), s));
    case FKind::Forall: {
      uint32_t y = forced_variable(f, s);
      Subst inner = s;
      inner.set(Sym::p(f.index()), Formula::var(y));
      return Formula::forall(y, apply(f.a(), inner));
    }
    case FKind::JForall: {
      uint32_t v = forced_variable(f, s);
      Subst inner = s;
      inner.set(Sym::j(f.index()), Term::var(v));
      return Formula::jforall(v, apply(f.a(), inner));
    }
  }
  return f;
}

Subst compose(const Subst& s, const Subst& t) {
  Subst out;
  std::vector<Sym> keys = s.support();
  for (auto& k : t.support()) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  for (auto& k : keys) {
    if (k.is_prop_sort())
      out.set(k, apply(s.formula_at(k), t));
    else
      out.set(k, apply(s.term_at(k), t));
  }
  return out;
}

Formula normalize(const Formula& f) { return apply(f, Subst()); }

bool alpha_eq(const Formula& a, const Formula& b) {
  if (a.size() != b.size() || a.fvp() != b.fvp() || a.fvj() != b.fvj()) return false;
  return normalize(a) == normalize(b);
}

namespace {

struct RefSearch {
  const Formula& target;
  Formula target_nf;
  std::vector<uint32_t> bound_p, bound_j;

  bool captured() const {
    for (auto x : bound_p)
      if (target.has_fvp(x)) return true;
    for (auto u : bound_j)
      if (target.has_fvj(u)) return true;
    return false;
  }

  bool matches(const Formula& f) const {
    if (f.size() != target.size() || f.fvp() != target.fvp() || f.fvj() != target.fvj()) return false;
    if (captured()) return false;
    return normalize(f) == target_nf;
  }

  bool walk(const Formula& f, bool root) {
    if (!root && matches(f)) return true;
    switch (f.kind()) {
      case FKind::Var:
      case FKind::Const:
      case FKind::TermIdent:
      case FKind::TermLe: return false;
      case FKind::Forall: {
        bound_p.push_back(f.index());
        bool r = walk(f.a(), false);
        bound_p.pop_back();
        return r;
      }
      case FKind::JForall: {
        bound_j.push_back(f.index());
        bool r = walk(f.a(), false);
        bound_j.pop_back();
        return r;
      }
      default:
        if (walk(f.a(), false)) return true;
        return f.b().valid() && walk(f.b(), false);
    }
  }
};

}  // namespace

bool syn_ref(const Formula& a, const Formula& b) {
  if (a.size() >= b.size()) return false;
  RefSearch rs{a, normalize(a), {}, {}};
  return rs.walk(b, true);
}

// ---- text form ----

Subst parse_subst(std::string_view text, const Decls& decls) {
  std::size_t i = 0;
  auto ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& m) -> Subst {
    throw Error(ErrorCode::SyntaxError, "substitution: " + m + " at offset " + std::to_string(i));
  };
  Subst out;
  ws();
  if (i >= text.size() || text[i] != '[') return fail("expected '['");
  ++i;
  ws();
  if (i < text.size() && text[i] == ']') {
    ++i;
    ws();
    if (i != text.size()) return fail("trailing input");
    return out;
  }
  while (true) {
    ws();
    std::size_t k0 = i;
    while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_' || text[i] == '\''))
      ++i;
    std::string key(text.substr(k0, i - k0));
    if (key.empty()) return fail("expected a key");
    Sym k;
    Expr probe = parse_expr(key, decls);
    if (auto* f = std::get_if<Formula>(&probe)) {
      if (f->kind() == FKind::Var)
        k = Sym::p(f->index());
      else
        k = Sym::d(f->name());
    } else {
      const Term& t = std::get<Term>(probe);
      if (t.kind() == TKind::Var)
        k = Sym::j(t.index());
      else
        k = Sym::c(t.name());
    }
    ws();
    if (text.substr(i, 2) != ":=") return fail("expected ':='");
    i += 2;
    ws();
    if (i >= text.size() || text[i] != '"') return fail("expected '\"'");
    ++i;
    std::size_t v0 = i;
    while (i < text.size() && text[i] != '"') ++i;
    if (i >= text.size()) return fail("unterminated value");
    std::string_view val = text.substr(v0, i - v0);
    ++i;
    Expr v = parse_expr(val, decls);
    if (k.is_prop_sort() != std::holds_alternative<Formula>(v))
      throw Error(ErrorCode::SortError, "substitution value for " + k.str() + " has the wrong sort");
    out.set(k, v);
    ws();
    if (i < text.size() && text[i] == ',') {
      ++i;
      continue;
    }
    if (i < text.size() && text[i] == ']') {
      ++i;
      break;
    }
    return fail("expected ',' or ']'");
  }
  ws();
  if (i != text.size()) return fail("trailing input");
  return out;
}

std::string render_subst(const Subst& s) {
  std::string out = "[";
  bool first = true;
  for (auto& k : s.support()) {
    if (!first) out += ", ";
    first = false;
    out += k.str();
    out += ":=\"";
    out += k.is_prop_sort() ? render(s.formula_at(k)) : render(s.term_at(k));
    out += '"';
  }
  out += ']';
  return out;
}

}  // namespace ejk
