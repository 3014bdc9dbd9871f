#include "ejk/axioms.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <unordered_map>

namespace ejk {

namespace {

using F = Formula;
using T = Term;

struct SchemaInfo {
  SchemaId id;
  const char* name;
  std::vector<std::string> params;
};

const std::vector<SchemaInfo>& schema_table() {
  static const std::vector<SchemaInfo> table = {
      {SchemaId::taut, "taut", {"phi"}},
      {SchemaId::i, "i", {"phi"}},
      {SchemaId::ii, "ii", {"phi"}},
      {SchemaId::iii, "iii", {"phi", "psi", "s", "t"}},
      {SchemaId::iv, "iv", {"phi", "s", "t"}},
      {SchemaId::v, "v", {"phi", "s", "t"}},
      {SchemaId::vi, "vi", {"phi", "u"}},
      {SchemaId::vii, "vii", {"phi"}},
      {SchemaId::viii, "viii", {"phi", "psi"}},
      {SchemaId::ix, "ix", {"phi", "psi", "chi"}},
      {SchemaId::x, "x", {"phi", "psi"}},
      {SchemaId::xi, "xi", {"phi", "psi"}},
      {SchemaId::xii, "xii", {"chi", "sigma", "sigma'"}},
      {SchemaId::xiii, "xiii", {"phi", "u", "t"}},
      {SchemaId::xiv, "xiv", {"phi", "u", "t"}},
      {SchemaId::xv, "xv", {"phi", "psi", "u"}},
      {SchemaId::xvi, "xvi", {"phi", "psi", "u"}},
      {SchemaId::xvii, "xvii", {"phi", "x", "psi"}},
      {SchemaId::xviii, "xviii", {"phi", "x", "psi"}},
      {SchemaId::xix, "xix", {"phi", "psi", "x"}},
      {SchemaId::xx, "xx", {"phi", "psi", "x"}},
      {SchemaId::xxi, "xxi", {"s", "t", "x"}},
      {SchemaId::xxii, "xxii", {"s", "t"}},
      {SchemaId::xxiii, "xxiii", {"t", "sigma", "sigma'"}},
      {SchemaId::four, "four", {"phi"}},
      {SchemaId::e, "e", {"phi"}},
  };
  return table;
}

const SchemaInfo& info(SchemaId id) {
  for (auto& s : schema_table())
    if (s.id == id) return s;
  throw Error(ErrorCode::FormatError, "unknown schema");
}

[[noreturn]] void side(SchemaId id, const std::string& cond) {
  throw Error(ErrorCode::SideConditionViolated, std::string("(") + schema_name(id) + ") " + cond);
}

// Witness access with a uniform error for missing parameters.
struct W {
  SchemaId id;
  const Witnesses& w;

  F f(const std::string& k) const {
    auto it = w.formulas.find(k);
    if (it == w.formulas.end()) side(id, "missing witness " + k);
    return it->second;
  }
  T t(const std::string& k) const {
    auto it = w.terms.find(k);
    if (it == w.terms.end()) side(id, "missing witness " + k);
    return it->second;
  }
  uint32_t x() const {
    if (!w.x) side(id, "missing witness x");
    return *w.x;
  }
  uint32_t u() const {
    if (!w.u) side(id, "missing witness u");
    return *w.u;
  }
  const Subst& sigma(bool second) const {
    const auto& s = second ? w.sigma2 : w.sigma;
    if (!s) side(id, second ? "missing witness sigma'" : "missing witness sigma");
    return *s;
  }
};

void check_params(SchemaId id, const Witnesses& w) {
  const auto& ps = info(id).params;
  auto has = [&](const char* k) { return std::find(ps.begin(), ps.end(), k) != ps.end(); };
  for (auto& [k, _] : w.formulas)
    if (!has(k.c_str())) side(id, "unexpected witness " + k);
  for (auto& [k, _] : w.terms)
    if (!has(k.c_str())) side(id, "unexpected witness " + k);
  if (w.x && !has("x")) side(id, "unexpected witness x");
  if (w.u && !has("u")) side(id, "unexpected witness u");
  if (w.sigma && !has("sigma")) side(id, "unexpected witness sigma");
  if (w.sigma2 && !has("sigma'")) side(id, "unexpected witness sigma'");
}

F jall(SchemaId id, uint32_t u, const F& body) {
  if (!body.has_fvj(u)) side(id, "v" + std::to_string(u) + " not free under its binder");
  return F::jforall(u, body);
}

F pall(SchemaId id, uint32_t x, const F& body) {
  if (!body.has_fvp(x)) side(id, "x" + std::to_string(x) + " not free under its binder");
  return F::forall(x, body);
}

void variables_only(SchemaId id, const Subst& s, const Subst& s2) {
  for (const Subst* x : {&s, &s2})
    for (auto& z : x->support())
      if (!z.is_var()) side(id, "substitution moves constant " + z.str());
}

F build_body(SchemaId id, const Witnesses& wit) {
  W w{id, wit};
  switch (id) {
    case SchemaId::taut: {
      F phi = w.f("phi");
      if (!is_skeleton_tautology(phi)) side(id, "not a tautology");
      return phi;
    }
    case SchemaId::i: {
      F phi = w.f("phi");
      return iff(F::is_true(phi), phi);
    }
    case SchemaId::ii: {
      F phi = w.f("phi");
      return iff(F::is_false(phi), F::neg(phi));
    }
    case SchemaId::iii: {
      F phi = w.f("phi"), psi = w.f("psi");
      T s = w.t("s"), t = w.t("t");
      return F::implies(F::member(F::implies(phi, psi), s),
                        F::implies(F::member(phi, t), F::member(psi, T::prod(s, t))));
    }
    case SchemaId::iv: {
      F phi = w.f("phi");
      T s = w.t("s"), t = w.t("t");
      return F::implies(F::member(phi, s), F::member(phi, T::sum(s, t)));
    }
    case SchemaId::v: {
      F phi = w.f("phi");
      T s = w.t("s"), t = w.t("t");
      return F::implies(F::member(phi, t), F::member(phi, T::sum(s, t)));
    }
    case SchemaId::vi: {
      F phi = w.f("phi");
      uint32_t u = w.u();
      if (phi.has_fvj(u)) side(id, "u occurs free in phi");
      return iff(F::box(phi), jexists(u, F::member(phi, T::var(u))));
    }
    case SchemaId::vii: {
      F phi = w.f("phi");
      return F::implies(F::box(phi), phi);
    }
    case SchemaId::viii: {
      F phi = w.f("phi"), psi = w.f("psi");
      if (!syn_ref(phi, psi)) side(id, "phi does not syntactically refer into psi");
      return F::refers(phi, psi);
    }
    case SchemaId::ix: {
      F phi = w.f("phi"), psi = w.f("psi"), chi = w.f("chi");
      return F::implies(F::refers(phi, psi), F::implies(F::refers(psi, chi), F::refers(phi, chi)));
    }
    case SchemaId::x: {
      F phi = w.f("phi"), psi = w.f("psi");
      if (!alpha_eq(phi, psi)) side(id, "phi and psi are not alpha-congruent");
      return F::ident(phi, psi);
    }
    case SchemaId::xi: {
      F phi = w.f("phi"), psi = w.f("psi");
      return F::implies(F::ident(phi, psi), F::implies(phi, psi));
    }
    case SchemaId::xii: {
      F chi = w.f("chi");
      const Subst &s = w.sigma(false), &s2 = w.sigma(true);
      variables_only(id, s, s2);
      return F::implies(expand_sigma_eq(s, s2, chi), F::ident(apply(chi, s), apply(chi, s2)));
    }
    case SchemaId::xiii: {
      F phi = w.f("phi");
      uint32_t u = w.u();
      T t = w.t("t");
      if (!phi.has_fvj(u)) side(id, "u not free in phi");
      return F::implies(apply(phi, Subst::single(Sym::j(u), t)), jexists(u, phi));
    }
    case SchemaId::xiv: {
      F phi = w.f("phi");
      uint32_t u = w.u();
      T t = w.t("t");
      return F::implies(jall(id, u, phi), apply(phi, Subst::single(Sym::j(u), t)));
    }
    case SchemaId::xv: {
      F phi = w.f("phi"), psi = w.f("psi");
      uint32_t u = w.u();
      return F::implies(jall(id, u, F::implies(psi, phi)), F::implies(jall(id, u, psi), jall(id, u, phi)));
    }
    case SchemaId::xvi: {
      F phi = w.f("phi"), psi = w.f("psi");
      uint32_t u = w.u();
      if (psi.has_fvj(u)) side(id, "u occurs free in psi");
      return F::implies(jall(id, u, F::implies(psi, phi)), F::implies(psi, jall(id, u, phi)));
    }
    case SchemaId::xvii: {
      F phi = w.f("phi"), psi = w.f("psi");
      uint32_t x = w.x();
      if (!phi.has_fvp(x)) side(id, "x not free in phi");
      return F::implies(apply(phi, Subst::single(Sym::p(x), psi)), exists(x, phi));
    }
    case SchemaId::xviii: {
      F phi = w.f("phi"), psi = w.f("psi");
      uint32_t x = w.x();
      return F::implies(pall(id, x, phi), apply(phi, Subst::single(Sym::p(x), psi)));
    }
    case SchemaId::xix: {
      F phi = w.f("phi"), psi = w.f("psi");
      uint32_t x = w.x();
      return F::implies(pall(id, x, F::implies(psi, phi)), F::implies(pall(id, x, psi), pall(id, x, phi)));
    }
    case SchemaId::xx: {
      F phi = w.f("phi"), psi = w.f("psi");
      uint32_t x = w.x();
      if (psi.has_fvp(x)) side(id, "x occurs free in psi");
      return F::implies(pall(id, x, F::implies(psi, phi)), F::implies(psi, pall(id, x, phi)));
    }
    case SchemaId::xxi: {
      T s = w.t("s"), t = w.t("t");
      uint32_t x = w.x();
      F xv = F::var(x);
      return iff(F::term_le(s, t), F::forall(x, F::implies(F::member(xv, s), F::member(xv, t))));
    }
    case SchemaId::xxii: {
      T s = w.t("s"), t = w.t("t");
      return iff(F::term_ident(s, t), conj(F::term_le(s, t), F::term_le(t, s)));
    }
    case SchemaId::xxiii: {
      T t = w.t("t");
      const Subst &s = w.sigma(false), &s2 = w.sigma(true);
      variables_only(id, s, s2);
      return F::implies(expand_sigma_eq(s, s2, t), F::term_ident(apply(t, s), apply(t, s2)));
    }
    case SchemaId::four: {
      F phi = w.f("phi");
      return F::implies(F::box(phi), F::box(F::box(phi)));
    }
    case SchemaId::e: {
      F phi = w.f("phi");
      return F::implies(dia(phi), F::box(dia(phi)));
    }
  }
  side(id, "unknown schema");
}

// Shape destructors for the defined connectives.

std::optional<std::pair<F, F>> m_imp(const F& f) {
  if (f.kind() != FKind::Implies) return std::nullopt;
  return std::make_pair(f.a(), f.b());
}

std::optional<F> m_not(const F& f) {
  if (f.kind() != FKind::Not) return std::nullopt;
  return f.a();
}

std::optional<std::pair<F, F>> m_iff(const F& f) {
  auto n = m_not(f);
  if (!n) return std::nullopt;
  auto top = m_imp(*n);
  if (!top) return std::nullopt;
  auto ab = m_imp(top->first);
  auto nb = m_not(top->second);
  if (!ab || !nb) return std::nullopt;
  auto ba = m_imp(*nb);
  if (!ba || ba->first != ab->second || ba->second != ab->first) return std::nullopt;
  return ab;
}

std::optional<std::pair<uint32_t, F>> m_jex(const F& f) {
  auto n = m_not(f);
  if (!n || n->kind() != FKind::JForall) return std::nullopt;
  auto inner = m_not(n->a());
  if (!inner) return std::nullopt;
  return std::make_pair(n->index(), *inner);
}

std::optional<std::pair<uint32_t, F>> m_ex(const F& f) {
  auto n = m_not(f);
  if (!n || n->kind() != FKind::Forall) return std::nullopt;
  auto inner = m_not(n->a());
  if (!inner) return std::nullopt;
  return std::make_pair(n->index(), *inner);
}

// Find what a free occurrence of a variable in pattern was replaced by in target.
struct Extract {
  bool prop;
  uint32_t var;
  std::optional<Expr> found;

  void term(const T& p, const T& t, bool shadow) {
    if (found || shadow) return;
    if (p.kind() == TKind::Var && !prop && p.index() == var) {
      found = t;
      return;
    }
    if (p.kind() != t.kind()) return;
    if (p.kind() == TKind::Prod || p.kind() == TKind::Sum) {
      term(p.left(), t.left(), shadow);
      term(p.right(), t.right(), shadow);
    }
  }

  void form(const F& p, const F& t, bool shadow) {
    if (found || shadow) return;
    if (prop ? !p.has_fvp(var) : !p.has_fvj(var)) return;
    if (p.kind() == FKind::Var && prop && p.index() == var) {
      found = t;
      return;
    }
    if (p.kind() != t.kind()) return;
    switch (p.kind()) {
      case FKind::Var:
      case FKind::Const: return;
      case FKind::TermIdent:
      case FKind::TermLe:
        term(p.s(), t.s(), false);
        term(p.t(), t.t(), false);
        return;
      case FKind::Member:
        form(p.a(), t.a(), false);
        term(p.t(), t.t(), false);
        return;
      case FKind::Forall: form(p.a(), t.a(), prop && p.index() == var); return;
      case FKind::JForall: form(p.a(), t.a(), !prop && p.index() == var); return;
      default:
        form(p.a(), t.a(), false);
        if (p.b().valid()) form(p.b(), t.b(), false);
    }
  }
};

std::optional<Witnesses> try_build(SchemaId id, const Witnesses& w, const F& body, bool alpha) {
  try {
    F b = build_body(id, w);
    if (b == body || (alpha && alpha_eq(b, body))) return w;
  } catch (const Error&) {
  }
  return std::nullopt;
}

std::optional<Witnesses> match_impl(SchemaId id, const F& f, bool alpha) {
  Witnesses w;
  switch (id) {
    case SchemaId::taut:
      if (is_skeleton_tautology(f)) return w.f("phi", f);
      return std::nullopt;
    case SchemaId::i: {
      auto p = m_iff(f);
      if (!p || p->first.kind() != FKind::IsTrue) return std::nullopt;
      return try_build(id, w.f("phi", p->second), f, alpha);
    }
    case SchemaId::ii: {
      auto p = m_iff(f);
      if (!p || p->first.kind() != FKind::IsFalse) return std::nullopt;
      return try_build(id, w.f("phi", p->first.a()), f, alpha);
    }
    case SchemaId::iii: {
      auto p = m_imp(f);
      if (!p || p->first.kind() != FKind::Member || p->first.a().kind() != FKind::Implies) return std::nullopt;
      auto q = m_imp(p->second);
      if (!q || q->first.kind() != FKind::Member) return std::nullopt;
      w.f("phi", p->first.a().a()).f("psi", p->first.a().b()).t("s", p->first.t()).t("t", q->first.t());
      return try_build(id, w, f, alpha);
    }
    case SchemaId::iv:
    case SchemaId::v: {
      auto p = m_imp(f);
      if (!p || p->first.kind() != FKind::Member || p->second.kind() != FKind::Member) return std::nullopt;
      const T& sum = p->second.t();
      if (sum.kind() != TKind::Sum) return std::nullopt;
      w.f("phi", p->first.a()).t("s", sum.left()).t("t", sum.right());
      return try_build(id, w, f, alpha);
    }
    case SchemaId::vi: {
      auto p = m_iff(f);
      if (!p || p->first.kind() != FKind::Box) return std::nullopt;
      auto ex = m_jex(p->second);
      if (!ex) return std::nullopt;
      w.f("phi", p->first.a());
      w.u = ex->first;
      return try_build(id, w, f, alpha);
    }
    case SchemaId::vii: {
      auto p = m_imp(f);
      if (!p || p->first.kind() != FKind::Box) return std::nullopt;
      return try_build(id, w.f("phi", p->second), f, alpha);
    }
    case SchemaId::viii:
      if (f.kind() != FKind::Refers) return std::nullopt;
      return try_build(id, w.f("phi", f.a()).f("psi", f.b()), f, alpha);
    case SchemaId::ix: {
      auto p = m_imp(f);
      if (!p || p->first.kind() != FKind::Refers) return std::nullopt;
      auto q = m_imp(p->second);
      if (!q || q->first.kind() != FKind::Refers) return std::nullopt;
      w.f("phi", p->first.a()).f("psi", p->first.b()).f("chi", q->first.b());
      return try_build(id, w, f, alpha);
    }
    case SchemaId::x:
      if (f.kind() != FKind::Ident) return std::nullopt;
      return try_build(id, w.f("phi", f.a()).f("psi", f.b()), f, alpha);
    case SchemaId::xi: {
      auto p = m_imp(f);
      if (!p || p->first.kind() != FKind::Ident) return std::nullopt;
      return try_build(id, w.f("phi", p->first.a()).f("psi", p->first.b()), f, alpha);
    }
    case SchemaId::xiii: {
      auto p = m_imp(f);
      if (!p) return std::nullopt;
      auto ex = m_jex(p->second);
      if (!ex) return std::nullopt;
      Extract e{false, ex->first, std::nullopt};
      e.form(ex->second, p->first, false);
      if (!e.found) return std::nullopt;
      w.f("phi", ex->second).t("t", std::get<T>(*e.found));
      w.u = ex->first;
      return try_build(id, w, f, alpha);
    }
    case SchemaId::xiv: {
      auto p = m_imp(f);
      if (!p || p->first.kind() != FKind::JForall) return std::nullopt;
      Extract e{false, p->first.index(), std::nullopt};
      e.form(p->first.a(), p->second, false);
      if (!e.found) return std::nullopt;
      w.f("phi", p->first.a()).t("t", std::get<T>(*e.found));
      w.u = p->first.index();
      return try_build(id, w, f, alpha);
    }
    case SchemaId::xv:
    case SchemaId::xvi:
    case SchemaId::xix:
    case SchemaId::xx: {
      bool jsort = id == SchemaId::xv || id == SchemaId::xvi;
      FKind q = jsort ? FKind::JForall : FKind::Forall;
      auto p = m_imp(f);
      if (!p || p->first.kind() != q) return std::nullopt;
      auto inner = m_imp(p->first.a());
      if (!inner) return std::nullopt;
      w.f("phi", inner->second).f("psi", inner->first);
      if (jsort)
        w.u = p->first.index();
      else
        w.x = p->first.index();
      return try_build(id, w, f, alpha);
    }
    case SchemaId::xvii: {
      auto p = m_imp(f);
      if (!p) return std::nullopt;
      auto ex = m_ex(p->second);
      if (!ex) return std::nullopt;
      Extract e{true, ex->first, std::nullopt};
      e.form(ex->second, p->first, false);
      if (!e.found) return std::nullopt;
      w.f("phi", ex->second).f("psi", std::get<F>(*e.found));
      w.x = ex->first;
      return try_build(id, w, f, alpha);
    }
    case SchemaId::xviii: {
      auto p = m_imp(f);
      if (!p || p->first.kind() != FKind::Forall) return std::nullopt;
      Extract e{true, p->first.index(), std::nullopt};
      e.form(p->first.a(), p->second, false);
      if (!e.found) return std::nullopt;
      w.f("phi", p->first.a()).f("psi", std::get<F>(*e.found));
      w.x = p->first.index();
      return try_build(id, w, f, alpha);
    }
    case SchemaId::xxi: {
      auto p = m_iff(f);
      if (!p || p->first.kind() != FKind::TermLe || p->second.kind() != FKind::Forall) return std::nullopt;
      w.t("s", p->first.s()).t("t", p->first.t());
      w.x = p->second.index();
      return try_build(id, w, f, alpha);
    }
    case SchemaId::xxii: {
      auto p = m_iff(f);
      if (!p || p->first.kind() != FKind::TermIdent) return std::nullopt;
      return try_build(id, w.t("s", p->first.s()).t("t", p->first.t()), f, alpha);
    }
    case SchemaId::four:
    case SchemaId::e: {
      auto p = m_imp(f);
      if (!p) return std::nullopt;
      F phi;
      if (id == SchemaId::four) {
        if (p->first.kind() != FKind::Box) return std::nullopt;
        phi = p->first.a();
      } else {
        auto n = m_not(p->first);
        if (!n || n->kind() != FKind::Box) return std::nullopt;
        auto inner = m_not(n->a());
        if (!inner) return std::nullopt;
        phi = *inner;
      }
      return try_build(id, w.f("phi", phi), f, alpha);
    }
    case SchemaId::xii:
    case SchemaId::xxiii: return std::nullopt;
  }
  return std::nullopt;
}

const std::vector<SchemaId>& recognize_order() {
  static const std::vector<SchemaId> order = {
      SchemaId::i,     SchemaId::ii,   SchemaId::iii,  SchemaId::iv,   SchemaId::v,    SchemaId::vi,
      SchemaId::vii,   SchemaId::viii, SchemaId::ix,   SchemaId::x,    SchemaId::xi,   SchemaId::xiii,
      SchemaId::xiv,   SchemaId::xv,   SchemaId::xvi,  SchemaId::xvii, SchemaId::xviii, SchemaId::xix,
      SchemaId::xx,    SchemaId::xxi,  SchemaId::xxii, SchemaId::four, SchemaId::e,    SchemaId::taut,
  };
  return order;
}

// Tautology skeleton: atoms are maximal subformulas that are not -> or ~.
struct Skeleton {
  std::unordered_map<F, int, FormulaHash> atoms;
  // postfix program: op >= 0 atom index, -1 not, -2 implies
  std::vector<int> prog;

  void compile(const F& f) {
    if (f.kind() == FKind::Implies) {
      compile(f.a());
      compile(f.b());
      prog.push_back(-2);
      return;
    }
    if (f.kind() == FKind::Not) {
      compile(f.a());
      prog.push_back(-1);
      return;
    }
    auto it = atoms.find(f);
    int idx;
    if (it == atoms.end()) {
      idx = static_cast<int>(atoms.size());
      if (idx >= 16) throw Error(ErrorCode::AtomBudgetExceeded, "more than 16 atoms in skeleton");
      atoms.emplace(f, idx);
    } else {
      idx = it->second;
    }
    prog.push_back(idx);
  }

  bool tautology() const {
    std::size_t n = atoms.size();
    std::vector<bool> st;
    st.reserve(prog.size());
    for (uint32_t val = 0; val < (1u << n); ++val) {
      st.clear();
      for (int op : prog) {
        if (op >= 0) {
          st.push_back((val >> op) & 1u);
        } else if (op == -1) {
          st.back() = !st.back();
        } else {
          bool b = st.back();
          st.pop_back();
          st.back() = !st.back() || b;
        }
      }
      if (!st.back()) return false;
    }
    return true;
  }
};

}  // namespace

const std::vector<SchemaId>& all_schemas() {
  static const std::vector<SchemaId> ids = [] {
    std::vector<SchemaId> v;
    for (auto& s : schema_table()) v.push_back(s.id);
    return v;
  }();
  return ids;
}

const char* schema_name(SchemaId id) { return info(id).name; }

std::optional<SchemaId> parse_schema_id(std::string_view s) {
  for (auto& i : schema_table())
    if (s == i.name) return i.id;
  return std::nullopt;
}

const char* system_name(SystemId s) {
  switch (s) {
    case SystemId::AX: return "AX";
    case SystemId::AX4: return "AX4";
    case SystemId::AXE: return "AXE";
    case SystemId::AX4_AXNEC: return "AX4_AXNEC";
    case SystemId::AXE_AXNEC: return "AXE_AXNEC";
  }
  return "?";
}

std::optional<SystemId> parse_system_id(std::string_view s) {
  for (auto id : {SystemId::AX, SystemId::AX4, SystemId::AXE, SystemId::AX4_AXNEC, SystemId::AXE_AXNEC})
    if (s == system_name(id)) return id;
  return std::nullopt;
}

bool has_axnec(SystemId s) { return s == SystemId::AX4_AXNEC || s == SystemId::AXE_AXNEC; }

bool system_includes(SystemId s, SchemaId id) {
  if (id == SchemaId::four) return s == SystemId::AX4 || s == SystemId::AX4_AXNEC;
  if (id == SchemaId::e) return s == SystemId::AXE || s == SystemId::AXE_AXNEC;
  return true;
}

bool Witnesses::parameters_empty() const {
  return formulas.empty() && terms.empty() && !x && !u && !sigma && !sigma2;
}

bool Witnesses::operator==(const Witnesses& o) const {
  return formulas == o.formulas && terms == o.terms && x == o.x && u == o.u && sigma == o.sigma &&
         sigma2 == o.sigma2 && closure == o.closure;
}

std::vector<std::string> schema_parameters(SchemaId id) { return info(id).params; }

Formula expand_sigma_eq(const Subst& s, const Subst& s2, const Formula& base) {
  std::vector<F> parts;
  for (auto x : base.fvp()) {
    Sym z = Sym::p(x);
    parts.push_back(F::ident(s.formula_at(z), s2.formula_at(z)));
  }
  for (auto u : base.fvj()) {
    Sym z = Sym::j(u);
    parts.push_back(F::term_ident(s.term_at(z), s2.term_at(z)));
  }
  if (parts.empty()) throw Error(ErrorCode::EmptyVariableSet, "base formula has no free variables");
  F acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(acc, parts[i]);
  return acc;
}

Formula expand_sigma_eq(const Subst& s, const Subst& s2, const Term& base) {
  if (base.vars().empty()) throw Error(ErrorCode::EmptyVariableSet, "base term has no variables");
  std::optional<F> acc;
  for (auto u : base.vars()) {
    Sym z = Sym::j(u);
    F part = F::term_ident(s.term_at(z), s2.term_at(z));
    acc = acc ? conj(*acc, part) : part;
  }
  return *acc;
}

Formula build_instance(SchemaId id, const Witnesses& w) {
  check_params(id, w);
  F f = build_body(id, w);
  for (std::size_t i = w.closure.size(); i-- > 0;) {
    const Sym& z = w.closure[i];
    if (z.kind == SymKind::VarP)
      f = pall(id, z.index, f);
    else if (z.kind == SymKind::VarJ)
      f = jall(id, z.index, f);
    else
      side(id, "closure over a non-variable");
  }
  return f;
}

std::optional<Witnesses> match_schema(SchemaId id, const Formula& body) { return match_impl(id, body, false); }

std::optional<Witnesses> match_schema_alpha(SchemaId id, const Formula& body) {
  return match_impl(id, body, true);
}

std::optional<Recognized> recognize(const Formula& f, SystemId sys) {
  std::vector<Sym> closure;
  F body = f;
  while (body.is_binder()) {
    closure.push_back(body.kind() == FKind::Forall ? Sym::p(body.index()) : Sym::j(body.index()));
    body = body.a();
  }
  for (bool alpha : {false, true}) {
    for (SchemaId id : recognize_order()) {
      if (!system_includes(sys, id)) continue;
      if (alpha && id == SchemaId::taut) continue;
      std::optional<Witnesses> w;
      try {
        w = match_impl(id, body, alpha);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::AtomBudgetExceeded) throw;
      }
      if (w) {
        w->closure = closure;
        return Recognized{id, *w, !alpha};
      }
    }
  }
  return std::nullopt;
}

bool is_axiom(const Formula& f, SystemId sys) { return recognize(normalize(f), sys).has_value(); }

bool is_skeleton_tautology(const Formula& f) {
  Skeleton sk;
  sk.compile(f);
  return sk.tautology();
}

namespace {

struct WitnessLexer {
  std::string_view s;
  std::size_t i = 0;

  void ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    ws();
    return i >= s.size();
  }
  std::string key() {
    std::size_t b = i;
    while (i < s.size() && s[i] != '=' && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size() || s[i] != '=') throw Error(ErrorCode::FormatError, "expected key=value in witnesses");
    std::string k(s.substr(b, i - b));
    ++i;
    return k;
  }
  std::string quoted() {
    ++i;
    std::size_t b = i;
    while (i < s.size() && s[i] != '"') ++i;
    if (i >= s.size()) throw Error(ErrorCode::FormatError, "unterminated quote in witnesses");
    std::string v(s.substr(b, i - b));
    ++i;
    return v;
  }
  std::string bracketed() {
    std::size_t b = i;
    bool inq = false;
    for (; i < s.size(); ++i) {
      if (s[i] == '"') inq = !inq;
      if (!inq && s[i] == ']') {
        ++i;
        return std::string(s.substr(b, i - b));
      }
    }
    throw Error(ErrorCode::FormatError, "unterminated bracket in witnesses");
  }
  std::string bare() {
    std::size_t b = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    return std::string(s.substr(b, i - b));
  }
};

uint32_t parse_var(const std::string& v, char prefix) {
  if (v.size() < 2 || v[0] != prefix || !std::all_of(v.begin() + 1, v.end(), ::isdigit))
    throw Error(ErrorCode::FormatError, "bad variable witness " + v);
  return static_cast<uint32_t>(std::stoul(v.substr(1)));
}

}  // namespace

Witnesses parse_witnesses(std::string_view text, const Decls& decls) {
  Witnesses w;
  WitnessLexer lx{text};
  while (!lx.done()) {
    std::string k = lx.key();
    if (k == "phi" || k == "psi" || k == "chi") {
      if (lx.i >= text.size() || text[lx.i] != '"') throw Error(ErrorCode::FormatError, k + " needs a quoted formula");
      w.formulas[k] = parse_formula(lx.quoted(), decls);
    } else if (k == "s" || k == "t") {
      if (lx.i >= text.size() || text[lx.i] != '"') throw Error(ErrorCode::FormatError, k + " needs a quoted term");
      w.terms[k] = parse_term(lx.quoted(), decls);
    } else if (k == "x") {
      w.x = parse_var(lx.bare(), 'x');
    } else if (k == "u") {
      w.u = parse_var(lx.bare(), 'v');
    } else if (k == "sigma" || k == "sigma'") {
      if (lx.i >= text.size() || text[lx.i] != '[') throw Error(ErrorCode::FormatError, k + " needs [..]");
      Subst s = parse_subst(lx.bracketed(), decls);
      (k == "sigma" ? w.sigma : w.sigma2) = s;
    } else if (k == "close") {
      if (lx.i >= text.size() || text[lx.i] != '[') throw Error(ErrorCode::FormatError, "close needs [..]");
      std::string body = lx.bracketed();
      body = body.substr(1, body.size() - 2);
      std::size_t p = 0;
      while (p < body.size()) {
        std::size_t q = body.find(',', p);
        if (q == std::string::npos) q = body.size();
        std::string item = body.substr(p, q - p);
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (!item.empty()) {
          if (item[0] == 'x')
            w.closure.push_back(Sym::p(parse_var(item, 'x')));
          else
            w.closure.push_back(Sym::j(parse_var(item, 'v')));
        }
        p = q + 1;
      }
    } else {
      throw Error(ErrorCode::FormatError, "unknown witness key " + k);
    }
  }
  return w;
}

std::string render_witnesses(const Witnesses& w) {
  std::vector<std::string> parts;
  for (const char* k : {"phi", "psi", "chi"}) {
    auto it = w.formulas.find(k);
    if (it != w.formulas.end()) parts.push_back(std::string(k) + "=\"" + render(it->second) + "\"");
  }
  for (const char* k : {"s", "t"}) {
    auto it = w.terms.find(k);
    if (it != w.terms.end()) parts.push_back(std::string(k) + "=\"" + render(it->second) + "\"");
  }
  if (w.x) parts.push_back("x=x" + std::to_string(*w.x));
  if (w.u) parts.push_back("u=v" + std::to_string(*w.u));
  if (w.sigma) parts.push_back("sigma=" + render_subst(*w.sigma));
  if (w.sigma2) parts.push_back("sigma'=" + render_subst(*w.sigma2));
  if (!w.closure.empty()) {
    std::string c = "close=[";
    for (std::size_t i = 0; i < w.closure.size(); ++i) c += (i ? "," : "") + w.closure[i].str();
    parts.push_back(c + "]");
  }
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " " : "") + parts[i];
  return out;
}

}  // namespace ejk
