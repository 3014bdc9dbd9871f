#include "ejk/proofs.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace ejk {

namespace {

using F = Formula;

std::vector<Sym> prefix_of(const F& f, F* body_out = nullptr) {
  std::vector<Sym> out;
  F b = f;
  while (b.is_binder()) {
    out.push_back(b.kind() == FKind::Forall ? Sym::p(b.index()) : Sym::j(b.index()));
    b = b.a();
  }
  if (body_out) *body_out = b;
  return out;
}

bool free_in(const F& f, const Sym& z) { return z.kind == SymKind::VarP ? f.has_fvp(z.index) : f.has_fvj(z.index); }

// Incremental construction with the formula of each MP computed from its premises.
struct Builder {
  Derivation d;

  explicit Builder(SystemId sys) { d.system = sys; }

  std::size_t push(const F& f, Justification j) {
    d.steps.push_back({f, std::move(j)});
    return d.steps.size() - 1;
  }
  const F& at(std::size_t i) const { return d.steps[i].f; }
  std::size_t ax(SchemaId id, const Witnesses& w) { return push(build_instance(id, w), Justification::ax(id, w)); }
  std::size_t axnec(SchemaId id, const Witnesses& w) {
    return push(F::box(build_instance(id, w)), Justification::axnec(id, w));
  }
  std::size_t taut(const F& f) { return ax(SchemaId::taut, Witnesses().f("phi", f)); }
  std::size_t mp(std::size_t i, std::size_t j) {
    const F& imp = at(j);
    if (imp.kind() != FKind::Implies || imp.a() != at(i))
      throw Error(ErrorCode::UnsupportedStep, "internal: modus ponens shape mismatch");
    return push(imp.b(), Justification::mp(i, j));
  }
  // From X -> Y and Y -> Z obtain X -> Z.
  std::size_t hs(std::size_t i, std::size_t j) {
    F x = at(i).a(), y = at(i).b(), z = at(j).b();
    std::size_t t = taut(F::implies(at(i), F::implies(at(j), F::implies(x, z))));
    (void)y;
    return mp(j, mp(i, t));
  }
  // From p and a tautology p -> q obtain q.
  std::size_t via(std::size_t i, const F& q) { return mp(i, taut(F::implies(at(i), q))); }
  // From a and b and a tautology a -> (b -> q) obtain q.
  std::size_t via2(std::size_t i, std::size_t j, const F& q) {
    return mp(j, mp(i, taut(F::implies(at(i), F::implies(at(j), q)))));
  }
  // From f obtain g via (x) f == g and (xi) when the two are alpha-congruent.
  std::size_t bridge(std::size_t i, const F& g) {
    F f = at(i);
    std::size_t e = ax(SchemaId::x, Witnesses().f("phi", f).f("psi", g));
    std::size_t k = ax(SchemaId::xi, Witnesses().f("phi", f).f("psi", g));
    return mp(i, mp(e, k));
  }
  std::size_t splice(const Derivation& sub) {
    std::size_t off = d.steps.size();
    for (auto s : sub.steps) {
      if (s.just.kind == JustKind::MP) {
        s.just.i += off;
        s.just.j += off;
      }
      d.steps.push_back(std::move(s));
    }
    return d.steps.size() - 1;
  }
};

std::string fail_ax(SchemaId id) { return std::string("not an instance of (") + schema_name(id) + ")"; }

// w == w as a derived step.
std::size_t reflexive(Builder& b, const Sym& w) {
  if (w.kind == SymKind::VarP) return b.ax(SchemaId::x, Witnesses().f("phi", F::var(w.index)).f("psi", F::var(w.index)));
  Term t = Term::var(w.index);
  F inner = F::implies(F::member(F::var(0), t), F::member(F::var(0), t));
  Witnesses cw;
  cw.f("phi", inner).closure.push_back(Sym::p(0));
  std::size_t all = b.ax(SchemaId::taut, cw);
  Witnesses w21;
  w21.t("s", t).t("t", t).x = 0;
  std::size_t d21 = b.ax(SchemaId::xxi, w21);
  F le = F::term_le(t, t);
  std::size_t le_step = b.mp(all, b.via(d21, F::implies(b.at(all), le)));
  std::size_t d22 = b.ax(SchemaId::xxii, Witnesses().t("s", t).t("t", t));
  F eq = F::term_ident(t, t);
  std::size_t back = b.via(d22, F::implies(conj(le, le), eq));
  return b.mp(b.via(le_step, conj(le, le)), back);
}

// Re-derives an instance of (xii)/(xxiii) after the constant k is renamed to w.
// The substitutions act on variables only, so a k inside the base expression
// becomes a fresh variable z with sigma(z) = sigma'(z) = w, and the extra
// conjunct w == w is discharged by a tautology.
std::size_t renamed_substitution_axiom(Builder& b, SchemaId id, const Witnesses& orig, const Sym& k, const Sym& w,
                                       const Subst& rho, const F& target) {
  std::size_t depth = orig.closure.size();
  std::vector<Sym> newpre = prefix_of(target);
  newpre.resize(depth);
  Subst ext = rho;
  for (std::size_t c = 0; c < depth; ++c) {
    const Sym& z = orig.closure[c];
    if (z.kind == SymKind::VarP)
      ext.set(z, F::var(newpre[c].index));
    else
      ext.set(z, Term::var(newpre[c].index));
  }
  bool is12 = id == SchemaId::xii;
  bool jsort = !k.is_prop_sort();
  bool moved;
  uint32_t top = w.index + 1;
  auto bump = [&](const std::vector<Sym>& vs) {
    for (auto& v : vs)
      if ((v.kind == SymKind::VarJ) == jsort) top = std::max(top, v.index + 1);
  };
  Witnesses nw = orig;
  nw.closure.clear();
  std::vector<Sym> base_vars;
  if (is12) {
    F chi = orig.formulas.at("chi");
    const auto& cs = jsort ? chi.cons_c() : chi.cons_d();
    moved = std::binary_search(cs.begin(), cs.end(), k.name);
    bump(vars_all(chi));
    if (moved) chi = apply(chi, jsort ? Subst::single(k, Term::var(top)) : Subst::single(k, F::var(top)));
    nw.f("chi", chi);
    for (auto x : chi.fvp()) base_vars.push_back(Sym::p(x));
    for (auto u : chi.fvj()) base_vars.push_back(Sym::j(u));
  } else {
    Term t = orig.terms.at("t");
    moved = std::binary_search(t.consts().begin(), t.consts().end(), k.name);
    for (auto u : t.vars()) top = std::max(top, u + 1);
    if (moved) t = apply(t, Subst::single(k, Term::var(top)));
    nw.t("t", t);
    for (auto u : t.vars()) base_vars.push_back(Sym::j(u));
  }
  Sym z = jsort ? Sym::j(top) : Sym::p(top);
  Subst s1, s2;
  for (auto& v : base_vars) {
    if (moved && v == z) {
      if (jsort) {
        s1.set(z, Term::var(w.index));
        s2.set(z, Term::var(w.index));
      } else {
        s1.set(z, F::var(w.index));
        s2.set(z, F::var(w.index));
      }
    } else if (v.kind == SymKind::VarP) {
      s1.set(v, apply(orig.sigma->formula_at(v), ext));
      s2.set(v, apply(orig.sigma2->formula_at(v), ext));
    } else {
      s1.set(v, apply(orig.sigma->term_at(v), ext));
      s2.set(v, apply(orig.sigma2->term_at(v), ext));
    }
  }
  nw.sigma = s1;
  nw.sigma2 = s2;

  if (!moved) {
    nw.closure = newpre;
    F inst = build_instance(id, nw);
    std::size_t a = b.ax(id, nw);
    if (inst == target) return a;
    if (alpha_eq(inst, target)) return b.bridge(a, target);
    throw Error(ErrorCode::UnsupportedStep, "renamed substitution axiom does not match");
  }

  F body = target;
  for (std::size_t c = 0; c < depth; ++c) body = body.a();
  Builder sb(b.d.system);
  std::size_t inst = sb.ax(id, nw);
  std::size_t refl = reflexive(sb, w);
  F x_inst = sb.at(inst).b();
  F mid = F::implies(body.a(), x_inst);
  std::size_t got = 0;
  try {
    got = sb.via2(refl, inst, mid);
  } catch (const Error&) {
    throw Error(ErrorCode::UnsupportedStep, "renamed substitution axiom does not match");
  }
  if (mid != body) {
    if (!alpha_eq(mid, body)) throw Error(ErrorCode::UnsupportedStep, "renamed substitution axiom does not match");
    got = sb.bridge(got, body);
  }
  Derivation sub = sb.d;
  for (std::size_t c = depth; c-- > 0;) sub = generalize_var(sub, newpre[c]);
  std::size_t last = b.splice(sub);
  if (b.at(last) == target) return last;
  if (alpha_eq(b.at(last), target)) return b.bridge(last, target);
  throw Error(ErrorCode::UnsupportedStep, "renamed substitution axiom does not match");
}

}  // namespace

const Formula& Derivation::conclusion() const {
  if (steps.empty()) throw Error(ErrorCode::FormatError, "empty derivation has no conclusion");
  return steps.back().f;
}

Resolved resolve_axiom(const Formula& f, SchemaId id, const Witnesses& w, SystemId sys) {
  if (!system_includes(sys, id))
    return {std::nullopt, std::string("schema (") + schema_name(id) + ") not in system " + system_name(sys)};
  F body;
  std::vector<Sym> pre = prefix_of(f, &body);
  try {
    if (!w.parameters_empty()) {
      if (!w.closure.empty()) {
        if (build_instance(id, w) == f) return {w, {}};
        return {std::nullopt, "witness instance mismatch"};
      }
      F inst = build_instance(id, w);
      F cur = f;
      for (std::size_t k = 0;; ++k) {
        if (cur == inst) {
          Witnesses out = w;
          out.closure.assign(pre.begin(), pre.begin() + static_cast<std::ptrdiff_t>(k));
          return {out, {}};
        }
        if (!cur.is_binder()) break;
        cur = cur.a();
      }
      return {std::nullopt, "witness instance mismatch"};
    }
    if (id == SchemaId::xii || id == SchemaId::xxiii)
      return {std::nullopt, std::string("schema (") + schema_name(id) + ") requires witnesses"};
    F cur = f;
    for (std::size_t k = 0;; ++k) {
      if (auto m = match_schema(id, cur)) {
        m->closure.assign(pre.begin(), pre.begin() + static_cast<std::ptrdiff_t>(k));
        return {*m, {}};
      }
      if (!cur.is_binder()) break;
      cur = cur.a();
    }
  } catch (const Error& e) {
    return {std::nullopt, e.what()};
  }
  return {std::nullopt, fail_ax(id)};
}

Verdict check(const Derivation& d) {
  Verdict v;
  auto fail = [&](std::size_t i, std::string why) {
    v.accepted = false;
    v.first_failure = std::make_pair(i, std::move(why));
    return v;
  };
  if (d.steps.empty()) return fail(0, "empty derivation");
  for (std::size_t n = 0; n < d.steps.size(); ++n) {
    const Step& s = d.steps[n];
    if (!s.f.valid()) return fail(n, "missing formula");
    if (!is_proper(s.f)) return fail(n, "improper formula");
    switch (s.just.kind) {
      case JustKind::Hyp:
        if (std::find(d.hypotheses.begin(), d.hypotheses.end(), s.f) == d.hypotheses.end())
          return fail(n, "hypothesis not listed");
        break;
      case JustKind::Ax: {
        auto r = resolve_axiom(s.f, s.just.id, s.just.w, d.system);
        if (!r.w) return fail(n, r.reason);
        break;
      }
      case JustKind::AxNec: {
        if (!has_axnec(d.system)) return fail(n, std::string("AxNec not available in system ") + system_name(d.system));
        if (s.f.kind() != FKind::Box) {
          if (!s.just.w.parameters_empty()) return fail(n, "witness instance mismatch");
          return fail(n, "AxNec step is not a box");
        }
        auto r = resolve_axiom(s.f.a(), s.just.id, s.just.w, d.system);
        if (!r.w) return fail(n, r.reason);
        break;
      }
      case JustKind::MP: {
        if (s.just.i >= n || s.just.j >= n) return fail(n, "mp refers to a later or missing step");
        const F& imp = d.steps[s.just.j].f;
        if (imp.kind() != FKind::Implies || imp.a() != d.steps[s.just.i].f || imp.b() != s.f)
          return fail(n, "mp shape mismatch");
        break;
      }
    }
  }
  return v;
}

Derivation concat(const Derivation& a, const Derivation& b) {
  Builder bl(a.system);
  bl.d = a;
  for (auto& h : b.hypotheses)
    if (std::find(bl.d.hypotheses.begin(), bl.d.hypotheses.end(), h) == bl.d.hypotheses.end())
      bl.d.hypotheses.push_back(h);
  bl.splice(b);
  return bl.d;
}

Derivation generalize_var(const Derivation& d, const Sym& w) {
  if (!w.is_var()) throw Error(ErrorCode::SortError, "generalization needs a variable");
  for (auto& h : d.hypotheses)
    if (free_in(h, w)) throw Error(ErrorCode::VariableNotFresh, w.str() + " is free in a hypothesis");
  if (!free_in(d.conclusion(), w)) throw Error(ErrorCode::ImproperFormula, w.str() + " is not free in the conclusion");
  bool jsort = w.kind == SymKind::VarJ;
  Builder b(d.system);
  b.d = d;
  std::map<std::size_t, std::size_t> gen;
  for (std::size_t n = 0; n < d.steps.size(); ++n) {
    const Step& s = d.steps[n];
    if (!free_in(s.f, w)) continue;
    switch (s.just.kind) {
      case JustKind::Hyp: throw Error(ErrorCode::VariableNotFresh, w.str() + " is free in a hypothesis");
      case JustKind::AxNec: throw Error(ErrorCode::UnsupportedStep, "cannot generalize over an AxNec step");
      case JustKind::Ax: {
        auto r = resolve_axiom(s.f, s.just.id, s.just.w, d.system);
        if (!r.w) throw Error(ErrorCode::UnsupportedStep, "step " + std::to_string(n) + ": " + r.reason);
        Witnesses cw = *r.w;
        cw.closure.insert(cw.closure.begin(), w);
        gen[n] = b.ax(s.just.id, cw);
        break;
      }
      case JustKind::MP: {
        const F& prem = d.steps[s.just.i].f;
        std::size_t gj = gen.at(s.just.j);
        Witnesses q;
        q.f("phi", s.f).f("psi", prem);
        if (jsort)
          q.u = w.index;
        else
          q.x = w.index;
        if (free_in(prem, w)) {
          std::size_t k = b.ax(jsort ? SchemaId::xv : SchemaId::xix, q);
          gen[n] = b.mp(gen.at(s.just.i), b.mp(gj, k));
        } else {
          std::size_t k = b.ax(jsort ? SchemaId::xvi : SchemaId::xx, q);
          gen[n] = b.mp(s.just.i, b.mp(gj, k));
        }
        break;
      }
    }
  }
  return b.d;
}

Derivation generalize_constant(const Derivation& d, const Sym& k, const Sym& w) {
  if (k.is_var()) throw Error(ErrorCode::SortError, "generalize_constant needs a constant");
  if (!w.is_var()) throw Error(ErrorCode::SortError, "generalize_constant needs a variable target");
  if (k.is_prop_sort() != w.is_prop_sort()) throw Error(ErrorCode::SortError, "constant and variable sorts differ");
  auto has_const = [&](const F& f) {
    const auto& cs = k.kind == SymKind::ConstD ? f.cons_d() : f.cons_c();
    return std::binary_search(cs.begin(), cs.end(), k.name);
  };
  for (auto& h : d.hypotheses)
    if (has_const(h)) throw Error(ErrorCode::ConstantInHypotheses, k.str() + " occurs in a hypothesis");
  const F& concl = d.conclusion();
  if (!has_const(concl)) throw Error(ErrorCode::ConstantAbsent, k.str() + " does not occur in the conclusion");
  auto all = vars_all(concl);
  if (std::find(all.begin(), all.end(), w) != all.end())
    throw Error(ErrorCode::VariableNotFresh, w.str() + " occurs in the conclusion");
  for (auto& h : d.hypotheses)
    if (free_in(h, w)) throw Error(ErrorCode::VariableNotFresh, w.str() + " is free in a hypothesis");

  Subst rho;
  if (w.kind == SymKind::VarJ)
    rho.set(k, Term::var(w.index));
  else
    rho.set(k, F::var(w.index));
  bool clash = std::any_of(d.steps.begin(), d.steps.end(), [&](const Step& s) { return free_in(s.f, w); });
  if (clash) {
    uint32_t fresh = w.index + 1;
    for (auto& s : d.steps)
      for (auto& z : vars_all(s.f))
        if (z.kind == w.kind) fresh = std::max(fresh, z.index + 1);
    if (w.kind == SymKind::VarJ)
      rho.set(w, Term::var(fresh));
    else
      rho.set(w, F::var(fresh));
  }

  Builder b(d.system);
  b.d.hypotheses = d.hypotheses;
  std::vector<std::size_t> map(d.steps.size());
  for (std::size_t n = 0; n < d.steps.size(); ++n) {
    const Step& s = d.steps[n];
    F target = apply(s.f, rho);
    switch (s.just.kind) {
      case JustKind::Hyp: {
        std::size_t h = b.push(s.f, Justification::hyp());
        map[n] = target == s.f ? h : b.bridge(h, target);
        break;
      }
      case JustKind::AxNec:
        if (target != s.f) throw Error(ErrorCode::UnsupportedStep, "renaming would change an AxNec step");
        map[n] = b.push(s.f, s.just);
        break;
      case JustKind::MP: map[n] = b.push(target, Justification::mp(map[s.just.i], map[s.just.j])); break;
      case JustKind::Ax: {
        auto r = recognize(target, d.system);
        if (r && r->exact) {
          map[n] = b.ax(r->id, r->w);
          break;
        }
        if (r) {
          map[n] = b.bridge(b.ax(r->id, r->w), target);
          break;
        }
        if (s.just.id != SchemaId::xii && s.just.id != SchemaId::xxiii)
          throw Error(ErrorCode::UnsupportedStep, "renamed step " + std::to_string(n) + " is not an axiom");
        auto orig = resolve_axiom(s.f, s.just.id, s.just.w, d.system);
        if (!orig.w) throw Error(ErrorCode::UnsupportedStep, orig.reason);
        map[n] = renamed_substitution_axiom(b, s.just.id, *orig.w, k, w, rho, target);
        break;
      }
    }
  }
  return generalize_var(b.d, w);
}

Derivation derive_K(const Formula& phi, const Formula& psi) {
  uint32_t base = 0;
  for (auto x : phi.fvj()) base = std::max(base, x + 1);
  for (auto x : psi.fvj()) base = std::max(base, x + 1);
  const uint32_t u = base, v = base + 1, w = base + 2;
  const Term tu = Term::var(u), tv = Term::var(v), tw = Term::var(w);
  const F A = F::implies(phi, psi);
  const F N = F::jforall(w, F::neg(F::member(psi, tw)));
  const F R = F::neg(N);

  Builder b(SystemId::AX);
  std::size_t s1 = b.ax(SchemaId::iii, Witnesses().f("phi", phi).f("psi", psi).t("s", tu).t("t", tv));
  Witnesses w13;
  w13.f("phi", F::member(psi, tw)).t("t", Term::prod(tu, tv));
  w13.u = w;
  std::size_t s2 = b.ax(SchemaId::xiii, w13);
  // psi : (u*v) -> R, bridging any bound-variable renaming inside psi
  std::size_t eq = b.ax(SchemaId::x, Witnesses().f("phi", F::member(psi, Term::prod(tu, tv))).f("psi", b.at(s2).a()));
  std::size_t imp = b.ax(SchemaId::xi, Witnesses().f("phi", b.at(eq).a()).f("psi", b.at(eq).b()));
  std::size_t d1 = b.hs(b.mp(eq, imp), s2);

  const F Au = F::member(A, tu), Pv = F::member(phi, tv);
  std::size_t c1 = b.via2(s1, d1, F::implies(Au, F::implies(Pv, R)));
  std::size_t c2 = b.via(c1, F::implies(Pv, F::implies(N, F::neg(Au))));
  (void)c2;

  b.d = generalize_var(b.d, Sym::j(u));
  std::size_t g2 = b.d.steps.size() - 1;
  Witnesses x1;
  x1.f("phi", F::implies(N, F::neg(Au))).f("psi", Pv);
  x1.u = u;
  std::size_t k1 = b.mp(g2, b.ax(SchemaId::xvi, x1));
  Witnesses x2;
  x2.f("phi", F::neg(Au)).f("psi", N);
  x2.u = u;
  std::size_t k2 = b.ax(SchemaId::xvi, x2);
  std::size_t c3 = b.hs(k1, k2);

  const F P = jexists(u, Au);
  std::size_t c4 = b.via(c3, F::implies(P, F::implies(N, F::neg(Pv))));
  (void)c4;

  b.d = generalize_var(b.d, Sym::j(v));
  std::size_t g4 = b.d.steps.size() - 1;
  Witnesses y1;
  y1.f("phi", F::implies(N, F::neg(Pv))).f("psi", P);
  y1.u = v;
  std::size_t m1 = b.mp(g4, b.ax(SchemaId::xvi, y1));
  Witnesses y2;
  y2.f("phi", F::neg(Pv)).f("psi", N);
  y2.u = v;
  std::size_t m2 = b.ax(SchemaId::xvi, y2);
  std::size_t c5 = b.hs(m1, m2);

  const F Q = jexists(v, Pv);
  std::size_t c6 = b.via(c5, F::implies(P, F::implies(Q, R)));

  auto vi = [&](const F& f, uint32_t var) {
    Witnesses wv;
    wv.f("phi", f);
    wv.u = var;
    return b.ax(SchemaId::vi, wv);
  };
  std::size_t va = vi(A, u), vp = vi(phi, v), vq = vi(psi, w);
  std::size_t e1 = b.via(va, F::implies(F::box(A), P));
  std::size_t e2 = b.via(vp, F::implies(F::box(phi), Q));
  std::size_t e3 = b.via(vq, F::implies(R, F::box(psi)));

  F goal = F::implies(F::box(A), F::implies(F::box(phi), F::box(psi)));
  F t = F::implies(b.at(e1), F::implies(b.at(e2), F::implies(b.at(e3), F::implies(b.at(c6), goal))));
  std::size_t fin = b.taut(t);
  fin = b.mp(e1, fin);
  fin = b.mp(e2, fin);
  fin = b.mp(e3, fin);
  b.mp(c6, fin);
  return b.d;
}

Derivation necessitate(const Derivation& d) {
  if (!d.hypotheses.empty()) throw Error(ErrorCode::HypothesesPresent, "necessitation needs a hypothesis-free derivation");
  if (!has_axnec(d.system)) throw Error(ErrorCode::SystemLacksAxNec, std::string("system ") + system_name(d.system));
  std::size_t n = d.steps.size();
  if (n == 0) throw Error(ErrorCode::FormatError, "empty derivation");
  std::vector<bool> need(n, false);
  need[n - 1] = true;
  for (std::size_t i = n; i-- > 0;) {
    if (!need[i]) continue;
    const Step& s = d.steps[i];
    if (s.just.kind == JustKind::MP) {
      need[s.just.i] = true;
      need[s.just.j] = true;
    }
  }
  Builder b(d.system);
  b.d = d;
  std::vector<std::size_t> boxed(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!need[i]) continue;
    const Step& s = d.steps[i];
    switch (s.just.kind) {
      case JustKind::Hyp: throw Error(ErrorCode::HypothesesPresent, "hypothesis step in derivation");
      case JustKind::Ax: {
        auto r = resolve_axiom(s.f, s.just.id, s.just.w, d.system);
        if (!r.w) throw Error(ErrorCode::UnsupportedStep, "step " + std::to_string(i) + ": " + r.reason);
        boxed[i] = b.axnec(s.just.id, *r.w);
        break;
      }
      case JustKind::AxNec: {
        if (!system_includes(d.system, SchemaId::four))
          throw Error(ErrorCode::UnsupportedStep, "boxing an AxNec step needs schema (four)");
        std::size_t k = b.ax(SchemaId::four, Witnesses().f("phi", s.f.a()));
        boxed[i] = b.mp(i, k);
        break;
      }
      case JustKind::MP: {
        const F& prem = d.steps[s.just.i].f;
        std::size_t k = b.splice(derive_K(prem, s.f));
        boxed[i] = b.mp(boxed[s.just.i], b.mp(boxed[s.just.j], k));
        break;
      }
    }
  }
  return b.d;
}

// Proof files

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, e = s.size();
  while (a < e && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (e > a && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(a, e - a));
}

[[noreturn]] void bad(std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::FormatError, "line " + std::to_string(line) + ": " + msg);
}

std::size_t parse_index(const std::string& tok, std::size_t line) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit)) bad(line, "expected an index, got '" + tok + "'");
  return std::stoul(tok);
}

}  // namespace

std::string render_justification(const Justification& j) {
  switch (j.kind) {
    case JustKind::Hyp: return "hyp";
    case JustKind::MP: return "mp " + std::to_string(j.i) + " " + std::to_string(j.j);
    case JustKind::Ax:
    case JustKind::AxNec: {
      std::string out = (j.kind == JustKind::Ax ? "ax " : "axnec ") + std::string(schema_name(j.id));
      std::string w = render_witnesses(j.w);
      return w.empty() ? out : out + " " + w;
    }
  }
  return "";
}

Derivation parse_proof(std::string_view text) {
  Derivation d;
  Decls decls;
  bool have_system = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string l = trim(raw);
    if (l.empty() || l[0] == '#') continue;
    std::istringstream ls(l);
    std::string head;
    ls >> head;
    if (head == "system") {
      std::string name;
      ls >> name;
      auto s = parse_system_id(name);
      if (!s) bad(line, "unknown system " + name);
      d.system = *s;
      have_system = true;
    } else if (head == "const") {
      std::string sort, name;
      ls >> sort;
      if (sort != "prop" && sort != "just") bad(line, "const needs prop or just");
      while (ls >> name) (sort == "prop") ? decls.add_prop(name) : decls.add_just(name);
    } else if (head == "hyp") {
      std::string idx;
      ls >> idx;
      if (parse_index(idx, line) != d.hypotheses.size()) bad(line, "hypotheses must be numbered consecutively");
      std::string rest;
      std::getline(ls, rest);
      d.hypotheses.push_back(parse_formula(trim(rest), decls));
    } else if (head == "step") {
      std::string idx;
      ls >> idx;
      if (parse_index(idx, line) != d.steps.size()) bad(line, "steps must be numbered consecutively");
      std::string rest;
      std::getline(ls, rest);
      auto semi = rest.find(';');
      if (semi == std::string::npos) bad(line, "missing ';' before the justification");
      Step s;
      s.f = parse_formula(trim(rest.substr(0, semi)), decls);
      std::string just = trim(rest.substr(semi + 1));
      std::istringstream js(just);
      std::string kind;
      js >> kind;
      if (kind == "hyp") {
        s.just = Justification::hyp();
      } else if (kind == "mp") {
        std::string a, c;
        js >> a >> c;
        s.just = Justification::mp(parse_index(a, line), parse_index(c, line));
      } else if (kind == "ax" || kind == "axnec") {
        std::string id;
        js >> id;
        auto sid = parse_schema_id(id);
        if (!sid) bad(line, "unknown schema " + id);
        std::string wtext;
        std::getline(js, wtext);
        Witnesses w = parse_witnesses(wtext, decls);
        s.just = kind == "ax" ? Justification::ax(*sid, w) : Justification::axnec(*sid, w);
      } else {
        bad(line, "unknown justification " + kind);
      }
      d.steps.push_back(std::move(s));
    } else {
      bad(line, "unknown directive " + head);
    }
  }
  if (!have_system) throw Error(ErrorCode::FormatError, "missing system line");
  return d;
}

std::string print_proof(const Derivation& d) {
  Decls decls;
  for (auto& h : d.hypotheses) decls.absorb(h);
  for (auto& s : d.steps) {
    decls.absorb(s.f);
    for (auto& [_, f] : s.just.w.formulas) decls.absorb(f);
    for (auto& [_, t] : s.just.w.terms) decls.absorb(t);
    for (const auto* sg : {&s.just.w.sigma, &s.just.w.sigma2}) {
      if (!*sg) continue;
      for (auto& [k, f] : (*sg)->formulas()) {
        decls.absorb(f);
        if (k.kind == SymKind::ConstD) decls.props.insert(k.name);
      }
      for (auto& [k, t] : (*sg)->terms()) {
        decls.absorb(t);
        if (k.kind == SymKind::ConstC) decls.justs.insert(k.name);
      }
    }
  }
  std::ostringstream o;
  o << "system " << system_name(d.system) << "\n";
  if (!decls.props.empty()) {
    o << "const prop";
    for (auto& n : decls.props) o << " " << n;
    o << "\n";
  }
  if (!decls.justs.empty()) {
    o << "const just";
    for (auto& n : decls.justs) o << " " << n;
    o << "\n";
  }
  for (std::size_t i = 0; i < d.hypotheses.size(); ++i) o << "hyp " << i << " " << render(d.hypotheses[i]) << "\n";
  for (std::size_t i = 0; i < d.steps.size(); ++i)
    o << "step " << i << " " << render(d.steps[i].f) << " ; " << render_justification(d.steps[i].just) << "\n";
  return o.str();
}

}  // namespace ejk
