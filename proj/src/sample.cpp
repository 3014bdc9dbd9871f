#include "ejk/sample.hpp"

namespace ejk {

Sampler::Sampler(uint64_t seed, uint32_t nvars) : rng_(seed), nvars_(nvars == 0 ? 1 : nvars) {}

void Sampler::use_constants(const Decls& d) {
  dconsts_.assign(d.props.begin(), d.props.end());
  cconsts_.assign(d.justs.begin(), d.justs.end());
}

int Sampler::pick(int n) { return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng_)); }

Term Sampler::term(int depth) {
  if (depth <= 0 || pick(3) == 0) {
    if (!cconsts_.empty() && pick(4) == 0) return Term::cnst(cconsts_[pick(static_cast<int>(cconsts_.size()))]);
    return Term::var(static_cast<uint32_t>(pick(static_cast<int>(nvars_))));
  }
  Term a = term(depth - 1), b = term(depth - 1);
  return pick(2) == 0 ? Term::prod(a, b) : Term::sum(a, b);
}

Formula Sampler::formula(int depth) {
  if (depth <= 0 || pick(4) == 0) {
    if (!dconsts_.empty() && pick(4) == 0) return Formula::cnst(dconsts_[pick(static_cast<int>(dconsts_.size()))]);
    return Formula::var(static_cast<uint32_t>(pick(static_cast<int>(nvars_))));
  }
  int d = depth - 1;
  switch (pick(13)) {
    case 0:
    case 1: return Formula::implies(formula(d), formula(d));
    case 2:
    case 3: return Formula::neg(formula(d));
    case 4: return Formula::ident(formula(d), formula(d));
    case 5: return Formula::refers(formula(d), formula(d));
    case 6: return pick(2) == 0 ? Formula::term_ident(term(1), term(1)) : Formula::term_le(term(1), term(1));
    case 7: return pick(2) == 0 ? Formula::is_true(formula(d)) : Formula::is_false(formula(d));
    case 8: return Formula::box(formula(d));
    case 9: return Formula::member(formula(d), term(1));
    case 10:
    case 11: {
      Formula body = formula(d);
      if (!body.fvp().empty()) return Formula::forall(body.fvp()[pick(static_cast<int>(body.fvp().size()))], body);
      return body;
    }
    default: {
      Formula body = formula(d);
      if (!body.fvj().empty()) return Formula::jforall(body.fvj()[pick(static_cast<int>(body.fvj().size()))], body);
      return body;
    }
  }
}

Subst Sampler::var_subst(int entries, int depth) {
  Subst s;
  for (int i = 0; i < entries; ++i) {
    auto k = static_cast<uint32_t>(pick(static_cast<int>(nvars_)));
    if (pick(2) == 0)
      s.set(Sym::p(k), formula(depth));
    else
      s.set(Sym::j(k), term(depth));
  }
  return s;
}

namespace {

// Subformula occurrences of f in preorder.
void subformulas(const Formula& f, std::vector<Formula>& out) {
  out.push_back(f);
  switch (f.kind()) {
    case FKind::Var:
    case FKind::Const:
    case FKind::TermIdent:
    case FKind::TermLe: return;
    case FKind::Implies:
    case FKind::Ident:
    case FKind::Refers:
      subformulas(f.a(), out);
      subformulas(f.b(), out);
      return;
    default: subformulas(f.a(), out); return;
  }
}

}  // namespace

std::optional<Witnesses> Sampler::witnesses(SchemaId id, int depth, int attempts) {
  auto params = schema_parameters(id);
  for (int n = 0; n < attempts; ++n) {
    Witnesses w;
    for (auto& p : params) {
      if (p == "phi" || p == "psi" || p == "chi")
        w.f(p, formula(depth));
      else if (p == "s" || p == "t")
        w.t(p, term(2));
      else if (p == "x")
        w.x = static_cast<uint32_t>(pick(static_cast<int>(nvars_) + 1));
      else if (p == "u")
        w.u = static_cast<uint32_t>(pick(static_cast<int>(nvars_) + 1));
      else if (p == "sigma")
        w.sigma = var_subst(2, 1);
      else if (p == "sigma'")
        w.sigma2 = var_subst(2, 1);
    }
    switch (id) {
      case SchemaId::taut: {
        Formula a = formula(depth - 1), b = formula(depth - 1);
        Formula shapes[] = {Formula::implies(a, a), Formula::implies(a, Formula::implies(b, a)),
                            Formula::implies(Formula::neg(Formula::neg(a)), a), disj(a, Formula::neg(a))};
        w.f("phi", shapes[pick(4)]);
        break;
      }
      case SchemaId::viii: {
        std::vector<Formula> subs;
        subformulas(w.formulas["psi"], subs);
        w.f("phi", subs[pick(static_cast<int>(subs.size()))]);
        break;
      }
      case SchemaId::x: w.f("psi", w.formulas["phi"]); break;
      case SchemaId::xiii:
      case SchemaId::xiv:
      case SchemaId::xv:
      case SchemaId::xvi: {
        const auto& fv = w.formulas["phi"].fvj();
        if (!fv.empty()) w.u = fv[pick(static_cast<int>(fv.size()))];
        break;
      }
      case SchemaId::xvii:
      case SchemaId::xviii:
      case SchemaId::xix:
      case SchemaId::xx: {
        const auto& fv = w.formulas["phi"].fvp();
        if (!fv.empty()) w.x = fv[pick(static_cast<int>(fv.size()))];
        break;
      }
      default: break;
    }
    try {
      build_instance(id, w);
      return w;
    } catch (const Error&) {
    }
  }
  return std::nullopt;
}

std::optional<Formula> Sampler::instance(SchemaId id, int depth, int attempts) {
  if (auto w = witnesses(id, depth, attempts)) return build_instance(id, *w);
  return std::nullopt;
}

}  // namespace ejk
