#pragma once

// Random accepted derivations built from axiom instances, tautology
// templates and modus ponens.

#include "axgen.hpp"
#include "ejk/proofs.hpp"

namespace ejk::testgen {

inline SchemaId random_schema(Gen& g, SystemId sys) {
  for (;;) {
    SchemaId id = all_schemas()[g.pick(static_cast<int>(all_schemas().size()))];
    if (system_includes(sys, id)) return id;
  }
}

inline void push_mp(Derivation& d, std::size_t i, std::size_t j) {
  d.steps.push_back({d.steps[j].f.b(), Justification::mp(i, j)});
}

inline void push_taut(Derivation& d, const Formula& f) {
  d.steps.push_back({f, Justification::ax(SchemaId::taut, Witnesses().f("phi", f))});
}

inline Derivation derivation(Gen& g, SystemId sys, std::size_t max_len, int depth = 2,
                             std::vector<Formula> hyps = {}) {
  Derivation d;
  d.system = sys;
  d.hypotheses = hyps;
  std::size_t target = 1 + static_cast<std::size_t>(g.pick(static_cast<int>(max_len)));
  while (d.steps.size() < target) {
    std::size_t room = target - d.steps.size();
    int k = g.pick(10);
    if (d.steps.empty() || k < 3) {
      if (!hyps.empty() && g.coin(20)) {
        d.steps.push_back({hyps[g.pick(static_cast<int>(hyps.size()))], Justification::hyp()});
        continue;
      }
      SchemaId id = random_schema(g, sys);
      Witnesses w = witnesses(g, id, depth);
      bool nec = has_axnec(sys) && g.coin(25);
      Formula f = build_instance(id, w);
      bool keep = id == SchemaId::xii || id == SchemaId::xxiii || g.coin(50);
      if (!keep) w = Witnesses();
      if (nec)
        d.steps.push_back({Formula::box(f), Justification::axnec(id, w)});
      else
        d.steps.push_back({f, Justification::ax(id, w)});
    } else if (k < 7 && room >= 2) {
      std::size_t i = static_cast<std::size_t>(g.pick(static_cast<int>(d.steps.size())));
      Formula a = d.steps[i].f, c = g.formula(depth);
      Formula t = g.coin(50) ? Formula::implies(a, Formula::implies(c, a)) : Formula::implies(a, disj(a, c));
      push_taut(d, t);
      push_mp(d, i, d.steps.size() - 1);
    } else if (room >= 2) {
      // box A from AxNec or A -> B from an axiom, then eliminate
      std::size_t i = static_cast<std::size_t>(g.pick(static_cast<int>(d.steps.size())));
      const Formula& a = d.steps[i].f;
      if (a.kind() == FKind::Box) {
        Witnesses w;
        w.f("phi", a.a());
        d.steps.push_back({build_instance(SchemaId::vii, w), Justification::ax(SchemaId::vii, w)});
        push_mp(d, i, d.steps.size() - 1);
      } else {
        bool found = false;
        for (std::size_t j = 0; j < d.steps.size() && !found; ++j) {
          const Formula& b = d.steps[j].f;
          if (b.kind() == FKind::Implies && b.a() == a) {
            push_mp(d, i, j);
            found = true;
          }
        }
        if (!found) {
          push_taut(d, Formula::implies(a, Formula::neg(Formula::neg(a))));
          push_mp(d, i, d.steps.size() - 1);
        }
      }
    } else {
      SchemaId id = random_schema(g, sys);
      Witnesses w = witnesses(g, id, depth);
      d.steps.push_back({build_instance(id, w), Justification::ax(id, w)});
    }
  }
  return d;
}

}  // namespace ejk::testgen
