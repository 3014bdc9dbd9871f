#include "doctest.h"
#include "ejk/subst.hpp"
#include "gen.hpp"
#include "oracles.hpp"

using namespace ejk;

namespace {

Decls std_decls() {
  Decls d;
  d.add_prop("d1");
  d.add_prop("d2");
  d.add_just("c1");
  d.add_just("c2");
  return d;
}

Formula P(const char* s) { return parse_formula(s, std_decls()); }

std::vector<Sym> fcon_union(const Formula& f, const Subst& s) {
  std::set<Sym> acc;
  for (auto& y : fcon(f)) {
    auto part = y.is_prop_sort() ? fcon(s.formula_at(y)) : varcon(s.term_at(y));
    acc.insert(part.begin(), part.end());
  }
  return {acc.begin(), acc.end()};
}

}  // namespace

TEST_CASE("apply: worked cases") {
  Formula x0 = Formula::var(0), x1 = Formula::var(1);
  CHECK(apply(P("all x0. (x0 -> x1)"), Subst::single(Sym::p(1), x0)) == P("all x1. (x1 -> x0)"));
  CHECK(apply(P("x0 -> d1"), Subst::single(Sym::p(0), Formula::box(x0))) == P("box x0 -> d1"));
  CHECK(apply(P("jall v0. (x0 : v0)"), Subst::single(Sym::p(0), x1)) == P("jall v0. (x1 : v0)"));
  CHECK(apply(P("d1 : c1"), Subst().set(Sym::c("c1"), Term::var(4))) == P("d1 : v4"));
  CHECK(apply(P("jall v3. (x0 : (v3 * v1))"), Subst()) == P("jall v2. (x0 : (v2 * v1))"));
  CHECK_THROWS_AS(Subst().set(Sym::p(0), Term::var(0)), Error);
  CHECK_THROWS_AS(Subst().set(Sym::j(0), x0), Error);
}

TEST_CASE("compose: worked cases") {
  Formula x1 = Formula::var(1), d1 = Formula::cnst("d1");
  Subst s = Subst::single(Sym::p(0), x1);
  Subst t = Subst::single(Sym::p(1), d1);
  Subst st = compose(s, t);
  CHECK(st.formula_at(Sym::p(0)) == d1);
  CHECK(st.formula_at(Sym::p(1)) == d1);
  Formula f = P("x0 -> x1");
  CHECK(apply(f, st) == apply(apply(f, s), t));
  CHECK(apply(f, st) == P("d1 -> d1"));
  CHECK(compose(Subst(), s) == s);
}

TEST_CASE("normalize and alpha") {
  CHECK(normalize(P("all x5. (x5 -> x1)")) == P("all x2. (x2 -> x1)"));
  CHECK(normalize(Formula::var(0)) == Formula::var(0));
  CHECK(alpha_eq(P("all x0. (x0 -> d1)"), P("all x1. (x1 -> d1)")));
  CHECK(alpha_eq(P("jall v0. (x0 : v0)"), P("jall v1. (x0 : v1)")));
  CHECK_FALSE(alpha_eq(P("all x0. (x0 -> x1)"), P("all x1. (x1 -> x1)")));
}

TEST_CASE("syntactic reference anchors") {
  Formula x0 = Formula::var(0);
  CHECK(syn_ref(x0, P("x0 -> d1")));
  CHECK_FALSE(syn_ref(x0, P("all x0. (x0 -> d1)")));
  CHECK(syn_ref(P("all x3. (x3 -> d1)"), P("box all x0. (x0 -> d1)")));
  CHECK_FALSE(syn_ref(P("x0 -> d1"), P("x0 -> d1")));
}

TEST_CASE("substitution properties on generated inputs") {
  testgen::Gen g(11);
  for (int i = 0; i < 300; ++i) {
    Formula f = g.formula(4);
    Subst s = g.subst(2, 3), t = g.subst(2, 3), r = g.subst(2, 2);
    Formula fs = apply(f, s);
    CHECK(fcon(fs) == fcon_union(f, s));
    CHECK(apply(f, compose(s, t)) == apply(fs, t));
    CHECK(compose(s, compose(t, r)) == compose(compose(s, t), r));
    Term tm = g.term(3);
    CHECK(apply(tm, compose(s, t)) == apply(apply(tm, s), t));

    // agreement on fcon is all that matters
    Subst s2 = s;
    s2.set(Sym::p(40), Formula::cnst("d2"));
    CHECK(apply(f, s2) == fs);

    Formula n = normalize(f);
    CHECK(normalize(n) == n);
    CHECK(alpha_eq(n, f));
    CHECK(oracle::AlphaOracle::eq(n, f));
  }
}

TEST_CASE("alpha agrees with the inductive oracle") {
  testgen::Gen g(12);
  for (int i = 0; i < 400; ++i) {
    Formula a = g.formula_upto(4, 12);
    Formula b = (i % 2) ? g.rename_bound(a) : g.formula_upto(4, 12);
    CHECK(alpha_eq(a, b) == oracle::AlphaOracle::eq(a, b));
  }
}

TEST_CASE("syn_ref agrees with the oracle and is stable under substitution") {
  testgen::Gen g(13);
  for (int i = 0; i < 300; ++i) {
    Formula b = g.formula(4);
    auto occ = oracle::occurrences(b);
    const Formula& a = occ[g.pick(static_cast<int>(occ.size()))].f;
    bool r = syn_ref(a, b);
    CHECK(r == oracle::syn_ref(a, b));
    if (r) {
      Subst s = g.subst(1, 2);
      CHECK(syn_ref(apply(a, s), apply(b, s)));
    }
    CHECK_FALSE(syn_ref(b, b));
  }
}

TEST_CASE("substitution text form") {
  Decls d = std_decls();
  Subst s = parse_subst(R"([x0:="box x1", v0:="c1 * v1", d1:="x2"])", d);
  CHECK(s.formula_at(Sym::p(0)) == P("box x1"));
  CHECK(s.term_at(Sym::j(0)) == Term::prod(Term::cnst("c1"), Term::var(1)));
  CHECK(s.formula_at(Sym::d("d1")) == Formula::var(2));
  CHECK(parse_subst(render_subst(s), d) == s);
  CHECK(parse_subst("[]", d).empty());
  CHECK_THROWS_AS(parse_subst(R"([x0:="v1"])", d), Error);
  CHECK_THROWS_AS(parse_subst(R"([x0:="x1")", d), Error);
}
