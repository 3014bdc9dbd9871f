#include "doctest.h"
#include "ejk/proofs.hpp"
#include "proofgen.hpp"

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

Step ax(const char* f, SchemaId id, Witnesses w = {}) { return {P(f), Justification::ax(id, std::move(w))}; }

template <class Fn>
ErrorCode code_of(Fn fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::FormatError;
}

bool uses_schema(const Derivation& d, SchemaId id) {
  for (auto& s : d.steps)
    if (s.just.kind == JustKind::Ax && s.just.id == id) return true;
  return false;
}

}  // namespace

TEST_CASE("check: worked examples") {
  Derivation d;
  d.hypotheses = {P("d1"), P("d1 -> d2")};
  d.steps = {{P("d1"), Justification::hyp()}, {P("d1 -> d2"), Justification::hyp()},
             {P("d2"), Justification::mp(0, 1)}};
  CHECK(check(d).accepted);

  Derivation n;
  n.system = SystemId::AX4_AXNEC;
  n.steps = {ax("box x0 -> x0", SchemaId::vii), {P("box (box x0 -> x0)"), Justification::axnec(SchemaId::vii)}};
  CHECK(check(n).accepted);

  Derivation bad;
  bad.system = SystemId::AX4_AXNEC;
  bad.steps = {{P("box d1"), Justification::axnec(SchemaId::vii, Witnesses().f("phi", P("d1")))}};
  Verdict v = check(bad);
  CHECK_FALSE(v.accepted);
  REQUIRE(v.first_failure);
  CHECK(v.first_failure->first == 0);
  CHECK(v.first_failure->second == "witness instance mismatch");
}

TEST_CASE("check: rejections") {
  Derivation d;
  d.steps = {{P("d1"), Justification::hyp()}};
  CHECK(check(d).first_failure->second == "hypothesis not listed");

  d.steps = {{P("box (box x0 -> x0)"), Justification::axnec(SchemaId::vii)}};
  CHECK_FALSE(check(d).accepted);

  d.steps = {ax("box x0 -> box box x0", SchemaId::four)};
  CHECK_FALSE(check(d).accepted);
  d.system = SystemId::AX4;
  CHECK(check(d).accepted);

  d.steps = {ax("x0 -> x1", SchemaId::taut)};
  CHECK_FALSE(check(d).accepted);

  d.steps = {ax("x0 -> x0", SchemaId::taut), {P("x0"), Justification::mp(0, 0)}};
  CHECK(check(d).first_failure->second == "mp shape mismatch");
  d.steps = {ax("x0 -> x0", SchemaId::taut), {P("x0"), Justification::mp(0, 3)}};
  CHECK_FALSE(check(d).accepted);

  Witnesses w12;
  w12.f("chi", P("~x0"));
  w12.sigma = Subst::single(Sym::p(0), P("d1"));
  w12.sigma2 = Subst::single(Sym::p(0), P("d2"));
  d.steps = {ax("(d1 == d2) -> (~d1 == ~d2)", SchemaId::xii, w12)};
  CHECK(check(d).accepted);
  d.steps = {ax("(d1 == d2) -> (~d1 == ~d2)", SchemaId::xii)};
  CHECK_FALSE(check(d).accepted);

  // closure under witnesses is found by peeling the prefix
  d.steps = {ax("all x0. (box x0 -> x0)", SchemaId::vii, Witnesses().f("phi", P("x0")))};
  CHECK(check(d).accepted);
  // alpha-variants of instances are not instances
  d.steps = {ax("all x1. (box x1 -> x1)", SchemaId::vii, Witnesses().f("phi", P("x0")))};
  CHECK_FALSE(check(d).accepted);
}

TEST_CASE("generalize_constant: worked examples") {
  Derivation d;
  d.steps = {ax("(d1 : v0) -> (d1 : v0)", SchemaId::taut)};
  Derivation g = generalize_constant(d, Sym::d("d1"), Sym::p(0));
  CHECK(check(g).accepted);
  CHECK(g.conclusion() == P("all x0. ((x0 : v0) -> (x0 : v0))"));

  d.steps = {ax("box d1 -> d1", SchemaId::vii)};
  g = generalize_constant(d, Sym::d("d1"), Sym::p(0));
  CHECK(check(g).accepted);
  CHECK(g.conclusion() == P("all x0. (box x0 -> x0)"));

  Formula a = P("d1 : c1 -> d1 : c1");
  Formula x = P("d1 : c1 -> (d1 : c1 | d2)");
  d.steps = {{a, Justification::ax(SchemaId::taut)},
             {Formula::implies(a, x), Justification::ax(SchemaId::taut)},
             {x, Justification::mp(0, 1)}};
  REQUIRE(check(d).accepted);
  g = generalize_constant(d, Sym::c("c1"), Sym::j(0));
  CHECK(check(g).accepted);
  CHECK(g.conclusion() == Formula::jforall(0, apply(x, Subst::single(Sym::c("c1"), Term::var(0)))));
  CHECK(uses_schema(g, SchemaId::xv));
}

TEST_CASE("generalize_constant: constant inside a substitution base") {
  Witnesses w12;
  w12.f("chi", P("x0 -> d1"));
  w12.sigma = Subst::single(Sym::p(0), P("x1"));
  w12.sigma2 = Subst::single(Sym::p(0), P("x2"));
  Derivation d;
  d.steps = {{build_instance(SchemaId::xii, w12), Justification::ax(SchemaId::xii, w12)}};
  REQUIRE(check(d).accepted);
  Derivation g = generalize_constant(d, Sym::d("d1"), Sym::p(5));
  CHECK(check(g).accepted);
  CHECK(g.conclusion() == P("all x5. ((x1 == x2) -> ((x1 -> x5) == (x2 -> x5)))"));

  Witnesses w23;
  w23.t("t", Term::prod(Term::cnst("c1"), Term::var(0)));
  w23.sigma = Subst::single(Sym::j(0), Term::var(1));
  w23.sigma2 = Subst::single(Sym::j(0), Term::var(2));
  w23.closure = {Sym::j(1)};
  d.steps = {{build_instance(SchemaId::xxiii, w23), Justification::ax(SchemaId::xxiii, w23)}};
  REQUIRE(check(d).accepted);
  g = generalize_constant(d, Sym::c("c1"), Sym::j(5));
  Verdict v = check(g);
  CHECK(v.accepted);
  CHECK(g.conclusion() == Formula::jforall(5, apply(d.conclusion(), Subst::single(Sym::c("c1"), Term::var(5)))));
}

TEST_CASE("generalize_constant: errors") {
  Derivation d;
  d.hypotheses = {P("d1")};
  d.steps = {{P("d1"), Justification::hyp()}};
  CHECK(code_of([&] { generalize_constant(d, Sym::d("d1"), Sym::p(0)); }) == ErrorCode::ConstantInHypotheses);

  d.hypotheses.clear();
  d.steps = {ax("box d1 -> d1", SchemaId::vii)};
  CHECK(code_of([&] { generalize_constant(d, Sym::d("d2"), Sym::p(0)); }) == ErrorCode::ConstantAbsent);

  d.steps = {ax("box (d1 -> x0) -> (d1 -> x0)", SchemaId::vii)};
  CHECK(code_of([&] { generalize_constant(d, Sym::d("d1"), Sym::p(0)); }) == ErrorCode::VariableNotFresh);
  CHECK(code_of([&] { generalize_constant(d, Sym::d("d1"), Sym::j(0)); }) == ErrorCode::SortError);
}

TEST_CASE("generalize_constant on generated derivations") {
  testgen::Gen g(31);
  int done = 0;
  for (int round = 0; round < 400 && done < 120; ++round) {
    SystemId sys = g.coin(50) ? SystemId::AX : SystemId::AX4;
    Derivation d = testgen::derivation(g, sys, 6);
    REQUIRE(check(d).accepted);
    const Formula& c = d.conclusion();
    std::vector<Sym> ks;
    for (auto& n : c.cons_d()) ks.push_back(Sym::d(n));
    for (auto& n : c.cons_c()) ks.push_back(Sym::c(n));
    if (ks.empty()) continue;
    Sym k = ks[g.pick(static_cast<int>(ks.size()))];
    auto all = vars_all(c);
    SymKind vk = k.kind == SymKind::ConstD ? SymKind::VarP : SymKind::VarJ;
    uint32_t idx = 0;
    while (std::find(all.begin(), all.end(), Sym{vk, idx, {}}) != all.end()) ++idx;
    Sym w{vk, idx, {}};
    Derivation out = generalize_constant(d, k, w);
    Verdict v = check(out);
    REQUIRE_MESSAGE(v.accepted, print_proof(d), "\n", k.str(), " -> ", w.str(), "\nfailure at ",
                    v.first_failure->first, ": ", v.first_failure->second);
    Subst rho = vk == SymKind::VarP ? Subst::single(k, Formula::var(idx)) : Subst::single(k, Term::var(idx));
    Formula body = apply(c, rho);
    Formula want = vk == SymKind::VarP ? Formula::forall(idx, body) : Formula::jforall(idx, body);
    CHECK(out.conclusion() == want);
    CHECK(out.hypotheses == d.hypotheses);
    ++done;
  }
  CHECK(done >= 100);
}

TEST_CASE("necessitate: worked examples and errors") {
  Derivation d;
  d.system = SystemId::AX4_AXNEC;
  d.steps = {ax("box x0 -> x0", SchemaId::vii)};
  Derivation n = necessitate(d);
  CHECK(check(n).accepted);
  CHECK(n.steps.size() == 2);
  CHECK(n.steps[1].just.kind == JustKind::AxNec);
  CHECK(n.conclusion() == P("box (box x0 -> x0)"));

  d.steps = {{P("box (box x0 -> x0)"), Justification::axnec(SchemaId::vii)}};
  n = necessitate(d);
  CHECK(check(n).accepted);
  CHECK(n.steps.size() == 3);
  CHECK(n.steps[1].just.id == SchemaId::four);
  CHECK(n.conclusion() == P("box box (box x0 -> x0)"));

  Formula psi = P("box d1 -> d1"), phi = P("d2 -> (box d1 -> d1)");
  d.steps = {{psi, Justification::ax(SchemaId::vii)},
             {Formula::implies(psi, phi), Justification::ax(SchemaId::taut)},
             {phi, Justification::mp(0, 1)}};
  n = necessitate(d);
  CHECK(check(n).accepted);
  CHECK(n.conclusion() == Formula::box(phi));
  Derivation k = derive_K(psi, phi);
  bool found = false;
  for (std::size_t i = 0; i + k.steps.size() <= n.steps.size() && !found; ++i)
    found = n.steps[i + k.steps.size() - 1].f == k.conclusion();
  CHECK(found);

  d.system = SystemId::AX4;
  CHECK(code_of([&] { necessitate(d); }) == ErrorCode::SystemLacksAxNec);
  d.system = SystemId::AX4_AXNEC;
  d.hypotheses = {P("d1")};
  CHECK(code_of([&] { necessitate(d); }) == ErrorCode::HypothesesPresent);
}

TEST_CASE("necessitate on generated derivations") {
  testgen::Gen g(32);
  for (int i = 0; i < 120; ++i) {
    Derivation d = testgen::derivation(g, SystemId::AX4_AXNEC, 8);
    REQUIRE(check(d).accepted);
    Derivation n = necessitate(d);
    Verdict v = check(n);
    REQUIRE_MESSAGE(v.accepted, print_proof(d));
    CHECK(n.conclusion() == Formula::box(d.conclusion()));
    CHECK(n.hypotheses.empty());
  }
}

TEST_CASE("derive_K") {
  Derivation k = derive_K(P("x0"), P("x1"));
  CHECK(check(k).accepted);
  CHECK(k.hypotheses.empty());
  CHECK(k.system == SystemId::AX);
  CHECK(k.conclusion() == P("box(x0->x1) -> (box x0 -> box x1)"));
  CHECK(derive_K(P("d1"), P("d1")).conclusion() == P("box(d1->d1) -> (box d1 -> box d1)"));

  testgen::Gen g(33);
  std::size_t len = k.steps.size();
  for (int i = 0; i < 100; ++i) {
    Formula a = g.formula(3), b = g.formula(3);
    Derivation r = derive_K(a, b);
    Verdict v = check(r);
    REQUIRE_MESSAGE(v.accepted, render(a), " / ", render(b));
    CHECK(r.conclusion() == Formula::implies(Formula::box(Formula::implies(a, b)),
                                             Formula::implies(Formula::box(a), Formula::box(b))));
    CHECK(r.steps.size() == len);
  }
}

TEST_CASE("derivation properties") {
  testgen::Gen g(34);
  for (int i = 0; i < 150; ++i) {
    std::vector<Formula> hyps;
    if (g.coin(50)) hyps = {g.formula(2), g.formula(2)};
    SystemId sys = g.coin(50) ? SystemId::AX4_AXNEC : SystemId::AXE;
    Derivation a = testgen::derivation(g, sys, 8, 2, hyps);
    Derivation b = testgen::derivation(g, sys, 8, 2, hyps);
    REQUIRE(check(a).accepted);
    Derivation more = a;
    more.hypotheses.push_back(g.formula(2));
    CHECK(check(more).accepted);
    CHECK(check(concat(a, b)).accepted);
    CHECK(concat(a, b).conclusion() == b.conclusion());
  }
}

TEST_CASE("proof file round trip") {
  const char* text = R"(system AX4_AXNEC
const prop d1 d2
# a comment
hyp 0 d1
step 0 d1 ; hyp
step 1 box x0 -> x0 ; ax vii
step 2 box (box x0 -> x0) ; axnec vii phi="x0"
step 3 (d1 == d2) -> (~d1 == ~d2) ; ax xii chi="~x0" sigma=[x0:="d1"] sigma'=[x0:="d2"]
step 4 d1 -> d1 ; ax taut
step 5 d1 ; mp 0 4
)";
  Derivation d = parse_proof(text);
  CHECK(d.system == SystemId::AX4_AXNEC);
  CHECK(d.steps.size() == 6);
  CHECK(check(d).accepted);
  Derivation back = parse_proof(print_proof(d));
  CHECK(print_proof(back) == print_proof(d));
  CHECK(check(back).accepted);

  CHECK(code_of([] { parse_proof("step 0 x0 ; hyp\n"); }) == ErrorCode::FormatError);
  CHECK(code_of([] { parse_proof("system AX\nstep 1 x0 ; hyp\n"); }) == ErrorCode::FormatError);
  CHECK(code_of([] { parse_proof("system AX\nstep 0 x0 hyp\n"); }) == ErrorCode::FormatError);
  CHECK(code_of([] { parse_proof("system AX\nstep 0 x0 -> ; hyp\n"); }) == ErrorCode::SyntaxError);
  CHECK(code_of([] { parse_proof("system AX\nstep 0 x0 ; ax zz\n"); }) == ErrorCode::FormatError);

  testgen::Gen g(35);
  for (int i = 0; i < 100; ++i) {
    Derivation r = testgen::derivation(g, SystemId::AX4_AXNEC, 8);
    Derivation rb = parse_proof(print_proof(r));
    CHECK(print_proof(rb) == print_proof(r));
    CHECK(check(rb).accepted);
  }
}
