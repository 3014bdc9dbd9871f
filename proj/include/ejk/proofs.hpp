#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ejk/axioms.hpp"

namespace ejk {

enum class JustKind { Hyp, Ax, AxNec, MP };

struct Justification {
  JustKind kind = JustKind::Hyp;
  SchemaId id = SchemaId::taut;
  Witnesses w;  // empty parameters mean the checker matches the schema itself
  std::size_t i = 0, j = 0;

  static Justification hyp() { return {}; }
  static Justification ax(SchemaId id, Witnesses w = {}) { return {JustKind::Ax, id, std::move(w), 0, 0}; }
  static Justification axnec(SchemaId id, Witnesses w = {}) { return {JustKind::AxNec, id, std::move(w), 0, 0}; }
  static Justification mp(std::size_t i, std::size_t j) { return {JustKind::MP, SchemaId::taut, {}, i, j}; }
};

struct Step {
  Formula f;
  Justification just;
};

struct Derivation {
  std::vector<Formula> hypotheses;
  std::vector<Step> steps;
  SystemId system = SystemId::AX;

  const Formula& conclusion() const;
};

struct Verdict {
  bool accepted = true;
  std::optional<std::pair<std::size_t, std::string>> first_failure;
};

Verdict check(const Derivation& d);

// Witnesses (with closure) under which an Ax-justified formula is an exact
// instance, or the reason it is not.
struct Resolved {
  std::optional<Witnesses> w;
  std::string reason;
};
Resolved resolve_axiom(const Formula& f, SchemaId id, const Witnesses& w, SystemId sys);

// Appends steps so that the derivation also concludes the universal closure of
// its conclusion over the variable w. w must not be free in any hypothesis.
Derivation generalize_var(const Derivation& d, const Sym& w);

Derivation generalize_constant(const Derivation& d, const Sym& k, const Sym& w);

Derivation necessitate(const Derivation& d);

Derivation derive_K(const Formula& phi, const Formula& psi);

// Appends the steps of b after those of a, shifting b's MP indices.
Derivation concat(const Derivation& a, const Derivation& b);

// Proof file text.
Derivation parse_proof(std::string_view text);
std::string print_proof(const Derivation& d);
std::string render_justification(const Justification& j);

}  // namespace ejk
