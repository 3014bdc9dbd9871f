#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ejk/subst.hpp"
#include "ejk/syntax.hpp"

namespace ejk {

enum class SchemaId {
  taut,
  i, ii, iii, iv, v, vi, vii, viii, ix, x, xi, xii,
  xiii, xiv, xv, xvi, xvii, xviii, xix, xx, xxi, xxii, xxiii,
  four,
  e,
};

const std::vector<SchemaId>& all_schemas();
const char* schema_name(SchemaId id);
std::optional<SchemaId> parse_schema_id(std::string_view s);

enum class SystemId { AX, AX4, AXE, AX4_AXNEC, AXE_AXNEC };

const char* system_name(SystemId s);
std::optional<SystemId> parse_system_id(std::string_view s);
bool has_axnec(SystemId s);
bool system_includes(SystemId s, SchemaId id);

struct Witnesses {
  std::map<std::string, Formula> formulas;  // phi, psi, chi
  std::map<std::string, Term> terms;        // s, t
  std::optional<uint32_t> x;                // propositional variable
  std::optional<uint32_t> u;                // justification variable
  std::optional<Subst> sigma, sigma2;
  std::vector<Sym> closure;  // universal closure prefix, outermost first

  bool parameters_empty() const;
  bool operator==(const Witnesses& o) const;

  Witnesses& f(const std::string& k, const Formula& v) {
    formulas[k] = v;
    return *this;
  }
  Witnesses& t(const std::string& k, const Term& v) {
    terms[k] = v;
    return *this;
  }
};

// Parameter names a schema takes, in canonical order.
std::vector<std::string> schema_parameters(SchemaId id);

// sigma ==_base sigma' as a left-nested conjunction over the variables of base.
Formula expand_sigma_eq(const Subst& s, const Subst& s2, const Formula& base);
Formula expand_sigma_eq(const Subst& s, const Subst& s2, const Term& base);

Formula build_instance(SchemaId id, const Witnesses& w);

// Match a closure-free formula against one schema; returns witnesses whose
// build_instance reproduces the input exactly. (xii)/(xxiii) never match here.
std::optional<Witnesses> match_schema(SchemaId id, const Formula& body);

// As match_schema, but the input only has to be alpha-congruent to the instance.
std::optional<Witnesses> match_schema_alpha(SchemaId id, const Formula& body);

struct Recognized {
  SchemaId id;
  Witnesses w;
  bool exact = true;  // build_instance(id, w) == input
};

// Exact matches are preferred; otherwise an alpha-congruent match is reported
// with exact == false.
std::optional<Recognized> recognize(const Formula& f, SystemId sys);

// Membership in the axiom set of sys, judged on the normal form.
bool is_axiom(const Formula& f, SystemId sys);

bool is_skeleton_tautology(const Formula& f);

// Witness text: phi="box x0" u=v1 sigma=[x0:="d1"] close=[x0,v1]
Witnesses parse_witnesses(std::string_view text, const Decls& decls);
std::string render_witnesses(const Witnesses& w);

}  // namespace ejk
