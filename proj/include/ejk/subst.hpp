#pragma once

#include <map>
#include <string>
#include <vector>

#include "ejk/syntax.hpp"

namespace ejk {

// Finite deviation from the identity. Propositional slots (variables and
// constants) map to formulas, justification slots to terms.
class Subst {
 public:
  Subst() = default;

  Subst& set(const Sym& k, const Formula& v);
  Subst& set(const Sym& k, const Term& v);
  Subst& set(const Sym& k, const Expr& v);

  Formula formula_at(const Sym& k) const;
  Term term_at(const Sym& k) const;

  // Only non-identity entries; identity bindings are dropped on insert.
  std::vector<Sym> support() const;
  bool empty() const { return f_.empty() && t_.empty(); }

  const std::map<Sym, Formula>& formulas() const { return f_; }
  const std::map<Sym, Term>& terms() const { return t_; }

  bool operator==(const Subst& o) const { return f_ == o.f_ && t_ == o.t_; }

  static Subst single(const Sym& k, const Formula& v) { return Subst().set(k, v); }
  static Subst single(const Sym& k, const Term& v) { return Subst().set(k, v); }

 private:
  std::map<Sym, Formula> f_;
  std::map<Sym, Term> t_;
};

Formula apply(const Formula& f, const Subst& s);
Term apply(const Term& t, const Subst& s);

// (s o t)(z) = s(z)[t]
Subst compose(const Subst& s, const Subst& t);

Formula normalize(const Formula& f);
bool alpha_eq(const Formula& a, const Formula& b);

// a < b in the syntactic sense: a occurs alpha-equivalently at a non-root
// position of b with none of its free variables captured on the way down.
bool syn_ref(const Formula& a, const Formula& b);

// The bound variable a substitution picks when it passes the binder of f.
uint32_t forced_variable(const Formula& binder, const Subst& s);

// Text form: [x0:="box x1", v0:="c1 * v1"]
Subst parse_subst(std::string_view text, const Decls& decls);
std::string render_subst(const Subst& s);

}  // namespace ejk
