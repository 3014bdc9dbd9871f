#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ejk/axioms.hpp"

namespace ejk {

enum class ModelMode { Strict, Override };

inline constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();

// Designated outcome pair: first component for the satisfied case.
struct Designated {
  std::size_t t = kUnset, f = kUnset;
  bool operator==(const Designated&) const = default;
};

// Value-table model. Elements of M and L are referred to by their index in
// declaration order; kUnset marks a table entry the input did not define.
struct FiniteModel {
  std::vector<std::string> values;        // M
  std::vector<bool> is_true;              // TRUE; FALSE is the complement
  std::vector<bool> is_nec;               // NECESSARY
  std::vector<std::string> justs;         // L
  std::vector<std::vector<bool>> reason;  // reason[l][a]
  std::vector<std::vector<bool>> leq;     // leq[l][k]
  std::vector<std::vector<std::size_t>> plus, dot;
  std::vector<std::vector<bool>> ref;  // ref[a][b]
  std::vector<std::vector<std::size_t>> impl;
  std::vector<std::size_t> neg, istrue, isfalse, box;
  std::vector<std::vector<std::size_t>> mem;  // mem[a][l]
  Designated eq, teq, le, refp, quant, jquant;
  std::map<std::string, std::size_t> const_d, const_c;
  std::size_t default_prop = 0, default_just = 0;
  ModelMode mode = ModelMode::Strict;
  std::size_t nec_val = kUnset;
  SystemId system = SystemId::AX4_AXNEC;

  // Empty tables sized for the current values and justs.
  void resize_tables();
  std::size_t value_index(std::string_view name) const;  // kUnset when absent
  std::size_t just_index(std::string_view name) const;
  Decls decls() const;

  bool operator==(const FiniteModel&) const = default;
};

// Unmapped variables read the model defaults.
struct Assignment {
  std::map<uint32_t, std::size_t> p, j;
  bool operator==(const Assignment&) const = default;
};

struct Finding {
  std::string clause;
  std::string witness;
};

struct Report {
  std::vector<Finding> failures;
  std::vector<std::string> warnings;

  bool pass() const { return failures.empty(); }
  bool has(std::string_view clause) const;
  std::string render() const;
};

// Every structure condition and value-level truth condition, exhaustively.
// One finding per violated clause, carrying the first witness in table order.
Report validate(const FiniteModel& m);

// Gamma over a fixed model. Caches axiom membership for the override.
class Evaluator {
 public:
  explicit Evaluator(const FiniteModel& m);
  ~Evaluator();
  Evaluator(const Evaluator&) = delete;
  Evaluator& operator=(const Evaluator&) = delete;

  std::size_t formula(const Formula& f, const Assignment& g);
  std::size_t term(const Term& t, const Assignment& g) const;
  bool holds(const Formula& f, const Assignment& g) { return model().is_true[formula(f, g)]; }
  const FiniteModel& model() const { return m_; }

 private:
  std::size_t eval(const Formula& f, std::vector<std::size_t>& pv, std::vector<std::size_t>& jv);
  std::size_t eval_term(const Term& t, const std::vector<std::size_t>& jv) const;
  bool overridden(const Formula& f);

  const FiniteModel& m_;
  struct Cache;
  std::unique_ptr<Cache> cache_;
};

std::size_t eval(const FiniteModel& m, const Assignment& g, const Formula& f);
std::size_t eval(const FiniteModel& m, const Assignment& g, const Term& t);

struct DerivedSets {
  std::vector<std::size_t> possible, impossible;
};
DerivedSets derived_sets(const FiniteModel& m);

enum class ConditionKind { Four, E, AxNecSample };
struct Condition {
  ConditionKind kind = ConditionKind::Four;
  std::size_t samples = 0;  // axiom instances for AxNecSample
  uint64_t seed = 1;
  int assignments = 4;      // per instance
};
Report check_condition(const FiniteModel& m, const Condition& c);

FiniteModel preset_s4_four_valued(SystemId sys = SystemId::AX4_AXNEC);
FiniteModel preset_extensional();

Assignment random_assignment(const FiniteModel& m, std::mt19937_64& rng, uint32_t nvars);

// Model file text.
FiniteModel parse_model(std::string_view text);
std::string print_model(const FiniteModel& m);

// Assignment text: `x0=t v1=l`.
Assignment parse_assignment(const FiniteModel& m, std::string_view text);
std::string render_assignment(const FiniteModel& m, const Assignment& g);

}  // namespace ejk
