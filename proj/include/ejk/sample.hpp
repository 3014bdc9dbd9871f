#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ejk/axioms.hpp"

namespace ejk {

// Seeded random syntax for sampling-based checks.
class Sampler {
 public:
  explicit Sampler(uint64_t seed, uint32_t nvars = 3);

  void use_constants(const Decls& d);
  Formula formula(int depth);
  Term term(int depth);
  // Keys are variables only.
  Subst var_subst(int entries, int depth);
  // A random instance of the schema, or nullopt when no side-condition
  // satisfying witnesses turned up within the attempt budget.
  std::optional<Formula> instance(SchemaId id, int depth = 2, int attempts = 200);
  std::optional<Witnesses> witnesses(SchemaId id, int depth = 2, int attempts = 200);

  int pick(int n);
  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
  uint32_t nvars_;
  std::vector<std::string> dconsts_, cconsts_;
};

}  // namespace ejk
