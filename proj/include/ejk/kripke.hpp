#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ejk/models.hpp"

namespace ejk {

struct KripkeModel {
  std::vector<std::string> worlds;
  std::vector<std::vector<bool>> R;           // R[w][v]: v is accessible from w
  std::vector<std::map<uint32_t, bool>> val;  // unmapped variables are false

  // Reflexive-transitive closure in place.
  void close();
  bool is_preorder() const;
  std::size_t world_index(std::string_view name) const;  // kUnset when absent
  bool operator==(const KripkeModel&) const = default;
};

// Formulas over propositional variables, negation, implication and box.
bool in_modal_fragment(const Formula& f);

// Throws OutsideModalFragment.
bool sat(const KripkeModel& k, std::size_t w, const Formula& f);

// The four-valued preset and the assignment beta determined by world w.
// beta covers the given variables and every variable valued anywhere in k.
std::pair<FiniteModel, Assignment> translate(const KripkeModel& k, std::size_t w, SystemId sys = SystemId::AX4_AXNEC,
                                             const std::vector<uint32_t>& vars = {});

struct AuditEntry {
  Formula f;
  bool model_verdict = false;
  bool kripke_verdict = false;
  bool agree() const { return model_verdict == kripke_verdict; }
};

struct AuditReport {
  std::vector<AuditEntry> entries;
  std::size_t disagreements() const;
  std::string render() const;
};

AuditReport audit(const KripkeModel& k, std::size_t w, const std::vector<Formula>& corpus,
                  SystemId sys = SystemId::AX4_AXNEC);

// Every formula over x0..x(nvars-1) built from negation, implication and box
// whose tree height is at most depth, in a fixed order: by height, then
// atoms, negations, boxes, implications.
std::vector<Formula> modal_corpus(uint32_t nvars, int depth);

// First refuting (frame, world) in canonical order over preorders on 1..n_max
// worlds. Throws BudgetExceeded when n_max > 5.
std::optional<std::pair<KripkeModel, std::size_t>> search_countermodel(const Formula& f, int n_max);

// Frame file text.
KripkeModel parse_frame(std::string_view text);
std::string print_frame(const KripkeModel& k);

}  // namespace ejk
