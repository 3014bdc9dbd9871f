#include "ejk/kripke.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace ejk {

void KripkeModel::close() {
  std::size_t n = worlds.size();
  R.resize(n);
  for (auto& row : R) row.resize(n, false);
  for (std::size_t w = 0; w < n; ++w) R[w][w] = true;
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t a = 0; a < n; ++a)
      if (R[a][m])
        for (std::size_t b = 0; b < n; ++b)
          if (R[m][b]) R[a][b] = true;
  val.resize(n);
}

bool KripkeModel::is_preorder() const {
  std::size_t n = worlds.size();
  if (R.size() != n) return false;
  for (std::size_t a = 0; a < n; ++a) {
    if (R[a].size() != n || !R[a][a]) return false;
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (R[a][b] && R[b][c] && !R[a][c]) return false;
  }
  return true;
}

std::size_t KripkeModel::world_index(std::string_view name) const {
  for (std::size_t i = 0; i < worlds.size(); ++i)
    if (worlds[i] == name) return i;
  return kUnset;
}

bool in_modal_fragment(const Formula& f) {
  switch (f.kind()) {
    case FKind::Var: return true;
    case FKind::Not:
    case FKind::Box: return in_modal_fragment(f.a());
    case FKind::Implies: return in_modal_fragment(f.a()) && in_modal_fragment(f.b());
    default: return false;
  }
}

namespace {

bool holds(const KripkeModel& k, std::size_t w, const Formula& f) {
  switch (f.kind()) {
    case FKind::Var: {
      auto it = k.val[w].find(f.index());
      return it != k.val[w].end() && it->second;
    }
    case FKind::Not: return !holds(k, w, f.a());
    case FKind::Implies: return !holds(k, w, f.a()) || holds(k, w, f.b());
    case FKind::Box:
      for (std::size_t v = 0; v < k.worlds.size(); ++v)
        if (k.R[w][v] && !holds(k, v, f.a())) return false;
      return true;
    default: throw Error(ErrorCode::OutsideModalFragment, render(f));
  }
}

}  // namespace

bool sat(const KripkeModel& k, std::size_t w, const Formula& f) {
  if (!in_modal_fragment(f)) throw Error(ErrorCode::OutsideModalFragment, render(f) + " is outside the modal fragment");
  if (w >= k.worlds.size()) throw Error(ErrorCode::FormatError, "no such world");
  return holds(k, w, f);
}

std::pair<FiniteModel, Assignment> translate(const KripkeModel& k, std::size_t w, SystemId sys,
                                             const std::vector<uint32_t>& vars) {
  FiniteModel m = preset_s4_four_valued(sys);
  std::set<uint32_t> all(vars.begin(), vars.end());
  for (auto& g : k.val)
    for (auto& [x, b] : g) all.insert(x);
  Assignment beta;
  std::size_t t = m.value_index("t"), f = m.value_index("f"), nec = m.value_index("nec"), imp = m.value_index("imp");
  for (uint32_t x : all) {
    Formula v = Formula::var(x);
    if (sat(k, w, Formula::box(v)))
      beta.p[x] = nec;
    else if (sat(k, w, Formula::box(Formula::neg(v))))
      beta.p[x] = imp;
    else
      beta.p[x] = sat(k, w, v) ? t : f;
  }
  return {std::move(m), std::move(beta)};
}

std::size_t AuditReport::disagreements() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const AuditEntry& e) { return !e.agree(); }));
}

std::string AuditReport::render() const {
  std::ostringstream os;
  for (auto& e : entries)
    os << ejk::render(e.f) << "\t" << (e.model_verdict ? "true" : "false") << "\t"
       << (e.kripke_verdict ? "true" : "false") << "\t" << (e.agree() ? "AGREE" : "DISAGREE") << "\n";
  return os.str();
}

AuditReport audit(const KripkeModel& k, std::size_t w, const std::vector<Formula>& corpus, SystemId sys) {
  std::vector<uint32_t> vars;
  for (auto& f : corpus) vars = merge_sorted(vars, f.fvp());
  auto [m, beta] = translate(k, w, sys, vars);
  Evaluator ev(m);
  AuditReport r;
  for (auto& f : corpus) r.entries.push_back({f, ev.holds(f, beta), sat(k, w, f)});
  return r;
}

std::vector<Formula> modal_corpus(uint32_t nvars, int depth) {
  std::vector<Formula> all;
  for (uint32_t x = 0; x < nvars; ++x) all.push_back(Formula::var(x));
  std::size_t prev = 0;  // formulas of height < current start at index 0
  for (int h = 1; h <= depth; ++h) {
    std::size_t upto = all.size();  // all formulas of height < h
    std::vector<Formula> next;
    for (std::size_t i = prev; i < upto; ++i) next.push_back(Formula::neg(all[i]));
    for (std::size_t i = prev; i < upto; ++i) next.push_back(Formula::box(all[i]));
    for (std::size_t i = 0; i < upto; ++i)
      for (std::size_t j = 0; j < upto; ++j)
        if (i >= prev || j >= prev) next.push_back(Formula::implies(all[i], all[j]));
    prev = upto;
    all.insert(all.end(), next.begin(), next.end());
  }
  return all;
}

std::optional<std::pair<KripkeModel, std::size_t>> search_countermodel(const Formula& f, int n_max) {
  if (n_max > 5) throw Error(ErrorCode::BudgetExceeded, "world budget above 5");
  if (!in_modal_fragment(f)) throw Error(ErrorCode::OutsideModalFragment, render(f) + " is outside the modal fragment");
  const std::vector<uint32_t>& vars = f.fvp();
  for (int n = 1; n <= n_max; ++n) {
    auto un = static_cast<std::size_t>(n);
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t a = 0; a < un; ++a)
      for (std::size_t b = 0; b < un; ++b)
        if (a != b) cells.push_back({a, b});
    KripkeModel k;
    for (std::size_t i = 0; i < un; ++i) k.worlds.push_back("w" + std::to_string(i));
    k.val.assign(un, {});
    uint64_t frames = uint64_t{1} << cells.size();
    uint64_t vals = uint64_t{1} << (un * vars.size());
    for (uint64_t mask = 0; mask < frames; ++mask) {
      k.R.assign(un, std::vector<bool>(un, false));
      for (std::size_t w = 0; w < un; ++w) k.R[w][w] = true;
      // Cells are read most significant first, so masks run in
      // lexicographic order of the row-major adjacency matrix.
      for (std::size_t c = 0; c < cells.size(); ++c)
        if (mask >> (cells.size() - 1 - c) & 1) k.R[cells[c].first][cells[c].second] = true;
      if (!k.is_preorder()) continue;
      for (uint64_t v = 0; v < vals; ++v) {
        for (std::size_t w = 0; w < un; ++w)
          for (std::size_t i = 0; i < vars.size(); ++i) k.val[w][vars[i]] = (v >> (w * vars.size() + i)) & 1;
        for (std::size_t w = 0; w < un; ++w)
          if (!holds(k, w, f)) return std::make_pair(k, w);
      }
    }
  }
  return std::nullopt;
}

namespace {

[[noreturn]] void bad(std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::FormatError, "line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> tokens(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

}  // namespace

KripkeModel parse_frame(std::string_view text) {
  KripkeModel k;
  std::istringstream is{std::string(text)};
  std::string raw;
  std::size_t no = 0;
  struct Pending {
    std::size_t line;
    std::string head;
    std::vector<std::string> rest;
  };
  std::vector<Pending> later;
  while (std::getline(is, raw)) {
    ++no;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    auto colon = raw.find(':');
    if (tokens(raw).empty()) continue;
    if (colon == std::string::npos) bad(no, "expected a section name followed by ':'");
    auto head = tokens(raw.substr(0, colon));
    auto rest = tokens(raw.substr(colon + 1));
    if (head.size() == 1 && head[0] == "worlds") {
      if (!k.worlds.empty()) bad(no, "worlds declared twice");
      if (rest.empty()) bad(no, "no worlds");
      k.worlds = rest;
      std::set<std::string> seen(rest.begin(), rest.end());
      if (seen.size() != rest.size()) bad(no, "duplicate world");
    } else {
      later.push_back({no, raw.substr(0, colon), rest});
    }
  }
  if (k.worlds.empty()) throw Error(ErrorCode::FormatError, "missing worlds section");
  std::size_t n = k.worlds.size();
  k.R.assign(n, std::vector<bool>(n, false));
  k.val.assign(n, {});
  auto W = [&](std::size_t line, const std::string& s) {
    std::size_t w = k.world_index(s);
    if (w == kUnset) bad(line, "unknown world " + s);
    return w;
  };
  for (auto& p : later) {
    auto head = tokens(p.head);
    if (head.size() == 1 && head[0] == "edges") {
      if (p.rest.size() % 2 != 0) bad(p.line, "edges come in pairs");
      for (std::size_t i = 0; i < p.rest.size(); i += 2) k.R[W(p.line, p.rest[i])][W(p.line, p.rest[i + 1])] = true;
    } else if (head.size() == 2 && head[0] == "val") {
      std::size_t w = W(p.line, head[1]);
      for (auto& b : p.rest) {
        auto eq = b.find('=');
        if (eq == std::string::npos || eq < 2 || b[0] != 'x') bad(p.line, "malformed valuation " + b);
        std::string digits = b.substr(1, eq - 1), bit = b.substr(eq + 1);
        if (!std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
          bad(p.line, "malformed variable in " + b);
        if (bit != "0" && bit != "1") bad(p.line, "valuation must be 0 or 1 in " + b);
        k.val[w][static_cast<uint32_t>(std::stoul(digits))] = bit == "1";
      }
    } else {
      bad(p.line, "unknown section " + p.head);
    }
  }
  k.close();
  return k;
}

std::string print_frame(const KripkeModel& k) {
  std::ostringstream os;
  os << "worlds:";
  for (auto& w : k.worlds) os << " " << w;
  os << "\n";
  for (std::size_t a = 0; a < k.worlds.size(); ++a)
    for (std::size_t b = 0; b < k.worlds.size(); ++b)
      if (a != b && k.R[a][b]) os << "edges: " << k.worlds[a] << " " << k.worlds[b] << "\n";
  for (std::size_t a = 0; a < k.worlds.size(); ++a) {
    os << "val " << k.worlds[a] << ":";
    for (auto& [x, b] : k.val[a]) os << " x" << x << "=" << (b ? 1 : 0);
    os << "\n";
  }
  return os.str();
}

}  // namespace ejk
