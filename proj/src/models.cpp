#include "ejk/models.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>

#include "ejk/sample.hpp"

namespace ejk {

void FiniteModel::resize_tables() {
  std::size_t n = values.size(), k = justs.size();
  is_true.assign(n, false);
  is_nec.assign(n, false);
  reason.assign(k, std::vector<bool>(n, false));
  leq.assign(k, std::vector<bool>(k, false));
  plus.assign(k, std::vector<std::size_t>(k, kUnset));
  dot.assign(k, std::vector<std::size_t>(k, kUnset));
  ref.assign(n, std::vector<bool>(n, false));
  impl.assign(n, std::vector<std::size_t>(n, kUnset));
  neg.assign(n, kUnset);
  istrue.assign(n, kUnset);
  isfalse.assign(n, kUnset);
  box.assign(n, kUnset);
  mem.assign(n, std::vector<std::size_t>(k, kUnset));
}

std::size_t FiniteModel::value_index(std::string_view name) const {
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] == name) return i;
  return kUnset;
}

std::size_t FiniteModel::just_index(std::string_view name) const {
  for (std::size_t i = 0; i < justs.size(); ++i)
    if (justs[i] == name) return i;
  return kUnset;
}

Decls FiniteModel::decls() const {
  Decls d;
  for (auto& [n, v] : const_d) d.add_prop(n);
  for (auto& [n, v] : const_c) d.add_just(n);
  return d;
}

bool Report::has(std::string_view clause) const {
  return std::any_of(failures.begin(), failures.end(), [&](const Finding& f) { return f.clause == clause; });
}

std::string Report::render() const {
  std::ostringstream os;
  if (failures.empty()) os << "PASS\n";
  for (auto& f : failures) os << "FAIL " << f.clause << " " << f.witness << "\n";
  for (auto& w : warnings) os << "WARNING " << w << "\n";
  return os.str();
}

// ---------------------------------------------------------------- validation

namespace {

struct Validator {
  const FiniteModel& m;
  Report r;
  std::size_t n, k;

  explicit Validator(const FiniteModel& mm) : m(mm), n(mm.values.size()), k(mm.justs.size()) {}

  const std::string& v(std::size_t a) const { return m.values[a]; }
  const std::string& j(std::size_t l) const { return m.justs[l]; }
  void fail(const std::string& clause, const std::string& witness) { r.failures.push_back({clause, witness}); }

  bool sized() const {
    auto sq = [](const auto& t, std::size_t rows, std::size_t cols) {
      if (t.size() != rows) return false;
      for (auto& row : t)
        if (row.size() != cols) return false;
      return true;
    };
    return m.is_true.size() == n && m.is_nec.size() == n && sq(m.reason, k, n) && sq(m.leq, k, k) &&
           sq(m.plus, k, k) && sq(m.dot, k, k) && sq(m.ref, n, n) && sq(m.impl, n, n) && m.neg.size() == n &&
           m.istrue.size() == n && m.isfalse.size() == n && m.box.size() == n && sq(m.mem, n, k);
  }

  // First undefined or out-of-range entry, if any.
  std::string totality() const {
    if (n == 0) return "values empty";
    if (k == 0) return "just empty";
    if (!sized()) return "table shape";
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (m.impl[a][b] >= n) return "impl(" + v(a) + "," + v(b) + ")";
    const std::pair<const char*, const std::vector<std::size_t>*> unary[] = {
        {"neg", &m.neg}, {"istrue", &m.istrue}, {"isfalse", &m.isfalse}, {"box", &m.box}};
    for (auto& [name, t] : unary)
      for (std::size_t a = 0; a < n; ++a)
        if ((*t)[a] >= n) return std::string(name) + "(" + v(a) + ")";
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t l = 0; l < k; ++l)
        if (m.mem[a][l] >= n) return "mem(" + v(a) + "," + j(l) + ")";
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t q = 0; q < k; ++q) {
        if (m.plus[l][q] >= k) return "plus(" + j(l) + "," + j(q) + ")";
        if (m.dot[l][q] >= k) return "dot(" + j(l) + "," + j(q) + ")";
      }
    const std::pair<const char*, const Designated*> pairs[] = {{"eq", &m.eq},       {"teq", &m.teq},
                                                               {"le", &m.le},       {"ref", &m.refp},
                                                               {"quant", &m.quant}, {"jquant", &m.jquant}};
    for (auto& [name, p] : pairs)
      if (p->t >= n || p->f >= n) return std::string("designated ") + name;
    for (auto& [c, a] : m.const_d)
      if (a >= n) return "const " + c;
    for (auto& [c, l] : m.const_c)
      if (l >= k) return "const " + c;
    if (m.default_prop >= n) return "default prop";
    if (m.default_just >= k) return "default just";
    if (m.mode == ModelMode::Override && m.nec_val >= n) return "override value";
    return {};
  }

  void structure() {
    for (std::size_t l = 0; l < k; ++l)
      if (!m.leq[l][l]) return fail("leq_order", j(l));
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t q = 0; q < k; ++q)
        if (l != q && m.leq[l][q] && m.leq[q][l]) return fail("leq_order", j(l) + "," + j(q));
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t q = 0; q < k; ++q)
        for (std::size_t p = 0; p < k; ++p)
          if (m.leq[l][q] && m.leq[q][p] && !m.leq[l][p]) return fail("leq_order", j(l) + "," + j(q) + "," + j(p));
  }

  void necessary() {
    for (std::size_t a = 0; a < n; ++a)
      if (m.is_nec[a] && !m.is_true[a]) {
        fail("nec_subset", v(a));
        break;
      }
    for (std::size_t a = 0; a < n; ++a) {
      bool in_union = false;
      for (std::size_t l = 0; l < k; ++l) in_union = in_union || m.reason[l][a];
      if (in_union != m.is_nec[a]) {
        fail("nec_union", v(a));
        break;
      }
    }
  }

  bool subset(std::size_t l, std::size_t q) const {
    for (std::size_t a = 0; a < n; ++a)
      if (m.reason[l][a] && !m.reason[q][a]) return false;
    return true;
  }

  void iso() {
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t q = 0; q < k; ++q) {
        if (m.leq[l][q] != subset(l, q) || (l != q && m.reason[l] == m.reason[q]))
          return fail("reason_iso", j(l) + "," + j(q));
      }
  }

  void ref_transitive() {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (m.ref[a][b] && m.ref[b][c] && !m.ref[a][c]) return fail("ref_transitive", v(a) + "," + v(b) + "," + v(c));
  }

  void pair(const char* clause, const Designated& p) {
    if (!m.is_true[p.t])
      fail(clause, v(p.t));
    else if (m.is_true[p.f])
      fail(clause, v(p.f));
  }

  void truth() {
    auto T = [&](std::size_t a) { return static_cast<bool>(m.is_true[a]); };
    [&] {
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (T(m.impl[a][b]) != (!T(a) || T(b))) return fail("i", v(a) + "," + v(b));
    }();
    auto unary = [&](const char* clause, const std::vector<std::size_t>& t, auto want) {
      for (std::size_t a = 0; a < n; ++a)
        if (T(t[a]) != want(a)) return fail(clause, v(a));
    };
    unary("ii", m.neg, [&](std::size_t a) { return !T(a); });
    unary("iii", m.istrue, [&](std::size_t a) { return T(a); });
    unary("iv", m.isfalse, [&](std::size_t a) { return !T(a); });
    pair("v", m.eq);
    pair("vi", m.refp);
    pair("vii", m.teq);
    pair("viii", m.le);
    unary("ix", m.box, [&](std::size_t a) { return static_cast<bool>(m.is_nec[a]); });
    [&] {
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t l = 0; l < k; ++l)
          if (T(m.mem[a][l]) != m.reason[l][a]) return fail("x", v(a) + "," + j(l));
    }();
    [&] {
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          for (std::size_t l = 0; l < k; ++l)
            for (std::size_t q = 0; q < k; ++q)
              if (m.reason[l][m.impl[a][b]] && m.reason[q][a] && !m.reason[m.dot[l][q]][b])
                return fail("xi", v(a) + "," + v(b) + "," + j(l) + "," + j(q));
    }();
    [&] {
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t l = 0; l < k; ++l)
          for (std::size_t q = 0; q < k; ++q)
            if ((m.reason[l][a] || m.reason[q][a]) && !m.reason[m.plus[l][q]][a])
              return fail("xii", v(a) + "," + j(l) + "," + j(q));
    }();
    pair("xiii", m.jquant);
    pair("xiv", m.quant);
  }
};

}  // namespace

Report validate(const FiniteModel& m) {
  Validator v(m);
  std::string gap = v.totality();
  if (!gap.empty()) {
    v.fail("totality", gap);
    return v.r;
  }
  v.structure();
  v.necessary();
  v.iso();
  v.ref_transitive();
  v.truth();
  if (m.mode == ModelMode::Override) {
    if (!m.is_nec[m.nec_val]) v.fail("override", m.values[m.nec_val]);
    v.r.warnings.push_back("SyntaxDependentBox");
  }
  return v.r;
}

// ---------------------------------------------------------------- evaluation

struct Evaluator::Cache {
  std::unordered_map<Formula, bool, FormulaHash> axiom;
};

Evaluator::Evaluator(const FiniteModel& m) : m_(m), cache_(std::make_unique<Cache>()) {}
Evaluator::~Evaluator() = default;

bool Evaluator::overridden(const Formula& f) {
  if (m_.mode != ModelMode::Override) return false;
  auto it = cache_->axiom.find(f);
  if (it != cache_->axiom.end()) return it->second;
  bool r = is_axiom(f, m_.system);
  cache_->axiom.emplace(f, r);
  return r;
}

namespace {

std::vector<std::size_t> dense(const std::map<uint32_t, std::size_t>& g, std::size_t limit, const char* sort) {
  std::vector<std::size_t> out;
  for (auto& [i, val] : g) {
    if (val >= limit) throw Error(ErrorCode::SortError, std::string("assignment value out of range for ") + sort);
    if (out.size() <= i) out.resize(i + 1, kUnset);
    out[i] = val;
  }
  return out;
}

std::size_t lookup(const std::vector<std::size_t>& vals, uint32_t i, std::size_t dflt) {
  return i < vals.size() && vals[i] != kUnset ? vals[i] : dflt;
}

}  // namespace

std::size_t Evaluator::eval_term(const Term& t, const std::vector<std::size_t>& jv) const {
  switch (t.kind()) {
    case TKind::Var: return lookup(jv, t.index(), m_.default_just);
    case TKind::Const: {
      auto it = m_.const_c.find(t.name());
      return it == m_.const_c.end() ? m_.default_just : it->second;
    }
    case TKind::Prod: return m_.dot[eval_term(t.left(), jv)][eval_term(t.right(), jv)];
    case TKind::Sum: return m_.plus[eval_term(t.left(), jv)][eval_term(t.right(), jv)];
  }
  return m_.default_just;
}

std::size_t Evaluator::eval(const Formula& f, std::vector<std::size_t>& pv, std::vector<std::size_t>& jv) {
  auto pick = [](bool c, const Designated& d) { return c ? d.t : d.f; };
  switch (f.kind()) {
    case FKind::Var: return lookup(pv, f.index(), m_.default_prop);
    case FKind::Const: {
      auto it = m_.const_d.find(f.name());
      return it == m_.const_d.end() ? m_.default_prop : it->second;
    }
    case FKind::Implies: return m_.impl[eval(f.a(), pv, jv)][eval(f.b(), pv, jv)];
    case FKind::Not: return m_.neg[eval(f.a(), pv, jv)];
    case FKind::Ident: return pick(eval(f.a(), pv, jv) == eval(f.b(), pv, jv), m_.eq);
    case FKind::Refers: return pick(m_.ref[eval(f.a(), pv, jv)][eval(f.b(), pv, jv)], m_.refp);
    case FKind::TermIdent: return pick(eval_term(f.s(), jv) == eval_term(f.t(), jv), m_.teq);
    case FKind::TermLe: return pick(m_.leq[eval_term(f.s(), jv)][eval_term(f.t(), jv)], m_.le);
    case FKind::IsTrue: return m_.istrue[eval(f.a(), pv, jv)];
    case FKind::IsFalse: return m_.isfalse[eval(f.a(), pv, jv)];
    case FKind::Box:
      if (overridden(f.a())) return m_.nec_val;
      return m_.box[eval(f.a(), pv, jv)];
    case FKind::Member:
      if (overridden(f.a())) return m_.nec_val;
      return m_.mem[eval(f.a(), pv, jv)][eval_term(f.t(), jv)];
    case FKind::Forall: {
      uint32_t x = f.index();
      if (pv.size() <= x) pv.resize(x + 1, kUnset);
      std::size_t saved = pv[x];
      bool all = true;
      for (std::size_t a = 0; a < m_.values.size() && all; ++a) {
        pv[x] = a;
        all = m_.is_true[eval(f.a(), pv, jv)];
      }
      pv[x] = saved;
      return pick(all, m_.quant);
    }
    case FKind::JForall: {
      uint32_t u = f.index();
      if (jv.size() <= u) jv.resize(u + 1, kUnset);
      std::size_t saved = jv[u];
      bool all = true;
      for (std::size_t l = 0; l < m_.justs.size() && all; ++l) {
        jv[u] = l;
        all = m_.is_true[eval(f.a(), pv, jv)];
      }
      jv[u] = saved;
      return pick(all, m_.jquant);
    }
  }
  return m_.default_prop;
}

std::size_t Evaluator::formula(const Formula& f, const Assignment& g) {
  auto pv = dense(g.p, m_.values.size(), "propositional variables");
  auto jv = dense(g.j, m_.justs.size(), "justification variables");
  return eval(f, pv, jv);
}

std::size_t Evaluator::term(const Term& t, const Assignment& g) const {
  dense(g.p, m_.values.size(), "propositional variables");
  return eval_term(t, dense(g.j, m_.justs.size(), "justification variables"));
}

std::size_t eval(const FiniteModel& m, const Assignment& g, const Formula& f) { return Evaluator(m).formula(f, g); }
std::size_t eval(const FiniteModel& m, const Assignment& g, const Term& t) { return Evaluator(m).term(t, g); }

// ---------------------------------------------------------------- derived

DerivedSets derived_sets(const FiniteModel& m) {
  DerivedSets d;
  for (std::size_t a = 0; a < m.values.size(); ++a) (m.is_nec[m.neg[a]] ? d.impossible : d.possible).push_back(a);
  return d;
}

std::string render_assignment(const FiniteModel& m, const Assignment& g) {
  std::ostringstream os;
  bool first = true;
  for (auto& [i, a] : g.p) {
    os << (first ? "" : " ") << "x" << i << "=" << m.values.at(a);
    first = false;
  }
  for (auto& [i, l] : g.j) {
    os << (first ? "" : " ") << "v" << i << "=" << m.justs.at(l);
    first = false;
  }
  return os.str();
}

Report check_condition(const FiniteModel& m, const Condition& c) {
  Report r;
  switch (c.kind) {
    case ConditionKind::Four:
      for (std::size_t a = 0; a < m.values.size(); ++a)
        if (m.is_true[m.box[a]] && !m.is_true[m.box[m.box[a]]]) {
          r.failures.push_back({"four", m.values[a]});
          break;
        }
      break;
    case ConditionKind::E:
      for (std::size_t a : derived_sets(m).possible)
        if (!m.is_nec[m.neg[m.box[m.neg[a]]]]) {
          r.failures.push_back({"e", m.values[a]});
          break;
        }
      break;
    case ConditionKind::AxNecSample: {
      SystemId sys = m.mode == ModelMode::Override ? m.system : SystemId::AX4_AXNEC;
      std::vector<SchemaId> ids;
      for (auto id : all_schemas())
        if (system_includes(sys, id)) ids.push_back(id);
      Sampler s(c.seed);
      s.use_constants(m.decls());
      Evaluator ev(m);
      for (std::size_t i = 0; i < c.samples; ++i) {
        SchemaId id = ids[i % ids.size()];
        auto inst = s.instance(id);
        if (!inst) continue;
        Formula boxed = Formula::box(*inst);
        for (int a = 0; a < c.assignments; ++a) {
          Assignment g = random_assignment(m, s.rng(), 3);
          if (!ev.holds(boxed, g)) {
            r.failures.push_back({"axnec", "(" + std::string(schema_name(id)) + ") " + render(*inst) + " under " +
                                               render_assignment(m, g)});
            break;
          }
        }
      }
      break;
    }
  }
  return r;
}

// ---------------------------------------------------------------- presets

FiniteModel preset_s4_four_valued(SystemId sys) {
  enum { t, f, nec, imp };
  FiniteModel m;
  m.values = {"t", "f", "nec", "imp"};
  m.justs = {"l"};
  m.resize_tables();
  m.is_true = {true, false, true, false};
  m.is_nec = {false, false, true, false};
  m.reason[0][nec] = true;
  m.leq[0][0] = true;
  m.plus[0][0] = m.dot[0][0] = 0;
  for (auto& row : m.ref) row.assign(4, true);
  m.neg = {f, t, imp, nec};
  m.istrue = {t, f, nec, imp};
  m.isfalse = m.neg;
  m.box = {f, f, nec, f};
  for (std::size_t a = 0; a < 4; ++a) m.mem[a][0] = m.box[a];
  m.impl = {{t, f, nec, f}, {t, t, nec, t}, {t, f, nec, imp}, {nec, nec, nec, nec}};
  m.eq = m.teq = m.le = m.refp = m.quant = m.jquant = Designated{t, f};
  m.default_prop = t;
  m.default_just = 0;
  m.mode = ModelMode::Override;
  m.nec_val = nec;
  m.system = sys;
  return m;
}

FiniteModel preset_extensional() {
  enum { t, f };
  FiniteModel m;
  m.values = {"t", "f"};
  m.justs = {"l"};
  m.resize_tables();
  m.is_true = {true, false};
  m.is_nec = {true, false};
  m.reason[0][t] = true;
  m.leq[0][0] = true;
  m.plus[0][0] = m.dot[0][0] = 0;
  for (auto& row : m.ref) row.assign(2, true);
  m.neg = {f, t};
  m.istrue = {t, f};
  m.isfalse = m.neg;
  m.box = {t, f};
  m.mem[t][0] = t;
  m.mem[f][0] = f;
  m.impl = {{t, f}, {t, t}};
  m.eq = m.teq = m.le = m.refp = m.quant = m.jquant = Designated{t, f};
  m.default_prop = t;
  m.default_just = 0;
  m.mode = ModelMode::Strict;
  return m;
}

Assignment random_assignment(const FiniteModel& m, std::mt19937_64& rng, uint32_t nvars) {
  Assignment g;
  std::uniform_int_distribution<std::size_t> pm(0, m.values.size() - 1), pl(0, m.justs.size() - 1);
  for (uint32_t i = 0; i < nvars; ++i) g.p[i] = pm(rng);
  for (uint32_t i = 0; i < nvars; ++i) g.j[i] = pl(rng);
  return g;
}

// ---------------------------------------------------------------- text

namespace {

[[noreturn]] void bad(std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::FormatError, "line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

struct Line {
  std::size_t no;
  std::string key;  // text before the first ':' or the first word
  std::vector<std::string> rest;
};

std::vector<Line> lines_of(std::string_view text) {
  std::vector<Line> out;
  std::istringstream is{std::string(text)};
  std::string raw;
  std::size_t no = 0;
  while (std::getline(is, raw)) {
    ++no;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    auto ws = words(raw);
    if (ws.empty()) continue;
    Line l{no, {}, {}};
    std::string first = ws[0];
    if (auto c = first.find(':'); c != std::string::npos) {
      l.key = first.substr(0, c);
      std::string tail = first.substr(c + 1);
      if (!tail.empty()) l.rest.push_back(tail);
      l.rest.insert(l.rest.end(), ws.begin() + 1, ws.end());
    } else {
      l.key = first;
      l.rest.assign(ws.begin() + 1, ws.end());
      if (!l.rest.empty() && l.rest[0] == ":") l.rest.erase(l.rest.begin());
    }
    out.push_back(std::move(l));
  }
  return out;
}

}  // namespace

FiniteModel parse_model(std::string_view text) {
  FiniteModel m;
  auto ls = lines_of(text);
  for (auto& l : ls) {
    if (l.key == "values") {
      if (!m.values.empty()) bad(l.no, "values declared twice");
      m.values = l.rest;
    } else if (l.key == "just") {
      if (!m.justs.empty()) bad(l.no, "just declared twice");
      m.justs = l.rest;
    }
  }
  if (m.values.empty()) throw Error(ErrorCode::FormatError, "missing values section");
  if (m.justs.empty()) throw Error(ErrorCode::FormatError, "missing just section");
  for (std::size_t i = 0; i < m.values.size(); ++i)
    for (std::size_t q = i + 1; q < m.values.size(); ++q)
      if (m.values[i] == m.values[q]) throw Error(ErrorCode::FormatError, "duplicate value " + m.values[i]);
  for (std::size_t i = 0; i < m.justs.size(); ++i)
    for (std::size_t q = i + 1; q < m.justs.size(); ++q)
      if (m.justs[i] == m.justs[q]) throw Error(ErrorCode::FormatError, "duplicate justification " + m.justs[i]);
  m.resize_tables();

  bool saw_true = false, saw_nec = false, saw_mode = false;
  for (auto& l : ls) {
    auto V = [&](const std::string& s) {
      std::size_t a = m.value_index(s);
      if (a == kUnset) bad(l.no, "unknown value " + s);
      return a;
    };
    auto J = [&](const std::string& s) {
      std::size_t a = m.just_index(s);
      if (a == kUnset) bad(l.no, "unknown justification " + s);
      return a;
    };
    auto arity = [&](std::size_t n) {
      if (l.rest.size() != n) bad(l.no, "malformed " + l.key + " line");
    };
    auto arrow = [&](std::size_t at) {
      if (l.rest[at] != "->") bad(l.no, "expected -> in " + l.key + " line");
    };
    auto set_once = [&](std::size_t& slot, std::size_t val) {
      if (slot != kUnset) bad(l.no, "entry defined twice in " + l.key);
      slot = val;
    };
    const std::string& k = l.key;
    if (k == "values" || k == "just") continue;
    if (k == "true") {
      if (saw_true) bad(l.no, "true declared twice");
      saw_true = true;
      for (auto& s : l.rest) m.is_true[V(s)] = true;
    } else if (k == "necessary") {
      if (saw_nec) bad(l.no, "necessary declared twice");
      saw_nec = true;
      for (auto& s : l.rest) m.is_nec[V(s)] = true;
    } else if (k == "reason") {
      // reason l = { a b }
      if (l.rest.size() < 3 || l.rest[1] != "=" || l.rest[2] != "{" || l.rest.back() != "}")
        bad(l.no, "malformed reason line");
      std::size_t j = J(l.rest[0]);
      for (std::size_t i = 3; i + 1 < l.rest.size(); ++i) m.reason[j][V(l.rest[i])] = true;
    } else if (k == "leq") {
      arity(2);
      m.leq[J(l.rest[0])][J(l.rest[1])] = true;
    } else if (k == "plus" || k == "dot") {
      arity(4);
      arrow(2);
      auto& t = k == "plus" ? m.plus : m.dot;
      set_once(t[J(l.rest[0])][J(l.rest[1])], J(l.rest[3]));
    } else if (k == "ref") {
      if (l.rest.size() == 1 && l.rest[0] == "total") {
        for (auto& row : m.ref) row.assign(m.values.size(), true);
      } else {
        if (l.rest.empty() || l.rest.size() % 2 != 0) bad(l.no, "malformed ref line");
        for (std::size_t i = 0; i < l.rest.size(); i += 2) m.ref[V(l.rest[i])][V(l.rest[i + 1])] = true;
      }
    } else if (k == "impl") {
      arity(4);
      arrow(2);
      set_once(m.impl[V(l.rest[0])][V(l.rest[1])], V(l.rest[3]));
    } else if (k == "mem") {
      arity(4);
      arrow(2);
      set_once(m.mem[V(l.rest[0])][J(l.rest[1])], V(l.rest[3]));
    } else if (k == "neg" || k == "istrue" || k == "isfalse" || k == "box") {
      arity(3);
      arrow(1);
      auto& t = k == "neg" ? m.neg : k == "istrue" ? m.istrue : k == "isfalse" ? m.isfalse : m.box;
      set_once(t[V(l.rest[0])], V(l.rest[2]));
    } else if (k == "designated") {
      arity(3);
      const std::string& w = l.rest[0];
      Designated* p = w == "eq" ? &m.eq
                      : w == "teq" ? &m.teq
                      : w == "le" ? &m.le
                      : w == "ref" ? &m.refp
                      : w == "quant" ? &m.quant
                      : w == "jquant" ? &m.jquant
                                      : nullptr;
      if (!p) bad(l.no, "unknown designated pair " + w);
      *p = {V(l.rest[1]), V(l.rest[2])};
    } else if (k == "mode") {
      if (saw_mode) bad(l.no, "mode declared twice");
      saw_mode = true;
      if (l.rest.size() == 1 && l.rest[0] == "strict") {
        m.mode = ModelMode::Strict;
      } else if (l.rest.size() == 3 && l.rest[0] == "override") {
        m.mode = ModelMode::Override;
        m.nec_val = V(l.rest[1]);
        auto sys = parse_system_id(l.rest[2]);
        if (!sys) bad(l.no, "unknown system " + l.rest[2]);
        m.system = *sys;
      } else {
        bad(l.no, "malformed mode line");
      }
    } else if (k == "const") {
      // const [prop|just] name = value
      std::vector<std::string> r = l.rest;
      std::string sort;
      if (!r.empty() && (r[0] == "prop" || r[0] == "just")) {
        sort = r[0];
        r.erase(r.begin());
      }
      if (r.size() != 3 || r[1] != "=") bad(l.no, "malformed const line");
      if (!valid_const_name(r[0])) bad(l.no, "invalid constant name " + r[0]);
      if (sort.empty()) {
        bool in_m = m.value_index(r[2]) != kUnset, in_l = m.just_index(r[2]) != kUnset;
        if (in_m == in_l) bad(l.no, "constant sort is ambiguous, write const prop or const just");
        sort = in_m ? "prop" : "just";
      }
      if (m.const_d.count(r[0]) || m.const_c.count(r[0])) bad(l.no, "constant declared twice");
      if (sort == "prop")
        m.const_d[r[0]] = V(r[2]);
      else
        m.const_c[r[0]] = J(r[2]);
    } else if (k == "default") {
      arity(2);
      if (l.rest[0] == "prop")
        m.default_prop = V(l.rest[1]);
      else if (l.rest[0] == "just")
        m.default_just = J(l.rest[1]);
      else
        bad(l.no, "malformed default line");
    } else {
      bad(l.no, "unknown section " + k);
    }
  }
  return m;
}

std::string print_model(const FiniteModel& m) {
  std::ostringstream os;
  auto V = [&](std::size_t a) -> const std::string& {
    static const std::string undefined = "?";
    return a < m.values.size() ? m.values[a] : undefined;
  };
  auto J = [&](std::size_t l) -> const std::string& {
    static const std::string undefined = "?";
    return l < m.justs.size() ? m.justs[l] : undefined;
  };
  std::size_t n = m.values.size(), k = m.justs.size();
  auto list = [&](const char* key, const std::vector<bool>& flags) {
    os << key << ":";
    for (std::size_t a = 0; a < n; ++a)
      if (flags[a]) os << " " << V(a);
    os << "\n";
  };
  os << "values:";
  for (auto& v : m.values) os << " " << v;
  os << "\n";
  list("true", m.is_true);
  list("necessary", m.is_nec);
  os << "just:";
  for (auto& j : m.justs) os << " " << j;
  os << "\n";
  for (std::size_t l = 0; l < k; ++l) {
    os << "reason " << J(l) << " = {";
    for (std::size_t a = 0; a < n; ++a)
      if (m.reason[l][a]) os << " " << V(a);
    os << " }\n";
  }
  for (std::size_t l = 0; l < k; ++l)
    for (std::size_t q = 0; q < k; ++q)
      if (m.leq[l][q]) os << "leq: " << J(l) << " " << J(q) << "\n";
  for (std::size_t l = 0; l < k; ++l)
    for (std::size_t q = 0; q < k; ++q)
      if (m.plus[l][q] != kUnset) os << "plus: " << J(l) << " " << J(q) << " -> " << J(m.plus[l][q]) << "\n";
  for (std::size_t l = 0; l < k; ++l)
    for (std::size_t q = 0; q < k; ++q)
      if (m.dot[l][q] != kUnset) os << "dot: " << J(l) << " " << J(q) << " -> " << J(m.dot[l][q]) << "\n";
  bool total = std::all_of(m.ref.begin(), m.ref.end(), [](auto& row) {
    return std::all_of(row.begin(), row.end(), [](bool b) { return b; });
  });
  if (total) {
    os << "ref: total\n";
  } else {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (m.ref[a][b]) os << "ref: " << V(a) << " " << V(b) << "\n";
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (m.impl[a][b] != kUnset) os << "impl: " << V(a) << " " << V(b) << " -> " << V(m.impl[a][b]) << "\n";
  const std::pair<const char*, const std::vector<std::size_t>*> unary[] = {
      {"neg", &m.neg}, {"istrue", &m.istrue}, {"isfalse", &m.isfalse}, {"box", &m.box}};
  for (auto& [name, t] : unary)
    for (std::size_t a = 0; a < n; ++a)
      if ((*t)[a] != kUnset) os << name << ": " << V(a) << " -> " << V((*t)[a]) << "\n";
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t l = 0; l < k; ++l)
      if (m.mem[a][l] != kUnset) os << "mem: " << V(a) << " " << J(l) << " -> " << V(m.mem[a][l]) << "\n";
  const std::pair<const char*, const Designated*> pairs[] = {{"eq", &m.eq},       {"teq", &m.teq},
                                                             {"le", &m.le},       {"ref", &m.refp},
                                                             {"quant", &m.quant}, {"jquant", &m.jquant}};
  for (auto& [name, p] : pairs)
    if (p->t != kUnset && p->f != kUnset) os << "designated " << name << " " << V(p->t) << " " << V(p->f) << "\n";
  if (m.mode == ModelMode::Strict)
    os << "mode strict\n";
  else
    os << "mode override " << V(m.nec_val) << " " << system_name(m.system) << "\n";
  for (auto& [c, a] : m.const_d) os << "const prop " << c << " = " << V(a) << "\n";
  for (auto& [c, l] : m.const_c) os << "const just " << c << " = " << J(l) << "\n";
  os << "default prop " << V(m.default_prop) << "\n";
  os << "default just " << J(m.default_just) << "\n";
  return os.str();
}

Assignment parse_assignment(const FiniteModel& m, std::string_view text) {
  Assignment g;
  for (auto& w : words(text)) {
    auto eq = w.find('=');
    if (eq == std::string::npos || eq < 2) throw Error(ErrorCode::FormatError, "malformed binding " + w);
    std::string var = w.substr(0, eq), val = w.substr(eq + 1);
    char sort = var[0];
    std::string digits = var.substr(1);
    if ((sort != 'x' && sort != 'v') || digits.empty() ||
        !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw Error(ErrorCode::FormatError, "malformed variable " + var);
    auto idx = static_cast<uint32_t>(std::stoul(digits));
    if (sort == 'x') {
      std::size_t a = m.value_index(val);
      if (a == kUnset) throw Error(ErrorCode::SortError, "not a proposition value: " + val);
      g.p[idx] = a;
    } else {
      std::size_t l = m.just_index(val);
      if (l == kUnset) throw Error(ErrorCode::SortError, "not a justification name: " + val);
      g.j[idx] = l;
    }
  }
  return g;
}

}  // namespace ejk
