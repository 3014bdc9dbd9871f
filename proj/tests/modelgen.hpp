#pragma once

// Random well-formed strict models, single-entry mutations, and an
// independent clause checker working on named sets.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ejk/models.hpp"
#include "gen.hpp"

namespace ejk::testgen {

inline FiniteModel random_model(Gen& g, bool total_ref = true) {
  FiniteModel m;
  std::size_t n = 2 + static_cast<std::size_t>(g.pick(3));
  for (std::size_t a = 0; a < n; ++a) m.values.push_back("m" + std::to_string(a));
  std::vector<bool> tr(n);
  do {
    for (std::size_t a = 0; a < n; ++a) tr[a] = g.coin(50);
  } while (std::count(tr.begin(), tr.end(), true) == 0 || std::count(tr.begin(), tr.end(), false) == 0);
  std::vector<std::size_t> T, F;
  for (std::size_t a = 0; a < n; ++a) (tr[a] ? T : F).push_back(a);
  std::vector<bool> nec(n, false);
  for (auto a : T) nec[a] = g.coin(60);

  // Reason sets: the whole of NEC plus distinct random subsets.
  std::vector<std::vector<bool>> fam = {nec};
  for (int tries = 0; tries < 6 && fam.size() < 3; ++tries) {
    std::vector<bool> s(n, false);
    for (std::size_t a = 0; a < n; ++a) s[a] = nec[a] && g.coin(50);
    if (std::find(fam.begin(), fam.end(), s) == fam.end()) fam.push_back(s);
  }
  std::size_t k = fam.size();
  for (std::size_t l = 0; l < k; ++l) m.justs.push_back("j" + std::to_string(l));
  m.resize_tables();
  m.is_true = tr;
  m.is_nec = nec;
  m.reason = fam;
  auto sub = [&](const std::vector<bool>& a, const std::vector<bool>& b) {
    for (std::size_t i = 0; i < n; ++i)
      if (a[i] && !b[i]) return false;
    return true;
  };
  for (std::size_t l = 0; l < k; ++l)
    for (std::size_t q = 0; q < k; ++q) m.leq[l][q] = sub(fam[l], fam[q]);

  auto one_of = [&](const std::vector<std::size_t>& xs) { return xs[g.pick(static_cast<int>(xs.size()))]; };
  auto with = [&](bool truth) { return one_of(truth ? T : F); };
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      // necessary a -> b with b not necessary must not be necessary itself
      std::vector<std::size_t> pool;
      for (auto c : (!tr[a] || tr[b]) ? T : F)
        if (!(nec[a] && !nec[b] && nec[c])) pool.push_back(c);
      m.impl[a][b] = one_of(pool);
    }
    m.neg[a] = with(!tr[a]);
    m.istrue[a] = with(tr[a]);
    m.isfalse[a] = with(!tr[a]);
    m.box[a] = with(nec[a]);
    for (std::size_t l = 0; l < k; ++l) m.mem[a][l] = with(fam[l][a]);
  }
  for (std::size_t l = 0; l < k; ++l)
    for (std::size_t q = 0; q < k; ++q) {
      std::vector<bool> need_plus(n, false), need_dot(n, false);
      for (std::size_t a = 0; a < n; ++a) need_plus[a] = fam[l][a] || fam[q][a];
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (fam[l][m.impl[a][b]] && fam[q][a]) need_dot[b] = true;
      std::vector<std::size_t> cp, cd;
      for (std::size_t r = 0; r < k; ++r) {
        if (sub(need_plus, fam[r])) cp.push_back(r);
        if (sub(need_dot, fam[r])) cd.push_back(r);
      }
      m.plus[l][q] = one_of(cp);
      m.dot[l][q] = one_of(cd);
    }
  if (total_ref) {
    for (auto& row : m.ref) row.assign(n, true);
  } else {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) m.ref[a][b] = g.coin(30);
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (m.ref[a][c] && m.ref[c][b]) m.ref[a][b] = true;
  }
  for (Designated* p : {&m.eq, &m.teq, &m.le, &m.refp, &m.quant, &m.jquant}) *p = {with(true), with(false)};
  m.const_d = {{"d1", static_cast<std::size_t>(g.pick(static_cast<int>(n)))},
               {"d2", static_cast<std::size_t>(g.pick(static_cast<int>(n)))}};
  m.const_c = {{"c1", static_cast<std::size_t>(g.pick(static_cast<int>(k)))},
               {"c2", static_cast<std::size_t>(g.pick(static_cast<int>(k)))}};
  m.default_prop = g.pick(static_cast<int>(n));
  m.default_just = g.pick(static_cast<int>(k));
  return m;
}

// The same model in strict mode.
inline FiniteModel strict_copy(FiniteModel m) {
  m.mode = ModelMode::Strict;
  m.nec_val = kUnset;
  return m;
}

struct Mutation {
  std::string family;
  std::string what;
  std::function<void(FiniteModel&)> apply;
};

inline std::vector<Mutation> all_mutations(const FiniteModel& m) {
  std::vector<Mutation> out;
  std::size_t n = m.values.size(), k = m.justs.size();
  auto V = [&](std::size_t a) { return m.values[a]; };
  auto J = [&](std::size_t l) { return m.justs[l]; };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (c != m.impl[a][b])
          out.push_back({"impl", "impl(" + V(a) + "," + V(b) + "):=" + V(c), [=](FiniteModel& x) { x.impl[a][b] = c; }});
  const std::pair<const char*, std::vector<std::size_t> FiniteModel::*> unary[] = {
      {"neg", &FiniteModel::neg},
      {"istrue", &FiniteModel::istrue},
      {"isfalse", &FiniteModel::isfalse},
      {"box", &FiniteModel::box}};
  for (auto& [name, field] : unary)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t c = 0; c < n; ++c)
        if (c != (m.*field)[a]) {
          auto f = field;
          out.push_back({name, std::string(name) + "(" + V(a) + "):=" + V(c), [=](FiniteModel& x) { (x.*f)[a] = c; }});
        }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t c = 0; c < n; ++c)
        if (c != m.mem[a][l])
          out.push_back({"mem", "mem(" + V(a) + "," + J(l) + "):=" + V(c), [=](FiniteModel& x) { x.mem[a][l] = c; }});
  for (std::size_t l = 0; l < k; ++l)
    for (std::size_t q = 0; q < k; ++q)
      for (std::size_t r = 0; r < k; ++r) {
        if (r != m.plus[l][q])
          out.push_back({"plus", "plus(" + J(l) + "," + J(q) + "):=" + J(r), [=](FiniteModel& x) { x.plus[l][q] = r; }});
        if (r != m.dot[l][q])
          out.push_back({"dot", "dot(" + J(l) + "," + J(q) + "):=" + J(r), [=](FiniteModel& x) { x.dot[l][q] = r; }});
      }
  const std::pair<const char*, Designated FiniteModel::*> pairs[] = {
      {"eq", &FiniteModel::eq}, {"teq", &FiniteModel::teq},     {"le", &FiniteModel::le},
      {"ref", &FiniteModel::refp}, {"quant", &FiniteModel::quant}, {"jquant", &FiniteModel::jquant}};
  for (auto& [name, field] : pairs)
    for (std::size_t c = 0; c < n; ++c) {
      auto f = field;
      if (c != (m.*f).t)
        out.push_back({"designated", std::string(name) + "_t:=" + V(c), [=](FiniteModel& x) { (x.*f).t = c; }});
      if (c != (m.*f).f)
        out.push_back({"designated", std::string(name) + "_f:=" + V(c), [=](FiniteModel& x) { (x.*f).f = c; }});
    }
  for (std::size_t a = 0; a < n; ++a) {
    out.push_back({"true", "flip TRUE " + V(a), [=](FiniteModel& x) { x.is_true[a] = !x.is_true[a]; }});
    out.push_back({"necessary", "flip NEC " + V(a), [=](FiniteModel& x) { x.is_nec[a] = !x.is_nec[a]; }});
    for (std::size_t l = 0; l < k; ++l)
      out.push_back(
          {"reason", "flip REASON(" + J(l) + ") " + V(a), [=](FiniteModel& x) { x.reason[l][a] = !x.reason[l][a]; }});
    for (std::size_t b = 0; b < n; ++b)
      out.push_back({"ref", "flip ref " + V(a) + "," + V(b), [=](FiniteModel& x) { x.ref[a][b] = !x.ref[a][b]; }});
  }
  for (std::size_t l = 0; l < k; ++l)
    for (std::size_t q = 0; q < k; ++q)
      out.push_back({"leq", "flip leq " + J(l) + "," + J(q), [=](FiniteModel& x) { x.leq[l][q] = !x.leq[l][q]; }});
  if (m.mode == ModelMode::Override)
    for (std::size_t c = 0; c < n; ++c)
      if (c != m.nec_val) out.push_back({"override", "nec_val:=" + V(c), [=](FiniteModel& x) { x.nec_val = c; }});
  return out;
}

namespace oracle {

// Violated clause identifiers, recomputed over named sets.
inline std::set<std::string> violated_clauses(const FiniteModel& m) {
  using S = std::set<std::string>;
  S M(m.values.begin(), m.values.end()), L(m.justs.begin(), m.justs.end()), TRUE, NEC;
  std::map<std::string, S> REASON;
  std::set<std::pair<std::string, std::string>> LEQ, REF;
  for (std::size_t a = 0; a < m.values.size(); ++a) {
    if (m.is_true[a]) TRUE.insert(m.values[a]);
    if (m.is_nec[a]) NEC.insert(m.values[a]);
  }
  for (std::size_t l = 0; l < m.justs.size(); ++l) {
    REASON[m.justs[l]];
    for (std::size_t a = 0; a < m.values.size(); ++a)
      if (m.reason[l][a]) REASON[m.justs[l]].insert(m.values[a]);
    for (std::size_t q = 0; q < m.justs.size(); ++q)
      if (m.leq[l][q]) LEQ.insert({m.justs[l], m.justs[q]});
  }
  for (std::size_t a = 0; a < m.values.size(); ++a)
    for (std::size_t b = 0; b < m.values.size(); ++b)
      if (m.ref[a][b]) REF.insert({m.values[a], m.values[b]});
  auto idx = [&](const std::string& s) { return m.value_index(s); };
  auto jdx = [&](const std::string& s) { return m.just_index(s); };
  auto val = [&](std::size_t a) { return m.values[a]; };
  auto jn = [&](std::size_t l) { return m.justs[l]; };
  auto in = [](const S& s, const std::string& x) { return s.count(x) > 0; };
  auto IMPL = [&](const std::string& a, const std::string& b) { return val(m.impl[idx(a)][idx(b)]); };
  auto PLUS = [&](const std::string& l, const std::string& q) { return jn(m.plus[jdx(l)][jdx(q)]); };
  auto DOT = [&](const std::string& l, const std::string& q) { return jn(m.dot[jdx(l)][jdx(q)]); };

  S out;
  for (auto& l : L) {
    if (!LEQ.count({l, l})) out.insert("leq_order");
    for (auto& q : L) {
      if (l != q && LEQ.count({l, q}) && LEQ.count({q, l})) out.insert("leq_order");
      for (auto& p : L)
        if (LEQ.count({l, q}) && LEQ.count({q, p}) && !LEQ.count({l, p})) out.insert("leq_order");
    }
  }
  for (auto& a : NEC)
    if (!in(TRUE, a)) out.insert("nec_subset");
  S uni;
  for (auto& [l, s] : REASON) uni.insert(s.begin(), s.end());
  if (uni != NEC) out.insert("nec_union");
  for (auto& l : L)
    for (auto& q : L) {
      bool incl = std::includes(REASON[q].begin(), REASON[q].end(), REASON[l].begin(), REASON[l].end());
      if (LEQ.count({l, q}) != incl) out.insert("reason_iso");
      if (l != q && REASON[l] == REASON[q]) out.insert("reason_iso");
    }
  for (auto& [a, b] : REF)
    for (auto& [c, d] : REF)
      if (b == c && !REF.count({a, d})) out.insert("ref_transitive");

  for (auto& a : M)
    for (auto& b : M)
      if (in(TRUE, IMPL(a, b)) != (!in(TRUE, a) || in(TRUE, b))) out.insert("i");
  for (auto& a : M) {
    std::size_t i = idx(a);
    if (in(TRUE, val(m.neg[i])) == in(TRUE, a)) out.insert("ii");
    if (in(TRUE, val(m.istrue[i])) != in(TRUE, a)) out.insert("iii");
    if (in(TRUE, val(m.isfalse[i])) == in(TRUE, a)) out.insert("iv");
    if (in(TRUE, val(m.box[i])) != in(NEC, a)) out.insert("ix");
    for (auto& l : L)
      if (in(TRUE, val(m.mem[i][jdx(l)])) != in(REASON[l], a)) out.insert("x");
  }
  auto good = [&](const Designated& d) { return in(TRUE, val(d.t)) && !in(TRUE, val(d.f)); };
  if (!good(m.eq)) out.insert("v");
  if (!good(m.refp)) out.insert("vi");
  if (!good(m.teq)) out.insert("vii");
  if (!good(m.le)) out.insert("viii");
  if (!good(m.jquant)) out.insert("xiii");
  if (!good(m.quant)) out.insert("xiv");
  for (auto& a : M)
    for (auto& b : M)
      for (auto& l : L)
        for (auto& q : L)
          if (in(REASON[l], IMPL(a, b)) && in(REASON[q], a) && !in(REASON[DOT(l, q)], b)) out.insert("xi");
  for (auto& a : M)
    for (auto& l : L)
      for (auto& q : L)
        if ((in(REASON[l], a) || in(REASON[q], a)) && !in(REASON[PLUS(l, q)], a)) out.insert("xii");
  if (m.mode == ModelMode::Override && !in(NEC, val(m.nec_val))) out.insert("override");
  return out;
}

}  // namespace oracle

}  // namespace ejk::testgen
