#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "ejk/kripke.hpp"
#include "ejk/proofs.hpp"

using namespace ejk;
using json = nlohmann::json;

namespace {

enum Exit { kOk = 0, kFailed = 1, kParse = 2, kInvalid = 3 };

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Usage("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Usage("cannot write " + path);
  out << text;
}

// Formula file: `const prop d1 d2` and `const just c1` lines declare
// constants, `#` starts a comment, every other non-blank line is a formula.
std::vector<Formula> read_formulas(const std::string& text, Decls decls) {
  std::vector<std::string> lines;
  std::istringstream is(text);
  std::string raw;
  while (std::getline(is, raw)) {
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    std::istringstream ws(raw);
    std::string a, b, n;
    ws >> a;
    if (a.empty()) continue;
    if (a == "const") {
      ws >> b;
      if (b != "prop" && b != "just") throw Error(ErrorCode::FormatError, "expected const prop or const just");
      while (ws >> n) b == "prop" ? decls.add_prop(n) : decls.add_just(n);
      continue;
    }
    lines.push_back(raw);
  }
  std::vector<Formula> out;
  for (auto& l : lines) out.push_back(parse_formula(l, decls));
  return out;
}

Sym parse_sym(const std::string& s, const Derivation& d) {
  auto digits = [&](std::size_t from) {
    return s.size() > from && std::all_of(s.begin() + static_cast<long>(from), s.end(), ::isdigit);
  };
  if (s[0] == 'x' && digits(1)) return Sym::p(static_cast<uint32_t>(std::stoul(s.substr(1))));
  if (s[0] == 'v' && digits(1)) return Sym::j(static_cast<uint32_t>(std::stoul(s.substr(1))));
  Decls decls;
  for (auto& h : d.hypotheses) decls.absorb(h);
  for (auto& st : d.steps) decls.absorb(st.f);
  if (decls.props.count(s)) return Sym::d(s);
  if (decls.justs.count(s)) return Sym::c(s);
  throw Error(ErrorCode::ConstantAbsent, s + " does not occur in the derivation");
}

SystemId system_of(const std::string& s) {
  auto id = parse_system_id(s);
  if (!id) throw Usage("unknown system " + s);
  return *id;
}

FiniteModel load_model(const std::string& path) { return parse_model(slurp(path)); }

KripkeModel load_frame(const std::string& path) { return parse_frame(slurp(path)); }

std::size_t world_of(const KripkeModel& k, const std::string& name) {
  std::size_t w = k.world_index(name);
  if (w == kUnset) throw Usage("no world " + name);
  return w;
}

std::string value_list(const FiniteModel& m, const std::vector<std::size_t>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + m.values[v[i]];
  return s + "}";
}

int exit_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::SyntaxError:
    case ErrorCode::SortError:
    case ErrorCode::ImproperFormula:
    case ErrorCode::UnknownConstant:
    case ErrorCode::FormatError:
    case ErrorCode::BudgetExceeded:
    case ErrorCode::OutsideModalFragment: return kParse;
    default: return kFailed;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification kernel for justification logic with a truth predicate"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string report_path;
  app.add_option("--report", report_path, "Write a JSON report to this path");

  std::ostringstream out;
  json report;
  int code = kOk;

  std::string file, file2, system = "AX4_AXNEC", out_path, world = "w0", expr, schema, wtext, assign;
  std::vector<std::string> props, justs;
  std::string cname, vname, phi_text, psi_text, cond_kind = "four", preset_name;
  int depth = 2, nworlds = 3;
  std::size_t samples = 50;
  uint64_t seed = 1;

  auto decl_flags = [&](CLI::App* c) {
    c->add_option("--prop", props, "Declare a propositional constant");
    c->add_option("--just", justs, "Declare a justification constant");
  };
  auto decls = [&] {
    Decls d;
    for (auto& p : props) d.add_prop(p);
    for (auto& j : justs) d.add_just(j);
    return d;
  };

  auto* c_parse = app.add_subcommand("parse", "Parse formulas and print their canonical text");
  c_parse->add_option("file", file, "Formula file");
  c_parse->add_option("-e,--expr", expr, "Formula text");
  decl_flags(c_parse);

  auto* c_elab = app.add_subcommand("elaborate", "Print the axiom instance for a schema and witnesses");
  c_elab->add_option("schema", schema)->required();
  c_elab->add_option("witnesses", wtext)->required();
  decl_flags(c_elab);

  auto* c_check = app.add_subcommand("check", "Check a derivation");
  c_check->add_option("proof", file)->required();
  c_check->add_option("--system", system, "Override the proof's system");

  auto* c_genc = app.add_subcommand("genc", "Generalize a constant or variable of a derivation");
  c_genc->add_option("proof", file)->required();
  c_genc->add_option("--const", cname, "Constant or variable to generalize")->required();
  c_genc->add_option("--var", vname, "Fresh bound variable")->required();
  c_genc->add_option("--out", out_path);

  auto* c_nec = app.add_subcommand("nec", "Necessitate a hypothesis-free derivation");
  c_nec->add_option("proof", file)->required();
  c_nec->add_option("--out", out_path);

  auto* c_k = app.add_subcommand("derive-k", "Derive box(phi -> psi) -> (box phi -> box psi) in AX");
  c_k->add_option("--phi", phi_text)->required();
  c_k->add_option("--psi", psi_text)->required();
  c_k->add_option("--out", out_path);
  decl_flags(c_k);

  auto* c_val = app.add_subcommand("validate", "Validate a finite model");
  c_val->add_option("model", file)->required();

  auto* c_eval = app.add_subcommand("eval", "Evaluate formulas in a finite model");
  c_eval->add_option("model", file)->required();
  c_eval->add_option("formulas", file2);
  c_eval->add_option("-e,--expr", expr, "Formula text");
  c_eval->add_option("--assign", assign, "Assignment such as 'x0=t v1=l'");

  auto* c_sets = app.add_subcommand("sets", "Print the POSSIBLE and IMPOSSIBLE value sets");
  c_sets->add_option("model", file)->required();

  auto* c_cond = app.add_subcommand("cond", "Check a truth condition on a model");
  c_cond->add_option("model", file)->required();
  c_cond->add_option("--condition", cond_kind, "four, e or axnec")
      ->check(CLI::IsMember({"four", "e", "axnec"}));
  c_cond->add_option("--samples", samples, "Axiom instances for axnec");
  c_cond->add_option("--seed", seed);

  auto* c_tr = app.add_subcommand("translate", "Translate a frame world into the four-valued model");
  c_tr->add_option("frame", file)->required();
  c_tr->add_option("--world", world);
  c_tr->add_option("--system", system);
  c_tr->add_option("--out", out_path, "Write the model file here");

  auto* c_audit = app.add_subcommand("audit", "Compare frame and model verdicts on a formula corpus");
  c_audit->add_option("frame", file)->required();
  c_audit->add_option("--world", world);
  c_audit->add_option("--depth", depth, "Corpus height")->check(CLI::Range(0, 3));
  c_audit->add_option("--corpus", file2, "Formula file instead of the generated corpus");
  c_audit->add_option("--system", system);

  auto* c_search = app.add_subcommand("search", "Search for a preorder countermodel");
  c_search->add_option("formulas", file);
  c_search->add_option("-e,--expr", expr, "Formula text");
  c_search->add_option("--worlds", nworlds, "World budget");

  auto* c_preset = app.add_subcommand("preset", "Print a preset model file");
  c_preset->add_option("name", preset_name)->required()->check(CLI::IsMember({"s4", "extensional"}));
  c_preset->add_option("--system", system);
  c_preset->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  auto formulas_from = [&](const std::string& path, const std::string& text, const Decls& d) {
    if (!text.empty()) return std::vector<Formula>{parse_formula(text, d)};
    if (path.empty()) throw Usage("no formula given");
    return read_formulas(slurp(path), d);
  };
  auto emit_or_write = [&](const std::string& text) {
    if (out_path.empty())
      out << text;
    else
      spill(out_path, text);
  };

  try {
    if (c_parse->parsed()) {
      report["formulas"] = json::array();
      for (auto& f : formulas_from(file, expr, decls())) {
        out << render(f) << "\n";
        report["formulas"].push_back(render(f));
      }
    } else if (c_elab->parsed()) {
      auto id = parse_schema_id(schema);
      if (!id) throw Usage("unknown schema " + schema);
      auto f = build_instance(*id, parse_witnesses(wtext, decls()));
      out << render(f) << "\n";
      report["instance"] = render(f);
    } else if (c_check->parsed()) {
      auto d = parse_proof(slurp(file));
      if (c_check->count("--system")) d.system = system_of(system);
      auto v = check(d);
      report["accepted"] = v.accepted;
      if (v.accepted) {
        out << "ACCEPTED " << render(d.conclusion()) << "\n";
      } else {
        out << "REJECTED step " << v.first_failure->first << ": " << v.first_failure->second << "\n";
        report["step"] = v.first_failure->first;
        report["reason"] = v.first_failure->second;
        code = kFailed;
      }
    } else if (c_genc->parsed()) {
      auto d = parse_proof(slurp(file));
      auto g = generalize_constant(d, parse_sym(cname, d), parse_sym(vname, d));
      emit_or_write(print_proof(g));
      report["conclusion"] = render(g.conclusion());
      report["steps"] = g.steps.size();
    } else if (c_nec->parsed()) {
      auto n = necessitate(parse_proof(slurp(file)));
      emit_or_write(print_proof(n));
      report["conclusion"] = render(n.conclusion());
      report["steps"] = n.steps.size();
    } else if (c_k->parsed()) {
      auto k = derive_K(parse_formula(phi_text, decls()), parse_formula(psi_text, decls()));
      emit_or_write(print_proof(k));
      report["conclusion"] = render(k.conclusion());
      report["steps"] = k.steps.size();
    } else if (c_val->parsed()) {
      auto r = validate(load_model(file));
      out << r.render();
      report["pass"] = r.pass();
      report["failures"] = json::array();
      for (auto& f : r.failures) report["failures"].push_back({{"clause", f.clause}, {"witness", f.witness}});
      report["warnings"] = r.warnings;
      if (!r.pass()) code = kInvalid;
    } else if (c_eval->parsed()) {
      auto m = load_model(file);
      auto r = validate(m);
      if (!r.pass()) {
        out << r.render();
        code = kInvalid;
      } else {
        auto g = parse_assignment(m, assign);
        Evaluator ev(m);
        report["results"] = json::array();
        for (auto& f : formulas_from(file2, expr, m.decls())) {
          std::size_t v = ev.formula(f, g);
          bool t = m.is_true[v];
          out << render(f) << "\t" << m.values[v] << "\t" << (t ? "TRUE" : "NOT TRUE") << "\n";
          report["results"].push_back({{"formula", render(f)}, {"value", m.values[v]}, {"true", t}});
        }
      }
    } else if (c_sets->parsed()) {
      auto m = load_model(file);
      auto s = derived_sets(m);
      out << "POSSIBLE " << value_list(m, s.possible) << "\nIMPOSSIBLE " << value_list(m, s.impossible) << "\n";
      for (auto* key : {"possible", "impossible"}) report[key] = json::array();
      for (auto v : s.possible) report["possible"].push_back(m.values[v]);
      for (auto v : s.impossible) report["impossible"].push_back(m.values[v]);
    } else if (c_cond->parsed()) {
      auto m = load_model(file);
      Condition c;
      c.kind = cond_kind == "four" ? ConditionKind::Four : cond_kind == "e" ? ConditionKind::E : ConditionKind::AxNecSample;
      c.samples = samples;
      c.seed = seed;
      auto r = check_condition(m, c);
      out << (r.pass() ? "Pass" : "Fail " + r.failures.front().witness) << "\n";
      report["pass"] = r.pass();
      report["failures"] = json::array();
      for (auto& f : r.failures) report["failures"].push_back({{"clause", f.clause}, {"witness", f.witness}});
      if (!r.pass()) code = kFailed;
    } else if (c_tr->parsed()) {
      auto k = load_frame(file);
      auto [m, beta] = translate(k, world_of(k, world), system_of(system));
      emit_or_write(print_model(m));
      out << "assignment " << render_assignment(m, beta) << "\n";
      report["assignment"] = render_assignment(m, beta);
    } else if (c_audit->parsed()) {
      auto k = load_frame(file);
      auto corpus = file2.empty() ? modal_corpus(2, depth) : read_formulas(slurp(file2), Decls{});
      auto r = audit(k, world_of(k, world), corpus, system_of(system));
      out << r.render() << "disagreements " << r.disagreements() << " of " << r.entries.size() << "\n";
      report["entries"] = json::array();
      for (auto& e : r.entries)
        report["entries"].push_back({{"formula", render(e.f)},
                                     {"model", e.model_verdict},
                                     {"kripke", e.kripke_verdict},
                                     {"agree", e.agree()}});
      report["disagreements"] = r.disagreements();
    } else if (c_search->parsed()) {
      report["results"] = json::array();
      for (auto& f : formulas_from(file, expr, Decls{})) {
        auto r = search_countermodel(f, nworlds);
        json j = {{"formula", render(f)}, {"found", r.has_value()}};
        if (r) {
          out << render(f) << "\tREFUTED at " << r->first.worlds[r->second] << "\n" << print_frame(r->first);
          j["world"] = r->first.worlds[r->second];
          j["frame"] = print_frame(r->first);
          code = kFailed;
        } else {
          out << render(f) << "\tNONE up to " << nworlds << " worlds\n";
        }
        report["results"].push_back(j);
      }
    } else if (c_preset->parsed()) {
      auto m = preset_name == "s4" ? preset_s4_four_valued(system_of(system)) : preset_extensional();
      emit_or_write(print_model(m));
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    report["error"] = e.what();
    code = exit_for(e.code());
  } catch (const Usage& e) {
    std::cerr << e.what() << "\n";
    report["error"] = e.what();
    code = kParse;
  }

  std::cout << out.str();
  if (!report_path.empty()) {
    report["command"] = app.get_subcommands().front()->get_name();
    report["exit"] = code;
    report["output"] = out.str();
    try {
      spill(report_path, report.dump(2) + "\n");
    } catch (const Usage& e) {
      std::cerr << e.what() << "\n";
      return kParse;
    }
  }
  return code;
}
