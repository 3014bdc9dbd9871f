#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ejk/kripke.hpp"
#include "ejk/proofs.hpp"

namespace py = pybind11;
using namespace ejk;

namespace {

Decls make_decls(const std::vector<std::string>& props, const std::vector<std::string>& justs) {
  Decls d;
  for (auto& p : props) d.add_prop(p);
  for (auto& j : justs) d.add_just(j);
  return d;
}

SchemaId schema_of(const std::string& s) {
  auto id = parse_schema_id(s);
  if (!id) throw py::value_error("unknown schema " + s);
  return *id;
}

SystemId system_of(const std::string& s) {
  auto id = parse_system_id(s);
  if (!id) throw py::value_error("unknown system " + s);
  return *id;
}

Sym sym_of(const std::string& s, const Derivation& d) {
  if (s.size() > 1 && (s[0] == 'x' || s[0] == 'v') && s.find_first_not_of("0123456789", 1) == std::string::npos) {
    auto i = static_cast<uint32_t>(std::stoul(s.substr(1)));
    return s[0] == 'x' ? Sym::p(i) : Sym::j(i);
  }
  Decls decls;
  for (auto& h : d.hypotheses) decls.absorb(h);
  for (auto& st : d.steps) decls.absorb(st.f);
  if (decls.props.count(s)) return Sym::d(s);
  if (decls.justs.count(s)) return Sym::c(s);
  throw Error(ErrorCode::ConstantAbsent, s + " does not occur in the derivation");
}

py::list findings(const std::vector<Finding>& fs) {
  py::list out;
  for (auto& f : fs) out.append(py::make_tuple(f.clause, f.witness));
  return out;
}

std::vector<std::string> names(const FiniteModel& m, const std::vector<std::size_t>& v) {
  std::vector<std::string> out;
  for (auto i : v) out.push_back(m.values[i]);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Verification kernel for justification logic with a truth predicate";

  static py::exception<Error> exc(m, "EjkError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object err = py::handle(exc.ptr())(e.what());
      err.attr("code") = error_name(e.code());
      PyErr_SetObject(exc.ptr(), err.ptr());
    }
  });

  py::class_<Formula>(m, "Formula")
      .def("__str__", [](const Formula& f) { return render(f); })
      .def("__repr__", [](const Formula& f) { return "Formula(" + render(f) + ")"; })
      .def("__eq__", [](const Formula& a, const Formula& b) { return a == b; })
      .def("__hash__", &Formula::hash)
      .def("size", &Formula::size)
      .def("normalize", [](const Formula& f) { return normalize(f); })
      .def("alpha_eq", [](const Formula& a, const Formula& b) { return alpha_eq(a, b); })
      .def("refers_to", [](const Formula& a, const Formula& b) { return syn_ref(a, b); },
           "True when self syntactically refers into the argument");

  m.def(
      "parse", [](const std::string& text, const std::vector<std::string>& props, const std::vector<std::string>& justs) {
        return parse_formula(text, make_decls(props, justs));
      },
      py::arg("text"), py::arg("props") = std::vector<std::string>{}, py::arg("justs") = std::vector<std::string>{});

  m.def(
      "substitute",
      [](const Formula& f, const std::string& subst, const std::vector<std::string>& props,
         const std::vector<std::string>& justs) { return apply(f, parse_subst(subst, make_decls(props, justs))); },
      py::arg("formula"), py::arg("subst"), py::arg("props") = std::vector<std::string>{},
      py::arg("justs") = std::vector<std::string>{});

  m.def("schemas", [] {
    std::vector<std::string> out;
    for (auto id : all_schemas()) out.push_back(schema_name(id));
    return out;
  });

  m.def(
      "build_instance",
      [](const std::string& schema, const std::string& witnesses, const std::vector<std::string>& props,
         const std::vector<std::string>& justs) {
        return build_instance(schema_of(schema), parse_witnesses(witnesses, make_decls(props, justs)));
      },
      py::arg("schema"), py::arg("witnesses"), py::arg("props") = std::vector<std::string>{},
      py::arg("justs") = std::vector<std::string>{});

  m.def(
      "recognize",
      [](const Formula& f, const std::string& system) -> py::object {
        auto r = recognize(f, system_of(system));
        if (!r) return py::none();
        return py::make_tuple(schema_name(r->id), render_witnesses(r->w), r->exact);
      },
      py::arg("formula"), py::arg("system") = "AX");

  m.def(
      "is_axiom", [](const Formula& f, const std::string& system) { return is_axiom(f, system_of(system)); },
      py::arg("formula"), py::arg("system") = "AX");

  m.def("check_proof", [](const std::string& text) -> py::tuple {
    auto v = check(parse_proof(text));
    if (v.accepted) return py::make_tuple(true, py::none(), py::none());
    return py::make_tuple(false, v.first_failure->first, v.first_failure->second);
  });

  m.def("necessitate", [](const std::string& text) { return print_proof(necessitate(parse_proof(text))); });

  m.def("generalize_constant", [](const std::string& text, const std::string& k, const std::string& w) {
    auto d = parse_proof(text);
    return print_proof(generalize_constant(d, sym_of(k, d), sym_of(w, d)));
  });

  m.def(
      "derive_k",
      [](const std::string& phi, const std::string& psi, const std::vector<std::string>& props,
         const std::vector<std::string>& justs) {
        auto d = make_decls(props, justs);
        return print_proof(derive_K(parse_formula(phi, d), parse_formula(psi, d)));
      },
      py::arg("phi"), py::arg("psi"), py::arg("props") = std::vector<std::string>{},
      py::arg("justs") = std::vector<std::string>{});

  py::class_<FiniteModel>(m, "Model")
      .def_static("parse", [](const std::string& text) { return parse_model(text); })
      .def_static("s4", [](const std::string& system) { return preset_s4_four_valued(system_of(system)); },
                  py::arg("system") = "AX4_AXNEC")
      .def_static("extensional", [] { return preset_extensional(); })
      .def("__str__", [](const FiniteModel& fm) { return print_model(fm); })
      .def_property_readonly("values", [](const FiniteModel& fm) { return fm.values; })
      .def("validate",
           [](const FiniteModel& fm) {
             auto r = validate(fm);
             return py::make_tuple(findings(r.failures), r.warnings);
           })
      .def(
          "eval",
          [](const FiniteModel& fm, const std::string& formula, const std::string& assignment) {
            auto f = parse_formula(formula, fm.decls());
            auto v = eval(fm, parse_assignment(fm, assignment), f);
            return py::make_tuple(fm.values[v], static_cast<bool>(fm.is_true[v]));
          },
          py::arg("formula"), py::arg("assignment") = "")
      .def("derived_sets",
           [](const FiniteModel& fm) {
             auto s = derived_sets(fm);
             return py::make_tuple(names(fm, s.possible), names(fm, s.impossible));
           })
      .def(
          "condition",
          [](const FiniteModel& fm, const std::string& kind, std::size_t samples, uint64_t seed) {
            Condition c;
            if (kind == "four")
              c.kind = ConditionKind::Four;
            else if (kind == "e")
              c.kind = ConditionKind::E;
            else if (kind == "axnec")
              c.kind = ConditionKind::AxNecSample;
            else
              throw py::value_error("unknown condition " + kind);
            c.samples = samples;
            c.seed = seed;
            return findings(check_condition(fm, c).failures);
          },
          py::arg("kind"), py::arg("samples") = 50, py::arg("seed") = 1);

  py::class_<KripkeModel>(m, "Frame")
      .def_static("parse", [](const std::string& text) { return parse_frame(text); })
      .def("__str__", [](const KripkeModel& k) { return print_frame(k); })
      .def_property_readonly("worlds", [](const KripkeModel& k) { return k.worlds; })
      .def("sat",
           [](const KripkeModel& k, const std::string& world, const Formula& f) {
             std::size_t w = k.world_index(world);
             if (w == kUnset) throw py::value_error("no world " + world);
             return sat(k, w, f);
           })
      .def(
          "translate",
          [](const KripkeModel& k, const std::string& world, const std::string& system) {
            std::size_t w = k.world_index(world);
            if (w == kUnset) throw py::value_error("no world " + world);
            auto [fm, beta] = translate(k, w, system_of(system));
            return py::make_tuple(fm, render_assignment(fm, beta));
          },
          py::arg("world"), py::arg("system") = "AX4_AXNEC")
      .def(
          "audit",
          [](const KripkeModel& k, const std::string& world, int depth) {
            std::size_t w = k.world_index(world);
            if (w == kUnset) throw py::value_error("no world " + world);
            py::list out;
            for (auto& e : audit(k, w, modal_corpus(2, depth)).entries)
              out.append(py::make_tuple(render(e.f), e.model_verdict, e.kripke_verdict, e.agree()));
            return out;
          },
          py::arg("world"), py::arg("depth") = 2);

  m.def(
      "search_countermodel",
      [](const Formula& f, int n_max) -> py::object {
        auto r = search_countermodel(f, n_max);
        if (!r) return py::none();
        return py::make_tuple(r->first, r->first.worlds[r->second]);
      },
      py::arg("formula"), py::arg("n_max") = 3);
}
