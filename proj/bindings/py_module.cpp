// Python surface: the operations a notebook actually wants — parsing,
// classification, the transforms, and the bounded checks. Reports cross the
// boundary as plain dicts/lists built from the JSON renderings.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <folab/classify.hpp>
#include <folab/gallery.hpp>
#include <folab/json_io.hpp>
#include <folab/semantics.hpp>
#include <folab/syntax.hpp>
#include <folab/transforms.hpp>
#include <folab/verify.hpp>

namespace py = pybind11;
using namespace folab;

namespace {

py::object to_py(const json& j) {
  switch (j.type()) {
    case json::value_t::null:
      return py::none();
    case json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case json::value_t::number_integer:
    case json::value_t::number_unsigned:
      return py::int_(j.get<long long>());
    case json::value_t::number_float:
      return py::float_(j.get<double>());
    case json::value_t::string:
      return py::str(j.get<std::string>());
    case json::value_t::array: {
      py::list out;
      for (const auto& e : j) out.append(to_py(e));
      return out;
    }
    case json::value_t::object: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = to_py(v);
      return out;
    }
    default:
      return py::none();
  }
}

std::vector<Variable> to_vars(const std::vector<int>& xs) {
  std::vector<Variable> out;
  for (int i : xs) out.push_back(Variable{i});
  return out;
}

py::object outcome_py(const CheckOutcome& o) { return to_py(outcome_to_json(o)); }

py::dict membership_py(const MembershipResult& r) {
  py::dict d;
  d["member"] = r.member;
  d["reason"] = r.reason;
  d["levels"] = r.levels ? py::object(py::str(r.levels->str())) : py::none();
  return d;
}

}  // namespace

PYBIND11_MODULE(folab, m) {
  m.doc() = "first-order fragment laboratory: formulas, fragment membership, "
            "marker transforms, bounded model checks";

  py::class_<Formula>(m, "Formula")
      .def("__str__", [](const Formula& f) { return print(f); })
      .def("__repr__",
           [](const Formula& f) { return "Formula('" + print(f) + "')"; })
      .def("__eq__",
           [](const Formula& a, const Formula& b) { return a == b; },
           py::is_operator())
      .def("__hash__",
           [](const Formula& f) { return py::hash(py::str(print(f))); });

  py::class_<Structure>(m, "Structure")
      .def(py::init([](int domain) {
             Structure s;
             s.domain = domain;
             return s;
           }),
           py::arg("domain"))
      .def_readonly("domain", &Structure::domain)
      .def("add_relation", &Structure::add_relation)
      .def("add_tuple", &Structure::add_tuple)
      .def("as_dict",
           [](const Structure& s) { return to_py(structure_to_json(s)); })
      .def("__eq__",
           [](const Structure& a, const Structure& b) { return a == b; },
           py::is_operator())
      .def("__repr__",
           [](const Structure& s) { return "Structure(" + render_structure(s) + ")"; });

  py::class_<Sandwich>(m, "Sandwich")
      .def_readonly("gamma", &Sandwich::gamma)
      .def_readonly("chi", &Sandwich::chi)
      .def_readonly("hidden_exists", &Sandwich::hidden_exists)
      .def_readonly("hidden_forall", &Sandwich::hidden_forall)
      .def_readonly("target", &Sandwich::target)
      .def("__repr__",
           [](const Sandwich& s) { return sandwich_record(s); });

  py::register_exception<Error>(m, "FolabError");
  py::register_exception<NonInjectiveError>(m, "NonInjectiveRenaming");

  m.def("parse", &parse, py::arg("text"));
  m.def("free_vars", [](const Formula& f) {
    std::set<int> fv = free_vars(f);
    return std::vector<int>(fv.begin(), fv.end());
  });
  m.def("gfv", &gfv);
  m.def("is_clean", &is_clean);
  m.def("cleanify", &cleanify);
  m.def("desugar", &desugar);

  m.def("fragments", [] {
    std::vector<std::string> out;
    for (FragmentId id : all_fragments()) out.push_back(fragment_name(id));
    return out;
  });
  m.def("membership",
        [](const Formula& f, const std::string& fragment) {
          std::optional<FragmentId> id = fragment_from_name(fragment);
          if (!id) throw Error(Errc::bad_argument, "unknown fragment " + fragment);
          return membership_py(fragment_membership(f, *id));
        },
        py::arg("formula"), py::arg("fragment"));
  m.def("classify", [](const Formula& f) {
    return to_py(classification_report_json(classify_all(f)));
  });

  m.def("bind",
        [](const Formula& f, const std::vector<int>& ys,
           const std::vector<std::string>& preds) {
          return folab::bind(f, to_vars(ys), preds);
        },
        py::arg("formula"), py::arg("vars"), py::arg("preds"));
  m.def("relativize", [](const Formula& f) {
    std::vector<std::pair<int, std::string>> used;
    Formula out = relativize(f, &used);
    return py::make_tuple(out, used);
  });
  m.def("thm31_step", &thm31_step, py::arg("formula"), py::arg("target_pred"),
        py::arg("primed_pred"));
  m.def("bindexp_sandwich",
        [](const Formula& f, const std::vector<int>& xs,
           const std::vector<int>& ys, int z) {
          return bindexp_sandwich(f, to_vars(xs), to_vars(ys), Variable{z});
        },
        py::arg("formula"), py::arg("xs"), py::arg("ys"), py::arg("z"));
  m.def("cq_sandwich",
        [](const Formula& f, int x, const std::vector<int>& ys) {
          return cq_sandwich(f, Variable{x}, to_vars(ys));
        },
        py::arg("formula"), py::arg("x"), py::arg("ys"));
  m.def("shuffle_sandwich",
        [](const Formula& f, const std::map<int, int>& mapping) {
          VariableRenaming pi;
          pi.mapping = mapping;
          return shuffle_sandwich(f, pi);
        },
        py::arg("formula"), py::arg("mapping"));
  m.def("ucq_apply",
        [](const Formula& q,
           const std::map<std::string, std::pair<std::vector<int>, Formula>>&
               args) {
          AtomSubstitution subst;
          for (const auto& [name, pv] : args)
            subst[name] = AtomReplacement{to_vars(pv.first), pv.second};
          return ucq_apply(q, subst);
        },
        py::arg("query"), py::arg("args"));
  m.def("transitive_wrap", &transitive_wrap, py::arg("formula"), py::arg("r1"),
        py::arg("r2"));

  m.def("eval",
        [](const Structure& s, const std::map<int, int>& assignment,
           const Formula& f) { return eval(s, assignment, f); },
        py::arg("structure"), py::arg("assignment"), py::arg("formula"));
  m.def("entails",
        [](const Formula& phi, const Formula& psi, int max_size) {
          return outcome_py(entails_upto(phi, psi, Budget{max_size, 16}));
        },
        py::arg("phi"), py::arg("psi"), py::arg("max_size") = 3);
  m.def("equiv",
        [](const Formula& phi, const Formula& psi, int max_size) {
          return outcome_py(equiv_upto(phi, psi, Budget{max_size, 16}));
        },
        py::arg("phi"), py::arg("psi"), py::arg("max_size") = 3);
  m.def("sandwich_check",
        [](const Sandwich& s, int max_size) {
          return to_py(sandwich_report_to_json(sandwich_check(s, Budget{max_size, 16})));
        },
        py::arg("sandwich"), py::arg("max_size") = 3);

  m.def("gallery_ids", [] {
    std::vector<std::string> out;
    for (const GalleryItem& it : pristine_gallery().items()) out.push_back(it.id);
    return out;
  });
  m.def("gallery_formula",
        [](const std::string& id) { return pristine_gallery().formula(id); },
        py::arg("id"));
}
