// Extension module qbag._core. Structured results cross the boundary as JSON
// text and are decoded on the Python side, so the dict layouts match the CLI's
// --json output exactly.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qbag/contribution.hpp"
#include "qbag/fixtures.hpp"
#include "qbag/io.hpp"
#include "qbag/matrix.hpp"
#include "qbag/principles.hpp"
#include "qbag/reproduce.hpp"
#include "qbag/review.hpp"
#include "qbag/semantics.hpp"

namespace py = pybind11;
using namespace qbag;

namespace {

IdSet id_set(const std::vector<std::string>& ids) {
  IdSet out;
  for (const auto& s : ids) out.insert(ArgumentId(s));
  return out;
}

ShapleyOptions shapley_options(bool monte_carlo, std::size_t samples, std::uint64_t seed,
                               std::optional<std::uint64_t> budget) {
  ShapleyOptions o;
  o.monte_carlo = monte_carlo;
  o.samples = samples;
  o.seed = seed;
  if (budget) o.budget = *budget;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  // Python-side exception class, installed by qbag/__init__.py before first use.
  static py::object error_type = py::none();
  m.def("_set_error_type", [](py::object t) { error_type = std::move(t); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      if (error_type.is_none()) {
        PyErr_SetString(PyExc_RuntimeError, e.what());
        return;
      }
      py::object inst = error_type(e.what(), to_string(e.code()));
      PyErr_SetObject(error_type.ptr(), inst.ptr());
    }
  });

  py::class_<Qbag>(m, "Graph")
      .def(py::init([](const std::string& json_text) { return parse_graph(json_text); }), py::arg("json_text"))
      .def_static("fixture", [](const std::string& id) { return fixture(id).graph; }, py::arg("id"))
      .def("to_json", &dump_graph)
      .def("ids", [](const Qbag& g) {
        std::vector<std::string> out;
        for (const auto& id : g.ids()) out.push_back(id.str());
        return out;
      })
      .def("initial_strength", [](const Qbag& g, const std::string& id) { return g.initial_strength(ArgumentId(id)); })
      .def("validate", [](const Qbag& g) { require_valid(g); })
      .def("with_initial_strength",
           [](const Qbag& g, const std::string& id, double v) { return set_initial_strength(g, ArgumentId(id), v); })
      .def("__len__", [](const Qbag& g) { return g.arguments().size(); });

  m.def("fixture_ids", [] {
    std::vector<std::string> out;
    for (const auto& f : fixture_corpus()) out.push_back(f.id);
    return out;
  });
  m.def("fixture_topic", [](const std::string& id) -> std::optional<std::string> {
    const auto& t = fixture(id).topic;
    return t ? std::optional<std::string>(t->str()) : std::nullopt;
  });

  m.def("normalize_semantics", [](const std::string& spec) { return semantics_to_json(parse_semantics(spec)).dump(); });

  m.def(
      "evaluate",
      [](const Qbag& g, const std::string& spec) {
        std::map<std::string, double> out;
        for (const auto& [id, v] : evaluate(g, parse_semantics(spec))) out[id.str()] = v;
        return out;
      },
      py::arg("graph"), py::arg("semantics"));

  m.def(
      "derivatives",
      [](const Qbag& g, const std::string& spec, const std::string& seed) {
        std::map<std::string, std::pair<double, double>> out;
        for (const auto& [id, d] : evaluate_dual(g, parse_semantics(spec), ArgumentId(seed))) {
          out[id.str()] = {d.value, d.derivative};
        }
        return out;
      },
      py::arg("graph"), py::arg("semantics"), py::arg("seed"));

  m.def(
      "contribution",
      [](const Qbag& g, const std::string& spec, const std::string& fn, const std::vector<std::string>& contributor,
         const std::string& topic, std::optional<std::vector<std::vector<std::string>>> partition, bool monte_carlo,
         std::size_t samples, std::uint64_t seed, std::optional<std::uint64_t> budget) {
        const auto sem = parse_semantics(spec);
        const auto opts = shapley_options(monte_carlo, samples, seed, budget);
        if (partition) {
          Partition p;
          for (const auto& b : *partition) p.push_back(id_set(b));
          return contribution_to_json(pctrb_shapley(g, sem, id_set(contributor), p, ArgumentId(topic), opts)).dump();
        }
        return contribution_to_json(
                   sctrb(set_function_from_string(fn), g, sem, {id_set(contributor), ArgumentId(topic)}, opts))
            .dump();
      },
      py::arg("graph"), py::arg("semantics"), py::arg("fn"), py::arg("contributor"), py::arg("topic"),
      py::arg("partition") = std::nullopt, py::arg("monte_carlo") = false, py::arg("samples") = 20000,
      py::arg("seed") = 20240601, py::arg("budget") = std::nullopt);

  m.def(
      "check_principle",
      [](const std::string& principle, const std::string& fn, const Qbag& g, const std::string& spec,
         const std::string& topic) {
        const auto sem = parse_semantics(spec);
        const auto v = check_principle(principle_from_string(principle),
                                       builtin_function(set_function_from_string(fn)), g, sem, ArgumentId(topic));
        return verdict_to_json(v, fn, sem.label()).dump();
      },
      py::arg("principle"), py::arg("fn"), py::arg("graph"), py::arg("semantics"), py::arg("topic"));

  m.def("principle_names", [] {
    std::vector<std::string> out;
    for (auto p : all_principles()) out.emplace_back(to_string(p));
    return out;
  });
  m.def("function_names", [] {
    std::vector<std::string> out;
    for (auto k : all_set_functions()) out.emplace_back(to_string(k));
    return out;
  });

  m.def(
      "review_contributions",
      [](const Qbag& text_graph, const std::string& manifest_json, const std::vector<std::string>& focus) {
        const auto model = aspect_model_from_json(text_graph, Json::parse(manifest_json));
        return rows_to_json(report_contributions(model, id_set(focus))).dump();
      },
      py::arg("text_graph"), py::arg("manifest"), py::arg("focus"));

  m.def(
      "reproduce",
      [](const std::string& id) {
        Json arr = Json::array();
        for (const auto& c : reproduce_fixture(id)) arr.push_back(claim_to_json(c));
        return arr.dump();
      },
      py::arg("fixture"));

  m.def("run_matrix", [] {
    std::vector<SemanticsSpec> specs(presets().begin(), presets().end());
    MatrixReport r;
    {
      py::gil_scoped_release release;
      r = run_matrix(fixture_corpus(), tabulated_functions(), specs, tabulated_principles());
    }
    return matrix_to_json(r).dump();
  });
}
