#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "plantflow/datasets.hpp"
#include "plantflow/errors.hpp"
#include "plantflow/fault_tree.hpp"
#include "plantflow/flow.hpp"
#include "plantflow/reliability.hpp"

namespace py = pybind11;
using namespace plantflow;

namespace {

ReliabilityQuery make_query(const NetworkDocument& doc, std::optional<double> target, std::uint64_t samples,
                            std::uint64_t seed, const std::string& semantics, std::optional<std::string> backend,
                            unsigned workers) {
  ReliabilityQuery q;
  q.target_flow = target.value_or(doc.analysis.target_flow);
  q.n_samples = samples;
  q.seed = seed;
  q.mode = parse_semantics(semantics);
  q.backend = backend ? parse_backend(*backend)
                      : (q.mode == SemanticsMode::station_throughput ? Backend::maxflow : Backend::lp);
  q.workers = workers;
  return q;
}

py::dict report_dict(const ReliabilityReport& r) {
  py::dict d;
  d["p_fail_hat"] = r.p_fail_hat;
  d["std_error"] = r.std_error;
  d["failures"] = r.failures;
  d["samples"] = r.n_samples;
  d["seed"] = r.seed;
  d["target_flow"] = r.target_flow;
  d["semantics"] = std::string(to_string(r.mode));
  d["backend"] = std::string(to_string(r.backend));
  return d;
}

}  // namespace

PYBIND11_MODULE(_plantflow, m) {
  m.doc() = "Maximum processable flow and reliability of staged process plants";

  auto error = py::register_exception<Error>(m, "PlantflowError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<MappingError>(m, "MappingError", error.ptr());
  py::register_exception<StructuralError>(m, "StructuralError", error.ptr());
  py::register_exception<UnsupportedCombination>(m, "UnsupportedCombination", error.ptr());

  py::class_<NetworkDocument>(m, "NetworkDocument")
      .def_readonly("name", &NetworkDocument::name)
      .def_readonly("notes", &NetworkDocument::notes)
      .def_property_readonly("node_count", [](const NetworkDocument& d) { return d.network.node_count; })
      .def_property_readonly("stage_count", [](const NetworkDocument& d) { return d.network.stage_count; })
      .def_property_readonly("edge_count", [](const NetworkDocument& d) { return d.network.edges.size(); })
      .def_property_readonly("component_ids",
                             [](const NetworkDocument& d) {
                               std::vector<std::string> ids;
                               for (const auto& rv : d.model.rvs) ids.push_back(rv.id);
                               return ids;
                             })
      .def_property_readonly("target_flow", [](const NetworkDocument& d) { return d.analysis.target_flow; })
      .def("to_json", [](const NetworkDocument& d) { return save_network(d); })
      .def("__eq__", [](const NetworkDocument& a, const NetworkDocument& b) { return a == b; })
      .def("__repr__", [](const NetworkDocument& d) {
        return "<NetworkDocument " + d.name + ": " + std::to_string(d.network.node_count) + " nodes, " +
               std::to_string(d.network.edges.size()) + " edges>";
      });

  m.def("builtin_names", &builtin_names);
  m.def("builtin", [](const std::string& name) { return builtin(name); }, py::arg("name"));
  m.def("load_network", [](const std::string& text) { return load_network(text); }, py::arg("text"));
  m.def("load_network_file", &load_network_file, py::arg("path"));
  m.def("save_network_file", &save_network_file, py::arg("doc"), py::arg("path"));

  m.def(
      "max_flow",
      [](const NetworkDocument& doc, const std::vector<std::string>& failed, const std::string& semantics,
         std::optional<std::string> backend) {
        const auto mode = parse_semantics(semantics);
        const Backend b = backend ? parse_backend(*backend)
                                  : (mode == SemanticsMode::station_throughput ? Backend::maxflow : Backend::lp);
        const auto sol = max_processable_flow(doc.network, doc.model,
                                              ComponentAssignment::with_failed(doc.model, failed), mode, b);
        py::dict edges;
        for (std::size_t e = 0; e < doc.network.edges.size(); ++e) edges[py::str(doc.network.edges[e].id)] = sol.edge_flows[e];
        py::dict d;
        d["max_flow"] = sol.max_flow;
        d["edge_flows"] = edges;
        d["backend"] = std::string(to_string(b));
        return d;
      },
      py::arg("doc"), py::arg("failed") = std::vector<std::string>{}, py::arg("semantics") = "station-throughput",
      py::arg("backend") = py::none());

  m.def(
      "failure_probability",
      [](const NetworkDocument& doc, std::optional<double> target, std::uint64_t samples, std::uint64_t seed,
         const std::string& semantics, std::optional<std::string> backend, unsigned workers) {
        const auto q = make_query(doc, target, samples, seed, semantics, backend, workers);
        ReliabilityReport r;
        {
          py::gil_scoped_release release;
          r = estimate_failure_probability(doc.network, doc.model, q);
        }
        return report_dict(r);
      },
      py::arg("doc"), py::arg("target") = py::none(), py::arg("samples") = 100000, py::arg("seed") = 42,
      py::arg("semantics") = "station-throughput", py::arg("backend") = py::none(), py::arg("workers") = 1);

  m.def(
      "birnbaum_importance",
      [](const NetworkDocument& doc, std::optional<double> target, std::uint64_t samples, std::uint64_t seed,
         const std::string& semantics, std::optional<std::string> backend, unsigned workers,
         const std::string& pairing) {
        const auto q = make_query(doc, target, samples, seed, semantics, backend, workers);
        const auto p = parse_pairing(pairing);
        ImportanceReport rep;
        {
          py::gil_scoped_release release;
          rep = birnbaum_importance(doc.network, doc.model, q, p);
        }
        py::list comps;
        for (std::size_t i : rep.ranking) {
          const auto& c = rep.components[i];
          py::dict d;
          d["id"] = c.rv_id;
          d["birnbaum"] = c.birnbaum;
          d["std_error"] = c.std_error;
          comps.append(d);
        }
        py::dict out;
        out["system"] = report_dict(rep.system);
        out["ranking"] = comps;
        out["pairing"] = std::string(to_string(rep.pairing));
        return out;
      },
      py::arg("doc"), py::arg("target") = py::none(), py::arg("samples") = 10000, py::arg("seed") = 42,
      py::arg("semantics") = "station-throughput", py::arg("backend") = py::none(), py::arg("workers") = 1,
      py::arg("pairing") = "common");

  m.def(
      "didactic_fault_tree_probability",
      [](std::optional<double> p_fail) {
        auto doc = builtin("didactic");
        if (p_fail) {
          for (auto& rv : doc.model.rvs) rv.p_fail = *p_fail;
        }
        return failure_probability(didactic_fault_tree(), doc.model);
      },
      py::arg("p_fail") = py::none());
}
