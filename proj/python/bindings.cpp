#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dualgraph/games.hpp"
#include "dualgraph/harness.hpp"
#include "dualgraph/linial.hpp"
#include "dualgraph/structures.hpp"

namespace py = pybind11;
using namespace dualgraph;

namespace {

// JSON crosses the boundary as text; the Python wrapper decodes it.
py::tuple run(const std::string& config, unsigned jobs) {
  const auto cfg = config_from_json(Json::parse(config));
  ExperimentResult result;
  {
    py::gil_scoped_release release;
    result = run_experiment(cfg, jobs);
  }
  return py::make_tuple(records_jsonl(result.records), summary_csv(result.summary), result.exit_code());
}

std::string build(const std::string& network, const std::string& algorithm, std::uint64_t seed) {
  const auto cfg = config_from_json(Json{{"network", Json::parse(network)}, {"algorithm", Json::parse(algorithm)}});
  return graph_to_json(build_network(cfg.network, cfg.algorithm, seed)).dump();
}

py::dict verify(const std::string& graph, const IdSet& members, const std::string& structure) {
  const auto g = graph_from_json(Json::parse(graph));
  const auto ids = normalize_ids(members);
  const auto report = structure == "cds" ? verify_cds(g.reliable(), ids) : verify_mis(g.reliable(), ids);
  py::list violations;
  for (const auto& v : report.violations) violations.append(py::make_tuple(to_string(v.kind), v.a, v.b));
  py::dict out;
  out["valid"] = report.valid;
  out["size"] = report.size;
  out["violations"] = violations;
  return out;
}

py::tuple view_graph_chi(std::size_t t, std::size_t m) {
  const auto vg = build_view_graph(t, m);
  const auto chi = chromatic_number_exact(vg.graph());
  return py::make_tuple(chi.chromatic_number, chi.status == ChromaticResult::Status::exact, vg.vertex_count());
}

}  // namespace

PYBIND11_MODULE(_dualgraph, m) {
  m.doc() = "Dual graph radio network simulator core";
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  m.def("derive_seed", [](std::uint64_t master, const std::vector<std::uint64_t>& labels) {
    return derive_seed_labels(master, labels);
  }, py::arg("master"), py::arg("labels") = std::vector<std::uint64_t>{});
  m.def("trial_seed", &trial_seed, py::arg("master"), py::arg("trial"));
  m.def("run_experiment", &run, py::arg("config"), py::arg("jobs") = 1);
  m.def("build_network", &build, py::arg("network"), py::arg("algorithm"), py::arg("seed") = 1);
  m.def("verify", &verify, py::arg("graph"), py::arg("members"), py::arg("structure") = "mis");
  m.def("view_graph_chi", &view_graph_chi, py::arg("t"), py::arg("m"));
  m.def("block_shuffle_length", &block_shuffle_length, py::arg("n"), py::arg("epsilon"));
}
