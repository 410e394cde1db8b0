#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "graphon_ldp/entropy.hpp"
#include "graphon_ldp/errors.hpp"
#include "graphon_ldp/io.hpp"
#include "graphon_ldp/report.hpp"
#include "graphon_ldp/sampler.hpp"
#include "graphon_ldp/solver.hpp"
#include "graphon_ldp/witness.hpp"

namespace py = pybind11;
using namespace gldp;

namespace {

py::object to_python(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

std::vector<Rational> parse_widths(const std::vector<std::string>& widths) {
  std::vector<Rational> out;
  for (const auto& w : widths) out.push_back(parse_rational(w));
  return out;
}

PlantedCase planted_case(const std::string& name) {
  if (name == "independent") return PlantedCase::Independent;
  if (name == "clique") return PlantedCase::Clique;
  throw ValidationError("case must be 'independent' or 'clique'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Large-deviation rate quantities for dense stochastic block models";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<CapacityError>(m, "CapacityError", base.ptr());
  py::register_exception<WitnessNotFound>(m, "WitnessNotFound", base.ptr());
  py::register_exception<InsufficientConditioning>(m, "InsufficientConditioning", base.ptr());

  py::class_<StepGraphon>(m, "StepGraphon")
      .def(py::init([](const std::vector<std::string>& widths, std::vector<std::vector<double>> values) {
             return StepGraphon(parse_widths(widths), std::move(values));
           }),
           py::arg("widths"), py::arg("values"))
      .def_static("constant", &StepGraphon::constant)
      .def_static("bipartite", [](const std::string& g, double r) {
        return StepGraphon::bipartite(parse_rational(g), r);
      })
      .def_static("two_block", [](const std::string& g, double p, double q, double r) {
        return StepGraphon::two_block(parse_rational(g), p, q, r);
      })
      .def_static("uniform", &StepGraphon::uniform)
      .def_static("from_json", &parse_graphon)
      .def("to_json", [](const StepGraphon& f) { return graphon_to_json(f).dump(); })
      .def_property_readonly("block_count", &StepGraphon::block_count)
      .def_property_readonly("widths", [](const StepGraphon& f) {
        std::vector<std::string> out;
        for (const auto& w : f.widths()) out.push_back(to_string(w));
        return out;
      })
      .def_property_readonly("values", &StepGraphon::values)
      .def("__eq__", [](const StepGraphon& a, const StepGraphon& b) { return a == b; });

  py::class_<FiniteGraph>(m, "Graph")
      .def(py::init([](int v, const std::vector<std::pair<int, int>>& edges) {
             std::vector<Edge> e;
             for (auto [a, b] : edges) e.push_back({a, b});
             return FiniteGraph(v, std::move(e));
           }),
           py::arg("vertices"), py::arg("edges"))
      .def_static("named", [](const std::string& name) { return FiniteGraph::named(name); })
      .def_static("cycle", &FiniteGraph::cycle)
      .def_static("complete", &FiniteGraph::complete)
      .def_static("hypercube", &FiniteGraph::hypercube)
      .def_static("parse", &parse_graph)
      .def_property_readonly("vertex_count", &FiniteGraph::vertex_count)
      .def_property_readonly("edge_count", &FiniteGraph::edge_count);

  m.def("hom_density", &hom_density, py::arg("H"), py::arg("f"));
  m.def("relative_entropy", &relative_entropy, py::arg("W0"), py::arg("f"));
  m.def("in_omega", [](const StepGraphon& W0, const StepGraphon& f) { return in_omega(W0, f); });
  m.def("operator_norm", &operator_norm);
  m.def("cut_norm_distance", [](const StepGraphon& f, const StepGraphon& g) {
    return cut_norm_distance(f, g).value;
  });
  m.def("delta_cut_bounds", [](const StepGraphon& f, const StepGraphon& g) {
    const auto b = delta_cut_bounds(f, g);
    return std::make_pair(b.lower, b.upper);
  });
  m.def("relevant_blocks", [](const FiniteGraph& H, const StepGraphon& W0) {
    return relevant_blocks(H, W0).pairs;
  });
  m.def("f_max_graphon", [](const FiniteGraph& H, const StepGraphon& W0) {
    auto r = f_max_graphon(H, W0);
    return std::make_pair(r.graphon, r.t_max);
  });

  m.def("bernoulli_kl", &bernoulli_kl);
  m.def("p_zero", &p_zero);
  m.def("analyze_psi", [](double p, int d) { return to_python(to_json(analyze_psi(p, d))); });
  m.def("on_minorant", py::overload_cast<double, int, double>(&on_minorant));

  m.def("symmetric_min", [](const StepGraphon& W0, const FiniteGraph& H, double t, int restarts,
                            std::uint64_t seed) {
    SolverOptions o;
    o.restarts = restarts;
    o.seed = seed;
    return to_python(to_json(symmetric_min(W0, H, t, o)));
  }, py::arg("W0"), py::arg("H"), py::arg("t"), py::arg("restarts") = 20, py::arg("seed") = 0);
  m.def("phi_bracket", [](const StepGraphon& W0, const FiniteGraph& H, double t) {
    return to_python(to_json(phi_bracket(W0, H, t)));
  });
  m.def("bipartite_phase", [](double p, double gamma, const FiniteGraph& H, double r) {
    return std::string(to_string(bipartite_phase(p, gamma, Constraint::hom_density(H), r)));
  });
  m.def("phase_scan", [](double p, const std::string& gamma, const FiniteGraph& H,
                         const std::vector<double>& grid) {
    return phase_rows_csv(phase_scan(p, parse_rational(gamma), Constraint::hom_density(H), grid));
  });
  m.def("witness_geps", [](double p, const std::string& gamma, const FiniteGraph& H, double r) {
    return to_python(to_json(witness_geps(p, parse_rational(gamma), Constraint::hom_density(H), r)));
  });
  m.def("witness_clique", [](const std::string& c, const std::string& gamma, double t,
                             const FiniteGraph& H, double p) {
    return to_python(to_json(witness_clique(planted_case(c), parse_rational(gamma), t, H, p)));
  });
  m.def("witness_planted", [](const std::string& gamma, double alpha, const FiniteGraph& H, double p) {
    return to_python(to_json(witness_planted(parse_rational(gamma), alpha, H, p)));
  });

  m.def("sample_edges", [](const StepGraphon& W0, int kn, std::uint64_t seed, std::uint64_t index) {
    const SampledGraph G = sample_graph_kn(W0, kn, seed, index);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < G.vertices; ++i)
      for (int j = i + 1; j < G.vertices; ++j)
        if (G.adjacent(i, j)) edges.emplace_back(i, j);
    return edges;
  }, py::arg("W0"), py::arg("kn"), py::arg("seed") = 0, py::arg("index") = 0);
  m.def("exact_tail", [](const StepGraphon& W0, const FiniteGraph& H, double t, int kn) {
    return to_python(to_json(exact_tail(W0, H, t, kn)));
  });
  m.def("tail_estimate", [](const StepGraphon& W0, const FiniteGraph& H, double t, int kn,
                            long long samples, std::uint64_t seed) {
    return to_python(to_json(tail_estimate(W0, H, t, kn, samples, seed)));
  }, py::arg("W0"), py::arg("H"), py::arg("t"), py::arg("kn"), py::arg("samples"), py::arg("seed") = 0);
}
