#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <utility>

#include "hypembed/angular_opt.hpp"
#include "hypembed/errors.hpp"
#include "hypembed/graph.hpp"
#include "hypembed/hypermap.hpp"
#include "hypembed/hyperbolic.hpp"
#include "hypembed/io.hpp"
#include "hypembed/likelihood.hpp"
#include "hypembed/ncmce.hpp"
#include "hypembed/pso.hpp"
#include "hypembed/quality.hpp"

namespace py = pybind11;
using namespace hypembed;

PYBIND11_MODULE(_core, m) {
  m.doc() = "hyperbolic network embedding core";

  py::register_exception<ParamError>(m, "ParamError", PyExc_ValueError);
  py::register_exception<ConnectivityError>(m, "ConnectivityError", PyExc_RuntimeError);
  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);

  py::enum_<DegreeKind>(m, "DegreeKind")
      .value("total", DegreeKind::total)
      .value("in_", DegreeKind::in)
      .value("out", DegreeKind::out);

  py::enum_<FitDirection>(m, "FitDirection")
      .value("min", FitDirection::min)
      .value("max", FitDirection::max);

  py::class_<PolarCoord>(m, "PolarCoord")
      .def(py::init<>())
      .def(py::init([](double r, double theta) { return PolarCoord{r, theta}; }),
           py::arg("r"), py::arg("theta"))
      .def_readwrite("r", &PolarCoord::r)
      .def_readwrite("theta", &PolarCoord::theta)
      .def("__repr__", [](const PolarCoord& c) {
        std::ostringstream os;
        os << "PolarCoord(r=" << c.r << ", theta=" << c.theta << ")";
        return os.str();
      });

  py::class_<EpsoParams>(m, "EpsoParams")
      .def(py::init<>())
      .def(py::init([](double zeta, int n_nodes, double mm, double ell, double beta,
                       double temperature) {
             EpsoParams p;
             p.zeta = zeta;
             p.n_nodes = n_nodes;
             p.m = mm;
             p.ell = ell;
             p.beta = beta;
             p.temperature = temperature;
             return p;
           }),
           py::arg("zeta") = 1.0, py::arg("n_nodes") = 1, py::arg("m") = 2.0,
           py::arg("ell") = 0.0, py::arg("beta") = 0.5, py::arg("temperature") = 0.0)
      .def_readwrite("zeta", &EpsoParams::zeta)
      .def_readwrite("n_nodes", &EpsoParams::n_nodes)
      .def_readwrite("m", &EpsoParams::m)
      .def_readwrite("ell", &EpsoParams::ell)
      .def_readwrite("beta", &EpsoParams::beta)
      .def_readwrite("temperature", &EpsoParams::temperature)
      .def("validate", &EpsoParams::validate)
      .def("__repr__", [](const EpsoParams& p) {
        std::ostringstream os;
        os << "EpsoParams(zeta=" << p.zeta << ", n_nodes=" << p.n_nodes << ", m=" << p.m
           << ", ell=" << p.ell << ", beta=" << p.beta << ", temperature=" << p.temperature
           << ")";
        return os.str();
      });

  py::class_<Graph>(m, "Graph")
      .def(py::init<int, std::vector<std::pair<int, int>>>(), py::arg("n_nodes"),
           py::arg("edges"))
      .def_property_readonly("n_nodes", &Graph::n_nodes)
      .def_property_readonly("n_edges", &Graph::n_edges)
      .def_property_readonly("edges", &Graph::edges)
      .def("neighbors", &Graph::neighbors, py::arg("v"))
      .def("has_edge", &Graph::has_edge, py::arg("u"), py::arg("v"))
      .def("label", &Graph::label, py::arg("v"))
      .def_property_readonly("labels", &Graph::labels)
      .def("__repr__", [](const Graph& g) {
        std::ostringstream os;
        os << "Graph(n_nodes=" << g.n_nodes() << ", n_edges=" << g.n_edges() << ")";
        return os.str();
      });

  m.def(
      "load_edge_list",
      [](const std::string& text, bool directed) {
        std::istringstream in(text);
        return load_edge_list(in, directed);
      },
      py::arg("text"), py::arg("directed") = false,
      "Parse an edge-list string ('#' comments, two tokens per line).");
  m.def("largest_component_subgraph", &largest_component_subgraph, py::arg("g"));
  m.def(
      "degrees",
      [](const Graph& g, DegreeKind kind) { return degrees(g, kind); },
      py::arg("g"), py::arg("kind") = DegreeKind::total);
  m.def("is_connected", &is_connected, py::arg("g"));
  m.def("shortest_path_lengths", &shortest_path_lengths, py::arg("g"), py::arg("source"));

  m.def("normalize_angle", &normalize_angle, py::arg("theta"));
  m.def("angular_difference", &angular_difference, py::arg("a"), py::arg("b"));
  m.def("hyperbolic_distance", &hyperbolic_distance, py::arg("a"), py::arg("b"),
        py::arg("zeta"));

  py::class_<GeneratedNetwork>(m, "GeneratedNetwork")
      .def_readonly("graph", &GeneratedNetwork::graph)
      .def_readonly("true_coords", &GeneratedNetwork::true_coords)
      .def_readonly("skipped_insertions", &GeneratedNetwork::skipped_insertions)
      .def_readonly("skipped_deletions", &GeneratedNetwork::skipped_deletions);

  m.def("pso_generate", &pso_generate, py::arg("params"), py::arg("seed"));
  m.def("gpso_generate", &gpso_generate, py::arg("params"), py::arg("l_plus"),
        py::arg("l_minus"), py::arg("seed"));
  m.def("epso_generate", &epso_generate, py::arg("params"), py::arg("seed"));
  m.def("cutoff_radius", &cutoff_radius, py::arg("i"), py::arg("params"), py::arg("m_eff"));
  m.def("connection_probability", &connection_probability, py::arg("x"), py::arg("cutoff"),
        py::arg("params"));
  m.def("expected_internal_links", &expected_internal_links, py::arg("i"), py::arg("params"));

  py::class_<Embedding>(m, "Embedding")
      .def(py::init<>())
      .def_readwrite("coords", &Embedding::coords)
      .def_readwrite("radial_order", &Embedding::radial_order)
      .def_readwrite("params", &Embedding::params);

  py::class_<LossBreakdown>(m, "LossBreakdown")
      .def_readonly("total", &LossBreakdown::total)
      .def_readonly("edge_term", &LossBreakdown::edge_term)
      .def_readonly("non_edge_term", &LossBreakdown::non_edge_term);

  m.def("assign_radial_coordinates", &assign_radial_coordinates, py::arg("g"),
        py::arg("params"), py::arg("kind") = DegreeKind::total, py::arg("tie_seed") = 1);
  m.def("logarithmic_loss", &logarithmic_loss, py::arg("g"), py::arg("emb"));
  m.def("loss_delta_for_move", &loss_delta_for_move, py::arg("g"), py::arg("emb"),
        py::arg("node"), py::arg("new_theta"));
  m.def(
      "estimate_parameters",
      [](const Graph& g, const Embedding& emb) { return estimate_parameters(g, emb); },
      py::arg("g"), py::arg("emb"));

  m.def("ncmce_embed", &ncmce_embed, py::arg("g"), py::arg("params"),
        py::arg("kind") = DegreeKind::total, py::arg("tie_seed") = 1);
  m.def("hypermap_embed", &hypermap_embed, py::arg("g"), py::arg("params"),
        py::arg("kind") = DegreeKind::total, py::arg("tie_seed") = 1,
        py::arg("angle_grid") = 360);

  py::class_<OptimizerSchedule>(m, "OptimizerSchedule")
      .def(py::init<>())
      .def_readwrite("swap_rounds", &OptimizerSchedule::swap_rounds)
      .def_readwrite("noswap_rounds", &OptimizerSchedule::noswap_rounds)
      .def_readwrite("q", &OptimizerSchedule::q)
      .def_readwrite("stop_rel_tol", &OptimizerSchedule::stop_rel_tol);

  py::class_<RoundStats>(m, "RoundStats")
      .def_readonly("swapping", &RoundStats::swapping)
      .def_readonly("ll_after", &RoundStats::ll_after)
      .def_readonly("accepted_moves", &RoundStats::accepted_moves)
      .def_readonly("candidate_evals", &RoundStats::candidate_evals);

  py::class_<OptimizationTrace>(m, "OptimizationTrace")
      .def_readonly("ll_initial", &OptimizationTrace::ll_initial)
      .def_readonly("rounds", &OptimizationTrace::rounds)
      .def_readonly("candidate_evals", &OptimizationTrace::candidate_evals);

  m.def(
      "optimize",
      [](const Graph& g, const Embedding& emb, const OptimizerSchedule& sched) {
        return optimize(g, Embedding(emb), sched);
      },
      py::arg("g"), py::arg("emb"), py::arg("schedule") = OptimizerSchedule{});
  m.def(
      "optimize_round",
      [](const Graph& g, const Embedding& emb, bool swapping, int q) {
        return optimize_round(g, Embedding(emb), swapping, q);
      },
      py::arg("g"), py::arg("emb"), py::arg("swapping"), py::arg("q") = 6);
  m.def("candidate_positions", &candidate_positions, py::arg("emb"), py::arg("node"),
        py::arg("neighbor_rank"), py::arg("q"));

  py::class_<QualityReport>(m, "QualityReport")
      .def_readonly("method", &QualityReport::method)
      .def_readonly("seed", &QualityReport::seed)
      .def_readonly("rounds", &QualityReport::rounds)
      .def_readonly("logloss", &QualityReport::logloss)
      .def_readonly("gr_score", &QualityReport::gr_score)
      .def_readonly("success_ratio", &QualityReport::success_ratio);

  py::class_<GreedyScore>(m, "GreedyScore")
      .def_readonly("gr_score", &GreedyScore::gr_score)
      .def_readonly("success_ratio", &GreedyScore::success_ratio);

  py::class_<ExtremeValueFit>(m, "ExtremeValueFit")
      .def_readonly("mu", &ExtremeValueFit::mu)
      .def_readonly("sigma", &ExtremeValueFit::sigma)
      .def_readonly("r_squared", &ExtremeValueFit::r_squared);

  py::class_<RepeatOptions>(m, "RepeatOptions")
      .def(py::init<>())
      .def_readwrite("kind", &RepeatOptions::kind)
      .def_readwrite("schedule", &RepeatOptions::schedule)
      .def_readwrite("angle_grid", &RepeatOptions::angle_grid);

  py::class_<RepeatResult>(m, "RepeatResult")
      .def_readonly("reports", &RepeatResult::reports)
      .def_readonly("best_ll", &RepeatResult::best_ll)
      .def_readonly("best_gr", &RepeatResult::best_gr);

  m.def("greedy_route", &greedy_route, py::arg("g"), py::arg("emb"), py::arg("source"),
        py::arg("dest"));
  m.def("greedy_routing_score", &greedy_routing_score, py::arg("g"), py::arg("emb"));
  m.def("internal_degree_curve", &internal_degree_curve, py::arg("g"),
        py::arg("thresholds"));
  m.def("gumbel_correction", &gumbel_correction, py::arg("n_s"));
  m.def("fit_best_of_n", &fit_best_of_n, py::arg("best_so_far"), py::arg("direction"));
  m.def("repeat_embeddings", &repeat_embeddings, py::arg("g"), py::arg("method"),
        py::arg("params"), py::arg("n_s"), py::arg("seed"),
        py::arg("options") = RepeatOptions{});
}
