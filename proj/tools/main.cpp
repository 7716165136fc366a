#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hypembed/angular_opt.hpp"
#include "hypembed/errors.hpp"
#include "hypembed/graph.hpp"
#include "hypembed/hypermap.hpp"
#include "hypembed/io.hpp"
#include "hypembed/likelihood.hpp"
#include "hypembed/ncmce.hpp"
#include "hypembed/pso.hpp"
#include "hypembed/quality.hpp"

namespace {

using namespace hypembed;

Graph load_graph(const std::string& path, bool directed) {
  if (path == "-") return load_edge_list(std::cin, directed);
  std::ifstream in(path);
  if (!in) throw DataError("cannot open input file '" + path + "'");
  return load_edge_list(in, directed);
}

std::vector<CoordinateRow> load_rows(const std::string& path) {
  if (path == "-") return read_coordinate_file(std::cin);
  std::ifstream in(path);
  if (!in) throw DataError("cannot open coordinate file '" + path + "'");
  return read_coordinate_file(in);
}

// Write through a callback either to the given file or to stdout.
template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw DataError("cannot open output file '" + path + "'");
  fn(out);
}

struct GenerateArgs {
  std::string model;
  int n = 0;
  double m = 2.0, ell = 0.0, beta = 0.5, temperature = 0.0, zeta = 1.0;
  std::optional<int> l_plus, l_minus;
  std::uint64_t seed = 1;
  std::string out, coords_out;
};

int run_generate(const GenerateArgs& a) {
  EpsoParams p;
  p.n_nodes = a.n;
  p.m = a.m;
  p.ell = a.ell;
  p.beta = a.beta;
  p.temperature = a.temperature;
  p.zeta = a.zeta;

  GeneratedNetwork net;
  if (a.model == "pso") {
    net = pso_generate(p, a.seed);
  } else if (a.model == "gpso") {
    int lp = a.l_plus.value_or(a.ell > 0 ? static_cast<int>(a.ell) : 0);
    int lm = a.l_minus.value_or(a.ell < 0 ? static_cast<int>(-a.ell) : 0);
    if (!a.l_plus && !a.l_minus) {
      p.ell = static_cast<double>(lp - lm);  // from -L, which must be integral here
      if (p.ell != a.ell) throw ParamError("gpso needs an integer -L (or --l-plus/--l-minus)");
    } else {
      p.ell = static_cast<double>(lp - lm);
    }
    net = gpso_generate(p, lp, lm, a.seed);
  } else {
    net = epso_generate(p, a.seed);
  }

  with_output(a.out, [&](std::ostream& os) { save_edge_list(net.graph, os); });
  if (!a.coords_out.empty()) {
    std::vector<CoordinateRow> rows(net.true_coords.size());
    for (std::size_t v = 0; v < net.true_coords.size(); ++v) {
      rows[v] = {net.graph.label(static_cast<int>(v)), net.true_coords[v].r,
                 net.true_coords[v].theta, std::nullopt};
    }
    with_output(a.coords_out, [&](std::ostream& os) { write_coordinate_file(os, rows); });
  }
  if (net.skipped_insertions > 0 || net.skipped_deletions > 0) {
    std::cerr << "warning: " << net.skipped_insertions << " insertion and "
              << net.skipped_deletions << " deletion steps found no eligible pair\n";
  }
  return 0;
}

struct EmbedArgs {
  std::string method;
  std::string input;
  bool directed = false;
  std::string degree_kind = "total";
  std::uint64_t seed = 1;
  std::optional<double> m, beta, temperature;
  double zeta = 1.0;
  bool estimate = false;
  int swap_rounds = 5, noswap_rounds = 3, q = 6;
  std::optional<double> stop_tol;
  int angle_grid = 360;
  std::string coords_out, report_out;
};

EpsoParams resolve_params(const Graph& g, const EmbedArgs& a) {
  const bool all_given = a.m && a.beta && a.temperature;
  const bool any_given = a.m || a.beta || a.temperature;
  if (!a.estimate && any_given && !all_given) {
    throw ParamError("provide all of --m, --beta, -T, or none (or --estimate-params)");
  }
  EpsoParams p;
  p.zeta = a.zeta;
  p.n_nodes = g.n_nodes();
  if (all_given && !a.estimate) {
    p.m = *a.m;
    p.beta = *a.beta;
    p.temperature = *a.temperature;
    return p;
  }
  // Estimation path: descend the loss on a throwaway ncMCE layout built from
  // the start values, then embed for real with the fitted parameters.
  const double mean_k =
      g.n_nodes() > 0 ? 2.0 * static_cast<double>(g.n_edges()) / g.n_nodes() : 0.0;
  EstimateOptions opt;
  opt.start = {a.m.value_or(mean_k / 2.0), a.beta.value_or(0.5),
               a.temperature.value_or(0.5)};
  EpsoParams start = p;
  start.m = opt.start[0];
  start.beta = opt.start[1];
  start.temperature = opt.start[2];
  const Embedding pilot =
      ncmce_embed(g, start, parse_degree_kind(a.degree_kind), a.seed);
  EpsoParams fitted = estimate_parameters(g, pilot, opt);
  std::cerr << "estimated m=" << fitted.m << " beta=" << fitted.beta
            << " T=" << fitted.temperature << " (ell=" << fitted.ell << ")\n";
  fitted.zeta = a.zeta;
  return fitted;
}

int run_embed(const EmbedArgs& a) {
  const Graph g = load_graph(a.input, a.directed);
  if (!is_connected(g)) {
    throw ConnectivityError("input graph is disconnected (" +
                            std::to_string(component_count(g)) + " components)");
  }
  const DegreeKind kind = parse_degree_kind(a.degree_kind);
  EpsoParams p = resolve_params(g, a);

  Embedding emb;
  int rounds = 0;
  if (a.method == "hypermap") {
    emb = hypermap_embed(g, p, kind, a.seed, a.angle_grid);
  } else if (a.method == "ncmce" || a.method == "ncmce-opt") {
    emb = ncmce_embed(g, p, kind, a.seed);
    if (a.method == "ncmce-opt") {
      OptimizerSchedule sched;
      sched.swap_rounds = a.swap_rounds;
      sched.noswap_rounds = a.noswap_rounds;
      sched.q = a.q;
      sched.stop_rel_tol = a.stop_tol;
      auto [opted, trace] = optimize(g, std::move(emb), sched);
      emb = std::move(opted);
      rounds = static_cast<int>(trace.rounds.size());
    }
  } else {
    throw ParamError("unknown method '" + a.method + "'");
  }

  QualityReport rep;
  rep.method = a.method;
  rep.seed = a.seed;
  rep.rounds = rounds;
  rep.logloss = logarithmic_loss(g, emb).total;
  const auto gs = greedy_routing_score(g, emb);
  rep.gr_score = gs.gr_score;
  rep.success_ratio = gs.success_ratio;

  const auto rows = rows_from_embedding(g, emb);
  with_output(a.coords_out, [&](std::ostream& os) { write_coordinate_file(os, rows); });
  with_output(a.report_out, [&](std::ostream& os) { os << report_to_json(rep); });
  return 0;
}

struct EvaluateArgs {
  std::string input, coords;
  bool directed = false;
  double m = 0.0, beta = 0.0, temperature = 0.0, zeta = 1.0;
  std::string method_label = "external";
  std::uint64_t seed = 0;
  int rounds = 0;
  std::string report_out;
};

int run_evaluate(const EvaluateArgs& a) {
  const Graph g = load_graph(a.input, a.directed);
  EpsoParams p;
  p.m = a.m;
  p.beta = a.beta;
  p.temperature = a.temperature;
  p.zeta = a.zeta;
  const Embedding emb = embedding_from_rows(g, load_rows(a.coords), p);

  QualityReport rep;
  rep.method = a.method_label;
  rep.seed = a.seed;
  rep.rounds = a.rounds;
  rep.logloss = logarithmic_loss(g, emb).total;
  const auto gs = greedy_routing_score(g, emb);
  rep.gr_score = gs.gr_score;
  rep.success_ratio = gs.success_ratio;
  with_output(a.report_out, [&](std::ostream& os) { os << report_to_json(rep); });
  return 0;
}

struct RepeatArgs {
  EmbedArgs base;  // reuses input/method/params/schedule flags
  int trials = 1;
  std::string reports_out;
};

int run_repeat(const RepeatArgs& a) {
  const Graph g = load_graph(a.base.input, a.base.directed);
  if (!is_connected(g)) {
    throw ConnectivityError("input graph is disconnected (" +
                            std::to_string(component_count(g)) + " components)");
  }
  EpsoParams p = resolve_params(g, a.base);
  RepeatOptions opt;
  opt.kind = parse_degree_kind(a.base.degree_kind);
  opt.schedule.swap_rounds = a.base.swap_rounds;
  opt.schedule.noswap_rounds = a.base.noswap_rounds;
  opt.schedule.q = a.base.q;
  opt.schedule.stop_rel_tol = a.base.stop_tol;
  opt.angle_grid = a.base.angle_grid;

  const RepeatResult result = repeat_embeddings(g, a.base.method, p, a.trials, a.base.seed, opt);
  with_output(a.base.coords_out, [&](std::ostream& os) { os << repeat_csv(result); });
  if (!a.reports_out.empty()) {
    with_output(a.reports_out,
                [&](std::ostream& os) { os << reports_to_json(result.reports); });
  }
  return 0;
}

struct RenderArgs {
  std::string coords, input, out;
  bool directed = false;
  double scale = 20.0;
};

int run_render(const RenderArgs& a) {
  const auto rows = load_rows(a.coords);
  std::unique_ptr<Graph> g;
  if (!a.input.empty()) g = std::make_unique<Graph>(load_graph(a.input, a.directed));
  with_output(a.out, [&](std::ostream& os) { write_svg(os, rows, g.get(), a.scale); });
  return 0;
}

void add_param_flags(CLI::App* cmd, EmbedArgs& a) {
  cmd->add_option("--m,-m", a.m, "expected external links per node");
  cmd->add_option("--beta", a.beta, "popularity fading in (0,1]");
  cmd->add_option("-T", a.temperature, "temperature in [0,1)");
  cmd->add_option("--zeta", a.zeta, "curvature scale (K = -zeta^2)")->capture_default_str();
  cmd->add_flag("--estimate-params", a.estimate,
                "fit m, beta, T on a pilot ncMCE layout (given values become the start point)");
}

void add_schedule_flags(CLI::App* cmd, EmbedArgs& a) {
  cmd->add_option("--swap-rounds", a.swap_rounds, "swapping optimizer rounds")->capture_default_str();
  cmd->add_option("--noswap-rounds", a.noswap_rounds, "non-swapping optimizer rounds")->capture_default_str();
  cmd->add_option("-q,--candidates", a.q, "candidate angles per node per round")->capture_default_str();
  cmd->add_option("--stop-tol", a.stop_tol,
                  "stop when a round's relative loss drop falls below this");
  cmd->add_option("--angle-grid", a.angle_grid, "hypermap angular grid size")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperbolic network embedding toolkit"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* cgen = app.add_subcommand("generate", "grow a synthetic network");
  cgen->add_option("model", gen.model, "pso | gpso | epso")
      ->required()
      ->check(CLI::IsMember({"pso", "gpso", "epso"}));
  cgen->add_option("-N,--nodes", gen.n, "final node count")->required();
  cgen->add_option("--m,-m", gen.m, "external links per node")->capture_default_str();
  cgen->add_option("--L,-L", gen.ell, "net internal links per step")->capture_default_str();
  cgen->add_option("--l-plus", gen.l_plus, "gpso: internal insertions per step");
  cgen->add_option("--l-minus", gen.l_minus, "gpso: internal deletions per step");
  cgen->add_option("--beta", gen.beta, "popularity fading in (0,1]")->capture_default_str();
  cgen->add_option("-T", gen.temperature, "temperature in [0,1)")->capture_default_str();
  cgen->add_option("--zeta", gen.zeta, "curvature scale")->capture_default_str();
  cgen->add_option("--seed", gen.seed, "rng seed")->capture_default_str();
  cgen->add_option("-o,--output", gen.out, "edge list path (default stdout)");
  cgen->add_option("--coords", gen.coords_out, "also write the ground-truth coordinates here");

  EmbedArgs emb;
  auto* cemb = app.add_subcommand("embed", "embed a network into the hyperbolic disk");
  cemb->add_option("method", emb.method, "ncmce | ncmce-opt | hypermap")
      ->required()
      ->check(CLI::IsMember({"ncmce", "ncmce-opt", "hypermap"}));
  cemb->add_option("-i,--input", emb.input, "edge list path ('-' for stdin)")->required();
  cemb->add_flag("--directed", emb.directed, "treat input lines as arcs");
  cemb->add_option("--degree-kind", emb.degree_kind, "total | in | out")->capture_default_str()
      ->check(CLI::IsMember({"total", "in", "out"}));
  cemb->add_option("--seed", emb.seed, "radial tie-permutation seed")->capture_default_str();
  add_param_flags(cemb, emb);
  add_schedule_flags(cemb, emb);
  cemb->add_option("-o,--coords", emb.coords_out, "coordinate file path (default stdout)");
  cemb->add_option("--report", emb.report_out, "quality report path (default stdout)");

  EvaluateArgs eva;
  auto* ceva = app.add_subcommand("evaluate", "score an existing layout");
  ceva->add_option("-i,--input", eva.input, "edge list path")->required();
  ceva->add_flag("--directed", eva.directed, "treat input lines as arcs");
  ceva->add_option("--coords", eva.coords, "coordinate file path")->required();
  ceva->add_option("--m,-m", eva.m, "expected external links per node")->required();
  ceva->add_option("--beta", eva.beta, "popularity fading in (0,1]")->required();
  ceva->add_option("-T", eva.temperature, "temperature in (0,1)")->required();
  ceva->add_option("--zeta", eva.zeta, "curvature scale")->capture_default_str();
  ceva->add_option("--method-label", eva.method_label, "method field echoed in the report")->capture_default_str();
  ceva->add_option("--seed", eva.seed, "seed field echoed in the report")->capture_default_str();
  ceva->add_option("--rounds", eva.rounds, "rounds field echoed in the report")->capture_default_str();
  ceva->add_option("--report", eva.report_out, "quality report path (default stdout)");

  RepeatArgs rep;
  auto* crep = app.add_subcommand("repeat", "re-embed under fresh radial tie permutations");
  crep->add_option("method", rep.base.method, "ncmce | ncmce-opt | hypermap")
      ->required()
      ->check(CLI::IsMember({"ncmce", "ncmce-opt", "hypermap"}));
  crep->add_option("-i,--input", rep.base.input, "edge list path")->required();
  crep->add_flag("--directed", rep.base.directed, "treat input lines as arcs");
  crep->add_option("--degree-kind", rep.base.degree_kind, "total | in | out")->capture_default_str()
      ->check(CLI::IsMember({"total", "in", "out"}));
  crep->add_option("--seed", rep.base.seed, "base seed for per-trial tie seeds")->capture_default_str();
  crep->add_option("--trials", rep.trials, "number of repetitions")->capture_default_str()->required();
  add_param_flags(crep, rep.base);
  add_schedule_flags(crep, rep.base);
  crep->add_option("-o,--output", rep.base.coords_out, "CSV path (default stdout)");
  crep->add_option("--reports", rep.reports_out, "also write all per-trial reports (JSON) here");

  RenderArgs ren;
  auto* cren = app.add_subcommand("render", "draw a layout as SVG");
  cren->add_option("--coords", ren.coords, "coordinate file path")->required();
  cren->add_option("-i,--input", ren.input, "edge list path for the segments (optional)");
  cren->add_flag("--directed", ren.directed, "treat input lines as arcs");
  cren->add_option("-o,--output", ren.out, "SVG path (default stdout)");
  cren->add_option("--scale", ren.scale, "pixels per radial unit")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*cgen) return run_generate(gen);
    if (*cemb) return run_embed(emb);
    if (*ceva) return run_evaluate(eva);
    if (*crep) return run_repeat(rep);
    if (*cren) return run_render(ren);
    return 2;
  } catch (const ParamError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return 2;
  } catch (const ConnectivityError& e) {
    std::cerr << "connectivity error: " << e.what() << '\n';
    return 3;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 4;
  } catch (const std::out_of_range& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 4;
  } catch (const std::domain_error& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
