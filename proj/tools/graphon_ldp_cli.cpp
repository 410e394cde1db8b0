// graphon-ldp: command-line front end.
// Exit codes: 0 success, 1 usage, 2 domain/validation error, 3 capacity.

#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "graphon_ldp/entropy.hpp"
#include "graphon_ldp/errors.hpp"
#include "graphon_ldp/io.hpp"
#include "graphon_ldp/report.hpp"
#include "graphon_ldp/sampler.hpp"
#include "graphon_ldp/solver.hpp"
#include "graphon_ldp/witness.hpp"

namespace {

using nlohmann::json;
using namespace gldp;

struct RunConfig {
  std::string out;
  std::string format = "json";
  std::uint64_t seed = 0;
  int threads = 0;

  std::string graphon, graphon2, graph, base, optimizer, edges, graphon_out;
  double p = 0.05, r = 0, t = 0, x = -1, alpha = 0.5;
  double r_min = -1, r_max = 1;
  std::string gamma = "1/2";
  int d = 2, kn = 0, n = 0, points = 200, restarts = 20;
  long long samples = 10000;
  std::uint64_t index = 0;
  bool opnorm = false, heuristic = false;
  std::string kind = "geps", planted_case = "independent";
  double min_acceptance = 1e-4;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

void check_probability(double p, const char* name) {
  require(p > 0.0 && p < 1.0, std::string("--") + name + " must lie in (0,1)");
}

Rational gamma_of(const RunConfig& c) {
  const Rational g = parse_rational(c.gamma);
  require(g > 0 && g < 1, "--gamma must lie in (0,1)");
  return g;
}

// --graph when given, else the d-cube (d-regular; C4 for d = 2), or the
// operator norm with --opnorm.
Constraint constraint_of(const RunConfig& c) {
  if (c.opnorm) return Constraint::operator_norm();
  if (!c.graph.empty()) return Constraint::hom_density(load_graph(c.graph));
  require(c.d >= 1 && c.d <= 6, "--d must lie in 1..6");
  return Constraint::hom_density(c.d == 1 ? FiniteGraph::single_edge() : FiniteGraph::hypercube(c.d));
}

FiniteGraph graph_of(const RunConfig& c) {
  require(!c.graph.empty(), "--graph is required");
  return load_graph(c.graph);
}

StepGraphon graphon_of(const std::string& path, const char* flag) {
  require(!path.empty(), std::string("--") + flag + " is required");
  return load_graphon(path);
}

void check_kn(const RunConfig& c) { require(c.kn >= 1, "--kn must be a positive integer"); }

std::string emit_json(const json& j) { return j.dump(2) + "\n"; }

std::string cmd_density(const RunConfig& c) {
  const StepGraphon f = graphon_of(c.graphon, "graphon");
  const FiniteGraph H = graph_of(c);
  const auto [fmax, tmax] = f_max_graphon(H, f);
  json out{{"density", hom_density(H, f)},
           {"vertices", H.vertex_count()},
           {"edges", H.edge_count()},
           {"t_max", tmax},
           {"f_max", graphon_to_json(fmax)}};
  out.update(to_json(relevant_blocks(H, f)));
  return emit_json(out);
}

std::string cmd_entropy(const RunConfig& c) {
  const StepGraphon W0 = graphon_of(c.base, "base");
  const StepGraphon f = graphon_of(c.graphon, "graphon");
  return emit_json({{"entropy", json_number(relative_entropy(W0, f))}, {"in_omega", in_omega(W0, f)}});
}

std::string cmd_cutdist(const RunConfig& c) {
  const StepGraphon f = graphon_of(c.graphon, "f");
  const StepGraphon g = graphon_of(c.graphon2, "g");
  const CutNorm d = cut_norm_distance(f, g, c.heuristic, c.seed);
  const CutMetricBounds b = delta_cut_bounds(f, g, c.seed);
  return emit_json({{"cut_norm", d.value},
                    {"exact", d.exact},
                    {"delta_lower", b.lower},
                    {"delta_upper", b.upper}});
}

std::string cmd_opnorm(const RunConfig& c) {
  const StepGraphon f = graphon_of(c.graphon, "graphon");
  return emit_json({{"operator_norm", operator_norm(f)}, {"blocks", f.block_count()}});
}

std::string cmd_psi(const RunConfig& c) {
  check_probability(c.p, "p");
  require(c.d >= 1, "--d must be a positive integer");
  const PsiProfile prof = analyze_psi(c.p, c.d);
  json out = to_json(prof);
  if (c.x >= 0.0) {
    require(c.x <= 1.0, "--x must lie in [0,1]");
    const PsiValue v = psi_eval(c.p, c.d, c.x);
    out["x"] = c.x;
    out["psi"] = json_number(v.value);
    out["psi_first"] = json_number(v.first);
    out["psi_second"] = json_number(v.second);
    out["minorant"] = json_number(prof.minorant(c.x));
  }
  return emit_json(out);
}

std::string cmd_phase(const RunConfig& c) {
  check_probability(c.p, "p");
  const Rational g = gamma_of(c);
  const Constraint k = constraint_of(c);
  require(c.r >= c.p && c.r <= 1.0, "--r must lie in [p,1]");
  const int d = k.degree();
  const PsiProfile prof = analyze_psi(c.p, d);
  const double gd = to_double(g);
  json out = to_json(prof);
  out["gamma"] = to_string(g);
  out["constraint"] = k.name();
  out["r"] = c.r;
  out["on_minorant"] = prof.on_minorant(c.r);
  out["phase"] = to_string(bipartite_phase(c.p, gd, k, c.r));
  out["t_target"] = bipartite_target(g, k, c.r);
  out["symmetric_entropy"] = gd * (1.0 - gd) * bernoulli_kl(c.p, c.r);
  if (prof.window())
    out["window_r"] = json::array({std::pow(prof.window()->first, 1.0 / d),
                                   std::pow(prof.window()->second, 1.0 / d)});
  return emit_json(out);
}

std::string cmd_scan(const RunConfig& c) {
  check_probability(c.p, "p");
  const Rational g = gamma_of(c);
  const Constraint k = constraint_of(c);
  const double lo = c.r_min < 0 ? c.p : c.r_min;
  require(lo >= c.p && c.r_max <= 1.0 && lo <= c.r_max, "need p <= --r-min <= --r-max <= 1");
  require(c.points >= 1, "--points must be positive");
  std::vector<double> grid;
  for (int i = 0; i < c.points; ++i)
    grid.push_back(c.points == 1 ? lo : lo + (c.r_max - lo) * i / (c.points - 1));
  const auto rows = phase_scan(c.p, g, k, grid);
  if (c.format == "csv") return phase_rows_csv(rows);
  json out = json::array();
  for (const auto& row : rows)
    out.push_back({{"r", row.r},
                   {"t_target", row.t_target},
                   {"on_minorant", row.on_minorant},
                   {"symmetric_I", json_number(row.symmetric_entropy)},
                   {"witness_I", json_number(row.witness_entropy)}});
  return emit_json(out);
}

std::string cmd_solve(const RunConfig& c) {
  const StepGraphon W0 = graphon_of(c.graphon, "graphon");
  const FiniteGraph H = graph_of(c);
  require(std::isfinite(c.t) && c.t >= 0.0, "--t must be a finite non-negative number");
  require(c.restarts >= 1, "--restarts must be positive");
  SolverOptions opt;
  opt.restarts = c.restarts;
  opt.seed = c.seed;
  opt.threads = c.threads;
  return emit_json(to_json(phi_bracket(W0, H, c.t, opt)));
}

std::string cmd_witness(const RunConfig& c) {
  check_probability(c.p, "p");
  const Rational g = gamma_of(c);
  Witness w = [&] {
    if (c.kind == "geps") {
      require(c.r > c.p && c.r < 1.0, "--r must lie in (p,1)");
      return witness_geps(c.p, g, constraint_of(c), c.r);
    }
    if (c.kind == "clique") {
      require(c.planted_case == "independent" || c.planted_case == "clique",
              "--case must be 'independent' or 'clique'");
      const PlantedCase pc =
          c.planted_case == "independent" ? PlantedCase::Independent : PlantedCase::Clique;
      return witness_clique(pc, g, c.t, graph_of(c), c.p);
    }
    if (c.kind == "planted") {
      check_probability(c.alpha, "alpha");
      return witness_planted(g, c.alpha, graph_of(c), c.p);
    }
    throw ValidationError("--kind must be geps, clique or planted");
  }();
  if (!c.graphon_out.empty()) save_graphon(w.graphon, c.graphon_out);
  return emit_json(to_json(w));
}

std::string cmd_sample(const RunConfig& c) {
  const StepGraphon W0 = graphon_of(c.graphon, "graphon");
  require((c.kn >= 1) != (c.n >= 1), "give exactly one of --kn and --n");
  const SampledGraph G = c.kn >= 1 ? sample_graph_kn(W0, c.kn, c.seed, c.index)
                                   : sample_graph(W0, c.n, c.seed, c.index);
  json out{{"vertices", G.vertices},
           {"edges", G.edge_count()},
           {"blocks", G.block.back() + 1},
           {"seed", G.seed},
           {"sample_index", G.sample_index}};
  if (!c.graph.empty()) out["density"] = empirical_density(load_graph(c.graph), G);
  if (!c.edges.empty()) write_file(c.edges, sampled_graph_text(G));
  return emit_json(out);
}

std::string cmd_tail(const RunConfig& c) {
  const StepGraphon W0 = graphon_of(c.graphon, "graphon");
  check_kn(c);
  require(c.samples >= 1000, "--samples must be at least 1000");
  return emit_json(to_json(tail_estimate(W0, graph_of(c), c.t, c.kn, c.samples, c.seed, c.threads)));
}

std::string cmd_enumerate(const RunConfig& c) {
  const StepGraphon W0 = graphon_of(c.graphon, "graphon");
  check_kn(c);
  return emit_json(to_json(exact_tail(W0, graph_of(c), c.t, c.kn)));
}

std::string cmd_concentrate(const RunConfig& c) {
  const StepGraphon W0 = graphon_of(c.graphon, "graphon");
  const FiniteGraph H = graph_of(c);
  check_kn(c);
  require(c.samples >= 1, "--samples must be positive");
  StepGraphon opt = W0;
  if (!c.optimizer.empty()) {
    opt = load_graphon(c.optimizer);
  } else {
    SolverOptions so;
    so.seed = c.seed;
    so.threads = c.threads;
    opt = symmetric_min(W0, H, c.t, so).optimizer;
  }
  const auto s =
      conditional_concentration(W0, H, c.t, c.kn, c.samples, opt, c.seed, c.threads, c.min_acceptance);
  json out = to_json(s);
  out["optimizer"] = graphon_to_json(opt);
  return emit_json(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Large-deviation rate quantities for dense stochastic block models"};
  app.require_subcommand(1);
  RunConfig c;
  app.add_option("--out", c.out, "Write the report to this path instead of stdout");
  app.add_option("--format", c.format, "json or csv (csv: scan only)")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", c.seed, "Master seed (default 0)");
  app.add_option("--threads", c.threads, "Worker cap (default: GRAPHON_LDP_THREADS or all cores)");

  std::function<std::string(const RunConfig&)> run;
  auto sub = [&](const char* name, const char* help, auto fn) {
    CLI::App* s = app.add_subcommand(name, help);
    s->callback([&run, fn] { run = fn; });
    s->add_option("--out", c.out, "Write the report to this path");
    s->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    s->add_option("--seed", c.seed, "Master seed");
    s->add_option("--threads", c.threads, "Worker cap");
    return s;
  };

  auto* density = sub("density", "Homomorphism density, relevant blocks and t_max", cmd_density);
  density->add_option("--graphon", c.graphon)->required();
  density->add_option("--graph", c.graph)->required();

  auto* entropy = sub("entropy", "Relative entropy I_W0(f)", cmd_entropy);
  entropy->add_option("--base", c.base)->required();
  entropy->add_option("--graphon", c.graphon)->required();

  auto* cutdist = sub("cutdist", "Cut norm distance and cut metric bounds", cmd_cutdist);
  cutdist->add_option("--f", c.graphon)->required();
  cutdist->add_option("--g", c.graphon2)->required();
  cutdist->add_flag("--heuristic", c.heuristic, "Allow the randomized lower bound above 20 blocks");

  auto* opnorm = sub("opnorm", "Operator norm of a step graphon", cmd_opnorm);
  opnorm->add_option("--graphon", c.graphon)->required();

  auto* psi = sub("psi", "Convexity profile of h_p(x^(1/d))", cmd_psi);
  psi->add_option("--p", c.p)->required();
  psi->add_option("--d", c.d)->required();
  psi->add_option("--x", c.x, "Also evaluate psi and the minorant at x");

  auto add_bipartite = [&](CLI::App* s) {
    s->add_option("--p", c.p)->required();
    s->add_option("--gamma", c.gamma, "Rational or decimal, default 1/2");
    s->add_option("--d", c.d, "Constraint degree when --graph is absent (d-cube pattern)");
    s->add_option("--graph", c.graph, "Regular pattern graph");
    s->add_flag("--opnorm", c.opnorm, "Constrain the operator norm instead");
  };

  auto* phase = sub("phase", "Symmetric/broken classification for a bipartite base", cmd_phase);
  add_bipartite(phase);
  phase->add_option("--r", c.r)->required();

  auto* scan = sub("scan", "Phase scan over an r grid", cmd_scan);
  add_bipartite(scan);
  scan->add_option("--r-min", c.r_min, "Default p");
  scan->add_option("--r-max", c.r_max, "Default 1");
  scan->add_option("--points", c.points, "Default 200");

  auto* solve = sub("solve", "Symmetric variational problem and rate bracket", cmd_solve);
  solve->add_option("--graphon", c.graphon)->required();
  solve->add_option("--graph", c.graph)->required();
  solve->add_option("--t", c.t)->required();
  solve->add_option("--restarts", c.restarts, "Default 20");

  auto* witness = sub("witness", "Symmetry-breaking witness", cmd_witness);
  witness->add_option("--kind", c.kind, "geps, clique or planted")
      ->check(CLI::IsMember({"geps", "clique", "planted"}));
  add_bipartite(witness);
  witness->add_option("--r", c.r);
  witness->add_option("--t", c.t);
  witness->add_option("--case", c.planted_case, "independent or clique");
  witness->add_option("--alpha", c.alpha);
  witness->add_option("--graphon-out", c.graphon_out, "Save the witness graphon");

  auto* sample = sub("sample", "Draw one graph from the block model", cmd_sample);
  sample->add_option("--graphon", c.graphon)->required();
  sample->add_option("--kn", c.kn);
  sample->add_option("--n", c.n, "Vertices per equal block");
  sample->add_option("--index", c.index, "Sample index (stream)");
  sample->add_option("--graph", c.graph, "Also report the empirical density of this pattern");
  sample->add_option("--edges", c.edges, "Write the edge list here");

  auto* tail = sub("tail", "Monte Carlo upper-tail probability", cmd_tail);
  tail->add_option("--graphon", c.graphon)->required();
  tail->add_option("--graph", c.graph)->required();
  tail->add_option("--t", c.t)->required();
  tail->add_option("--kn", c.kn)->required();
  tail->add_option("--samples", c.samples, "Default 10000");

  auto* enumerate = sub("enumerate", "Exact upper-tail probability", cmd_enumerate);
  enumerate->add_option("--graphon", c.graphon)->required();
  enumerate->add_option("--graph", c.graph)->required();
  enumerate->add_option("--t", c.t)->required();
  enumerate->add_option("--kn", c.kn)->required();

  auto* concentrate = sub("concentrate", "Conditional concentration around the optimizer", cmd_concentrate);
  concentrate->add_option("--graphon", c.graphon)->required();
  concentrate->add_option("--graph", c.graph)->required();
  concentrate->add_option("--t", c.t)->required();
  concentrate->add_option("--kn", c.kn)->required();
  concentrate->add_option("--samples", c.samples, "Default 10000");
  concentrate->add_option("--optimizer", c.optimizer, "Default: the symmetric optimizer");
  concentrate->add_option("--min-acceptance", c.min_acceptance, "Default 1e-4");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 1;
  }

  try {
    if (c.format == "csv" && !app.got_subcommand("scan"))
      throw ValidationError("--format csv is only available for scan");
    const std::string report = run(c);
    if (c.out.empty()) std::cout << report;
    else write_file(c.out, report);
    return 0;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return 3;
  } catch (const InsufficientConditioning& e) {
    std::cerr << "insufficient conditioning: " << e.what()
              << " (acceptance rate " << e.acceptance_rate() << ")\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
