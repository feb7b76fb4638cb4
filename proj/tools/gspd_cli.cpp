// gspd command-line front end: graph generation, matrix simulation, stats,
// Gaussian sampling, experiment sweeps and timing runs.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "gspd/errors.hpp"
#include "gspd/graph.hpp"
#include "gspd/harness.hpp"
#include "gspd/io.hpp"
#include "gspd/matgen.hpp"
#include "gspd/metrics.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct Globals {
  std::optional<std::uint64_t> seed;
  double zero_tol = 1e-8;
  std::string out;
};

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw gspd::IoError("cannot open " + path + " for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void finish(const std::string& path) {
    stream().flush();
    if (!stream()) throw gspd::IoError("write failed: " + (path.empty() ? "<stdout>" : path));
  }

 private:
  std::ofstream file_;
};

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& item : gspd::split_list(text)) {
    const long long v = gspd::parse_int(item);
    if (v < 1) throw gspd::ParameterError("expected a positive integer, got " + item);
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

double parse_density(const std::string& text) {
  const double d = gspd::parse_double(text);
  if (!(d >= 0.0 && d <= 1.0)) throw gspd::ParameterError("--d must lie in [0, 1]");
  return d;
}

gspd::MatrixMarketLayout parse_layout(const std::string& s) {
  if (s == "auto") return gspd::MatrixMarketLayout::Auto;
  if (s == "coordinate") return gspd::MatrixMarketLayout::Coordinate;
  if (s == "array") return gspd::MatrixMarketLayout::Array;
  throw gspd::ParameterError("--layout must be auto, coordinate or array");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulate SPD matrices with zero patterns given by undirected graphs"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "RNG seed");
  app.add_option("--zero-tol", g.zero_tol, "Relative structural-zero tolerance")->capture_default_str();
  app.add_option("--out", g.out, "Output path (stdout when omitted; base name for simulate)");

  // gen-graph
  auto* gen_graph = app.add_subcommand("gen-graph", "Erdos-Renyi graph as an edge list");
  std::size_t gg_p = 0;
  std::string gg_d;
  gen_graph->add_option("--p", gg_p, "Number of vertices")->required();
  gen_graph->add_option("--d", gg_d, "Edge probability in [0, 1]")->required();

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Generate one matrix (Matrix Market + manifest)");
  std::string sim_graph;
  std::optional<std::size_t> sim_p;
  std::string sim_d;
  std::string sim_method = "po";
  double sim_epsilon = 1.0;
  double sim_kappa0 = 10.0;
  std::vector<double> sim_entry{0.0, 1.0};
  std::string sim_layout = "auto";
  simulate->add_option("--graph", sim_graph, "Edge-list file");
  simulate->add_option("--p", sim_p, "Vertices of a generated graph");
  simulate->add_option("--d", sim_d, "Edge probability of a generated graph");
  simulate->add_option("--method", sim_method, "dd, eig, cond or po")->capture_default_str();
  simulate->add_option("--epsilon", sim_epsilon, "Eigenvalue lower bound (eig)")->capture_default_str();
  simulate->add_option("--kappa0", sim_kappa0, "Target condition number (cond)")->capture_default_str();
  simulate->add_option("--entry-dist", sim_entry, "Uniform entry range lo hi")->expected(2);
  simulate->add_option("--layout", sim_layout, "auto, coordinate or array")->capture_default_str();

  // stats
  auto* stats = app.add_subcommand("stats", "Metrics of a matrix file against a graph file");
  std::string st_matrix;
  std::string st_graph;
  std::optional<double> st_d;
  bool st_no_header = false;
  stats->add_option("--matrix", st_matrix, "Matrix Market file")->required();
  stats->add_option("--graph", st_graph, "Edge-list file")->required();
  stats->add_option("--d", st_d, "Nominal density to report (default: observed)");
  stats->add_flag("--no-header", st_no_header, "Omit the CSV header");

  // sample
  auto* sample = app.add_subcommand("sample", "Zero-mean Gaussian data from a matrix file");
  std::string sa_matrix;
  std::size_t sa_n = 0;
  bool sa_concentration = false;
  sample->add_option("--matrix", sa_matrix, "Matrix Market file")->required();
  sample->add_option("--n", sa_n, "Number of rows")->required();
  sample->add_flag("--concentration", sa_concentration, "Treat the matrix as a precision matrix");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "(p, d) experiment sweep to CSV");
  std::string sw_config;
  std::string sw_p;
  std::string sw_d;
  std::optional<std::size_t> sw_graphs;
  std::optional<std::size_t> sw_matrices;
  std::string sw_methods;
  bool sw_full = false;
  bool sw_timing = false;
  bool sw_resume = false;
  std::optional<int> sw_threads;
  sweep->add_option("--config", sw_config, "key = value config file");
  sweep->add_option("--p", sw_p, "Comma-separated p values");
  sweep->add_option("--d", sw_d, "Comma-separated d values");
  sweep->add_option("--graphs", sw_graphs, "Graphs per cell");
  sweep->add_option("--matrices", sw_matrices, "Matrices per graph");
  sweep->add_option("--methods", sw_methods, "Comma-separated methods");
  sweep->add_flag("--full-grid", sw_full, "Use the full p grid up to 1000");
  sweep->add_flag("--timing", sw_timing, "Record gen_time (output no longer byte-reproducible)");
  sweep->add_flag("--resume", sw_resume, "Keep complete cells already in --out");
  sweep->add_option("--threads", sw_threads, "OpenMP threads");

  // bench
  auto* bench = app.add_subcommand("bench", "Sequential timing runs to CSV");
  std::string be_p;
  std::string be_d;
  std::size_t be_n = 100;
  std::string be_method = "po";
  bench->add_option("--p", be_p, "Comma-separated p values (default 10,25,50,100,150,200)");
  bench->add_option("--d", be_d, "Comma-separated d values (default: the standard density grid)");
  bench->add_option("--n", be_n, "Matrices per cell")->capture_default_str();
  bench->add_option("--method", be_method, "dd, eig, cond or po")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const std::uint64_t seed = g.seed.value_or(1);
  try {
    if (*gen_graph) {
      const auto graph = gspd::erdos_renyi(gg_p, parse_density(gg_d), seed);
      Output out(g.out);
      gspd::write_edge_list(out.stream(), graph);
      out.finish(g.out);
    } else if (*simulate) {
      if (g.out.empty()) throw gspd::ParameterError("simulate requires --out BASE");
      gspd::UndirectedGraph graph;
      std::string graph_ref;
      if (!sim_graph.empty()) {
        if (sim_p || !sim_d.empty()) throw gspd::ParameterError("use either --graph or --p/--d");
        graph = gspd::load_edge_list(sim_graph);
      } else {
        if (!sim_p || sim_d.empty()) throw gspd::ParameterError("simulate needs --graph or both --p and --d");
        graph = gspd::erdos_renyi(*sim_p, parse_density(sim_d), gspd::derive_seed(seed, "graph"));
      }
      graph_ref = g.out + ".edges";
      gspd::save_edge_list(graph_ref, graph);

      gspd::SimConfig cfg;
      cfg.method = gspd::parse_method(sim_method);
      cfg.epsilon = sim_epsilon;
      cfg.kappa0 = sim_kappa0;
      cfg.entry_dist = {sim_entry.at(0), sim_entry.at(1)};
      cfg.seed = gspd::derive_seed(seed, "matrix");
      cfg.zero_tol = g.zero_tol;
      const gspd::SpdResult result = gspd::simulate(graph, cfg);

      gspd::save_matrix_market(g.out + ".mtx", result.matrix, parse_layout(sim_layout));
      gspd::Manifest manifest = gspd::describe_result(result, cfg, graph_ref);
      manifest["base_seed"] = std::to_string(seed);
      manifest["matrix"] = g.out + ".mtx";
      std::ofstream mf(g.out + ".manifest", std::ios::binary);
      if (!mf) throw gspd::IoError("cannot write " + g.out + ".manifest");
      gspd::write_manifest(mf, manifest);
    } else if (*stats) {
      const auto m = gspd::load_matrix_market(st_matrix);
      const auto graph = gspd::load_edge_list(st_graph);
      if (graph.p() != m.p()) throw gspd::ParameterError("matrix and graph dimensions differ");
      const double pairs = static_cast<double>(graph.p()) * static_cast<double>(graph.p() - 1) / 2.0;
      const double d = st_d.value_or(pairs > 0 ? static_cast<double>(graph.edge_count()) / pairs : 0.0);
      const gspd::MatrixStats s = gspd::compute_stats(m, graph, g.zero_tol, d);
      Output out(g.out);
      if (!st_no_header) out.stream() << "p,d,r_max,cond,min_eig,pattern_ok,spd\n";
      out.stream() << s.p << ',' << gspd::format_double(s.d_nominal) << ','
                   << gspd::format_double(s.r_max) << ',' << gspd::format_double(s.cond) << ','
                   << gspd::format_double(s.min_eig) << ',' << (s.pattern_ok ? "true" : "false")
                   << ',' << (s.spd ? "true" : "false") << '\n';
      out.finish(g.out);
    } else if (*sample) {
      const auto m = gspd::load_matrix_market(sa_matrix);
      const auto rows = gspd::sample_gaussian(m, sa_n, sa_concentration, seed);
      Output out(g.out);
      gspd::write_data_csv(out.stream(), rows);
      out.finish(g.out);
    } else if (*sweep) {
      gspd::SweepSpec spec;
      spec.p_values = gspd::default_p_values(false);
      spec.d_values = gspd::default_d_values();
      if (!sw_config.empty()) {
        std::ifstream cf(sw_config);
        if (!cf) throw gspd::ParameterError("cannot open config " + sw_config);
        gspd::apply_sweep_config(cf, spec);
      }
      if (sw_full) spec.p_values = gspd::default_p_values(true);
      if (!sw_p.empty()) spec.p_values = parse_sizes(sw_p);
      if (!sw_d.empty()) spec.d_values = gspd::split_list(sw_d);
      if (sw_graphs) spec.graphs_per_cell = *sw_graphs;
      if (sw_matrices) spec.matrices_per_graph = *sw_matrices;
      if (!sw_methods.empty()) {
        spec.methods.clear();
        for (const auto& m : gspd::split_list(sw_methods)) spec.methods.push_back(gspd::parse_method(m));
      }
      if (g.seed) spec.base_seed = *g.seed;
      if (!g.out.empty()) spec.output_path = g.out;
      if (app.get_option("--zero-tol")->count() > 0) spec.sim.zero_tol = g.zero_tol;
      if (sw_timing) spec.record_time = true;
      if (sw_threads) spec.threads = *sw_threads;
      spec.resume = sw_resume;
      if (spec.resume && spec.output_path.empty()) throw gspd::ParameterError("--resume needs --out");
      const auto records = gspd::run_sweep(spec);
      if (spec.output_path.empty()) {
        gspd::write_sweep_header(std::cout);
        for (const auto& r : records) gspd::write_sweep_record(std::cout, r);
      }
      std::size_t failed = 0;
      for (const auto& r : records) failed += r.failed() ? 1 : 0;
      if (failed > 0) std::cerr << "gspd: " << failed << " of " << records.size() << " rows failed\n";
    } else if (*bench) {
      gspd::TimingSpec spec;
      if (!be_p.empty()) spec.p_values = parse_sizes(be_p);
      spec.d_values = be_d.empty() ? gspd::default_d_values() : gspd::split_list(be_d);
      spec.n_matrices = be_n;
      spec.method = gspd::parse_method(be_method);
      spec.base_seed = seed;
      spec.sim.zero_tol = g.zero_tol;
      const auto records = gspd::run_timing(spec);
      Output out(g.out);
      gspd::write_timing_csv(out.stream(), records);
      out.finish(g.out);
    }
  } catch (const gspd::ParameterError& e) {
    std::cerr << "gspd: " << e.what() << '\n';
    return kExitUsage;
  } catch (const gspd::IoError& e) {
    std::cerr << "gspd: " << e.what() << '\n';
    return kExitUsage;
  } catch (const gspd::NumericalError& e) {
    std::cerr << "gspd: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const gspd::DomainError& e) {
    std::cerr << "gspd: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const gspd::ConsistencyError& e) {
    std::cerr << "gspd: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "gspd: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
