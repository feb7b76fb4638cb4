#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "gspd/matgen.hpp"
#include "gspd/metrics.hpp"
#include "gspd/rng.hpp"

namespace gspd {

/// Default sweep grid. The desk grid stops at p = 200; full = true adds
/// 250 ... 1000.
std::vector<std::size_t> default_p_values(bool full);
std::vector<std::string> default_d_values();

struct SweepSpec {
  std::vector<std::size_t> p_values;
  std::vector<std::string> d_values;  // decimal strings, used verbatim in CSV and seeds
  std::size_t graphs_per_cell = 10;
  std::size_t matrices_per_graph = 10;
  std::vector<Method> methods{Method::DiagDominance, Method::PartialOrth};
  Seed base_seed = 1;
  std::string output_path;  // empty: no file
  SimConfig sim;            // distributions, epsilon, kappa0, zero_tol; seed ignored
  bool record_time = false; // gen_time is 0 unless set, keeping the CSV deterministic
  bool resume = false;      // keep complete cells already present in output_path
  int threads = 0;          // 0: OpenMP default

  /// Throws ParameterError on empty lists, d outside [0, 1], zero counts.
  void validate() const;
};

struct SweepRecord {
  std::size_t p = 0;
  std::string d;
  Method method = Method::PartialOrth;
  std::size_t graph_index = 0;   // 1-based
  std::size_t matrix_index = 0;  // 1-based
  Seed seed = 0;
  double r_max = 0.0;
  double cond = 0.0;
  double min_eig = 0.0;
  bool pattern_ok = false;
  double gen_time = 0.0;

  /// Generation or validation failed: pattern broken or not SPD.
  bool failed() const noexcept { return !pattern_ok || !(min_eig > 0.0); }

  friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

inline constexpr std::string_view kSweepCsvHeader =
    "p,d,method,graph_index,matrix_index,seed,r_max,cond,min_eig,pattern_ok,gen_time";

/// Seed of graph g (1-based) in cell (p, d): shared by every method so that
/// methods are compared on the same graphs.
Seed sweep_graph_seed(Seed base, std::size_t p, std::string_view d, std::size_t graph_index);
/// Seed of matrix m on graph g for one method.
Seed sweep_matrix_seed(Seed base, std::size_t p, std::string_view d, Method method,
                       std::size_t graph_index, std::size_t matrix_index);

/// Runs every (p, d, method) cell in canonical order (p ascending, d
/// ascending, method enum order). Matrices within a cell are generated in
/// parallel; rows are emitted in index order and the CSV is flushed after
/// each cell.
std::vector<SweepRecord> run_sweep(const SweepSpec& spec);

/// One cell of a sweep, in record order.
std::vector<SweepRecord> run_cell(const SweepSpec& spec, std::size_t p, const std::string& d,
                                  Method method);

void write_sweep_header(std::ostream& out);
void write_sweep_record(std::ostream& out, const SweepRecord& r);
std::vector<SweepRecord> read_sweep_csv(std::istream& in);

struct TimingSpec {
  std::vector<std::size_t> p_values{10, 25, 50, 100, 150, 200};
  std::vector<std::string> d_values;
  std::size_t n_matrices = 100;
  Method method = Method::PartialOrth;
  Seed base_seed = 1;
  SimConfig sim;
};

struct TimingRecord {
  std::size_t p = 0;
  std::string d;
  Method method = Method::PartialOrth;
  double total_seconds = 0.0;
};

/// Sequential wall-clock total for n_matrices generations per cell. A fresh
/// graph is drawn for every matrix; only generation is timed.
std::vector<TimingRecord> run_timing(const TimingSpec& spec);
void write_timing_csv(std::ostream& out, const std::vector<TimingRecord>& records);

/// n i.i.d. N(0, S) rows, S = m (as_concentration = false) or S = m^{-1}
/// (as_concentration = true). NumericalError when m cannot be factored or
/// is too ill-conditioned to invert.
std::vector<Vector> sample_gaussian(const SymMatrix& m, std::size_t n, bool as_concentration,
                                    Seed seed);
void write_data_csv(std::ostream& out, const std::vector<Vector>& rows);

/// Overrides spec fields from a key = value config file (see README).
/// ParameterError on unknown keys or malformed values.
void apply_sweep_config(std::istream& in, SweepSpec& spec);

/// "10,20,30" / "[10, 20]" style list parsing shared by config and CLI.
std::vector<std::string> split_list(std::string_view text);

}  // namespace gspd
