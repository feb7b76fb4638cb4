#include "gspd/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <istream>
#include <iterator>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "gspd/errors.hpp"
#include "gspd/io.hpp"
#include "gspd/kernels.hpp"

namespace gspd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kMaxInvertibleCondition = 1e14;

using Clock = std::chrono::steady_clock;

std::vector<std::size_t> canonical_p(std::vector<std::size_t> ps) {
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  return ps;
}

std::vector<std::string> canonical_d(std::vector<std::string> ds) {
  std::stable_sort(ds.begin(), ds.end(), [](const std::string& a, const std::string& b) {
    return parse_double(a) < parse_double(b);
  });
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  return ds;
}

std::vector<Method> canonical_methods(std::vector<Method> ms) {
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  return ms;
}

double checked_d(const std::string& d) {
  const double value = parse_double(d);
  if (!(value >= 0.0 && value <= 1.0)) throw ParameterError("density '" + d + "' outside [0, 1]");
  return value;
}

// Thread count override for the lifetime of a scope.
class ThreadScope {
 public:
  explicit ThreadScope(int n) : previous_(kernels::max_threads()) {
    if (n > 0) kernels::set_threads(n);
  }
  ~ThreadScope() { kernels::set_threads(previous_); }
  ThreadScope(const ThreadScope&) = delete;
  ThreadScope& operator=(const ThreadScope&) = delete;

 private:
  int previous_;
};

}  // namespace

std::vector<std::size_t> default_p_values(bool full) {
  std::vector<std::size_t> ps{10, 20, 30, 40, 50, 60, 70, 80, 90, 100, 125, 150, 200};
  if (full) ps.insert(ps.end(), {250, 300, 400, 500, 750, 1000});
  return ps;
}

std::vector<std::string> default_d_values() { return {"0.0025", "0.005", "0.025", "0.05", "0.25", "0.5"}; }

void SweepSpec::validate() const {
  if (p_values.empty() || d_values.empty() || methods.empty())
    throw ParameterError("sweep: p, d and method lists must be nonempty");
  for (std::size_t p : p_values)
    if (p == 0) throw ParameterError("sweep: p must be >= 1");
  for (const auto& d : d_values) {
    try {
      checked_d(d);
    } catch (const IoError&) {
      throw ParameterError("sweep: density '" + d + "' is not a number");
    }
  }
  if (graphs_per_cell == 0 || matrices_per_graph == 0)
    throw ParameterError("sweep: graphs_per_cell and matrices_per_graph must be >= 1");
  for (Method m : methods) {
    SimConfig cfg = sim;
    cfg.method = m;
    cfg.validate();
  }
}

Seed sweep_graph_seed(Seed base, std::size_t p, std::string_view d, std::size_t graph_index) {
  std::ostringstream key;
  key << "graph|" << p << '|' << d << '|' << graph_index;
  return derive_seed(base, key.str());
}

Seed sweep_matrix_seed(Seed base, std::size_t p, std::string_view d, Method method,
                       std::size_t graph_index, std::size_t matrix_index) {
  std::ostringstream key;
  key << "matrix|" << p << '|' << d << '|' << method_code(method) << '|' << graph_index << '|'
      << matrix_index;
  return derive_seed(base, key.str());
}

std::vector<SweepRecord> run_cell(const SweepSpec& spec, std::size_t p, const std::string& d,
                                  Method method) {
  const double density = checked_d(d);
  const std::size_t per_graph = spec.matrices_per_graph;
  std::vector<UndirectedGraph> graphs;
  graphs.reserve(spec.graphs_per_cell);
  for (std::size_t g = 1; g <= spec.graphs_per_cell; ++g)
    graphs.push_back(erdos_renyi(p, density, sweep_graph_seed(spec.base_seed, p, d, g)));

  const std::size_t jobs = spec.graphs_per_cell * per_graph;
  std::vector<SweepRecord> out(jobs);
  const auto n = static_cast<long long>(jobs);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long job = 0; job < n; ++job) {
    const auto k = static_cast<std::size_t>(job);
    SweepRecord& rec = out[k];
    rec.p = p;
    rec.d = d;
    rec.method = method;
    rec.graph_index = k / per_graph + 1;
    rec.matrix_index = k % per_graph + 1;
    rec.seed = sweep_matrix_seed(spec.base_seed, p, d, method, rec.graph_index, rec.matrix_index);
    SimConfig cfg = spec.sim;
    cfg.method = method;
    cfg.seed = rec.seed;
    try {
      const auto t0 = Clock::now();
      const SpdResult result = generate(graphs[rec.graph_index - 1], cfg);
      const auto t1 = Clock::now();
      if (spec.record_time) rec.gen_time = std::chrono::duration<double>(t1 - t0).count();
      const MatrixStats stats = compute_stats(result, cfg.zero_tol, density);
      rec.r_max = stats.r_max;
      rec.cond = stats.cond;
      rec.min_eig = stats.min_eig;
      rec.pattern_ok = stats.pattern_ok;
    } catch (const std::exception&) {
      rec.r_max = kNaN;
      rec.cond = kNaN;
      rec.min_eig = kNaN;
      rec.pattern_ok = false;
    }
  }
  return out;
}

void write_sweep_header(std::ostream& out) { out << kSweepCsvHeader << '\n'; }

void write_sweep_record(std::ostream& out, const SweepRecord& r) {
  out << r.p << ',' << r.d << ',' << method_code(r.method) << ',' << r.graph_index << ','
      << r.matrix_index << ',' << r.seed << ',' << format_double(r.r_max) << ','
      << format_double(r.cond) << ',' << format_double(r.min_eig) << ','
      << (r.pattern_ok ? "true" : "false") << ',' << format_double(r.gen_time) << '\n';
}

std::vector<SweepRecord> read_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSweepCsvHeader)
    throw IoError("sweep CSV: missing or unexpected header");
  std::vector<SweepRecord> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) f.push_back(cell);
    if (f.size() != 11)
      throw IoError("sweep CSV line " + std::to_string(line_no) + ": expected 11 fields");
    SweepRecord r;
    try {
      r.p = static_cast<std::size_t>(parse_int(f[0]));
      r.d = f[1];
      r.method = parse_method(f[2]);
      r.graph_index = static_cast<std::size_t>(parse_int(f[3]));
      r.matrix_index = static_cast<std::size_t>(parse_int(f[4]));
      std::istringstream seed_stream(f[5]);
      if (!(seed_stream >> r.seed)) throw IoError("bad seed");
      r.r_max = parse_double(f[6]);
      r.cond = parse_double(f[7]);
      r.min_eig = parse_double(f[8]);
      if (f[9] != "true" && f[9] != "false") throw IoError("pattern_ok must be true or false");
      r.pattern_ok = f[9] == "true";
      r.gen_time = parse_double(f[10]);
    } catch (const std::exception& e) {
      throw IoError("sweep CSV line " + std::to_string(line_no) + ": " + e.what());
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<SweepRecord> run_sweep(const SweepSpec& spec) {
  spec.validate();
  ThreadScope threads(spec.threads);
  const auto ps = canonical_p(spec.p_values);
  const auto ds = canonical_d(spec.d_values);
  const auto methods = canonical_methods(spec.methods);
  const std::size_t per_cell = spec.graphs_per_cell * spec.matrices_per_graph;

  using CellKey = std::tuple<std::size_t, std::string, Method>;
  std::map<CellKey, std::vector<SweepRecord>> done;
  if (spec.resume && !spec.output_path.empty() && std::filesystem::exists(spec.output_path)) {
    std::ifstream previous(spec.output_path, std::ios::binary);
    std::string text((std::istreambuf_iterator<char>(previous)), std::istreambuf_iterator<char>());
    // An interrupted write can leave a partial last row; drop it.
    if (!text.empty() && text.back() != '\n') text.erase(text.find_last_of('\n') + 1);
    std::istringstream previous_rows(text);
    const std::vector<SweepRecord> old = read_sweep_csv(previous_rows);
    for (const auto& r : old) done[{r.p, r.d, r.method}].push_back(r);
    std::erase_if(done, [&](const auto& kv) { return kv.second.size() != per_cell; });
  }

  std::ofstream csv;
  if (!spec.output_path.empty()) {
    csv.open(spec.output_path, std::ios::binary | std::ios::trunc);
    if (!csv) throw IoError("cannot open " + spec.output_path + " for writing");
    write_sweep_header(csv);
    csv.flush();
  }

  std::vector<SweepRecord> all;
  for (std::size_t p : ps)
    for (const auto& d : ds)
      for (Method m : methods) {
        std::vector<SweepRecord> cell;
        if (auto it = done.find({p, d, m}); it != done.end()) {
          cell = std::move(it->second);
        } else {
          cell = run_cell(spec, p, d, m);
        }
        if (csv.is_open()) {
          for (const auto& r : cell) write_sweep_record(csv, r);
          csv.flush();
          if (!csv) throw IoError("write failed: " + spec.output_path);
        }
        all.insert(all.end(), std::make_move_iterator(cell.begin()),
                   std::make_move_iterator(cell.end()));
      }
  return all;
}

std::vector<TimingRecord> run_timing(const TimingSpec& spec) {
  if (spec.n_matrices == 0) throw ParameterError("timing: n_matrices must be >= 1");
  if (spec.p_values.empty() || spec.d_values.empty())
    throw ParameterError("timing: p and d lists must be nonempty");
  SimConfig base = spec.sim;
  base.method = spec.method;
  base.validate();
  ThreadScope single(1);

  std::vector<TimingRecord> out;
  for (std::size_t p : canonical_p(spec.p_values))
    for (const auto& d : canonical_d(spec.d_values)) {
      const double density = checked_d(d);
      Clock::duration total{};
      for (std::size_t k = 1; k <= spec.n_matrices; ++k) {
        const UndirectedGraph g =
            erdos_renyi(p, density, sweep_graph_seed(spec.base_seed, p, d, k));
        SimConfig cfg = base;
        cfg.seed = sweep_matrix_seed(spec.base_seed, p, d, spec.method, k, 1);
        const auto t0 = Clock::now();
        const SpdResult r = generate(g, cfg);
        total += Clock::now() - t0;
        if (r.matrix.p() != p) throw ConsistencyError("timing: wrong dimension", 0, 0, 0.0);
      }
      out.push_back({p, d, spec.method, std::chrono::duration<double>(total).count()});
    }
  return out;
}

void write_timing_csv(std::ostream& out, const std::vector<TimingRecord>& records) {
  out << "p,d,method,total_seconds\n";
  for (const auto& r : records)
    out << r.p << ',' << r.d << ',' << method_code(r.method) << ',' << format_double(r.total_seconds)
        << '\n';
}

std::vector<Vector> sample_gaussian(const SymMatrix& m, std::size_t n, bool as_concentration,
                                    Seed seed) {
  if (n == 0) throw ParameterError("sample_gaussian: n must be >= 1");
  const std::size_t p = m.p();
  Eigen::LLT<Eigen::MatrixXd> llt(m.view());
  if (llt.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "sample_gaussian: matrix is not positive definite (lambda_min = "
        << sym_eigenvalues(m).front() << ")";
    throw NumericalError(msg.str());
  }
  if (as_concentration) {
    const double kappa = condition_number(m);
    if (!(kappa <= kMaxInvertibleCondition)) {
      std::ostringstream msg;
      msg << "sample_gaussian: concentration matrix too ill-conditioned to invert (condition number "
          << kappa << ")";
      throw NumericalError(msg.str());
    }
  }
  const Eigen::MatrixXd lower = llt.matrixL();
  Rng rng(seed);
  std::vector<Vector> rows(n, Vector(p));
  Eigen::VectorXd z(static_cast<Eigen::Index>(p));
  for (std::size_t s = 0; s < n; ++s) {
    for (Eigen::Index k = 0; k < z.size(); ++k) z[k] = rng.normal();
    // Covariance L L^t: x = L z. Precision L L^t: solve L^t x = z, cov (L L^t)^{-1}.
    const Eigen::VectorXd x = as_concentration
                                  ? Eigen::VectorXd(lower.transpose().triangularView<Eigen::Upper>().solve(z))
                                  : Eigen::VectorXd(lower.triangularView<Eigen::Lower>() * z);
    std::copy(x.data(), x.data() + x.size(), rows[s].begin());
  }
  return rows;
}

void write_data_csv(std::ostream& out, const std::vector<Vector>& rows) {
  const std::size_t p = rows.empty() ? 0 : rows.front().size();
  for (std::size_t j = 0; j < p; ++j) out << (j ? "," : "") << 'x' << (j + 1);
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << format_double(row[j]);
    out << '\n';
  }
}

}  // namespace gspd
