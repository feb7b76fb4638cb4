#include "gspd/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "gspd/errors.hpp"

namespace gspd {

std::string format_double(double x) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

double parse_double(std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last || text.empty())
    throw IoError("not a number: '" + std::string(text) + "'");
  return value;
}

long long parse_int(std::string_view text) {
  long long value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || text.empty())
    throw IoError("not an integer: '" + std::string(text) + "'");
  return value;
}

void write_matrix_market(std::ostream& out, const SymMatrix& m, MatrixMarketLayout layout) {
  const std::size_t p = m.p();
  std::size_t nnz = 0;
  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t i = j; i < p; ++i) nnz += m(i, j) != 0.0 ? 1 : 0;
  if (layout == MatrixMarketLayout::Auto)
    layout = 2 * nnz <= p * (p + 1) / 2 ? MatrixMarketLayout::Coordinate : MatrixMarketLayout::Array;

  if (layout == MatrixMarketLayout::Coordinate) {
    out << "%%MatrixMarket matrix coordinate real symmetric\n";
    out << p << ' ' << p << ' ' << nnz << '\n';
    for (std::size_t j = 0; j < p; ++j)
      for (std::size_t i = j; i < p; ++i)
        if (m(i, j) != 0.0) out << (i + 1) << ' ' << (j + 1) << ' ' << format_double(m(i, j)) << '\n';
  } else {
    out << "%%MatrixMarket matrix array real symmetric\n";
    out << p << ' ' << p << '\n';
    for (std::size_t j = 0; j < p; ++j)
      for (std::size_t i = j; i < p; ++i) out << format_double(m(i, j)) << '\n';
  }
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream ls(line);
  std::vector<std::string> tokens;
  for (std::string t; ls >> t;) tokens.push_back(t);
  return tokens;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

SymMatrix read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("Matrix Market: empty input");
  const auto banner = split_ws(line);
  if (banner.size() != 5 || banner[0] != "%%MatrixMarket" || lower(banner[1]) != "matrix")
    throw IoError("Matrix Market: bad banner '" + line + "'");
  const std::string layout = lower(banner[2]);
  const std::string field = lower(banner[3]);
  const std::string symmetry = lower(banner[4]);
  if (layout != "coordinate" && layout != "array") throw IoError("Matrix Market: unknown layout " + layout);
  if (field != "real" && field != "integer" && field != "double")
    throw IoError("Matrix Market: unsupported field " + field);
  if (symmetry != "symmetric" && symmetry != "general")
    throw IoError("Matrix Market: unsupported symmetry " + symmetry);
  const bool symmetric = symmetry == "symmetric";

  std::vector<std::string> tokens;
  auto next_record = [&]() -> bool {
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '%') continue;
      tokens = split_ws(line);
      if (!tokens.empty()) return true;
    }
    return false;
  };

  if (!next_record()) throw IoError("Matrix Market: missing size line");
  const long long rows = parse_int(tokens.at(0));
  const long long cols = tokens.size() > 1 ? parse_int(tokens[1]) : -1;
  if (rows < 1 || rows != cols) throw IoError("Matrix Market: matrix must be square");
  const auto p = static_cast<std::size_t>(rows);
  std::vector<double> dense(p * p, 0.0);
  std::vector<unsigned char> seen(p * p, 0);

  auto store = [&](std::size_t i, std::size_t j, double v) {
    dense[i * p + j] = v;
    seen[i * p + j] = 1;
    if (symmetric) {
      if (i < j) throw IoError("Matrix Market: symmetric file has an upper-triangle entry");
      dense[j * p + i] = v;
      seen[j * p + i] = 1;
    }
  };

  if (layout == "coordinate") {
    if (tokens.size() != 3) throw IoError("Matrix Market: coordinate size line needs 3 fields");
    const long long nnz = parse_int(tokens[2]);
    for (long long k = 0; k < nnz; ++k) {
      if (!next_record() || tokens.size() != 3)
        throw IoError("Matrix Market: expected " + std::to_string(nnz) + " entries");
      const long long i = parse_int(tokens[0]);
      const long long j = parse_int(tokens[1]);
      if (i < 1 || j < 1 || i > rows || j > rows) throw IoError("Matrix Market: index out of range");
      store(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1), parse_double(tokens[2]));
    }
  } else {
    for (std::size_t j = 0; j < p; ++j)
      for (std::size_t i = symmetric ? j : 0; i < p; ++i) {
        if (!next_record() || tokens.size() != 1) throw IoError("Matrix Market: truncated array data");
        store(i, j, parse_double(tokens[0]));
      }
  }
  if (next_record()) throw IoError("Matrix Market: trailing data");

  std::vector<Vector> out(p, Vector(p));
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) out[i][j] = dense[i * p + j];
  try {
    return SymMatrix::from_rows(out);
  } catch (const ParameterError& e) {
    throw IoError(std::string("Matrix Market: ") + e.what());
  }
}

void save_matrix_market(const std::string& path, const SymMatrix& m, MatrixMarketLayout layout) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_matrix_market(out, m, layout);
  if (!out) throw IoError("write failed: " + path);
}

SymMatrix load_matrix_market(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return read_matrix_market(in);
}

void write_manifest(std::ostream& out, const Manifest& manifest) {
  for (const auto& [key, value] : manifest) out << key << " = " << value << '\n';
}

Manifest read_manifest(std::istream& in) {
  Manifest m;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw IoError("manifest line " + std::to_string(line_no) + ": missing '='");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    m[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return m;
}

Manifest describe_result(const SpdResult& result, const SimConfig& cfg, const std::string& graph_ref) {
  Manifest m;
  m["method"] = std::string(method_code(result.method));
  m["seed"] = std::to_string(result.seed);
  m["p"] = std::to_string(result.matrix.p());
  m["edges"] = std::to_string(result.graph.edge_count());
  m["graph"] = graph_ref;
  m["zero_tol"] = format_double(cfg.zero_tol);
  m["entry_dist"] = "uniform " + format_double(cfg.entry_dist.lo) + " " + format_double(cfg.entry_dist.hi);
  if (result.method == Method::DiagDominance)
    m["perturbation_dist"] = "uniform " + format_double(cfg.perturbation_dist.lo) + " " +
                             format_double(cfg.perturbation_dist.hi);
  if (result.method == Method::EigShift) m["epsilon"] = format_double(cfg.epsilon);
  if (result.method == Method::CondShift) m["kappa0"] = format_double(cfg.kappa0);
  m["structural_residual"] = format_double(result.structural_residual);
  if (result.method == Method::PartialOrth) m["resampled_rows"] = std::to_string(result.resampled_rows);
  return m;
}

}  // namespace gspd
