#include "gspd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gspd/errors.hpp"

namespace gspd {

namespace {

void check_positive_diagonal(const SymMatrix& m) {
  for (std::size_t i = 0; i < m.p(); ++i)
    if (!(m(i, i) > 0.0))
      throw DomainError("ratio: diagonal entry " + std::to_string(i + 1) + " is not positive");
}

}  // namespace

std::vector<Vector> ratio_matrix(const SymMatrix& m) {
  check_positive_diagonal(m);
  const std::size_t p = m.p();
  std::vector<Vector> r(p, Vector(p, 0.0));
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      if (j != i) r[i][j] = std::abs(m(i, j)) / m(i, i);
  return r;
}

double max_ratio(const SymMatrix& m) {
  check_positive_diagonal(m);
  const std::size_t p = m.p();
  double best = 0.0;
  for (std::size_t i = 0; i < p; ++i) {
    double row_max = 0.0;
    for (std::size_t j = 0; j < p; ++j)
      if (j != i) row_max = std::max(row_max, std::abs(m(i, j)));
    best = std::max(best, row_max / m(i, i));
  }
  return best;
}

double dd_ratio_bound(std::size_t p, double d) {
  if (p < 2) throw ParameterError("dd_ratio_bound: p must be >= 2");
  if (!(d > 0.0 && d <= 1.0)) throw ParameterError("dd_ratio_bound: d must lie in (0, 1]");
  return 2.0 / (static_cast<double>(p - 1) * d);
}

MatrixStats compute_stats(const SymMatrix& m, const UndirectedGraph& g, double zero_tol,
                          double d_nominal) {
  MatrixStats s;
  s.p = m.p();
  s.d_nominal = d_nominal;
  s.pattern_ok = check_pattern(m, g).ok(zero_tol);
  const Vector ev = sym_eigenvalues(m);
  s.min_eig = ev.front();
  s.spd = is_spd(m);
  s.cond = (s.spd && s.min_eig > 0.0) ? ev.back() / ev.front()
                                      : std::numeric_limits<double>::quiet_NaN();
  bool diag_positive = true;
  for (std::size_t i = 0; i < m.p(); ++i) diag_positive = diag_positive && m(i, i) > 0.0;
  s.r_max = diag_positive ? max_ratio(m) : std::numeric_limits<double>::quiet_NaN();
  return s;
}

MatrixStats compute_stats(const SpdResult& r, double zero_tol, double d_nominal) {
  MatrixStats s = compute_stats(r.matrix, r.graph, zero_tol, d_nominal);
  s.pattern_ok = s.pattern_ok && r.structural_residual <= zero_tol;
  return s;
}

void RunningMoments::push(double x) noexcept {
  ++n_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
}

void RunningMoments::merge(const RunningMoments& other) noexcept {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(other.n_);
  const double delta = other.mean_ - mean_;
  const double total = na + nb;
  mean_ += delta * nb / total;
  m2_ += other.m2_ + delta * delta * na * nb / total;
  n_ += other.n_;
}

double RunningMoments::sd() const noexcept {
  return n_ > 1 ? std::sqrt(m2_ / static_cast<double>(n_ - 1)) : 0.0;
}

double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

Summary summarize(std::span<const MatrixStats> samples) {
  if (samples.empty()) throw ParameterError("summarize: empty sample list");
  Summary out;
  out.count = samples.size();
  out.p = samples.front().p;
  out.d_nominal = samples.front().d_nominal;
  RunningMoments r;
  std::vector<double> conds;
  std::size_t pattern_ok = 0;
  std::size_t spd = 0;
  for (const auto& s : samples) {
    if (s.p != out.p || s.d_nominal != out.d_nominal)
      throw ParameterError("summarize: samples mix different (p, d)");
    r.push(s.r_max);
    if (s.spd && std::isfinite(s.cond)) conds.push_back(s.cond);
    pattern_ok += s.pattern_ok ? 1 : 0;
    spd += s.spd ? 1 : 0;
  }
  const double n = static_cast<double>(samples.size());
  out.mean_r_max = r.mean();
  out.sd_r_max = r.sd();
  out.median_cond = median(std::move(conds));
  out.frac_pattern_ok = static_cast<double>(pattern_ok) / n;
  out.frac_spd = static_cast<double>(spd) / n;
  return out;
}

}  // namespace gspd
