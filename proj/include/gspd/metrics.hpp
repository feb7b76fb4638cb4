#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gspd/graph.hpp"
#include "gspd/linalg.hpp"
#include "gspd/matgen.hpp"

namespace gspd {

struct MatrixStats {
  double r_max = 0.0;
  double cond = 0.0;     // NaN when the matrix is not SPD
  double min_eig = 0.0;
  bool pattern_ok = false;
  bool spd = false;
  std::size_t p = 0;
  double d_nominal = 0.0;
};

/// r_ij = |m_ij| / m_ii for j != i, zero diagonal. Row-normalized, so not
/// symmetric in general. DomainError on a nonpositive diagonal entry.
std::vector<Vector> ratio_matrix(const SymMatrix& m);

/// R = max over ordered pairs i != j of r_ij.
double max_ratio(const SymMatrix& m);

/// 2 / ((p - 1) d): asymptotic almost-sure bound on r_ij for diagonal
/// dominance with U[0, 1] entries.
double dd_ratio_bound(std::size_t p, double d);

/// Stats of m against g. pattern_ok compares the largest non-adjacent
/// entry, relative to max_k m_kk, with zero_tol.
MatrixStats compute_stats(const SymMatrix& m, const UndirectedGraph& g, double zero_tol,
                          double d_nominal);
/// Same, but pattern_ok uses the pre-snap residual recorded by the generator.
MatrixStats compute_stats(const SpdResult& r, double zero_tol, double d_nominal);

/// Welford accumulator; merge() combines shards exactly as if the samples
/// had been pushed into one accumulator (up to rounding).
class RunningMoments {
 public:
  void push(double x) noexcept;
  void merge(const RunningMoments& other) noexcept;
  std::size_t count() const noexcept { return n_; }
  double mean() const noexcept { return mean_; }
  /// Sample (n - 1) standard deviation; 0 for a single sample.
  double sd() const noexcept;

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

struct Summary {
  std::size_t count = 0;
  double mean_r_max = 0.0;
  double sd_r_max = 0.0;
  double median_cond = 0.0;  // over SPD samples; NaN if none
  double frac_pattern_ok = 0.0;
  double frac_spd = 0.0;
  std::size_t p = 0;
  double d_nominal = 0.0;
};

/// ParameterError on an empty list or mixed (p, d).
Summary summarize(std::span<const MatrixStats> samples);

double median(std::vector<double> values);

}  // namespace gspd
