#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "gspd/graph.hpp"
#include "gspd/linalg.hpp"
#include "gspd/rng.hpp"

namespace gspd {

enum class Method { DiagDominance, EigShift, CondShift, PartialOrth };

/// Short code used on the command line, in manifests and in CSV: dd, eig, cond, po.
std::string_view method_code(Method m) noexcept;
/// Accepts the short codes and the enum spellings (case-insensitive).
Method parse_method(std::string_view text);

/// Uniform distribution between lo and hi. Entry draws use [lo, hi);
/// perturbation draws use (lo, hi] so a perturbation with lo = 0 is
/// strictly positive.
struct UniformDist {
  double lo = 0.0;
  double hi = 1.0;

  double draw(Rng& rng) const { return rng.uniform(lo, hi); }
  double draw_open_low(Rng& rng) const { return lo + (hi - lo) * rng.uniform_pos(); }

  friend bool operator==(const UniformDist&, const UniformDist&) = default;
};

struct SimConfig {
  Method method = Method::PartialOrth;
  UniformDist entry_dist{0.0, 1.0};
  UniformDist perturbation_dist{0.0, 1.0};
  double epsilon = 1.0;   // EigShift lower bound on the spectrum
  double kappa0 = 10.0;   // CondShift target condition number
  Seed seed = 0;
  double zero_tol = 1e-8; // relative to the largest diagonal entry

  /// Throws ParameterError on invalid method-specific fields.
  void validate() const;
};

struct SpdResult {
  SymMatrix matrix;
  UndirectedGraph graph;
  Method method = Method::PartialOrth;
  std::optional<FactorMatrix> factor;
  Seed seed = 0;
  /// max |m_ij| / max_k m_kk over non-adjacent pairs, measured before
  /// structural zeros are snapped.
  double structural_residual = 0.0;
  /// Row redraws triggered by near-zero rows (PartialOrth only).
  std::size_t resampled_rows = 0;
};

/// Largest relative magnitude among entries that must be zero under g.
struct PatternCheck {
  double max_relative = 0.0;
  std::size_t row = 0;
  std::size_t col = 0;

  bool ok(double zero_tol) const noexcept { return max_relative <= zero_tol; }
};
PatternCheck check_pattern(const SymMatrix& m, const UndirectedGraph& g);

/// Off-diagonal (i, j) drawn from entry_dist when i ~ j, 0 otherwise; zero
/// diagonal. Draw order: upper triangle, row-major.
SymMatrix random_constrained_sym(const UndirectedGraph& g, const SimConfig& cfg, Rng& rng);
SymMatrix random_constrained_sym(const UndirectedGraph& g, const SimConfig& cfg);

/// Sets m_ii = sum_{j != i} |m_ij| + perturbation[i].
void apply_diag_dominance(SymMatrix& m, std::span<const double> perturbation);

/// Diagonal dominance: random_constrained_sym, then one perturbation per row.
SpdResult diag_dominance(const UndirectedGraph& g, const SimConfig& cfg);

/// M + (max(0, -lambda_min) + epsilon) I.
SymMatrix eig_shift(const SymMatrix& m, double epsilon);

/// M + ((lambda_max - kappa0 lambda_min) / (kappa0 - 1)) I, whose condition
/// number is kappa0. DomainError when lambda_max <= 0 or the spectrum is flat.
SymMatrix cond_shift(const SymMatrix& m, double kappa0);

/// One outer step of the partial orthogonalization: rebuilds an orthogonal
/// basis of span{q_j : j < i, j !~ i} by modified Gram-Schmidt, then removes
/// the components of q_i along that basis. Basis vectors with norm at most
/// zero_norm are skipped. Returns ||q_i|| afterwards.
double orthogonalize_row(FactorMatrix& q, const UndirectedGraph& g, Vertex i, double zero_norm);

/// Partial orthogonalization of q in place, rows in natural order. Rows that
/// collapse below the zero-row threshold are redrawn from cfg.entry_dist
/// using rng, at most 10 times per row. Returns the number of redraws.
std::size_t partially_orthogonalize(FactorMatrix& q, const UndirectedGraph& g,
                                    const SimConfig& cfg, Rng& rng);

/// Partial orthogonalization generator. Q has i.i.d. entry_dist entries.
SpdResult partial_orth(const UndirectedGraph& g, const SimConfig& cfg);
/// Same, starting from a caller-provided factor instead of a random one.
SpdResult partial_orth(const UndirectedGraph& g, FactorMatrix q, const SimConfig& cfg);

/// Unvalidated generation for the configured method. Structural zeros are
/// not snapped and no SPD check is done; use simulate() for that.
SpdResult generate(const UndirectedGraph& g, const SimConfig& cfg);

/// Post-conditions of a generated result: pattern within cfg.zero_tol and
/// SPD. Throws ConsistencyError carrying the offending pair or lambda_min.
void validate_result(const SpdResult& result, double zero_tol);

/// Replaces non-adjacent entries whose relative size is within zero_tol by
/// exact zeros.
void snap_structural_zeros(SpdResult& result, double zero_tol);

/// generate(), then validate_result() and snap_structural_zeros().
SpdResult simulate(const UndirectedGraph& g, const SimConfig& cfg);

}  // namespace gspd
