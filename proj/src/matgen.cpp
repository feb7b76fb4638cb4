#include "gspd/matgen.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <string>

#include "gspd/errors.hpp"
#include "gspd/kernels.hpp"

namespace gspd {

namespace {

constexpr std::size_t kMaxRowRedraws = 10;

// Scratch space for the per-row orthogonal basis; reused across rows.
struct BasisWorkspace {
  Vector vectors;  // row-major, one basis vector per row
  Vector norms2;
};

double orthogonalize_row_impl(FactorMatrix& q, const UndirectedGraph& g, Vertex i,
                              double zero_norm, BasisWorkspace& ws) {
  const std::size_t p = q.p();
  const double zero_norm2 = zero_norm * zero_norm;
  ws.vectors.resize(i * p);
  ws.norms2.resize(i);
  std::size_t count = 0;

  // Basis of span{q_j : j < i, j !~ i}, rebuilt from the current rows.
  for (Vertex j = 0; j < i; ++j) {
    if (g.adjacent_unchecked(i, j)) continue;
    double* tq = ws.vectors.data() + count * p;
    std::copy_n(q.row(j).data(), p, tq);
    for (std::size_t k = 0; k < count; ++k) {
      const double nk = ws.norms2[k];
      if (nk <= zero_norm2) continue;
      const double* bk = ws.vectors.data() + k * p;
      kernels::axpy(-kernels::dot(tq, bk, p) / nk, bk, tq, p);
    }
    ws.norms2[count] = kernels::dot(tq, tq, p);
    ++count;
  }

  double* qi = q.row(i).data();
  for (std::size_t k = 0; k < count; ++k) {
    const double nk = ws.norms2[k];
    if (nk <= zero_norm2) continue;
    const double* bk = ws.vectors.data() + k * p;
    kernels::axpy(-kernels::dot(qi, bk, p) / nk, bk, qi, p);
  }
  return std::sqrt(kernels::dot(qi, qi, p));
}

void fill_factor(FactorMatrix& q, const UniformDist& dist, Rng& rng) {
  for (std::size_t i = 0; i < q.p(); ++i)
    for (double& x : q.row(i)) x = dist.draw(rng);
}

}  // namespace

std::string_view method_code(Method m) noexcept {
  switch (m) {
    case Method::DiagDominance: return "dd";
    case Method::EigShift: return "eig";
    case Method::CondShift: return "cond";
    case Method::PartialOrth: return "po";
  }
  return "?";
}

Method parse_method(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "dd" || s == "diagdominance" || s == "diag_dominance") return Method::DiagDominance;
  if (s == "eig" || s == "eigshift" || s == "eig_shift") return Method::EigShift;
  if (s == "cond" || s == "condshift" || s == "cond_shift") return Method::CondShift;
  if (s == "po" || s == "partialorth" || s == "partial_orth") return Method::PartialOrth;
  throw ParameterError("unknown method '" + std::string(text) + "' (expected dd, eig, cond or po)");
}

void SimConfig::validate() const {
  if (!(entry_dist.lo <= entry_dist.hi) || !std::isfinite(entry_dist.lo) ||
      !std::isfinite(entry_dist.hi))
    throw ParameterError("entry distribution needs finite lo <= hi");
  if (!(perturbation_dist.lo >= 0.0 && perturbation_dist.lo < perturbation_dist.hi) ||
      !std::isfinite(perturbation_dist.hi))
    throw ParameterError("perturbation distribution must satisfy 0 <= lo < hi < inf");
  if (method == Method::EigShift && !(epsilon > 0.0))
    throw ParameterError("eig shift requires epsilon > 0");
  if (method == Method::CondShift && !(kappa0 > 1.0))
    throw ParameterError("cond shift requires kappa0 > 1");
  if (!(zero_tol >= 0.0)) throw ParameterError("zero_tol must be nonnegative");
}

PatternCheck check_pattern(const SymMatrix& m, const UndirectedGraph& g) {
  if (m.p() != g.p()) throw ParameterError("check_pattern: dimension mismatch");
  PatternCheck out;
  const double scale = m.max_diagonal();
  double worst = 0.0;
  for (std::size_t i = 0; i < m.p(); ++i)
    for (std::size_t j = i + 1; j < m.p(); ++j)
      if (!g.adjacent_unchecked(i, j) && std::abs(m(i, j)) > worst) {
        worst = std::abs(m(i, j));
        out.row = i;
        out.col = j;
      }
  if (worst > 0.0) out.max_relative = scale > 0.0 ? worst / scale : INFINITY;
  return out;
}

SymMatrix random_constrained_sym(const UndirectedGraph& g, const SimConfig& cfg, Rng& rng) {
  const std::size_t p = g.p();
  SymMatrix m(p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j)
      if (g.adjacent_unchecked(i, j)) m.set(i, j, cfg.entry_dist.draw(rng));
  return m;
}

SymMatrix random_constrained_sym(const UndirectedGraph& g, const SimConfig& cfg) {
  Rng rng(cfg.seed);
  return random_constrained_sym(g, cfg, rng);
}

void apply_diag_dominance(SymMatrix& m, std::span<const double> perturbation) {
  if (perturbation.size() != m.p()) throw ParameterError("apply_diag_dominance: size mismatch");
  const Vector sums = kernels::offdiag_abs_row_sums_parallel(m);
  for (std::size_t i = 0; i < m.p(); ++i) m.set(i, i, sums[i] + perturbation[i]);
}

SpdResult diag_dominance(const UndirectedGraph& g, const SimConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  SymMatrix m = random_constrained_sym(g, cfg, rng);
  Vector delta(g.p());
  for (double& x : delta) x = cfg.perturbation_dist.draw_open_low(rng);
  apply_diag_dominance(m, delta);
  SpdResult r{std::move(m), g, Method::DiagDominance, std::nullopt, cfg.seed, 0.0, 0};
  r.structural_residual = check_pattern(r.matrix, g).max_relative;
  return r;
}

SymMatrix eig_shift(const SymMatrix& m, double epsilon) {
  if (!(epsilon > 0.0)) throw ParameterError("eig_shift: epsilon must be > 0");
  const Vector ev = sym_eigenvalues(m);
  const double negative_part = std::max(0.0, -ev.front());
  SymMatrix out = m;
  out.add_to_diagonal(negative_part + epsilon);
  return out;
}

SymMatrix cond_shift(const SymMatrix& m, double kappa0) {
  if (!(kappa0 > 1.0)) throw ParameterError("cond_shift: kappa0 must be > 1");
  const Vector ev = sym_eigenvalues(m);
  const double lo = ev.front();
  const double hi = ev.back();
  if (!(hi > 0.0)) {
    std::ostringstream msg;
    msg << "cond_shift: lambda_max = " << hi << " must be positive";
    throw DomainError(msg.str());
  }
  if (!(hi > lo)) throw DomainError("cond_shift: flat spectrum (multiple of the identity)");
  SymMatrix out = m;
  out.add_to_diagonal((hi - kappa0 * lo) / (kappa0 - 1.0));
  return out;
}

double orthogonalize_row(FactorMatrix& q, const UndirectedGraph& g, Vertex i, double zero_norm) {
  if (q.p() != g.p()) throw ParameterError("orthogonalize_row: dimension mismatch");
  if (i >= g.p()) throw ParameterError("orthogonalize_row: row out of range");
  BasisWorkspace ws;
  return orthogonalize_row_impl(q, g, i, zero_norm, ws);
}

std::size_t partially_orthogonalize(FactorMatrix& q, const UndirectedGraph& g,
                                    const SimConfig& cfg, Rng& rng) {
  if (q.p() != g.p()) throw ParameterError("partial_orth: factor and graph dimensions differ");
  BasisWorkspace ws;
  double zero_norm = zero_norm_threshold(q.max_row_norm());
  std::size_t redraws = 0;
  for (Vertex i = 0; i < q.p(); ++i) {
    std::size_t attempts = 0;
    while (orthogonalize_row_impl(q, g, i, zero_norm, ws) <= zero_norm) {
      if (attempts == kMaxRowRedraws)
        throw NumericalError("partial_orth: row " + std::to_string(i + 1) +
                             " stayed numerically zero after " +
                             std::to_string(kMaxRowRedraws) + " redraws");
      for (double& x : q.row(i)) x = cfg.entry_dist.draw(rng);
      zero_norm = std::max(zero_norm, zero_norm_threshold(norm2(q.row(i))));
      ++attempts;
      ++redraws;
    }
  }
  return redraws;
}

SpdResult partial_orth(const UndirectedGraph& g, FactorMatrix q, const SimConfig& cfg) {
  cfg.validate();
  Rng rng(derive_seed(cfg.seed, "resample"));
  const std::size_t redraws = partially_orthogonalize(q, g, cfg, rng);
  SymMatrix m = gram(q);
  SpdResult r{std::move(m), g, Method::PartialOrth, std::move(q), cfg.seed, 0.0, redraws};
  r.structural_residual = check_pattern(r.matrix, g).max_relative;
  return r;
}

SpdResult partial_orth(const UndirectedGraph& g, const SimConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  FactorMatrix q(g.p());
  fill_factor(q, cfg.entry_dist, rng);
  const std::size_t redraws = partially_orthogonalize(q, g, cfg, rng);
  SymMatrix m = gram(q);
  SpdResult r{std::move(m), g, Method::PartialOrth, std::move(q), cfg.seed, 0.0, redraws};
  r.structural_residual = check_pattern(r.matrix, g).max_relative;
  return r;
}

SpdResult generate(const UndirectedGraph& g, const SimConfig& cfg) {
  cfg.validate();
  switch (cfg.method) {
    case Method::DiagDominance: return diag_dominance(g, cfg);
    case Method::PartialOrth: return partial_orth(g, cfg);
    case Method::EigShift:
    case Method::CondShift: {
      const SymMatrix base = random_constrained_sym(g, cfg);
      SymMatrix m = cfg.method == Method::EigShift ? eig_shift(base, cfg.epsilon)
                                                   : cond_shift(base, cfg.kappa0);
      SpdResult r{std::move(m), g, cfg.method, std::nullopt, cfg.seed, 0.0, 0};
      r.structural_residual = check_pattern(r.matrix, g).max_relative;
      return r;
    }
  }
  throw ParameterError("unknown method");
}

void validate_result(const SpdResult& result, double zero_tol) {
  if (result.matrix.p() != result.graph.p())
    throw ConsistencyError("matrix dimension differs from graph", 0, 0, 0.0);
  const PatternCheck pc = check_pattern(result.matrix, result.graph);
  if (!pc.ok(zero_tol)) {
    std::ostringstream msg;
    msg << "structural zero violated at (" << pc.row + 1 << ", " << pc.col + 1
        << "): relative magnitude " << pc.max_relative << " > " << zero_tol;
    throw ConsistencyError(msg.str(), pc.row, pc.col, result.matrix(pc.row, pc.col));
  }
  if (!is_spd(result.matrix)) {
    const double lo = sym_eigenvalues(result.matrix).front();
    std::ostringstream msg;
    msg << "generated matrix is not positive definite (lambda_min = " << lo << ")";
    throw ConsistencyError(msg.str(), lo);
  }
}

void snap_structural_zeros(SpdResult& result, double zero_tol) {
  const double cutoff = zero_tol * result.matrix.max_diagonal();
  const std::size_t p = result.matrix.p();
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j)
      if (!result.graph.adjacent_unchecked(i, j) && std::abs(result.matrix(i, j)) <= cutoff)
        result.matrix.set(i, j, 0.0);
}

SpdResult simulate(const UndirectedGraph& g, const SimConfig& cfg) {
  SpdResult r = generate(g, cfg);
  validate_result(r, cfg.zero_tol);
  snap_structural_zeros(r, cfg.zero_tol);
  return r;
}

}  // namespace gspd
