#include "gspd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "gspd/errors.hpp"
#include "gspd/kernels.hpp"

namespace gspd {

SymMatrix::SymMatrix(std::size_t p) : p_(p), data_(p * p, 0.0) {}

SymMatrix SymMatrix::identity(std::size_t p) {
  SymMatrix m(p);
  for (std::size_t i = 0; i < p; ++i) m.set(i, i, 1.0);
  return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> diag) {
  SymMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m.set(i, i, diag[i]);
  return m;
}

SymMatrix SymMatrix::from_rows(const std::vector<Vector>& rows) {
  const std::size_t p = rows.size();
  SymMatrix m(p);
  for (std::size_t i = 0; i < p; ++i) {
    if (rows[i].size() != p) throw ParameterError("SymMatrix::from_rows: matrix is not square");
    for (std::size_t j = 0; j < p; ++j) {
      if (rows[i][j] != rows[j][i])
        throw ParameterError("SymMatrix::from_rows: entries (" + std::to_string(i) + ", " +
                             std::to_string(j) + ") and its mirror differ");
      m.data_[i * p + j] = rows[i][j];
    }
  }
  return m;
}

void SymMatrix::add_to_diagonal(double shift) noexcept {
  for (std::size_t i = 0; i < p_; ++i) data_[i * p_ + i] += shift;
}

SymMatrix SymMatrix::scaled(double factor) const {
  SymMatrix out = *this;
  for (auto& x : out.data_) x *= factor;
  return out;
}

double SymMatrix::max_diagonal() const noexcept {
  double best = p_ ? data_[0] : 0.0;
  for (std::size_t i = 1; i < p_; ++i) best = std::max(best, data_[i * p_ + i]);
  return best;
}

FactorMatrix::FactorMatrix(std::size_t p) : p_(p), data_(p * p, 0.0) {}

FactorMatrix FactorMatrix::from_rows(const std::vector<Vector>& rows) {
  const std::size_t p = rows.size();
  FactorMatrix q(p);
  for (std::size_t i = 0; i < p; ++i) {
    if (rows[i].size() != p)
      throw ParameterError("FactorMatrix::from_rows: row " + std::to_string(i) + " has length " +
                           std::to_string(rows[i].size()) + ", expected " + std::to_string(p));
    std::copy(rows[i].begin(), rows[i].end(), q.row(i).begin());
  }
  return q;
}

double FactorMatrix::max_row_norm() const noexcept {
  double best = 0.0;
  for (std::size_t i = 0; i < p_; ++i) best = std::max(best, norm2(row(i)));
  return best;
}

double dot(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw ParameterError("dot: length mismatch");
  return kernels::dot(u.data(), v.data(), u.size());
}

double norm2(std::span<const double> v) { return std::sqrt(kernels::dot(v.data(), v.data(), v.size())); }

double zero_norm_threshold(double scale) { return 1e-12 * std::max(1.0, scale); }

Vector project(std::span<const double> u, std::span<const double> v, double zero_norm) {
  if (u.size() != v.size()) throw ParameterError("project: length mismatch");
  Vector out(v.size(), 0.0);
  const double vv = dot(v, v);
  if (vv == 0.0 || std::sqrt(vv) <= zero_norm) return out;
  const double coeff = dot(u, v) / vv;
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = coeff * v[k];
  return out;
}

SymMatrix gram(const FactorMatrix& q) { return kernels::gram_parallel(q); }

Vector sym_eigenvalues(const SymMatrix& m) {
  if (m.p() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.view(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "sym_eigenvalues: QR iteration did not converge for p = " << m.p()
        << " (limit " << Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>::m_maxIterations
        << " sweeps per eigenvalue, max |entry| = " << m.view().cwiseAbs().maxCoeff() << ")";
    throw NumericalError(msg.str());
  }
  const auto& ev = solver.eigenvalues();
  return Vector(ev.data(), ev.data() + ev.size());
}

bool is_spd(const SymMatrix& m) {
  if (m.p() == 0) return false;
  for (double x : m.data())
    if (!std::isfinite(x)) return false;
  Eigen::LLT<Eigen::MatrixXd> llt(m.view());
  return llt.info() == Eigen::Success;
}

double condition_number(std::span<const double> ascending_eigenvalues) {
  if (ascending_eigenvalues.empty()) throw DomainError("condition_number: empty spectrum");
  const double lo = ascending_eigenvalues.front();
  const double hi = ascending_eigenvalues.back();
  if (!(lo > 0.0)) {
    std::ostringstream msg;
    msg << "condition_number: matrix is not positive definite (lambda_min = " << lo << ")";
    throw DomainError(msg.str());
  }
  return hi / lo;
}

double condition_number(const SymMatrix& m) { return condition_number(sym_eigenvalues(m)); }

}  // namespace gspd
