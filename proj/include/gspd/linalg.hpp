#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace gspd {

using Vector = std::vector<double>;

/// Dense symmetric p x p matrix. Both triangles are stored; every write goes
/// through set() or a diagonal update, so entries (i, j) and (j, i) are
/// bitwise equal at all times.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t p);

  static SymMatrix identity(std::size_t p);
  static SymMatrix diagonal(std::span<const double> diag);
  /// Throws ParameterError unless rows form an exactly symmetric square array.
  static SymMatrix from_rows(const std::vector<Vector>& rows);

  std::size_t p() const noexcept { return p_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * p_ + j]; }
  void set(std::size_t i, std::size_t j, double value) noexcept {
    data_[i * p_ + j] = value;
    data_[j * p_ + i] = value;
  }
  void add_to_diagonal(double shift) noexcept;
  SymMatrix scaled(double factor) const;

  std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * p_, p_}; }
  std::span<const double> data() const noexcept { return data_; }
  double max_diagonal() const noexcept;

  /// Column-major view for Eigen; valid because the storage is symmetric.
  Eigen::Map<const Eigen::MatrixXd> view() const {
    return {data_.data(), static_cast<Eigen::Index>(p_), static_cast<Eigen::Index>(p_)};
  }

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  std::size_t p_ = 0;
  Vector data_;
};

/// Square p x p factor whose rows q_i generate a Gram matrix QQ^t.
class FactorMatrix {
 public:
  FactorMatrix() = default;
  explicit FactorMatrix(std::size_t p);
  /// Throws ParameterError unless rows is p rows of length p.
  static FactorMatrix from_rows(const std::vector<Vector>& rows);

  std::size_t p() const noexcept { return p_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * p_ + j]; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * p_ + j]; }
  std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * p_, p_}; }
  std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * p_, p_}; }

  /// Largest Euclidean row norm.
  double max_row_norm() const noexcept;

  friend bool operator==(const FactorMatrix&, const FactorMatrix&) = default;

 private:
  std::size_t p_ = 0;
  Vector data_;
};

double dot(std::span<const double> u, std::span<const double> v);
double norm2(std::span<const double> v);

/// 1e-12 * max(1, scale): below this a vector counts as numerically zero.
double zero_norm_threshold(double scale);

/// Orthogonal projection of u onto v. Returns the zero vector when
/// ||v|| <= zero_norm (including v == 0). Throws ParameterError on length
/// mismatch.
Vector project(std::span<const double> u, std::span<const double> v, double zero_norm = 0.0);

/// M = QQ^t, each unordered pair computed once.
SymMatrix gram(const FactorMatrix& q);

/// All eigenvalues, ascending. Throws NumericalError on non-convergence.
Vector sym_eigenvalues(const SymMatrix& m);

/// Cholesky succeeds with strictly positive pivots.
bool is_spd(const SymMatrix& m);

/// lambda_max / lambda_min. Throws DomainError when lambda_min <= 0.
double condition_number(const SymMatrix& m);
/// Same, from an already computed ascending spectrum.
double condition_number(std::span<const double> ascending_eigenvalues);

}  // namespace gspd
