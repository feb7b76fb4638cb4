#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gspd {

/// Invalid argument to a public operation (bad p, d, vertex, length mismatch).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input outside the mathematical domain of an operation (e.g. non-SPD input
/// to condition_number, nonpositive diagonal in ratio_matrix).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Numerical breakdown: eigensolver non-convergence, failed factorization,
/// exhausted resampling.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A generated matrix violated one of its own post-conditions.
class ConsistencyError : public std::logic_error {
 public:
  /// Structural-zero violation at (row, col), 0-based.
  ConsistencyError(const std::string& what, std::size_t row, std::size_t col, double value);
  /// SPD violation, carrying the offending minimum eigenvalue.
  ConsistencyError(const std::string& what, double min_eigenvalue);

  bool has_position() const noexcept { return has_position_; }
  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }
  double value() const noexcept { return value_; }

 private:
  bool has_position_ = false;
  std::size_t row_ = 0;
  std::size_t col_ = 0;
  double value_ = 0.0;
};

/// Malformed file contents or unreadable/unwritable paths.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gspd
