#pragma once

// Inner kernels of the generators. Each parallel kernel has a serial
// reference twin with identical per-entry arithmetic; tests compare them
// bitwise and gspd_bench times them against each other.

#include <cstddef>
#include <span>

#include "gspd/linalg.hpp"

namespace gspd::kernels {

/// Dot product with four interleaved accumulators. The summation order
/// depends only on n, so results are reproducible across thread counts.
double dot(const double* u, const double* v, std::size_t n) noexcept;

/// y += alpha * x
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept;

SymMatrix gram_serial(const FactorMatrix& q);
SymMatrix gram_parallel(const FactorMatrix& q);

/// Per-row sums of |m_ij| over j != i.
Vector offdiag_abs_row_sums_serial(const SymMatrix& m);
Vector offdiag_abs_row_sums_parallel(const SymMatrix& m);

/// Number of OpenMP threads the parallel kernels will use (1 without OpenMP).
int max_threads() noexcept;
void set_threads(int n) noexcept;

}  // namespace gspd::kernels
