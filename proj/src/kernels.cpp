#include "gspd/kernels.hpp"

#include <cmath>

#ifdef GSPD_HAVE_OPENMP
#include <omp.h>
#endif

namespace gspd::kernels {

double dot(const double* u, const double* v, std::size_t n) noexcept {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    s0 += u[k] * v[k];
    s1 += u[k + 1] * v[k + 1];
    s2 += u[k + 2] * v[k + 2];
    s3 += u[k + 3] * v[k + 3];
  }
  for (; k < n; ++k) s0 += u[k] * v[k];
  return (s0 + s1) + (s2 + s3);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept {
  for (std::size_t k = 0; k < n; ++k) y[k] += alpha * x[k];
}

SymMatrix gram_serial(const FactorMatrix& q) {
  const std::size_t p = q.p();
  SymMatrix m(p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i; j < p; ++j) m.set(i, j, dot(q.row(i).data(), q.row(j).data(), p));
  return m;
}

SymMatrix gram_parallel(const FactorMatrix& q) {
  const std::size_t p = q.p();
  SymMatrix m(p);
  const auto n = static_cast<long long>(p);
  // Rows of the upper triangle shrink with i; dynamic scheduling balances them.
#pragma omp parallel for schedule(dynamic, 4) if (p >= 64)
  for (long long ii = 0; ii < n; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    for (std::size_t j = i; j < p; ++j) m.set(i, j, dot(q.row(i).data(), q.row(j).data(), p));
  }
  return m;
}

Vector offdiag_abs_row_sums_serial(const SymMatrix& m) {
  const std::size_t p = m.p();
  Vector sums(p, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < p; ++j)
      if (j != i) s += std::abs(m(i, j));
    sums[i] = s;
  }
  return sums;
}

Vector offdiag_abs_row_sums_parallel(const SymMatrix& m) {
  const std::size_t p = m.p();
  Vector sums(p, 0.0);
  const auto n = static_cast<long long>(p);
#pragma omp parallel for schedule(static) if (p >= 256)
  for (long long ii = 0; ii < n; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    double s = 0.0;
    for (std::size_t j = 0; j < p; ++j)
      if (j != i) s += std::abs(m(i, j));
    sums[i] = s;
  }
  return sums;
}

int max_threads() noexcept {
#ifdef GSPD_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int n) noexcept {
#ifdef GSPD_HAVE_OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

}  // namespace gspd::kernels
