#pragma once

// Test-only reference computations. Nothing here calls into the code paths
// it is used to check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace oracle {

using Rows = std::vector<std::vector<double>>;

inline double naive_dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

/// Orthogonalizes row i against the (already final) rows j < i that are not
/// adjacent to i by cycling plain one-vector projections until every inner
/// product vanishes. Cyclic projection onto the hyperplanes q_j^perp
/// converges to the orthogonal projection onto their intersection, which is
/// the same subspace the Gram-Schmidt basis spans, but reached without ever
/// building a basis.
template <class Adjacent>
Rows partial_orth_by_repeated_projection(Rows q, Adjacent adjacent) {
  const std::size_t p = q.size();
  for (std::size_t i = 0; i < p; ++i) {
    std::vector<std::size_t> targets;
    for (std::size_t j = 0; j < i; ++j)
      if (!adjacent(i, j)) targets.push_back(j);
    if (targets.empty()) continue;
    const double scale = std::sqrt(naive_dot(q[i], q[i]));
    for (int sweep = 0;; ++sweep) {
      double worst = 0.0;
      for (std::size_t j : targets) {
        const double c = naive_dot(q[i], q[j]) / naive_dot(q[j], q[j]);
        for (std::size_t k = 0; k < p; ++k) q[i][k] -= c * q[j][k];
      }
      for (std::size_t j : targets)
        worst = std::max(worst, std::abs(naive_dot(q[i], q[j])) /
                                    std::sqrt(naive_dot(q[j], q[j])));
      if (worst <= 1e-14 * scale) break;
      if (sweep > 200000) throw std::runtime_error("repeated projection did not converge");
    }
  }
  return q;
}

inline Rows gram(const Rows& q) {
  Rows m(q.size(), std::vector<double>(q.size()));
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) m[i][j] = naive_dot(q[i], q[j]);
  return m;
}

/// Eigenvalues of [[a, b], [b, c]] from the characteristic polynomial.
inline std::vector<double> eig2(double a, double b, double c) {
  const double mean = 0.5 * (a + c);
  const double radius = std::sqrt(0.25 * (a - c) * (a - c) + b * b);
  return {mean - radius, mean + radius};
}

}  // namespace oracle
