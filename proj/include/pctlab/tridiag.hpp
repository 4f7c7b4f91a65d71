#pragma once

// Symmetric tridiagonal eigenvalues by Sturm counting and bisection.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "pctlab/error.hpp"

namespace pctlab {

/// Symmetric tridiagonal matrix: diag has n entries, off has n - 1 entries
/// with off[i] coupling rows i and i + 1.
struct TridiagonalOperator {
  std::vector<double> diag;
  std::vector<double> off;

  std::size_t size() const { return diag.size(); }
};

/// Number of eigenvalues strictly below x, from the signs of the LDL^T pivots
/// of T - x I.
inline std::size_t sturm_count(const TridiagonalOperator& t, double x) {
  const std::size_t n = t.size();
  std::size_t count = 0;
  double pivot = 1.0;
  const double tiny = std::numeric_limits<double>::min();
  for (std::size_t i = 0; i < n; ++i) {
    const double e2 = i == 0 ? 0.0 : t.off[i - 1] * t.off[i - 1];
    pivot = (t.diag[i] - x) - e2 / pivot;
    if (pivot == 0.0) pivot = -tiny;
    if (pivot < 0.0) ++count;
  }
  return count;
}

/// Gershgorin enclosure [lo, hi] of the spectrum.
inline std::pair<double, double> gershgorin(const TridiagonalOperator& t) {
  const std::size_t n = t.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(t.off[i - 1]);
    if (i + 1 < n) radius += std::abs(t.off[i]);
    lo = std::min(lo, t.diag[i] - radius);
    hi = std::max(hi, t.diag[i] + radius);
  }
  return {lo, hi};
}

namespace detail {

inline void check_operator(const TridiagonalOperator& t) {
  if (t.diag.empty()) throw ValidationError("tridiagonal operator is empty");
  if (t.off.size() + 1 != t.diag.size())
    throw ValidationError("tridiagonal operator needs n - 1 off-diagonal entries");
  for (double v : t.diag)
    if (!std::isfinite(v)) throw NumericalFailure("tridiagonal operator has a non-finite diagonal entry");
  for (double v : t.off)
    if (!std::isfinite(v)) throw NumericalFailure("tridiagonal operator has a non-finite off-diagonal entry");
}

/// k-th eigenvalue (0-based) inside the bracket [lo, hi].
inline double bisect(const TridiagonalOperator& t, std::size_t k, double lo, double hi) {
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= 1e-12 * std::max(1.0, std::abs(mid))) break;
    if (sturm_count(t, mid) > k)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// The k-th smallest eigenvalue, k counted from 0.
inline double eigenvalue(const TridiagonalOperator& t, std::size_t k) {
  detail::check_operator(t);
  if (k >= t.size())
    throw ValidationError("eigenvalue index " + std::to_string(k) + " exceeds matrix size " +
                          std::to_string(t.size()));
  auto [lo, hi] = gershgorin(t);
  const double pad = 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
  return detail::bisect(t, k, lo - pad, hi + pad);
}

/// The k smallest eigenvalues in ascending order.
inline std::vector<double> eigen_lowest(const TridiagonalOperator& t, std::size_t k) {
  detail::check_operator(t);
  if (k < 1 || k > t.size())
    throw ValidationError("eigen_lowest: k must lie in [1, n], got " + std::to_string(k));
  auto [lo, hi] = gershgorin(t);
  const double pad = 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
  lo -= pad;
  hi += pad;
  std::vector<double> out;
  out.reserve(k);
  double floor = lo;
  for (std::size_t j = 0; j < k; ++j) {
    const double v = detail::bisect(t, j, floor, hi);
    out.push_back(v);
    floor = std::max(lo, v - 1e-12 * std::max(1.0, std::abs(v)));
  }
  return out;
}

}  // namespace pctlab
