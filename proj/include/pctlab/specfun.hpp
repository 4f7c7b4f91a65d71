#pragma once

// Terminating polynomial kernels used by the closed-form wavefunctions.
// Everything is a finite sum or a finite recurrence; no series acceleration.

#include <cmath>
#include <string>

#include "pctlab/error.hpp"

namespace pctlab::specfun {

/// Neumaier compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Generalized Laguerre polynomial L_n^a(x) by the upward three-term recurrence.
inline double laguerre(int n, double a, double x) {
  if (n < 0) throw ParameterError("laguerre: degree must be >= 0");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + a - x;
  for (int k = 2; k <= n; ++k) {
    const double next = ((2.0 * k - 1.0 + a - x) * cur - (k - 1.0 + a) * prev) / k;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Terminating Kummer function 1F1(-n; b; x), summed over its n+1 terms.
inline double kummer_terminating(int n, double b, double x) {
  if (n < 0) throw ParameterError("kummer_terminating: n must be >= 0");
  CompensatedSum sum;
  double term = 1.0;
  sum.add(term);
  for (int k = 1; k <= n; ++k) {
    const double denom = b + k - 1.0;
    if (denom == 0.0)
      throw ParameterError("kummer_terminating: Pochhammer pole, b = " + std::to_string(b));
    term *= (k - 1.0 - n) * x / (denom * k);
    sum.add(term);
  }
  return sum.value();
}

/// Terminating Gauss function 2F1(-n, b; c; x).
inline double gauss2f1_terminating(int n, double b, double c, double x) {
  if (n < 0) throw ParameterError("gauss2f1_terminating: n must be >= 0");
  CompensatedSum sum;
  double term = 1.0;
  sum.add(term);
  for (int k = 1; k <= n; ++k) {
    const double denom = c + k - 1.0;
    if (denom == 0.0)
      throw ParameterError("gauss2f1_terminating: Pochhammer pole, c = " + std::to_string(c));
    term *= (k - 1.0 - n) * (b + k - 1.0) * x / (denom * k);
    sum.add(term);
  }
  return sum.value();
}

/// Binomial coefficient with real upper argument, a (a-1) ... (a-k+1) / k!.
inline double binomial_real(double a, int k) {
  if (k < 0) throw ParameterError("binomial_real: k must be >= 0");
  double prod = 1.0;
  for (int j = 0; j < k; ++j) prod *= (a - j) / (j + 1.0);
  return prod;
}

}  // namespace pctlab::specfun
