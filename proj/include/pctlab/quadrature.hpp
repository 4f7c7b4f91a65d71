#pragma once

// Support detection and definite integrals for the closed-form wavefunctions.
// The integrals themselves are delegated to Boost.Math tanh-sinh.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "pctlab/error.hpp"
#include "pctlab/model.hpp"

namespace pctlab {

/// Where a function is non-negligible on its domain. An end flagged as a wall
/// coincides with a finite domain endpoint.
struct Support {
  double lo;
  double hi;
  double peak;
  bool wall_lo;
  bool wall_hi;
};

namespace detail {

inline std::vector<double> geometric_offsets() {
  std::vector<double> t;
  for (double x = 1e-5; x < 1e5; x *= 1.05) t.push_back(x);
  return t;
}

}  // namespace detail

/// Scans |f| on a geometric lattice anchored at the finite endpoints (or at 0
/// for the whole line) and returns the window outside which |f| stays below
/// rel_threshold * max|f|. Throws NumericalFailure when f does not decay.
inline Support find_support(const std::function<double(double)>& f, Interval dom,
                            double rel_threshold = 1e-12) {
  std::vector<double> xs;
  const auto t = detail::geometric_offsets();
  if (dom.bounded_below() && dom.bounded_above()) {
    const double len = dom.hi - dom.lo;
    for (double s : t)
      if (s < 0.5) xs.push_back(dom.lo + s * len);
    xs.push_back(dom.lo + 0.5 * len);
    for (auto it = t.rbegin(); it != t.rend(); ++it)
      if (*it < 0.5) xs.push_back(dom.hi - *it * len);
  } else if (dom.bounded_below()) {
    for (double s : t) xs.push_back(dom.lo + s);
  } else if (dom.bounded_above()) {
    for (auto it = t.rbegin(); it != t.rend(); ++it) xs.push_back(dom.hi - *it);
  } else {
    for (auto it = t.rbegin(); it != t.rend(); ++it) xs.push_back(-*it);
    xs.push_back(0.0);
    for (double s : t) xs.push_back(s);
  }

  std::vector<double> ys(xs.size());
  double fmax = 0.0;
  std::size_t imax = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double v = std::abs(f(xs[i]));
    if (!std::isfinite(v)) throw NumericalFailure("support scan met a non-finite value");
    ys[i] = v;
    if (v > fmax) {
      fmax = v;
      imax = i;
    }
  }
  if (!(fmax > 0.0)) throw NumericalFailure("support scan found an identically zero function");

  const double thr = rel_threshold * fmax;
  std::size_t first = 0;
  while (ys[first] < thr) ++first;
  std::size_t last = ys.size() - 1;
  while (ys[last] < thr) --last;

  Support s{};
  s.peak = xs[imax];
  if (first == 0) {
    if (!dom.bounded_below()) throw NumericalFailure("function does not decay towards -infinity");
    s.lo = dom.lo;
    s.wall_lo = true;
  } else {
    s.lo = xs[first - 1];
  }
  if (last == ys.size() - 1) {
    if (!dom.bounded_above()) throw NumericalFailure("function does not decay towards +infinity");
    s.hi = dom.hi;
    s.wall_hi = true;
  } else {
    s.hi = xs[last + 1];
  }
  return s;
}

/// Integral of f over [a, b] (finite). The interval is cut at points that
/// accumulate geometrically towards both ends, which keeps endpoint
/// singularities and narrow peaks near an end cheap for tanh-sinh.
inline double integrate(const std::function<double(double)>& f, double a, double b) {
  if (!(b > a) || !std::isfinite(a) || !std::isfinite(b))
    throw NumericalFailure("integrate: need a finite interval with b > a");
  std::vector<double> cuts{a, b};
  const double len = b - a;
  for (int k = 1; k <= 24; ++k) {
    const double off = len * std::ldexp(1.0, -k);
    cuts.push_back(a + off);
    cuts.push_back(b - off);
  }
  for (int k = 1; k < 16; ++k) cuts.push_back(a + len * k / 16.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  boost::math::quadrature::tanh_sinh<double> rule;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = cuts[i + 1];
    const double mid = 0.5 * (lo + hi);
    // Two-argument form: xc is the offset from the nearer endpoint, which
    // keeps abscissae strictly inside (lo, hi).
    auto g = [&](double x, double xc) {
      const double y = x < mid ? lo + std::abs(xc) : hi - std::abs(xc);
      if (!(y > lo) || !(y < hi)) return 0.0;
      return f(y);
    };
    const double piece = rule.integrate(g, lo, hi, 1e-10);
    if (!std::isfinite(piece)) throw NumericalFailure("integrate: non-finite quadrature result");
    total += piece;
  }
  return total;
}

/// Integral of f^2 over the support of f on `dom`.
inline double integrate_square(const std::function<double(double)>& f, Interval dom) {
  const Support s = find_support(f, dom, 1e-14);
  return integrate([&](double x) {
    const double v = f(x);
    return v * v;
  }, s.lo, s.hi);
}

namespace detail {

struct TWindow {
  double ta;
  double tb;
  double tpeak;
  bool open_lo;
};

/// Uniform scan of |g| on t in [-60, 690] for the variable t = ln(r - lo).
/// Fails when |g| is still above threshold at the upper end.
inline TWindow scan_log_line(const std::function<double(double)>& g, double rel_threshold) {
  constexpr double t0 = -60.0;
  constexpr double t1 = 690.0;
  constexpr double dt = 0.1;
  const int n = static_cast<int>((t1 - t0) / dt) + 1;
  std::vector<double> ys(static_cast<std::size_t>(n));
  double gmax = 0.0;
  int imax = 0;
  for (int i = 0; i < n; ++i) {
    const double v = std::abs(g(t0 + i * dt));
    if (!std::isfinite(v)) throw NumericalFailure("radial support scan met a non-finite value");
    ys[static_cast<std::size_t>(i)] = v;
    if (v > gmax) {
      gmax = v;
      imax = i;
    }
  }
  if (!(gmax > 0.0)) throw NumericalFailure("radial support scan found an identically zero function");
  const double thr = rel_threshold * gmax;
  int first = 0;
  while (ys[static_cast<std::size_t>(first)] < thr) ++first;
  int last = n - 1;
  while (ys[static_cast<std::size_t>(last)] < thr) --last;
  if (last == n - 1) throw NumericalFailure("function does not decay as r -> infinity");
  return {t0 + (first - 1) * dt, t0 + (last + 1) * dt, t0 + imax * dt, first == 0};
}

}  // namespace detail

/// Support of f on (lo, inf), scanned uniformly in ln(r - lo) so that
/// algebraic tails are resolved. The returned bounds are values of r.
inline Support find_support_radial(const std::function<double(double)>& f, double lo,
                                   double rel_threshold) {
  const auto w = detail::scan_log_line([&](double t) {
    const double r = lo + std::exp(t);
    return r > lo ? f(r) : 0.0;
  }, rel_threshold);
  Support s{};
  s.peak = lo + std::exp(w.tpeak);
  s.wall_lo = w.open_lo;
  s.lo = w.open_lo ? lo : lo + std::exp(w.ta);
  s.hi = lo + std::exp(w.tb);
  s.wall_hi = false;
  return s;
}

/// Integral of f^2 over (lo, inf), evaluated in t = ln(r - lo).
inline double integrate_square_radial(const std::function<double(double)>& f, double lo) {
  auto weighted = [&](double t) {
    const double x = std::exp(t);
    const double r = lo + x;
    if (!(r > lo) || !std::isfinite(r)) return 0.0;
    const double v = f(r);
    return v * v * x;
  };
  const auto w = detail::scan_log_line(weighted, 1e-18);
  return integrate(weighted, w.ta, w.tb);
}

}  // namespace pctlab
