#pragma once

// Numerical adjudication of the closed forms. The transformed equation
// -1/2 phi'' + W(q) phi = E phi is discretized by central differences on a
// Dirichlet grid and its eigenvalues are compared with the closed-form
// energies. The untransformed radial equation is checked separately in r.

#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pctlab/cases.hpp"
#include "pctlab/error.hpp"
#include "pctlab/model.hpp"
#include "pctlab/pct.hpp"
#include "pctlab/quadrature.hpp"
#include "pctlab/spectra.hpp"
#include "pctlab/tridiag.hpp"

namespace pctlab {

/// Uniform Dirichlet grid; interior nodes q_i = q_min + i h, i = 1..n.
struct Grid {
  double q_min = 0.0;
  double q_max = 0.0;
  int n = 0;
  double h = 0.0;
  /// True when the corresponding end is a finite endpoint of the q-domain
  /// rather than a truncation of an infinite tail.
  bool wall_lo = false;
  bool wall_hi = false;

  double node(int i) const { return q_min + i * h; }
};

struct Tolerances {
  double energy = 1e-5;
  double norm = 1e-8;
  double residual = 1e-6;

  /// Defaults, with the energy tolerance taken from PCTLAB_TOL_ENERGY if set.
  static Tolerances from_env() {
    Tolerances t;
    if (const char* s = std::getenv("PCTLAB_TOL_ENERGY")) {
      char* end = nullptr;
      const double v = std::strtod(s, &end);
      if (end == s || *end != '\0' || !(v > 0.0) || !std::isfinite(v))
        throw ValidationError(std::string("PCTLAB_TOL_ENERGY is not a positive number: ") + s);
      t.energy = v;
    }
    return t;
  }
};

struct GridSettings {
  int n = 4000;
  std::optional<double> q_min{};
  std::optional<double> q_max{};
  /// Local singular-endpoint correction of the diagonal at domain walls.
  bool wall_correction = true;
  /// Richardson step against a grid with n/2 points on the same window. The
  /// scheme is O(h^2), so this removes the leading error term.
  bool extrapolate = true;
  bool compute_residual = true;
  double residual_h = 1e-3;
  Tolerances tol{};
};

inline Grid make_grid(double q_min, double q_max, int n, bool wall_lo = false, bool wall_hi = false) {
  if (n < 50) throw ValidationError("grid needs at least 50 interior points, got " + std::to_string(n));
  if (!(q_max > q_min) || !std::isfinite(q_min) || !std::isfinite(q_max))
    throw ValidationError("grid window must be finite with q_max > q_min");
  return {q_min, q_max, n, (q_max - q_min) / (n + 1), wall_lo, wall_hi};
}

/// Grid for the state. A bounded q-domain is used whole, walls at both ends.
/// Otherwise the window is chosen so the reference wavefunction drops below
/// 1e-12 of its peak at both truncated ends, and finite domain endpoints
/// become walls. Explicit q_min / q_max override the automatic ends.
inline Grid build_grid(const CaseSpec& c, const QuantumNumbers& qn, int n,
                       std::optional<double> q_min = {}, std::optional<double> q_max = {}) {
  if (n < 50) throw ValidationError("grid needs at least 50 interior points, got " + std::to_string(n));
  const Interval dom = case_q_domain(c);
  double lo = 0.0;
  double hi = 0.0;
  bool wall_lo = false;
  bool wall_hi = false;
  if (dom.bounded_below() && dom.bounded_above()) {
    lo = dom.lo;
    hi = dom.hi;
    wall_lo = wall_hi = true;
  } else if (!q_min || !q_max) {
    const Support s = find_support(reference_wavefunction(c, qn), dom, 1e-12);
    lo = s.lo;
    hi = s.hi;
    wall_lo = s.wall_lo;
    wall_hi = s.wall_hi;
  }
  if (q_min) {
    if (*q_min < dom.lo) throw ValidationError("q_min lies below the q-domain of the case");
    lo = *q_min;
    wall_lo = *q_min == dom.lo;
  }
  if (q_max) {
    if (*q_max > dom.hi) throw ValidationError("q_max lies above the q-domain of the case");
    hi = *q_max;
    wall_hi = *q_max == dom.hi;
  }
  return make_grid(lo, hi, n, wall_lo, wall_hi);
}

namespace detail {

/// Adds to `diag` the correction that makes rho^s exp(b rho) an exact local
/// solution of the discrete operator near the wall, where q^2 W ~ c + k1 rho
/// is fitted from W itself. Leaves `diag` untouched when W does not follow
/// that form near the wall.
inline void add_wall_correction(const std::function<double(double)>& W, const Grid& g, bool at_lo,
                                std::vector<double>& diag) {
  const double wall = at_lo ? g.q_min : g.q_max;
  const double dir = at_lo ? 1.0 : -1.0;
  const double eps = 1e-5 * (g.q_max - g.q_min);
  double f[4];
  for (int j = 0; j < 4; ++j) {
    const double rho = (j + 1) * eps;
    f[j] = rho * rho * W(wall + dir * rho);
  }
  const double c = 3.0 * f[0] - 3.0 * f[1] + f[2];
  const double k1 = (-5.0 * f[0] + 8.0 * f[1] - 3.0 * f[2]) / (2.0 * eps);
  const double k2 = (f[0] - 2.0 * f[1] + f[2]) / (2.0 * eps * eps);
  const double pred = c + 4.0 * eps * k1 + 16.0 * eps * eps * k2;
  if (!std::isfinite(pred) || std::abs(pred - f[3]) > 1e-6 * (1.0 + std::abs(f[3]) + std::abs(c))) return;

  const double disc = 0.25 + 2.0 * c;
  if (disc < -1e-6)
    throw NumericalFailure("inverse-square attraction at the wall exceeds the -1/8 bound; the operator is not "
                           "bounded below");
  const double s = 0.5 + std::sqrt(std::max(0.0, disc));
  const double b = k1 / s;
  const double h = g.h;
  const double sh = std::sinh(0.5 * b * h);
  const double far = 4.0 * sh * sh / (h * h) - b * b;
  const int n = g.n;
  for (int i = 1; i <= n; ++i) {
    const double rho = (at_lo ? i : n + 1 - i) * h;
    const double up = std::expm1(s * std::log1p(h / rho) + b * h);
    const double down = std::expm1(s * std::log1p(-h / rho) - b * h);
    const double discrete = (up + down) / (h * h);
    const double t = s / rho + b;
    const double exact = t * t - s / (rho * rho);
    diag[static_cast<std::size_t>(i - 1)] += 0.5 * (discrete - exact) - 0.5 * far;
  }
}

}  // namespace detail

/// Central-difference matrix of -1/2 d^2/dq^2 + W on the grid.
inline TridiagonalOperator discretize(const std::function<double(double)>& W, const Grid& g,
                                      bool wall_correction = true) {
  if (g.n < 1 || !(g.h > 0.0)) throw ValidationError("grid needs n >= 1 and h > 0");
  TridiagonalOperator t;
  const double ih2 = 1.0 / (g.h * g.h);
  t.diag.resize(static_cast<std::size_t>(g.n));
  t.off.assign(static_cast<std::size_t>(g.n - 1), -0.5 * ih2);
  for (int i = 1; i <= g.n; ++i) {
    const double q = g.node(i);
    double w = 0.0;
    try {
      w = W(q);
    } catch (const PoleError& e) {
      throw NumericalFailure(std::string("grid node on a pole of W (") + e.what() +
                             "); shift q_min/q_max");
    }
    if (!std::isfinite(w))
      throw NumericalFailure("W is not finite at grid node q = " + std::to_string(q) + "; shift the grid");
    t.diag[static_cast<std::size_t>(i - 1)] = ih2 + w;
  }
  if (wall_correction) {
    if (g.wall_lo) detail::add_wall_correction(W, g, true, t.diag);
    if (g.wall_hi) detail::add_wall_correction(W, g, false, t.diag);
  }
  return t;
}

inline TridiagonalOperator discretize(const CaseSpec& c, const QuantumNumbers& qn, const Grid& g,
                                      bool wall_correction = true) {
  ell_d(qn);
  return discretize([&](double q) { return effective_potential_q(c, qn, q); }, g, wall_correction);
}

/// Relative L2 residual of the radial equation
///   R'' - l_d(l_d+1) R / r^2 + (m'/m)((d-1)/(2r) - d/dr) R - 2 m (V - E) R
/// for the normalized closed-form R. Derivatives use fourth-order central
/// differences with step h, replaced by max(h, 5e-3) (r - r_lo) where
/// r - r_lo is below 1 so the stencil resolves algebraic behaviour at the
/// inner endpoint. The residual is
/// sampled at points spaced geometrically in r - r_lo across the window where
/// |R| >= 1e-6 max|R|, starting 5% of the way from the inner endpoint to the
/// peak, and both norms use the same trapezoid weights.
inline double residual_norm(const CaseSpec& c, const QuantumNumbers& qn, double h = 1e-3,
                            std::optional<double> energy = {}) {
  if (!(h > 0.0)) throw ValidationError("residual step must be > 0");
  const ClosedFormSolution sol = solve_closed_form(c, qn);
  const double E = energy.value_or(sol.energy);
  const double base = case_r_domain(c).lo;
  const Support s = find_support_radial(sol.R, base, 1e-6);
  const double lo = std::max({s.lo, base + 0.05 * (s.peak - base), base + 3.0 * h});
  const double hi = s.hi;
  if (!(hi > lo)) throw NumericalFailure("residual window is empty");

  const double cf = centrifugal(ell_d(qn));
  constexpr int kSamples = 20000;
  // Below this relative step the stencil is dominated by rounding in R near
  // the inner endpoint, where the terms of the equation grow like 1/x^2.
  constexpr double kMinRelativeStep = 5e-3;
  const double x0 = lo - base;
  const double ratio = std::pow((hi - base) / x0, 1.0 / (kSamples - 1));
  double res2 = 0.0;
  double nrm2 = 0.0;
  double prev_r = lo;
  for (int j = 0; j < kSamples; ++j) {
    const double r = base + x0 * std::pow(ratio, j);
    const double next_r = base + x0 * std::pow(ratio, j + 1);
    const double w = 0.5 * ((j + 1 < kSamples ? next_r : r) - prev_r);
    prev_r = r;
    const double x = r - base;
    const double step = x < 1.0 ? std::max(h, kMinRelativeStep) * x : h;
    const double rm2 = sol.R(r - 2.0 * step);
    const double rm1 = sol.R(r - step);
    const double r0 = sol.R(r);
    const double rp1 = sol.R(r + step);
    const double rp2 = sol.R(r + 2.0 * step);
    const double d1 = (-rp2 + 8.0 * rp1 - 8.0 * rm1 + rm2) / (12.0 * step);
    const double d2 = (-rp2 + 16.0 * rp1 - 30.0 * r0 + 16.0 * rm1 - rm2) / (12.0 * step * step);
    const double m = c.mass.m(r);
    const double lm = c.mass.dm(r) / m;
    const double v = target_potential(c, qn, r);
    const double res =
        d2 - cf * r0 / (r * r) + lm * ((qn.d - 1.0) / (2.0 * r) * r0 - d1) - 2.0 * m * (v - E) * r0;
    res2 += res * res * w;
    nrm2 += r0 * r0 * w;
  }
  return std::sqrt(res2 / nrm2);
}

/// Normalization defect |int (m^{-1/4} R(r(q)))^2 dq - 1| of the r-normalized R.
inline double norm_defect(const CaseSpec& c, const ClosedFormSolution& sol) {
  const Interval rdom = case_r_domain(c);
  auto phi = [&](double q) {
    const double r = r_of_z(c.mass, q);
    if (!rdom.contains(r) || !std::isfinite(r)) return 0.0;
    const double v = sol.R(r);
    const double w = std::pow(c.mass.m(r), -0.25);
    return v == 0.0 || !std::isfinite(w) ? 0.0 : w * v;
  };
  return std::abs(integrate_square(phi, case_q_domain(c)) - 1.0);
}

/// Closed-form energy against the (n_r+1)-th lowest eigenvalue of the
/// channel (extrapolated unless disabled in the settings), plus normalization and residual diagnostics. Failures of the
/// numerical stages are reported in `failure`; invalid states still throw.
inline VerificationReport verify_energy(const CaseSpec& c, const QuantumNumbers& qn,
                                        const GridSettings& settings = {}) {
  VerificationReport rep;
  rep.flag = c.flag;
  rep.e_closed = closed_form_energy(c, qn);
  rep.grid_n = settings.n;
  try {
    const auto k = static_cast<std::size_t>(expected_nodes(c, qn));
    const Grid g = build_grid(c, qn, settings.n, settings.q_min, settings.q_max);
    rep.e_grid = eigenvalue(discretize(c, qn, g, settings.wall_correction), k);
    rep.e_numeric = rep.e_grid;
    if (settings.extrapolate) {
      Grid coarse = g;
      coarse.n = g.n / 2;
      coarse.h = (g.q_max - g.q_min) / (coarse.n + 1);
      const double e_coarse = eigenvalue(discretize(c, qn, coarse, settings.wall_correction), k);
      const double hf2 = g.h * g.h;
      const double hc2 = coarse.h * coarse.h;
      rep.e_numeric = (rep.e_grid * hc2 - e_coarse * hf2) / (hc2 - hf2);
    }
    rep.abs_err = std::abs(rep.e_numeric - rep.e_closed);
    rep.rel_err = rep.abs_err / std::max(std::abs(rep.e_closed), 1.0);
  } catch (const NumericalFailure& e) {
    rep.failure = std::string("eigensolver: ") + e.what();
  }
  try {
    const ClosedFormSolution sol = solve_closed_form(c, qn);
    rep.norm_defect = norm_defect(c, sol);
    if (settings.compute_residual) rep.residual_l2 = residual_norm(c, qn, settings.residual_h);
  } catch (const NumericalFailure& e) {
    if (!rep.failure.empty()) rep.failure += "; ";
    rep.failure += std::string("wavefunction: ") + e.what();
  }
  rep.passed = rep.failure.empty() && rep.rel_err <= settings.tol.energy &&
               rep.norm_defect <= settings.tol.norm;
  return rep;
}

/// Outcome of running a flagged case under both conventions.
struct Adjudication {
  VerificationReport as_printed;
  VerificationReport re_derived;
  /// Set when exactly one convention passes.
  std::optional<Flag> winner;
};

/// A convention passes when its report passed and, if a residual was
/// computed, the residual is within tolerance as well.
inline bool convention_passes(const VerificationReport& r, const Tolerances& tol) {
  if (!r.passed) return false;
  if (std::isnan(r.residual_l2)) return true;
  return r.residual_l2 <= tol.residual;
}

inline Adjudication adjudicate(const CaseSpec& c, const QuantumNumbers& qn, const GridSettings& settings = {}) {
  Adjudication a;
  a.as_printed = verify_energy(c.with_flag(Flag::AsPrinted), qn, settings);
  a.re_derived = verify_energy(c.with_flag(Flag::ReDerived), qn, settings);
  const bool p = convention_passes(a.as_printed, settings.tol);
  const bool d = convention_passes(a.re_derived, settings.tol);
  if (p != d) a.winner = p ? Flag::AsPrinted : Flag::ReDerived;
  return a;
}

struct DegeneracyCheck {
  std::vector<LadderRung> rungs;
  std::vector<double> energies;
  double max_deviation = 0.0;
  bool holds = true;
};

/// Closed-form energies along the ladder (l - k, d + 2k); holds when they
/// agree pairwise to 1e-12 absolute.
inline DegeneracyCheck check_degeneracy_detailed(const CaseSpec& c, int n_r, int ell, int d) {
  if (!is_power_law_case(c.id))
    throw ValidationError("degeneracy check applies to the power-law cases only");
  DegeneracyCheck out;
  out.rungs = degeneracy_ladder(n_r, ell, d);
  for (const auto& rung : out.rungs) out.energies.push_back(closed_form_energy(c, {n_r, rung.ell, rung.d, {}}));
  for (double e : out.energies)
    for (double f : out.energies) out.max_deviation = std::max(out.max_deviation, std::abs(e - f));
  out.holds = out.max_deviation <= 1e-12;
  return out;
}

inline bool check_degeneracy(const CaseSpec& c, int n_r, int ell, int d) {
  return check_degeneracy_detailed(c, n_r, ell, d).holds;
}

}  // namespace pctlab
