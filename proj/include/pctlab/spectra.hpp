#pragma once

// Closed-form spectra and wavefunctions of the nine reference -> target
// pairings. Energies come in two independent forms: the reference energy
// epsilon of the constant-mass problem and the target energy E written
// directly in target parameters. The map between them is a test, not an
// implementation shortcut. Wavefunctions are likewise built twice, once as
// the target R(r) and once as the reference psi(q).

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "pctlab/cases.hpp"
#include "pctlab/error.hpp"
#include "pctlab/model.hpp"
#include "pctlab/pct.hpp"
#include "pctlab/quadrature.hpp"
#include "pctlab/specfun.hpp"

namespace pctlab {

/// Lowest admissible n_r: the Hulthen sum starts at 1.
inline int ground_index(CaseId id) { return id == CaseId::Hulthen ? 1 : 0; }

/// Interior nodes of R for the state, i.e. its position in the channel.
inline int expected_nodes(const CaseSpec& c, const QuantumNumbers& qn) {
  return qn.n_r - ground_index(c.id);
}

namespace detail {

inline double hulthen_q(double alpha, int n) { return 0.5 * (2.0 / (n * alpha) - n); }

/// -1/2 + sqrt((L + 1/2)^2 + beta), the shifted index of the inverse-square references.
inline double shifted_index(double L, double beta) {
  return -0.5 + std::sqrt((L + 0.5) * (L + 0.5) + beta);
}

inline double morse_s(const CaseSpec& c, int n) {
  return std::sqrt(2.0 * c.p.A * c.p.alpha) - (n + 0.5);
}

inline double from_log(double log_amp, const std::function<double()>& poly) {
  if (!(log_amp > -700.0)) return 0.0;
  return poly() * std::exp(log_amp);
}

/// sum_{nu=1}^{n} (-1)^(nu-1) C(n-1, nu-1) C(n + beta + nu - 2, nu) x^nu.
inline double hulthen_sum(int n, double beta, double x) {
  specfun::CompensatedSum sum;
  double xp = 1.0;
  for (int nu = 1; nu <= n; ++nu) {
    xp *= x;
    const double sign = (nu % 2 == 1) ? 1.0 : -1.0;
    sum.add(sign * specfun::binomial_real(n - 1.0, nu - 1) *
            specfun::binomial_real(n + beta + nu - 2.0, nu) * xp);
  }
  return sum.value();
}

}  // namespace detail

/// Throws unless (case, qn) names a bound state covered by the closed forms.
inline void check_state(const CaseSpec& c, const QuantumNumbers& qn) {
  const double ld = ell_d(qn);
  if (qn.n_r < ground_index(c.id))
    throw ValidationError("n_r must be >= " + std::to_string(ground_index(c.id)) + " for case " +
                          std::string(case_name(c.id)));
  if (is_power_law_case(c.id)) {
    lambda_eff_ld(c.p.gamma, ld, qn.d);
    return;
  }
  if (c.id == CaseId::MorseGm2 && !(detail::morse_s(c, qn.n_r) > 0.0))
    throw NoBoundStateError("Morse level n_r = " + std::to_string(qn.n_r) +
                            " is not bound (needs n_r + 1/2 < sqrt(2 A alpha))");
  if (c.id == CaseId::Hulthen) {
    if (centrifugal(ld) != 0.0)
      throw ValidationError(
          "Hulthen target has no centrifugal counterpart; only l_d(l_d+1) = 0 states (d = 1, or "
          "d = 3 with ell = 0) are covered");
    if (!(detail::hulthen_q(c.p.alpha, qn.n_r) > 0.0))
      throw NoBoundStateError("Hulthen level n_r = " + std::to_string(qn.n_r) +
                              " is not bound (needs n_r^2 < 2/alpha)");
  }
}

/// Reference angular index L used for the state: the effective index of the
/// power-law map, 0 for the s-state constructions.
inline double reference_l(const CaseSpec& c, const QuantumNumbers& qn) {
  if (is_power_law_case(c.id)) return lambda_eff_ld(c.p.gamma, ell_d(qn), qn.d).lambda_tilde;
  return 0.0;
}

/// Reference energy epsilon for level n at angular index L.
inline double reference_energy_at(const CaseSpec& c, int n, double L) {
  const auto& p = c.p;
  switch (c.id) {
    case CaseId::HO: return p.lambda2 * (2.0 * n + L + 1.5);
    case CaseId::Coulomb: {
      const double lam = 2.0 * p.A / (n + L + 1.0);
      return -lam * lam / 8.0;
    }
    case CaseId::SpikedHO:
    case CaseId::SpikedHOGm2:
      return p.lambda2 * (2.0 * n + detail::shifted_index(L, p.beta) + 1.5);
    case CaseId::Kratzer:
    case CaseId::KratzerGm2: {
      const double lam = 2.0 * p.A / (n + detail::shifted_index(L, p.beta) + 1.0);
      return -lam * lam / 8.0;
    }
    case CaseId::MorseGm2: {
      const double t = 1.0 - (n + 0.5) / std::sqrt(2.0 * p.A * p.alpha);
      return -p.A * t * t;
    }
    case CaseId::PoschlTeller: {
      const double s = p.kappa + p.tau + 2.0 * n;
      return 0.5 * s * s / p.alpha;
    }
    case CaseId::Hulthen: {
      const double q = detail::hulthen_q(p.alpha, n);
      const double e = 0.5 * p.alpha * p.alpha * q * q;
      return c.flag == Flag::AsPrinted ? e : -e;
    }
  }
  return 0.0;
}

inline double reference_energy(const CaseSpec& c, const QuantumNumbers& qn) {
  check_state(c, qn);
  return reference_energy_at(c, qn.n_r, reference_l(c, qn));
}

/// E - epsilon: zero for the power-law maps, -U~_d at gamma = -2, the eta sum
/// for Poschl-Teller and the constant B for Hulthen.
inline double energy_shift(const CaseSpec& c, const QuantumNumbers& qn) {
  const double ld = ell_d(qn);
  if (is_power_law_case(c.id)) return 0.0;
  if (is_log_case(c.id)) return -u_tilde_gm2(c.p.alpha, ld, qn.d);
  if (c.id == CaseId::PoschlTeller) return -pt_eta_printed(c.p.alpha, qn.d).sum();
  return c.p.alpha * c.p.alpha * (4.0 * qn.d - 3.0) / 8.0;
}

/// Target energy of a power-law case for an explicit effective index Lambda.
inline double closed_form_energy_from_lambda(const CaseSpec& c, int n, double lambda) {
  const double g2 = c.p.gamma + 2.0;
  switch (c.id) {
    case CaseId::HO: return g2 * c.omega() / 2.0 * (2.0 * n + lambda + 1.0);
    case CaseId::Coulomb: {
      const double k = n + lambda + 0.5;
      return -c.coulomb_c() * c.coulomb_c() / 2.0 / (g2 * g2) / (k * k);
    }
    case CaseId::SpikedHO: {
      const double delta = std::sqrt(lambda * lambda + c.p.beta);
      return g2 * c.omega() / 2.0 * (2.0 * n + delta + 1.0);
    }
    case CaseId::Kratzer: {
      const double k = n + std::sqrt(lambda * lambda + c.p.beta) + 0.5;
      return -c.coulomb_c() * c.coulomb_c() / 2.0 / (g2 * g2) / (k * k);
    }
    default: throw ValidationError("effective-index energies exist only for the power-law cases");
  }
}

/// Target energy E in target parameters.
inline double closed_form_energy(const CaseSpec& c, const QuantumNumbers& qn) {
  check_state(c, qn);
  const auto& p = c.p;
  const int n = qn.n_r;
  const double ld = ell_d(qn);
  const double shell = ((ld + 0.5) * (ld + 0.5) + qn.d - 1.0) / (2.0 * p.alpha);
  switch (c.id) {
    case CaseId::HO:
    case CaseId::Coulomb:
    case CaseId::SpikedHO:
    case CaseId::Kratzer:
      return closed_form_energy_from_lambda(c, n, lambda_eff_ld(p.gamma, ld, qn.d).lambda);
    case CaseId::SpikedHOGm2: {
      const double omega = 0.5 * std::sqrt(1.0 + 4.0 * p.alpha * c.c_squared());
      return (2.0 * n + omega + ((ld + 0.5) * (ld + 0.5) + qn.d + 1.0) / 2.0) / p.alpha;
    }
    case CaseId::KratzerGm2: {
      const double lam = 2.0 * p.A / (n + detail::shifted_index(0.0, p.beta) + 1.0);
      return shell - lam * lam / 8.0;
    }
    case CaseId::MorseGm2: {
      const double t = 1.0 - (n + 0.5) / std::sqrt(2.0 * p.A * p.alpha);
      return shell - p.A * t * t;
    }
    case CaseId::PoschlTeller: {
      const double s = p.kappa + p.tau + 2.0 * n;
      return 0.5 * s * s / p.alpha - pt_eta_printed(p.alpha, qn.d).sum();
    }
    case CaseId::Hulthen: {
      const double q = detail::hulthen_q(p.alpha, n);
      const double e = 0.5 * p.alpha * p.alpha * q * q;
      return (c.flag == Flag::AsPrinted ? e : -e) + p.alpha * p.alpha * (4.0 * qn.d - 3.0) / 8.0;
    }
  }
  return 0.0;
}

/// Unnormalized reference wavefunction psi(q) of the state.
inline std::function<double(double)> reference_wavefunction(const CaseSpec& c, const QuantumNumbers& qn) {
  check_state(c, qn);
  const auto p = c.p;
  const int n = qn.n_r;
  const double L = reference_l(c, qn);
  const Interval dom = case_q_domain(c);
  auto guard = [dom](double q) {
    if (!dom.contains(q)) throw DomainError("reference wavefunction: q outside the case domain");
  };
  using detail::from_log;
  using specfun::laguerre;

  switch (c.id) {
    case CaseId::HO:
    case CaseId::SpikedHO:
    case CaseId::SpikedHOGm2: {
      const double Lt = c.id == CaseId::HO ? L : detail::shifted_index(L, p.beta);
      const double lam = std::sqrt(p.lambda2);
      return [=](double q) {
        guard(q);
        const double x = p.lambda2 * q * q;
        return from_log((Lt + 1.0) * std::log(lam * std::abs(q)) - x / 2.0,
                        [&] { return laguerre(n, Lt + 0.5, x); });
      };
    }
    case CaseId::Coulomb:
    case CaseId::Kratzer:
    case CaseId::KratzerGm2: {
      const double Lt = c.id == CaseId::Coulomb ? L : detail::shifted_index(L, p.beta);
      const double lam = 2.0 * p.A / (n + Lt + 1.0);
      return [=](double q) {
        guard(q);
        const double aq = std::abs(q);
        return from_log((Lt + 1.0) * std::log(aq) - lam * aq / 2.0,
                        [&] { return laguerre(n, 2.0 * Lt + 1.0, lam * aq); });
      };
    }
    case CaseId::MorseGm2: {
      const double s = detail::morse_s(c, n);
      const double a = 1.0 / std::sqrt(p.alpha);
      const double log_u0 = 0.5 * std::log(8.0 * p.alpha * p.A);
      return [=](double q) {
        guard(q);
        const double log_u = log_u0 - a * q;
        const double u = std::exp(log_u);
        return from_log(s * log_u - u / 2.0,
                        [&] { return specfun::kummer_terminating(n, 2.0 * s + 1.0, u); });
      };
    }
    case CaseId::PoschlTeller: {
      const double zeta = 1.0 / std::sqrt(p.alpha);
      return [=](double q) {
        guard(q);
        const double sn = std::sin(zeta * q);
        const double cs = std::cos(zeta * q);
        return from_log(p.kappa * std::log(sn) + p.tau * std::log(cs), [&] {
          return specfun::gauss2f1_terminating(n, p.kappa + p.tau + n, p.kappa + 0.5, sn * sn);
        });
      };
    }
    case CaseId::Hulthen: {
      const double Q = detail::hulthen_q(p.alpha, n);
      const double beta = 1.0 + 2.0 * Q;
      return [=](double q) {
        guard(q);
        const double x = -std::expm1(-p.alpha * q);
        return from_log(-Q * p.alpha * q, [&] { return detail::hulthen_sum(n, beta, x); });
      };
    }
  }
  throw ValidationError("unknown case");
}

/// Unnormalized target radial function R(r), written in target variables.
inline std::function<double(double)> closed_form_radial(const CaseSpec& c, const QuantumNumbers& qn) {
  check_state(c, qn);
  const auto p = c.p;
  const int n = qn.n_r;
  const double ld = ell_d(qn);
  const Interval dom = case_r_domain(c);
  auto guard = [dom](double r) {
    if (!dom.contains(r)) throw DomainError("radial wavefunction: r outside the case domain");
  };
  using detail::from_log;
  using specfun::laguerre;
  const double g = p.gamma;
  const double g2 = g + 2.0;

  switch (c.id) {
    case CaseId::HO:
    case CaseId::SpikedHO: {
      const double lam = lambda_eff_ld(g, ld, qn.d).lambda;
      const double idx = c.id == CaseId::HO ? lam : std::sqrt(lam * lam + p.beta);
      const double log_zeta = std::log(2.0 * p.alpha * c.omega() / g2) / g2;
      const double power = (g / 2.0 + 1.0) * idx + (g + 1.0) / 2.0;
      return [=](double r) {
        guard(r);
        const double lz = log_zeta + std::log(r);
        const double x = std::exp(g2 * lz);
        return from_log(power * lz - x / 2.0, [&] { return laguerre(n, idx, x); });
      };
    }
    case CaseId::Coulomb:
    case CaseId::Kratzer: {
      const double lam = lambda_eff_ld(g, ld, qn.d).lambda;
      const double idx = c.id == CaseId::Coulomb ? lam : std::sqrt(lam * lam + p.beta);
      const double log_zeta =
          std::log(4.0 * c.coulomb_c() * std::sqrt(p.alpha) / (g2 * g2) / (n + idx + 0.5)) / (g2 / 2.0);
      const double power = (g / 2.0 + 1.0) * idx + (g + 1.0) / 2.0;
      return [=](double r) {
        guard(r);
        const double lz = log_zeta + std::log(r);
        const double y = std::exp(g2 / 2.0 * lz);
        return from_log(power * lz - y / 2.0, [&] { return laguerre(n, 2.0 * idx, y); });
      };
    }
    case CaseId::SpikedHOGm2: {
      const double omega = 0.5 * std::sqrt(1.0 + 4.0 * p.alpha * c.c_squared());
      return [=](double r) {
        guard(r);
        const double t = std::log(r);
        return from_log(-0.5 * std::log(r) + (omega + 0.5) * std::log(t) - t * t / 2.0,
                        [&] { return laguerre(n, omega, t * t); });
      };
    }
    case CaseId::KratzerGm2: {
      // The Laguerre argument carries the same shifted lambda as the exponential.
      const double k = detail::shifted_index(0.0, p.beta);
      const double lam = 2.0 * p.A / (n + k + 1.0);
      return [=](double r) {
        guard(r);
        const double t = std::log(r);
        const double y = lam * std::sqrt(p.alpha) * t;
        return from_log(-0.5 * std::log(r) + (k + 1.0) * std::log(t) - y / 2.0,
                        [&] { return laguerre(n, 2.0 * k + 1.0, y); });
      };
    }
    case CaseId::MorseGm2: {
      const double s = detail::morse_s(c, n);
      const double u0 = std::sqrt(8.0 * p.alpha * p.A);
      return [=](double r) {
        guard(r);
        const double u = u0 / r;
        return from_log(-(s + 0.5) * std::log(r) - u / 2.0,
                        [&] { return specfun::kummer_terminating(n, 2.0 * s + 1.0, u); });
      };
    }
    case CaseId::PoschlTeller: {
      const double tau_power = c.flag == Flag::AsPrinted ? p.tau : p.tau / 2.0;
      return [=](double r) {
        guard(r);
        const double x = r / (1.0 + r);
        const double lp = std::log1p(r);
        const double log_m = std::log(p.alpha / 4.0) - std::log(r) - 2.0 * lp;
        return from_log(0.25 * log_m + p.kappa / 2.0 * std::log(x) - tau_power * lp, [&] {
          return specfun::gauss2f1_terminating(n, p.kappa + p.tau + n, p.kappa + 0.5, x);
        });
      };
    }
    case CaseId::Hulthen: {
      const double Q = detail::hulthen_q(p.alpha, n);
      const double beta = 1.0 + 2.0 * Q;
      const bool printed = c.flag == Flag::AsPrinted;
      return [=](double r) {
        guard(r);
        const double x = printed ? 1.0 - r : r / (1.0 + r);
        return from_log((-Q - 0.5) * std::log1p(r), [&] { return detail::hulthen_sum(n, beta, x); });
      };
    }
  }
  throw ValidationError("unknown case");
}

struct ClosedFormSolution {
  double energy = 0.0;
  double reference_energy = 0.0;
  /// Normalized so that the integral of R^2 over the r-domain is 1.
  std::function<double(double)> R;
  /// Reference psi(q), normalized independently over the q-domain.
  std::function<double(double)> phi;
  double normalization_constant = 1.0;
  double phi_normalization_constant = 1.0;
};

inline ClosedFormSolution solve_closed_form(const CaseSpec& c, const QuantumNumbers& qn) {
  ClosedFormSolution s;
  s.energy = closed_form_energy(c, qn);
  s.reference_energy = reference_energy(c, qn);
  auto raw_r = closed_form_radial(c, qn);
  auto raw_q = reference_wavefunction(c, qn);
  const double ir = integrate_square_radial(raw_r, case_r_domain(c).lo);
  const double iq = integrate_square(raw_q, case_q_domain(c));
  if (!(ir > 0.0) || !std::isfinite(ir) || !(iq > 0.0) || !std::isfinite(iq))
    throw NumericalFailure("wavefunction normalization integral is not finite and positive");
  s.normalization_constant = 1.0 / std::sqrt(ir);
  s.phi_normalization_constant = 1.0 / std::sqrt(iq);
  const double nr = s.normalization_constant;
  const double nq = s.phi_normalization_constant;
  s.R = [raw_r, nr](double r) { return nr * raw_r(r); };
  s.phi = [raw_q, nq](double q) { return nq * raw_q(q); };
  return s;
}

/// Normalized R(r) at a single point.
inline double closed_form_wavefunction(const CaseSpec& c, const QuantumNumbers& qn, double r) {
  return solve_closed_form(c, qn).R(r);
}

/// Reproduces the d = 1, gamma = -3, beta/2 = 15/8, lambda^2 = sqrt(2A)
/// reduction E = sqrt(2A) (2 n_r + 3) for n_r = 0..5 and both d = 1 reference
/// indices L in {0, -1}. The target side uses Lambda = |L + 1/2|.
inline bool spiked_reduction_check(double A) {
  if (!(A > 0.0)) throw ValidationError("spiked_reduction_check: A must be > 0");
  const double lambda2 = std::sqrt(2.0 * A);
  const CaseSpec c =
      make_case(CaseId::SpikedHO, {{"gamma", -3.0}, {"lambda", std::sqrt(lambda2)}, {"beta", 3.75}});
  for (int n = 0; n <= 5; ++n) {
    const double want = lambda2 * (2.0 * n + 3.0);
    const double tol = 1e-12 * std::max(1.0, std::abs(want));
    for (double L : {0.0, -1.0}) {
      if (std::abs(reference_energy_at(c, n, L) - want) > tol) return false;
      if (std::abs(closed_form_energy_from_lambda(c, n, std::abs(L + 0.5)) - want) > tol) return false;
    }
  }
  return true;
}

/// eta1, eta2, eta3 recovered from the general deformation potential of the
/// Poschl-Teller mass by fitting -eta1 r - eta2 / r + eta3 at r = 1, 2, 4.
inline PtEta pt_eta_rederived(double alpha, int d) {
  const MassProfile m = MassProfile::poschl_teller(alpha);
  const double u1 = u_d(m, d, 1.0);
  const double u2 = u_d(m, d, 2.0);
  const double u4 = u_d(m, d, 4.0);
  // u(r) = a r + b / r + e with a = -eta1, b = -eta2.
  // u2 - u1 = a - b/2, u4 - u2 = 2a - b/4.
  const double d21 = u2 - u1;
  const double d42 = u4 - u2;
  const double a = (d42 - 0.5 * d21) / 1.5;
  const double b = 2.0 * (a - d21);
  const double e = u1 - a - b;
  return {-a, -b, e};
}

}  // namespace pctlab
