#pragma once

// Point canonical transformation q = Z(r) = int sqrt(m) dr, its inverse, the
// deformation potential U_d and the effective potential of the transformed
// one-dimensional problem -1/2 phi'' + W(q) phi = E phi.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "pctlab/cases.hpp"
#include "pctlab/error.hpp"
#include "pctlab/model.hpp"

namespace pctlab {

/// Image of (0, inf) under Z. Integration constants are zero in every branch.
inline Interval q_domain(const MassProfile& mass) {
  switch (mass.family()) {
    case MassFamily::PowerLaw:
      return mass.gamma() > -2.0 ? Interval{0.0, kInf} : Interval{-kInf, 0.0};
    case MassFamily::InverseSquare: return {-kInf, kInf};
    case MassFamily::PoschlTeller: return {0.0, std::sqrt(mass.alpha()) * std::numbers::pi / 2.0};
    case MassFamily::Hulthen: return {0.0, kInf};
  }
  return {-kInf, kInf};
}

inline double z_of_r(const MassProfile& mass, double r) {
  if (!(r > 0.0)) throw DomainError("z_of_r: r must be > 0");
  const double a = mass.alpha();
  switch (mass.family()) {
    case MassFamily::PowerLaw: {
      const double g2 = mass.gamma() + 2.0;
      return 2.0 * std::sqrt(a) * std::pow(r, g2 / 2.0) / g2;
    }
    case MassFamily::InverseSquare: return std::sqrt(a) * std::log(r);
    case MassFamily::PoschlTeller: return std::sqrt(a) * std::atan(std::sqrt(r));
    case MassFamily::Hulthen: return std::log1p(r) / a;
  }
  return 0.0;
}

inline double r_of_z(const MassProfile& mass, double q) {
  if (!q_domain(mass).contains(q))
    throw DomainError("r_of_z: q = " + std::to_string(q) + " lies outside the image of Z");
  const double a = mass.alpha();
  switch (mass.family()) {
    case MassFamily::PowerLaw: {
      const double g2 = mass.gamma() + 2.0;
      return std::pow(g2 * q / (2.0 * std::sqrt(a)), 2.0 / g2);
    }
    case MassFamily::InverseSquare: return std::exp(q / std::sqrt(a));
    case MassFamily::PoschlTeller: {
      const double t = std::tan(q / std::sqrt(a));
      return t * t;
    }
    case MassFamily::Hulthen: return std::expm1(a * q);
  }
  return 0.0;
}

/// Deformation potential m''/(8m^2) - 7m'^2/(32m^3) + m'(d-1)/(4 r m^2).
inline double u_d(const MassProfile& mass, int d, double r) {
  if (!(r > 0.0)) throw DomainError("u_d: r must be > 0");
  if (d < 1) throw ValidationError("u_d: d must be >= 1");
  const double m = mass.m(r);
  const double m1 = mass.dm(r);
  const double m2 = mass.d2m(r);
  return m2 / (8.0 * m * m) - 7.0 * m1 * m1 / (32.0 * m * m * m) + m1 * (d - 1) / (4.0 * r * m * m);
}

/// Closed form of u_d for m = alpha r^gamma; kept as an independent cross-check.
inline double u_d_power_law(double alpha, double gamma, int d, double r) {
  const double m = alpha * std::pow(r, gamma);
  return -(1.0 / 16.0) * gamma * (3.0 * gamma + 12.0 - 8.0 * d) / (2.0 * r * r * m);
}

/// The r-independent shift U_d - l_d(l_d+1)/(2 alpha) for m = alpha r^-2.
inline double u_tilde_gm2(double alpha, double ld, int d) {
  const double h = ld + 0.5;
  return -(h * h + d - 1.0) / (2.0 * alpha);
}

struct EffectiveIndex {
  double lambda_tilde;
  double lambda;
};

inline EffectiveIndex lambda_eff_ld(double gamma, double ld, int d) {
  if (std::abs(gamma + 2.0) < 1e-14)
    throw UnsupportedBranchError("gamma = -2 has no effective index; use the logarithmic branch");
  const double radicand = 4.0 * centrifugal(ld) + (gamma - 1.0) * (gamma - 1.0) + 2.0 * gamma * (3.0 - d);
  if (radicand < 0.0)
    throw ComplexIndexError("effective index radicand is negative (" + std::to_string(radicand) +
                            "); the state is not representable");
  const double lam = std::sqrt(radicand) / std::abs(gamma + 2.0);
  return {lam - 0.5, lam};
}

inline EffectiveIndex lambda_eff(double gamma, int ell, int d, std::optional<Parity> parity = {}) {
  return lambda_eff_ld(gamma, ell_d(ell, d, parity), d);
}

/// q-domain of a case: the mass image, restricted to q > 0 for the two
/// gamma = -2 cases whose targets have a pole at r = 1 (q = 0).
inline Interval case_q_domain(const CaseSpec& c) {
  if (c.id == CaseId::SpikedHOGm2 || c.id == CaseId::KratzerGm2) return {0.0, kInf};
  return q_domain(c.mass);
}

/// r-domain matching case_q_domain.
inline Interval case_r_domain(const CaseSpec& c) {
  if (c.id == CaseId::SpikedHOGm2 || c.id == CaseId::KratzerGm2) return {1.0, kInf};
  return {0.0, kInf};
}

/// W(q) = l_d(l_d+1)/(2 r^2 m) + V(r) - U_d(r) at r = r(q).
inline double effective_potential_q(const CaseSpec& c, const QuantumNumbers& qn, double q) {
  if (!case_q_domain(c).contains(q))
    throw DomainError("effective_potential_q: q = " + std::to_string(q) + " outside the case domain");
  const double r = r_of_z(c.mass, q);
  const double ld = ell_d(qn);
  return centrifugal(ld) / (2.0 * r * r * c.mass.m(r)) + target_potential(c, qn, r) - u_d(c.mass, qn.d, r);
}

}  // namespace pctlab
