#pragma once

// The nine worked reference -> target pairings: naming, parameter schemas,
// construction with validation, and the target potentials V(r).

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pctlab/error.hpp"
#include "pctlab/model.hpp"

namespace pctlab {

using ParamMap = std::map<std::string, double>;

/// One schema entry. Exactly one of `keys` must be given when `required`;
/// at most one otherwise.
struct ParamSlot {
  std::vector<std::string> keys;
  bool required;
  std::string_view meaning;
};

struct CaseInfo {
  CaseId id;
  std::string_view name;
  std::string_view reference;
  std::string_view mass;
  std::vector<ParamSlot> slots;
};

inline const std::vector<CaseInfo>& case_catalog() {
  static const std::vector<CaseInfo> catalog = {
      {CaseId::HO, "ho", "harmonic oscillator", "alpha r^gamma",
       {{{"gamma"}, false, "mass exponent, default 0"},
        {{"alpha"}, false, "mass scale, default 1"},
        {{"omega", "lambda"}, true, "target frequency or reference lambda"}}},
      {CaseId::Coulomb, "coulomb", "Coulomb", "alpha r^gamma",
       {{{"gamma"}, false, "mass exponent > -2, default 0"},
        {{"alpha"}, false, "mass scale, default 1"},
        {{"A"}, true, "reference Coulomb strength"}}},
      {CaseId::SpikedHO, "spiked-ho", "spiked harmonic oscillator", "alpha r^gamma",
       {{{"gamma"}, false, "mass exponent, default 0"},
        {{"alpha"}, false, "mass scale, default 1"},
        {{"omega", "lambda"}, true, "target frequency or reference lambda"},
        {{"beta", "beta_tilde"}, true, "reference or target spike strength"}}},
      {CaseId::Kratzer, "kratzer", "Kratzer molecular", "alpha r^gamma",
       {{{"gamma"}, false, "mass exponent > -2, default 0"},
        {{"alpha"}, false, "mass scale, default 1"},
        {{"A"}, true, "reference Coulomb strength"},
        {{"beta", "beta_tilde"}, true, "reference or target inverse-square strength"}}},
      {CaseId::SpikedHOGm2, "spiked-ho-gm2", "spiked harmonic oscillator", "alpha r^-2",
       {{{"gamma"}, false, "must be -2 when given"},
        {{"alpha"}, false, "mass scale, default 1"},
        {{"C"}, true, "target (ln r)^-2 strength"}}},
      {CaseId::KratzerGm2, "kratzer-gm2", "Kratzer molecular", "alpha r^-2",
       {{{"gamma"}, false, "must be -2 when given"},
        {{"alpha"}, false, "mass scale, default 1"},
        {{"A"}, true, "reference Coulomb strength"},
        {{"beta"}, true, "reference inverse-square strength"}}},
      {CaseId::MorseGm2, "morse-gm2", "Morse oscillator", "alpha r^-2",
       {{{"gamma"}, false, "must be -2 when given"},
        {{"alpha"}, false, "mass scale, default 1"},
        {{"A"}, true, "Morse depth (B = 2A)"}}},
      {CaseId::PoschlTeller, "poschl-teller", "generalized Poschl-Teller",
       "alpha / (4 r (1+r)^2)",
       {{{"alpha"}, false, "mass scale, default 1"},
        {{"kappa"}, true, "sin^-2 strength index, > 1"},
        {{"tau"}, true, "cos^-2 strength index, > 1"}}},
      {CaseId::Hulthen, "hulthen", "generalized Hulthen", "1 / (alpha^2 (r+1)^2)",
       {{{"alpha"}, false, "screening / mass scale, default 1"}}},
  };
  return catalog;
}

inline const CaseInfo& case_info(CaseId id) {
  for (const auto& c : case_catalog())
    if (c.id == id) return c;
  throw ValidationError("unknown case id");
}

inline std::string_view case_name(CaseId id) { return case_info(id).name; }

inline std::optional<CaseId> parse_case(std::string_view name) {
  for (const auto& c : case_catalog())
    if (c.name == name) return c.id;
  return std::nullopt;
}

inline std::string_view flag_name(Flag f) {
  return f == Flag::AsPrinted ? "as-printed" : "re-derived";
}

namespace detail {

inline void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw ValidationError(std::string(what) + " must be a finite positive number");
}

inline void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw ValidationError(std::string(what) + " must be finite");
}

}  // namespace detail

/// Builds a case from a flat parameter map, validating it against the
/// case schema. Unknown keys and conflicting alternatives are errors.
inline CaseSpec make_case(CaseId id, const ParamMap& params, Flag flag = Flag::ReDerived) {
  const CaseInfo& info = case_info(id);
  for (const auto& [key, value] : params) {
    bool known = false;
    for (const auto& slot : info.slots)
      for (const auto& k : slot.keys) known = known || (k == key);
    if (!known)
      throw ValidationError("unknown parameter '" + key + "' for case " + std::string(info.name));
    detail::require_finite(value, key.c_str());
  }
  for (const auto& slot : info.slots) {
    int given = 0;
    for (const auto& k : slot.keys) given += static_cast<int>(params.count(k));
    if (given > 1)
      throw ValidationError("parameters " + slot.keys[0] + " and " + slot.keys[1] +
                            " are alternatives; give only one");
    if (slot.required && given == 0) {
      std::string names = slot.keys[0];
      for (std::size_t i = 1; i < slot.keys.size(); ++i) names += "|" + slot.keys[i];
      throw ValidationError("case " + std::string(info.name) + " requires parameter " + names);
    }
  }
  auto get = [&](const char* key) -> std::optional<double> {
    auto it = params.find(key);
    if (it == params.end()) return std::nullopt;
    return it->second;
  };

  CaseParameters p;
  p.alpha = get("alpha").value_or(1.0);
  detail::require_positive(p.alpha, "alpha");

  if (is_power_law_case(id)) {
    p.gamma = get("gamma").value_or(0.0);
    auto mass = MassProfile::power_law(p.alpha, p.gamma);
    const double g2 = p.gamma + 2.0;
    if (id == CaseId::HO || id == CaseId::SpikedHO) {
      if (auto lam = get("lambda")) {
        detail::require_positive(*lam, "lambda");
        p.lambda2 = *lam * *lam;
      } else {
        const double omega = *get("omega");
        p.lambda2 = omega * g2 / 2.0;
        if (!(p.lambda2 > 0.0))
          throw ValidationError("omega must have the sign of gamma + 2 (lambda^2 = omega (gamma+2)/2 > 0)");
      }
    }
    if (id == CaseId::Coulomb || id == CaseId::Kratzer) {
      p.A = *get("A");
      detail::require_positive(p.A, "A");
      if (!(g2 > 0.0))
        throw ValidationError("Coulomb-type targets need gamma > -2 (C = A (gamma+2) > 0)");
    }
    if (id == CaseId::SpikedHO || id == CaseId::Kratzer) {
      if (auto bt = get("beta_tilde"))
        p.beta = 4.0 * *bt / (g2 * g2);
      else
        p.beta = *get("beta");
      if (p.beta < 0.0) throw ValidationError("beta must be >= 0");
    }
    return CaseSpec{id, mass, p, flag};
  }

  if (is_log_case(id)) {
    if (auto g = get("gamma"); g && *g != -2.0)
      throw ValidationError("case " + std::string(info.name) + " fixes gamma = -2");
    p.gamma = -2.0;
    auto mass = MassProfile::inverse_square(p.alpha);
    if (id == CaseId::SpikedHOGm2) {
      const double c = *get("C");
      p.beta = p.alpha * c * c;
      p.lambda2 = 1.0 / p.alpha;
    } else {
      p.A = *get("A");
      detail::require_positive(p.A, "A");
      if (id == CaseId::KratzerGm2) {
        p.beta = *get("beta");
        if (p.beta < 0.0) throw ValidationError("beta must be >= 0");
      }
    }
    return CaseSpec{id, mass, p, flag};
  }

  if (id == CaseId::PoschlTeller) {
    p.kappa = *get("kappa");
    p.tau = *get("tau");
    if (!(p.kappa > 1.0) || !(p.tau > 1.0))
      throw ValidationError("Poschl-Teller needs kappa > 1 and tau > 1 (repulsive walls)");
    return CaseSpec{id, MassProfile::poschl_teller(p.alpha), p, flag};
  }

  return CaseSpec{id, MassProfile::hulthen(p.alpha), p, flag};
}

/// Deformation-potential coefficients of the Poschl-Teller mass,
/// U_d(r) = -eta1 r - eta2 / r + eta3, with the printed values.
struct PtEta {
  double eta1;
  double eta2;
  double eta3;
  double sum() const { return eta1 + eta2 + eta3; }
};

inline PtEta pt_eta_printed(double alpha, int d) {
  return {(24.0 * d - 9.0) / (8.0 * alpha), (8.0 * d - 9.0) / (8.0 * alpha),
          -(32.0 * d - 22.0) / (8.0 * alpha)};
}

/// Coefficients of the Poschl-Teller target potential. As printed,
/// V = V1 (1 + r^2) + V2 (1 + 1/r^2) with kappa in V1 and tau in V2.
/// Substituting sin^2 = r/(1+r), cos^2 = 1/(1+r) into the reference instead
/// gives V = V1 (1 + r) + V2 (1 + 1/r) with tau in V1 and kappa in V2.
struct PtCoefficients {
  double v1;
  double v2;
};

inline PtCoefficients pt_coefficients(const CaseSpec& c, double ld, int d) {
  const double a = c.p.alpha;
  const PtEta eta = pt_eta_printed(a, d);
  const double cf = 4.0 * centrifugal(ld);
  const double kk = c.p.kappa * (c.p.kappa - 1.0);
  const double tt = c.p.tau * (c.p.tau - 1.0);
  if (c.flag == Flag::AsPrinted)
    return {(kk - (2.0 * a * eta.eta1 + cf)) / (2.0 * a), (tt - (2.0 * a * eta.eta2 + cf)) / (2.0 * a)};
  return {(tt - (2.0 * a * eta.eta1 + cf)) / (2.0 * a), (kk - (2.0 * a * eta.eta2 + cf)) / (2.0 * a)};
}

/// Hulthen target strength sigma = alpha (alpha (d-1)/2 + 1).
inline double hulthen_sigma(double alpha, int d) { return alpha * (alpha * (d - 1) / 2.0 + 1.0); }

/// The target potential V(r) of the case, as printed or re-derived per flag.
inline double target_potential(const CaseSpec& c, const QuantumNumbers& qn, double r) {
  if (!(r > 0.0)) throw DomainError("target_potential: r must be > 0");
  const double a = c.p.alpha;
  const double g = c.p.gamma;
  switch (c.id) {
    case CaseId::HO: {
      const double w = c.omega();
      return 0.5 * w * w * a * std::pow(r, g + 2.0);
    }
    case CaseId::Coulomb:
      return -c.coulomb_c() / (2.0 * std::sqrt(a)) * std::pow(r, -1.0 - g / 2.0);
    case CaseId::SpikedHO: {
      const double w = c.omega();
      return 0.5 * w * w * a * std::pow(r, g + 2.0) + c.beta_tilde() / (2.0 * a) * std::pow(r, -g - 2.0);
    }
    case CaseId::Kratzer:
      return -c.coulomb_c() / (2.0 * std::sqrt(a)) * std::pow(r, -1.0 - g / 2.0) +
             c.beta_tilde() / (2.0 * a) * std::pow(r, -g - 2.0);
    case CaseId::SpikedHOGm2: {
      const double t = std::log(r);
      const double c2 = c.c_squared();
      if (t == 0.0) {
        if (c2 != 0.0) throw PoleError("spiked gamma=-2 target has a pole at r = 1");
        return 0.0;
      }
      return t * t / (2.0 * a) + c2 / (2.0 * t * t);
    }
    case CaseId::KratzerGm2: {
      const double t = std::log(r);
      if (t == 0.0) throw PoleError("Kratzer gamma=-2 target has a pole at r = 1");
      return -c.p.A / (std::sqrt(a) * t) + c.p.beta / (2.0 * a * t * t);
    }
    case CaseId::MorseGm2: {
      const double shape = 1.0 / (r * r) - 2.0 / r;
      return c.flag == Flag::AsPrinted ? -c.p.A * shape : c.p.A * shape;
    }
    case CaseId::PoschlTeller: {
      const auto [v1, v2] = pt_coefficients(c, ell_d(qn), qn.d);
      if (c.flag == Flag::AsPrinted) return v1 * (1.0 + r * r) + v2 * (1.0 + 1.0 / (r * r));
      return v1 * (1.0 + r) + v2 * (1.0 + 1.0 / r);
    }
    case CaseId::Hulthen:
      return -hulthen_sigma(a, qn.d) / r;
  }
  return 0.0;
}

}  // namespace pctlab
