#pragma once

// Domain types shared by every module: quantum numbers, mass profiles,
// case descriptors and verification reports. All values are immutable
// after construction and every function here is pure.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pctlab/error.hpp"

namespace pctlab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Only meaningful in one dimension, where the radial index is fixed by parity.
enum class Parity { Even, Odd };

struct QuantumNumbers {
  int n_r = 0;
  int ell = 0;
  int d = 3;
  std::optional<Parity> parity{};
};

/// Effective angular momentum l_d. For d >= 2 this is l + (d-3)/2; the half
/// is formed from integers so it is exact in binary floating point. For d = 1
/// the value is -1 (even) or 0 (odd).
inline double ell_d(int ell, int d, std::optional<Parity> parity = {}) {
  if (d < 1) throw ValidationError("dimension d must be >= 1, got " + std::to_string(d));
  if (ell < 0) throw ValidationError("ell must be >= 0, got " + std::to_string(ell));
  if (d == 1) {
    if (!parity) throw ValidationError("d = 1 requires an explicit parity (even|odd)");
    if (ell != 0) throw ValidationError("d = 1 has no angular momentum; ell must be 0");
    return *parity == Parity::Even ? -1.0 : 0.0;
  }
  if (parity) throw ValidationError("parity is only accepted when d = 1");
  return static_cast<double>(ell) + static_cast<double>(d - 3) * 0.5;
}

inline double ell_d(const QuantumNumbers& qn) { return ell_d(qn.ell, qn.d, qn.parity); }

/// l_d (l_d + 1), the coefficient of the centrifugal core.
inline double centrifugal(double ld) { return ld * (ld + 1.0); }

struct LadderRung {
  int ell;
  int d;
  friend bool operator==(const LadderRung&, const LadderRung&) = default;
};

/// Rungs (l-k, d+2k), k = 0..l. Every rung shares l_d.
inline std::vector<LadderRung> degeneracy_ladder(int n_r, int ell, int d) {
  if (n_r < 0) throw ValidationError("n_r must be >= 0");
  if (d < 2) throw ValidationError("degeneracy ladder needs d >= 2");
  if (ell < 0) throw ValidationError("ell must be >= 0");
  std::vector<LadderRung> rungs;
  rungs.reserve(static_cast<std::size_t>(ell) + 1);
  for (int k = 0; k <= ell; ++k) rungs.push_back({ell - k, d + 2 * k});
  return rungs;
}

// ---------------------------------------------------------------------------
// Mass profiles

enum class MassFamily { PowerLaw, InverseSquare, PoschlTeller, Hulthen };

/// One of the four analytic mass families, m(r) > 0 on r > 0, with closed
/// form first and second derivatives.
class MassProfile {
 public:
  static MassProfile power_law(double alpha, double gamma) {
    check_alpha(alpha);
    if (!std::isfinite(gamma)) throw ValidationError("gamma must be finite");
    if (std::abs(gamma + 2.0) < 1e-14)
      throw UnsupportedBranchError(
          "power-law mass with gamma = -2 has a logarithmic map; use the inverse-square family");
    return MassProfile(MassFamily::PowerLaw, alpha, gamma);
  }
  static MassProfile inverse_square(double alpha) {
    check_alpha(alpha);
    return MassProfile(MassFamily::InverseSquare, alpha, -2.0);
  }
  static MassProfile poschl_teller(double alpha) {
    check_alpha(alpha);
    return MassProfile(MassFamily::PoschlTeller, alpha, 0.0);
  }
  static MassProfile hulthen(double alpha) {
    check_alpha(alpha);
    return MassProfile(MassFamily::Hulthen, alpha, 0.0);
  }

  MassFamily family() const { return family_; }
  double alpha() const { return alpha_; }
  /// Exponent of the power-law families (-2 for InverseSquare, 0 otherwise).
  double gamma() const { return gamma_; }

  double m(double r) const {
    switch (family_) {
      case MassFamily::PowerLaw: return alpha_ * std::pow(r, gamma_);
      case MassFamily::InverseSquare: return alpha_ / (r * r);
      case MassFamily::PoschlTeller: return alpha_ / (4.0 * r * (1.0 + r) * (1.0 + r));
      case MassFamily::Hulthen: return 1.0 / (alpha_ * alpha_ * (r + 1.0) * (r + 1.0));
    }
    return 0.0;
  }

  double dm(double r) const {
    switch (family_) {
      case MassFamily::PowerLaw: return alpha_ * gamma_ * std::pow(r, gamma_ - 1.0);
      case MassFamily::InverseSquare: return -2.0 * alpha_ / (r * r * r);
      case MassFamily::PoschlTeller: {
        const double s = 1.0 + r;
        return 0.25 * alpha_ * (-1.0 / (r * r * s * s) - 2.0 / (r * s * s * s));
      }
      case MassFamily::Hulthen: {
        const double s = r + 1.0;
        return -2.0 / (alpha_ * alpha_ * s * s * s);
      }
    }
    return 0.0;
  }

  double d2m(double r) const {
    switch (family_) {
      case MassFamily::PowerLaw:
        return alpha_ * gamma_ * (gamma_ - 1.0) * std::pow(r, gamma_ - 2.0);
      case MassFamily::InverseSquare: return 6.0 * alpha_ / (r * r * r * r);
      case MassFamily::PoschlTeller: {
        const double s = 1.0 + r;
        return 0.25 * alpha_ *
               (2.0 / (r * r * r * s * s) + 4.0 / (r * r * s * s * s) + 6.0 / (r * s * s * s * s));
      }
      case MassFamily::Hulthen: {
        const double s = r + 1.0;
        return 6.0 / (alpha_ * alpha_ * s * s * s * s);
      }
    }
    return 0.0;
  }

 private:
  MassProfile(MassFamily f, double a, double g) : family_(f), alpha_(a), gamma_(g) {}

  static void check_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
      throw ValidationError("mass scale alpha must be a finite positive number");
  }

  MassFamily family_;
  double alpha_;
  double gamma_;
};

/// Open interval (lo, hi); either end may be infinite.
struct Interval {
  double lo;
  double hi;
  bool contains(double x) const { return x > lo && x < hi; }
  bool bounded_below() const { return std::isfinite(lo); }
  bool bounded_above() const { return std::isfinite(hi); }
};

// ---------------------------------------------------------------------------
// Cases

enum class CaseId {
  HO,
  Coulomb,
  SpikedHO,
  Kratzer,
  SpikedHOGm2,
  KratzerGm2,
  MorseGm2,
  PoschlTeller,
  Hulthen,
};

inline constexpr CaseId kAllCases[] = {
    CaseId::HO,          CaseId::Coulomb,    CaseId::SpikedHO,
    CaseId::Kratzer,     CaseId::SpikedHOGm2, CaseId::KratzerGm2,
    CaseId::MorseGm2,    CaseId::PoschlTeller, CaseId::Hulthen,
};

/// Cases whose printed formulas disagree with direct substitution carry a
/// two-valued flag selecting the printed or the re-derived variant.
enum class Flag { AsPrinted, ReDerived };

inline bool is_power_law_case(CaseId id) {
  return id == CaseId::HO || id == CaseId::Coulomb || id == CaseId::SpikedHO ||
         id == CaseId::Kratzer;
}

inline bool is_log_case(CaseId id) {
  return id == CaseId::SpikedHOGm2 || id == CaseId::KratzerGm2 || id == CaseId::MorseGm2;
}

inline bool is_flagged(CaseId id) {
  return id == CaseId::MorseGm2 || id == CaseId::PoschlTeller || id == CaseId::Hulthen;
}

/// Parameter record shared by all cases; each case reads the fields it needs.
/// `lambda2` is the squared reference frequency, `beta` the reference
/// inverse-square strength (for the gamma = -2 spiked case beta = alpha C^2).
struct CaseParameters {
  double alpha = 1.0;
  double gamma = 0.0;
  double lambda2 = 0.0;
  double A = 0.0;
  double beta = 0.0;
  double kappa = 0.0;
  double tau = 0.0;
};

struct CaseSpec {
  CaseId id;
  MassProfile mass;
  CaseParameters p;
  Flag flag = Flag::ReDerived;

  /// Target oscillator frequency 2 lambda^2 / (gamma + 2).
  double omega() const { return 2.0 * p.lambda2 / (p.gamma + 2.0); }
  /// Target Coulomb strength A (gamma + 2).
  double coulomb_c() const { return p.A * (p.gamma + 2.0); }
  double beta_tilde() const { return p.beta * (p.gamma + 2.0) * (p.gamma + 2.0) / 4.0; }
  /// C^2 = beta / alpha of the gamma = -2 spiked oscillator.
  double c_squared() const { return p.beta / p.alpha; }

  CaseSpec with_flag(Flag f) const {
    CaseSpec c = *this;
    c.flag = f;
    return c;
  }
};

// ---------------------------------------------------------------------------

struct VerificationReport {
  double e_closed = 0.0;
  double e_numeric = std::numeric_limits<double>::quiet_NaN();
  /// Eigenvalue on the n-point grid before extrapolation.
  double e_grid = std::numeric_limits<double>::quiet_NaN();
  double abs_err = std::numeric_limits<double>::quiet_NaN();
  /// abs_err / max(|e_closed|, 1).
  double rel_err = std::numeric_limits<double>::quiet_NaN();
  /// r-space residual of the radial equation relative to ||R|| on the same grid.
  double residual_l2 = std::numeric_limits<double>::quiet_NaN();
  double norm_defect = std::numeric_limits<double>::quiet_NaN();
  int grid_n = 0;
  bool passed = false;
  Flag flag = Flag::ReDerived;
  /// Non-empty when a numerical stage failed; the numbers above are then partial.
  std::string failure{};
};

}  // namespace pctlab
