#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "pctlab/model.hpp"

using namespace pctlab;

TEST(EllD, ThreeDimensionsIsIdentity) { EXPECT_EQ(ell_d(0, 3), 0.0); }

TEST(EllD, FiveDimensionsShiftsByOne) { EXPECT_EQ(ell_d(1, 5), 2.0); }

TEST(EllD, EvenDimensionsGiveExactHalves) {
  EXPECT_EQ(ell_d(0, 2), -0.5);
  EXPECT_EQ(ell_d(3, 4), 3.5);
  EXPECT_EQ(ell_d(2, 10), 5.5);
}

TEST(EllD, OneDimensionUsesParity) {
  EXPECT_EQ(ell_d(0, 1, Parity::Even), -1.0);
  EXPECT_EQ(ell_d(0, 1, Parity::Odd), 0.0);
}

TEST(EllD, RejectsMissingParityAndBadDimension) {
  EXPECT_THROW(ell_d(0, 1), ValidationError);
  EXPECT_THROW(ell_d(0, 0), ValidationError);
  EXPECT_THROW(ell_d(-1, 3), ValidationError);
  EXPECT_THROW(ell_d(0, 3, Parity::Odd), ValidationError);
}

TEST(EllD, InvariantAlongTheLadder) {
  for (int d = 2; d <= 11; ++d)
    for (int ell = 1; ell <= 8; ++ell) EXPECT_EQ(ell_d(ell, d), ell_d(ell - 1, d + 2)) << ell << " " << d;
}

TEST(DegeneracyLadder, ThreeDimensionalDWave) {
  const std::vector<LadderRung> want{{2, 3}, {1, 5}, {0, 7}};
  EXPECT_EQ(degeneracy_ladder(0, 2, 3), want);
}

TEST(DegeneracyLadder, SWaveHasOneRung) {
  const std::vector<LadderRung> want{{0, 4}};
  EXPECT_EQ(degeneracy_ladder(1, 0, 4), want);
}

TEST(DegeneracyLadder, TwoDimensionalPWave) {
  const std::vector<LadderRung> want{{1, 2}, {0, 4}};
  EXPECT_EQ(degeneracy_ladder(0, 1, 2), want);
}

TEST(DegeneracyLadder, RejectsOneDimension) { EXPECT_THROW(degeneracy_ladder(0, 1, 1), ValidationError); }

namespace {

std::vector<MassProfile> sample_masses() {
  std::vector<MassProfile> ms;
  for (double g : {-3.0, -1.0, 0.0, 0.5, 1.0, 2.0, 3.0}) ms.push_back(MassProfile::power_law(1.3, g));
  ms.push_back(MassProfile::inverse_square(0.7));
  ms.push_back(MassProfile::poschl_teller(2.0));
  ms.push_back(MassProfile::hulthen(0.8));
  return ms;
}

}  // namespace

TEST(MassProfile, PositiveOnTheHalfLine) {
  for (const auto& m : sample_masses())
    for (double r = 1e-3; r < 1e3; r *= 1.7) EXPECT_GT(m.m(r), 0.0);
}

TEST(MassProfile, DerivativesMatchCentralDifferences) {
  // Second-order central differences at h = 1e-4. Relative errors are measured
  // against the natural scales m/r and m/r^2 so that vanishing derivatives
  // (constant mass, gamma = 1) are still covered.
  const double h = 1e-4;
  for (const auto& m : sample_masses()) {
    for (int i = 0; i <= 45; ++i) {
      const double r = 0.5 + 0.1 * i;
      const double d1 = (m.m(r + h) - m.m(r - h)) / (2 * h);
      const double d2 = (m.m(r + h) - 2 * m.m(r) + m.m(r - h)) / (h * h);
      const double s1 = std::max(std::abs(m.dm(r)), m.m(r) / r);
      const double s2 = std::max(std::abs(m.d2m(r)), m.m(r) / (r * r));
      EXPECT_LE(std::abs(d1 - m.dm(r)), 1e-6 * s1) << "r=" << r;
      EXPECT_LE(std::abs(d2 - m.d2m(r)), 1e-6 * s2) << "r=" << r;
    }
  }
}

TEST(MassProfile, ClosedFormsOfEachFamily) {
  EXPECT_DOUBLE_EQ(MassProfile::power_law(2.0, 3.0).m(2.0), 16.0);
  EXPECT_DOUBLE_EQ(MassProfile::inverse_square(4.0).m(2.0), 1.0);
  EXPECT_DOUBLE_EQ(MassProfile::poschl_teller(1.0).m(1.0), 1.0 / 16.0);
  EXPECT_DOUBLE_EQ(MassProfile::hulthen(0.5).m(1.0), 1.0);
}

TEST(MassProfile, RejectsInvalidScales) {
  EXPECT_THROW(MassProfile::power_law(0.0, 1.0), ValidationError);
  EXPECT_THROW(MassProfile::hulthen(-1.0), ValidationError);
  EXPECT_THROW(MassProfile::power_law(1.0, -2.0), UnsupportedBranchError);
}
