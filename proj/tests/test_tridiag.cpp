#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "pctlab/tridiag.hpp"
#include "pctlab/verify.hpp"

using namespace pctlab;

namespace {

Eigen::VectorXd dense_eigenvalues(const TridiagonalOperator& t) {
  const auto n = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, i) = t.diag[static_cast<std::size_t>(i)];
    if (i + 1 < n) a(i, i + 1) = a(i + 1, i) = t.off[static_cast<std::size_t>(i)];
  }
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a, Eigen::EigenvaluesOnly).eigenvalues();
}

TridiagonalOperator random_tridiagonal(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  TridiagonalOperator t;
  for (std::size_t i = 0; i < n; ++i) t.diag.push_back(u(rng));
  for (std::size_t i = 0; i + 1 < n; ++i) t.off.push_back(u(rng));
  return t;
}

}  // namespace

TEST(Tridiagonal, TwoByTwo) {
  const TridiagonalOperator t{{2.0, 2.0}, {-1.0}};
  const auto ev = eigen_lowest(t, 2);
  ASSERT_EQ(ev.size(), 2u);
  EXPECT_NEAR(ev[0], 1.0, 1e-12);
  EXPECT_NEAR(ev[1], 3.0, 1e-12);
}

TEST(Tridiagonal, FreeParticleStencil) {
  const Grid g{0.0, 1.0, 3, 0.25};
  const TridiagonalOperator t = discretize([](double) { return 0.0; }, g, false);
  EXPECT_EQ(t.diag, (std::vector<double>{16.0, 16.0, 16.0}));
  EXPECT_EQ(t.off, (std::vector<double>{-8.0, -8.0}));
}

TEST(Tridiagonal, DiscreteLaplacianSpectrum) {
  for (int n : {10, 50, 137}) {
    const Grid g{0.0, 1.0, n, 1.0 / (n + 1)};
    const TridiagonalOperator t = discretize([](double) { return 0.0; }, g, false);
    const auto ev = eigen_lowest(t, static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
      const double s = std::sin(k * std::numbers::pi / (2.0 * (n + 1)));
      const double want = 4.0 * s * s / (2.0 * g.h * g.h);
      EXPECT_NEAR(ev[static_cast<std::size_t>(k - 1)], want, 1e-12 * std::max(1.0, want)) << n << " " << k;
    }
  }
}

TEST(Tridiagonal, SturmCountAgainstDenseSolver) {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<std::size_t> size(1, 50);
  for (int trial = 0; trial < 100; ++trial) {
    const TridiagonalOperator t = random_tridiagonal(rng, size(rng));
    const Eigen::VectorXd ev = dense_eigenvalues(t);
    std::uniform_real_distribution<double> probe(-16.0, 16.0);
    std::size_t previous = 0;
    std::vector<double> xs;
    for (int j = 0; j < 40; ++j) xs.push_back(probe(rng));
    std::sort(xs.begin(), xs.end());
    for (double x : xs) {
      std::size_t below = 0;
      double gap = INFINITY;
      for (Eigen::Index i = 0; i < ev.size(); ++i) {
        below += ev(i) < x;
        gap = std::min(gap, std::abs(ev(i) - x));
      }
      const std::size_t count = sturm_count(t, x);
      EXPECT_GE(count, previous);
      previous = count;
      if (gap > 1e-9) EXPECT_EQ(count, below) << "trial " << trial << " x " << x;
    }
  }
}

TEST(Tridiagonal, EigenvaluesAgainstDenseSolver) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> size(1, 50);
  for (int trial = 0; trial < 100; ++trial) {
    const TridiagonalOperator t = random_tridiagonal(rng, size(rng));
    const Eigen::VectorXd ev = dense_eigenvalues(t);
    const auto got = eigen_lowest(t, t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
      EXPECT_NEAR(got[i], ev(static_cast<Eigen::Index>(i)), 1e-10) << "trial " << trial;
  }
}

TEST(Tridiagonal, DeterministicAcrossRuns) {
  std::mt19937_64 rng(99);
  const TridiagonalOperator t = random_tridiagonal(rng, 40);
  const auto a = eigen_lowest(t, 40);
  const auto b = eigen_lowest(t, 40);
  EXPECT_EQ(a, b);
}

TEST(Tridiagonal, Errors) {
  const TridiagonalOperator t{{1.0, 2.0}, {0.5}};
  EXPECT_THROW(eigen_lowest(t, 3), ValidationError);
  EXPECT_THROW(eigen_lowest(t, 0), ValidationError);
  EXPECT_THROW(eigenvalue(t, 2), ValidationError);
  EXPECT_THROW(eigenvalue(TridiagonalOperator{}, 0), ValidationError);
  EXPECT_THROW(eigenvalue(TridiagonalOperator{{1.0, NAN}, {0.1}}, 0), NumericalFailure);
  EXPECT_THROW(eigenvalue(TridiagonalOperator{{1.0, 2.0}, {}}, 0), ValidationError);
}

TEST(Tridiagonal, GershgorinEnclosesSpectrum) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const TridiagonalOperator t = random_tridiagonal(rng, 30);
    const auto [lo, hi] = gershgorin(t);
    const Eigen::VectorXd ev = dense_eigenvalues(t);
    EXPECT_LE(lo, ev.minCoeff());
    EXPECT_GE(hi, ev.maxCoeff());
  }
}
