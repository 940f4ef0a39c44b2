#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "xip/discord.hpp"
#include "xip/errors.hpp"
#include "xip/sphere.hpp"
#include "xip/states.hpp"

using namespace xip;
using xtest::cd;

TEST(Entropy, Examples) {
  EXPECT_NEAR(von_neumann_entropy(to_density_matrix(XState::bell(1, -1, 1))), 0.0, 1e-12);
  EXPECT_NEAR(von_neumann_entropy(to_density_matrix(XState{})), 2.0, 1e-12);
  EXPECT_NEAR(von_neumann_entropy(Matrix4::diagonal({0.5, 0.5, 0, 0})), 1.0, 1e-12);
  EXPECT_NEAR(von_neumann_entropy(Matrix2::diagonal({0.5, 0.5})), 1.0, 1e-15);
  EXPECT_NEAR(von_neumann_entropy(Matrix2::diagonal({1.0, 0.0})), 0.0, 1e-15);
  EXPECT_THROW(von_neumann_entropy(Matrix4::identity()), InvalidState);
}

TEST(Entropy, QubitClosedFormMatchesSpectrum) {
  xtest::Gen gen(51);
  for (int t = 0; t < 100; ++t) {
    const double x = gen.uniform(-0.28, 0.28), y = gen.uniform(-0.28, 0.28), z = gen.uniform(-0.28, 0.28);
    const Matrix2 rho{0.5 + z, cd(x, -y), cd(x, y), 0.5 - z};
    const double r = 2.0 * std::sqrt(x * x + y * y + z * z);
    const double p = 0.5 * (1 + r), q = 0.5 * (1 - r);
    EXPECT_NEAR(von_neumann_entropy(rho), -p * std::log2(p) - q * std::log2(q), 1e-12);
  }
}

TEST(Discord, ProductStateIsZero) {
  const Matrix2 a{0.7, cd(0.1, 0.2), cd(0.1, -0.2), 0.3};
  const Matrix2 b{0.4, cd(-0.2, 0.05), cd(-0.2, -0.05), 0.6};
  const auto d = discord(kron2(a, b));
  EXPECT_NEAR(d.value, 0.0, 1e-9);
}

TEST(Discord, PureBellStateIsOne) {
  const auto d = discord(to_density_matrix(XState::bell(1, -1, 1)));
  EXPECT_NEAR(d.value, 1.0, 1e-9);
}

TEST(Discord, BellDiagonalMatchesClosedForm) {
  xtest::Gen gen(52);
  for (int t = 0; t < 60; ++t) {
    const XState s = gen.bell_mixture();
    const auto d = discord(to_density_matrix(s));
    EXPECT_NEAR(d.value, xtest::bell_discord(s.c1, s.c2, s.c3), 1e-9) << describe(s);
  }
  EXPECT_NEAR(discord(to_density_matrix(XState::bell(0.4, 0.2, 0.3))).value, xtest::bell_discord(0.4, 0.2, 0.3),
              1e-10);
}

TEST(Discord, BellDiagonalSideSymmetry) {
  const Matrix4 rho = to_density_matrix(XState::bell(0.4, 0.2, 0.3));
  const auto a = discord(rho, {Qubit::A, 64, 30});
  const auto b = discord(rho, {Qubit::B, 64, 30});
  EXPECT_NEAR(a.value, b.value, 1e-8);
  EXPECT_EQ(a.side, Qubit::A);
  EXPECT_EQ(b.side, Qubit::B);
}

TEST(Discord, OptimalAxisFollowsLargestCorrelation) {
  const auto d = discord(to_density_matrix(XState::bell(0.4, 0.2, 0.3)));
  const auto n = d.argmin.direction();
  EXPECT_NEAR(std::abs(n[0]), 1.0, 1e-6);
  const auto z = discord(to_density_matrix(XState::bell(0.1, 0.2, 0.5))).argmin.direction();
  EXPECT_NEAR(std::abs(z[2]), 1.0, 1e-6);
}

TEST(Discord, ClassicalStatesVanish) {
  xtest::Gen gen(53);
  for (int t = 0; t < 20; ++t) {
    std::array<double, 4> p{gen.uniform(0, 1), gen.uniform(0, 1), gen.uniform(0, 1), gen.uniform(0, 1)};
    const double sum = p[0] + p[1] + p[2] + p[3];
    for (auto& x : p) x /= sum;
    const Matrix4 u = kron2(gen.unitary(), gen.unitary());
    EXPECT_LE(discord(sandwich(u, Matrix4::diagonal(p))).value, 1e-8);
  }
}

TEST(Discord, NonNegativeAndBounded) {
  xtest::Gen gen(54);
  for (int t = 0; t < 40; ++t) {
    const auto d = discord(gen.density(), {t % 2 ? Qubit::A : Qubit::B, 32, 20});
    EXPECT_GE(d.value, -1e-10);
    EXPECT_LE(d.value, 1.0 + 1e-10);
    EXPECT_GE(d.argmin.theta, 0.0);
    EXPECT_LE(d.argmin.theta, M_PI);
    EXPECT_GE(d.argmin.phi, 0.0);
    EXPECT_LT(d.argmin.phi, 2 * M_PI);
  }
}

TEST(Discord, LocalUnitaryInvariance) {
  xtest::Gen gen(55);
  for (int t = 0; t < 20; ++t) {
    const Matrix4 rho = gen.density();
    const Matrix4 u = kron2(gen.unitary(), gen.unitary());
    EXPECT_NEAR(discord(sandwich(u, rho)).value, discord(rho).value, 1e-8);
  }
}

TEST(Discord, GridRefinementDoesNotIncrease) {
  xtest::Gen gen(56);
  for (int t = 0; t < 20; ++t) {
    const Matrix4 rho = gen.density();
    const double coarse = discord(rho, {Qubit::A, 32, 30}).value;
    const double fine = discord(rho, {Qubit::A, 64, 30}).value;
    EXPECT_LE(fine, coarse + 1e-8);
  }
}

TEST(Discord, MeasuredEntropyAtOptimumMatchesDefinition) {
  const Matrix4 rho = to_density_matrix(XState{0.2, -0.1, 0.3, 0.1, 0.25});
  const auto d = discord(rho);
  const double cond = measured_conditional_entropy(rho, Qubit::A, d.argmin.direction());
  // D = S(rho_A) - S(rho_AB) + min conditional entropy.
  const Matrix2 rho_a{rho(0, 0) + rho(1, 1), rho(0, 2) + rho(1, 3), rho(2, 0) + rho(3, 1), rho(2, 2) + rho(3, 3)};
  EXPECT_NEAR(d.value, von_neumann_entropy(rho_a) - von_neumann_entropy(rho) + cond, 1e-12);
  for (const auto& n : sphere::fibonacci_points(400)) {
    EXPECT_GE(measured_conditional_entropy(rho, Qubit::A, n), cond - 1e-12);
  }
}

TEST(Discord, RejectsNonStates) { EXPECT_THROW(discord(Matrix4::identity()), InvalidState); }

TEST(Sphere, AnglesRoundTrip) {
  xtest::Gen gen(57);
  for (int t = 0; t < 100; ++t) {
    const double th = gen.uniform(0, M_PI), ph = gen.uniform(0, 2 * M_PI);
    const auto n = sphere::from_angles(th, ph);
    EXPECT_NEAR(n[0] * n[0] + n[1] * n[1] + n[2] * n[2], 1.0, 1e-15);
    const auto a = sphere::to_angles(n);
    EXPECT_NEAR(a[0], th, 1e-9);
    EXPECT_NEAR(std::remainder(a[1] - ph, 2 * M_PI), 0.0, 1e-9);
  }
}

TEST(Sphere, FibonacciPointsAreUnitAndSpread) {
  const auto pts = sphere::fibonacci_points(1000);
  ASSERT_EQ(pts.size(), 1000u);
  double cx = 0, cy = 0, cz = 0;
  for (const auto& p : pts) {
    EXPECT_NEAR(p[0] * p[0] + p[1] * p[1] + p[2] * p[2], 1.0, 1e-14);
    cx += p[0];
    cy += p[1];
    cz += p[2];
  }
  EXPECT_LT(std::abs(cx) / 1000, 1e-2);
  EXPECT_LT(std::abs(cy) / 1000, 1e-2);
  EXPECT_LT(std::abs(cz) / 1000, 1e-2);
}

TEST(Sphere, RefineFindsQuadraticMinimum) {
  // f(n) = n^T A n with smallest eigenvector (1, 1, 1)/sqrt(3).
  auto f = [](const sphere::Direction& n) {
    const double s = n[0] + n[1] + n[2];
    return 1.0 - s * s / 3.0 * 0.5;
  };
  sphere::Minimum start{f({0, 0, 1}), {0, 0, 1}};
  const auto m = sphere::refine(f, start, 40, 0.5);
  EXPECT_NEAR(m.value, 0.5, 1e-12);
  EXPECT_NEAR(std::abs(m.n[0] + m.n[1] + m.n[2]), std::sqrt(3.0), 1e-6);
  EXPECT_LE(m.value, start.value);
}
