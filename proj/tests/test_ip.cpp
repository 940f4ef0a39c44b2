#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "xip/channels.hpp"
#include "xip/errors.hpp"
#include "xip/ip.hpp"

using namespace xip;
using xtest::cd;

namespace {

Matrix4 phi_plus() { return to_density_matrix(XState::bell(1, -1, 1)); }

double reduced_det(const Matrix4& rho) {
  const cd a00 = rho(0, 0) + rho(1, 1), a11 = rho(2, 2) + rho(3, 3), a01 = rho(0, 2) + rho(1, 3);
  return (a00 * a11).real() - std::norm(a01);
}

Matrix4 random_pure(xtest::Gen& gen) {
  Vector<4> psi{};
  double n = 0;
  for (auto& z : psi) {
    z = cd(gen.normal(), gen.normal());
    n += std::norm(z);
  }
  Matrix4 rho;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) rho(i, j) = psi[i] * std::conj(psi[j]) / n;
  return rho;
}

}  // namespace

TEST(Qfi, MaximallyMixedGivesZero) {
  const Matrix4 rho = to_density_matrix(XState{});
  for (int k = 1; k <= 3; ++k) EXPECT_NEAR(qfi(rho, ProbeDirection::axis(k)), 0.0, 1e-15);
}

TEST(Qfi, PureBellStateAlongZ) { EXPECT_NEAR(qfi(phi_plus(), ProbeDirection::axis(3)), 4.0, 1e-12); }

TEST(Qfi, BellDiagonalAxesGiveCorrectedDiagonal) {
  const Matrix4 rho = to_density_matrix(XState::bell(0.4, 0.1, 0.3));
  EXPECT_NEAR(qfi(rho, ProbeDirection::axis(1)) / 4, 0.147619047619, 1e-12);
  EXPECT_NEAR(qfi(rho, ProbeDirection::axis(2)) / 4, 0.276767676768, 1e-12);
  EXPECT_NEAR(qfi(rho, ProbeDirection::axis(3)) / 4, 0.213186813187, 1e-12);
}

TEST(Qfi, QuadraticFormIdentity) {
  xtest::Gen gen(31);
  for (int t = 0; t < 300; ++t) {
    const Matrix4 rho = gen.density();
    const auto n = ProbeDirection::make(gen.normal(), gen.normal(), gen.normal());
    const MMatrix m = m_matrix(rho);
    double form = 0.0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) form += n.n[a] * m.entries[a][b] * n.n[b];
    EXPECT_NEAR(qfi(rho, n) / 4.0, form, 1e-12);
  }
}

TEST(Qfi, RejectsNonStates) {
  EXPECT_THROW(qfi(Matrix4::identity(), ProbeDirection::axis(1)), InvalidState);
  EXPECT_THROW(ProbeDirection::make(0, 0, 0), ParamOutOfRange);
  EXPECT_THROW(ProbeDirection::axis(4), ParamOutOfRange);
}

TEST(MMatrix, MatchesDenseReference) {
  xtest::Gen gen(32);
  for (int t = 0; t < 300; ++t) {
    const Matrix4 rho = gen.density();
    const MMatrix m = m_matrix(rho);
    const Eigen::Matrix3d ref = xtest::reference_m(rho);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        EXPECT_NEAR(m.entries[a][b], ref(a, b), 1e-11);
        EXPECT_EQ(m.entries[a][b], m.entries[b][a]);
      }
    EXPECT_NEAR(m.smallest_eigenvalue, xtest::reference_ip(rho), 1e-11);
    EXPECT_GE(m.smallest_eigenvalue, -1e-10);
  }
}

TEST(MMatrix, DiagonalForBellDiagonalStates) {
  xtest::Gen gen(33);
  for (int t = 0; t < 300; ++t) {
    const XState s = gen.bell_mixture();
    const MMatrix m = m_matrix(to_density_matrix(s));
    EXPECT_LT(std::abs(m.entries[0][1]), 1e-11);
    EXPECT_LT(std::abs(m.entries[0][2]), 1e-11);
    EXPECT_LT(std::abs(m.entries[1][2]), 1e-11);
    const auto d = xtest::bell_m_diagonal(s.c1, s.c2, s.c3);
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(m.entries[k][k], d[k], 1e-9);
  }
}

TEST(MMatrix, MaximallyMixedIsZero) {
  const MMatrix m = m_matrix(to_density_matrix(XState{}));
  for (const auto& row : m.entries)
    for (double v : row) EXPECT_EQ(v, 0.0);
}

TEST(IpGeneral, Examples) {
  EXPECT_NEAR(ip_general(phi_plus()), 1.0, 1e-12);
  EXPECT_NEAR(ip_general(Matrix4::diagonal({0.1, 0.2, 0.3, 0.4})), 0.0, 1e-15);
  EXPECT_NEAR(ip_general(to_density_matrix(XState::bell(0.4, 0.1, 0.3))), 0.147619047619, 1e-12);
}

TEST(IpXState, AgreesWithGeneralRoute) {
  xtest::Gen gen(34);
  for (int t = 0; t < 2000; ++t) {
    const XState s = gen.x_state();
    const IPBranches b = ip_xstate(s);
    EXPECT_NEAR(b.value, xtest::reference_ip(to_density_matrix(s)), 1e-9) << describe(s);
    EXPECT_FALSE(b.rule_disagrees) << describe(s);
    EXPECT_GE(b.value, -1e-12);
    EXPECT_LE(b.value, 1.0 + 1e-12);
  }
}

TEST(IpXState, BranchValuesAreMDiagonal) {
  xtest::Gen gen(35);
  for (int t = 0; t < 300; ++t) {
    const XState s = gen.x_state();
    const IPBranches b = ip_xstate(s);
    const Eigen::Matrix3d ref = xtest::reference_m(to_density_matrix(s));
    EXPECT_NEAR(b.m11, ref(0, 0), 1e-9);
    EXPECT_NEAR(b.m22, ref(1, 1), 1e-9);
    EXPECT_NEAR(b.m33, ref(2, 2), 1e-9);
  }
}

TEST(IpXState, SelectionRule) {
  const IPBranches b = ip_xstate(XState{0.1, 0.05, 0.4, 0.1, 0.3});
  EXPECT_TRUE(b.active == Branch::M11 || b.active == Branch::M33);
  EXPECT_DOUBLE_EQ(b.value, std::min(b.m11, b.m33));
  const IPBranches c = ip_xstate(XState{0.1, 0.05, 0.1, 0.4, 0.3});
  EXPECT_TRUE(c.active == Branch::M22 || c.active == Branch::M33);
}

TEST(IpXState, ClassicalStateIsZero) { EXPECT_NEAR(ip_xstate(XState{0, 0, 0, 0, 0.5}).value, 0.0, 1e-15); }

TEST(IpXState, DegenerateBlocksFallBack) {
  const XState s{0.2, 0.1, 0.3, 0.3, 0.1};
  const IPBranches b = ip_xstate(s);
  EXPECT_TRUE(b.fallback);
  EXPECT_NEAR(b.value, xtest::reference_ip(to_density_matrix(s)), 1e-11);
}

TEST(IpXState, AmplitudeEvolvedExample) {
  const XState s = amplitude_map(XState::bell(0.4, 0.2, 0.3), 0.8);
  EXPECT_NEAR(ip_xstate(s).value, ip_general(to_density_matrix(s)), 1e-9);
}

TEST(IpBell, Examples) {
  EXPECT_EQ(ip_bell_diagonal(CorrelationMatrix::from(0, 0, 0)), 0.0);
  EXPECT_NEAR(ip_bell_diagonal(CorrelationMatrix::from(0.4, 0.1, 0.3)), 0.124 / 0.84, 1e-15);
  EXPECT_NEAR(ip_bell_diagonal(CorrelationMatrix::from(0.3, 0.4, 0.2)), 0.178 / 0.84, 1e-15);
}

TEST(IpBell, NormFormulaMatchesGeneralRoute) {
  xtest::Gen gen(36);
  for (int t = 0; t < 1000; ++t) {
    const XState s = gen.bell_mixture();
    const auto c = CorrelationMatrix::from(s);
    const IPBranches b = bell_branches(c);
    EXPECT_NEAR(b.value, xtest::reference_ip(to_density_matrix(s)), 1e-9);
    const auto d = xtest::bell_m_diagonal(s.c1, s.c2, s.c3);
    EXPECT_NEAR(b.m11, d[0], 1e-12);
    EXPECT_NEAR(b.m22, d[1], 1e-12);
    EXPECT_NEAR(b.m33, d[2], 1e-12);
    EXPECT_EQ(index_of(b.active), c.argmax_index);
    EXPECT_NEAR(b.value, b.branch(b.active), 1e-12);
  }
}

TEST(IpBell, FlippedDeterminantSignIsDetectable) {
  const auto c = CorrelationMatrix::from(0.4, 0.1, 0.3);
  EXPECT_GT(std::abs(detail::bell_norm_formula(c, -1.0) - ip_general(to_density_matrix(XState::bell(0.4, 0.1, 0.3)))),
            1e-3);
}

TEST(IpBell, PureBellFallsBack) {
  const IPBranches b = bell_branches(CorrelationMatrix::from(1, -1, 1));
  EXPECT_TRUE(b.fallback);
  EXPECT_NEAR(b.value, 1.0, 1e-12);
  EXPECT_THROW(bell_branches(CorrelationMatrix::from(1, 1, 1)), InvalidState);
}

TEST(IpBell, BranchOrderFollowsCorrelationOrder) {
  xtest::Gen gen(37);
  for (int t = 0; t < 1000; ++t) {
    const XState s = gen.bell_mixture();
    const IPBranches b = bell_branches(CorrelationMatrix::from(s));
    if (std::abs(std::abs(s.c1) - std::abs(s.c2)) < 1e-9) continue;
    EXPECT_EQ(b.m11 >= b.m22, std::abs(s.c1) <= std::abs(s.c2)) << describe(s);
  }
}

TEST(IpBruteForce, Examples) {
  EXPECT_NEAR(ip_bruteforce(to_density_matrix(XState{})).value, 0.0, 1e-15);
  EXPECT_NEAR(ip_bruteforce(phi_plus()).value, 1.0, 1e-9);
  const auto r = ip_bruteforce(to_density_matrix(XState::bell(0.4, 0.1, 0.3)));
  EXPECT_NEAR(r.value, 0.147619047619, 1e-7);
  EXPECT_NEAR(std::abs(r.argmin.n[0]), 1.0, 1e-6);
  EXPECT_THROW(ip_bruteforce(phi_plus(), {16, 40}), ParamOutOfRange);
}

TEST(IpBruteForce, UpperBoundWithinTolerance) {
  xtest::Gen gen(38);
  for (int t = 0; t < 200; ++t) {
    const Matrix4 rho = gen.density();
    const double ref = xtest::reference_ip(rho);
    const double brute = ip_bruteforce(rho).value;
    EXPECT_GE(brute, ref - 1e-10);
    EXPECT_LE(brute, ref + 1e-7);
  }
}

TEST(IpProperties, ClassicalStatesVanish) {
  xtest::Gen gen(39);
  for (int t = 0; t < 200; ++t) {
    std::array<double, 4> d{gen.uniform(0, 1), gen.uniform(0, 1), gen.uniform(0, 1), gen.uniform(0, 1)};
    const double sum = d[0] + d[1] + d[2] + d[3];
    for (auto& x : d) x /= sum;
    EXPECT_LE(std::abs(ip_general(Matrix4::diagonal(d))), 1e-10);
  }
  // Classical on A but with a rotated classical basis on A.
  const Matrix2 u = xtest::Gen(1).unitary();
  const Matrix4 rho = sandwich(kron2(u, pauli::id()), Matrix4::diagonal({0.5, 0.1, 0.15, 0.25}));
  EXPECT_LE(std::abs(ip_general(rho)), 1e-10);
}

TEST(IpProperties, LocalUnitaryInvariance) {
  xtest::Gen gen(40);
  for (int t = 0; t < 200; ++t) {
    const Matrix4 rho = gen.density();
    const Matrix4 u = kron2(gen.unitary(), gen.unitary());
    EXPECT_NEAR(ip_general(sandwich(u, rho)), ip_general(rho), 1e-9);
  }
}

TEST(IpProperties, MonotoneUnderChannelsOnB) {
  xtest::Gen gen(41);
  for (int t = 0; t < 200; ++t) {
    const Matrix4 rho = gen.density();
    // Stinespring: random unitary on B and an ancilla, ancilla traced out.
    const Matrix2 u = gen.unitary(), v = gen.unitary();
    const double theta = gen.uniform(0, M_PI / 2);
    std::vector<Matrix2> factors{std::cos(theta) * u, std::sin(theta) * v};
    const KrausChannel ch = local_channel("mix", factors, Qubit::B);
    EXPECT_LE(ip_general(apply(ch, rho)), ip_general(rho) + 1e-9);
    const KrausChannel damp = amplitude_channel(gen.uniform(0, 1), Qubit::B);
    EXPECT_LE(ip_general(apply(damp, rho)), ip_general(rho) + 1e-9);
  }
}

TEST(IpProperties, PureStatesReduceToSchmidtProduct) {
  xtest::Gen gen(42);
  for (int t = 0; t < 200; ++t) {
    const Matrix4 rho = random_pure(gen);
    EXPECT_NEAR(ip_general(rho), 4.0 * reduced_det(rho), 1e-9);
  }
}

TEST(IpProperties, ContinuousTowardPureStates) {
  double previous = 0.0;
  for (double eps : {1e-1, 1e-3, 1e-6, 1e-9, 1e-12, 0.0}) {
    Matrix4 rho = phi_plus() * cd(1.0 - eps) + Matrix4::identity() * cd(eps / 4.0);
    const double v = ip_general(rho);
    EXPECT_GE(v + 1e-12, previous);
    EXPECT_NEAR(v, 1.0, 2.0 * eps + 1e-12);
    previous = v;
  }
}

TEST(Branch, Labels) {
  EXPECT_EQ(to_string(Branch::M11), "M11");
  EXPECT_EQ(to_string(branch_from_index(3)), "M33");
  EXPECT_EQ(index_of(Branch::M22), 2);
}
