#include <gtest/gtest.h>

#include "squeezegate/spinreg.hpp"

using namespace sqg;

TEST(SigmaPhi, XAndY) {
  EXPECT_LE(max_abs(sigma_phi(SpinAxis(0.0)) - pauli_x()), 1e-15);
  EXPECT_LE(max_abs(sigma_phi(SpinAxis(0.5 * pi)) - pauli_y()), 1e-15);
}

TEST(SigmaPhi, SquaresToOneForAnyAxis) {
  for (double phi : {0.1, 1.3, 2.9, 4.4, -0.7}) {
    const CMatrix s = sigma_phi(SpinAxis(phi));
    EXPECT_LE(max_abs(s * s - CMatrix::Identity(2, 2)), 1e-15);
    EXPECT_LE(max_abs(s - s.adjoint()), 1e-15);
  }
}

TEST(SpinAxis, WrapsAndRejectsNonFinite) {
  EXPECT_NEAR(SpinAxis(-0.5 * pi).phi(), 1.5 * pi, 1e-15);
  EXPECT_NEAR(SpinAxis(two_pi).phi(), 0.0, 1e-15);
  EXPECT_THROW(SpinAxis(std::nan("")), Error);
}

TEST(Register, Limits) {
  EXPECT_THROW(SpinRegister::uniform(0), Error);
  EXPECT_THROW(SpinRegister::uniform(9), Error);
  EXPECT_NO_THROW(SpinRegister(std::vector<SpinAxis>(9), 10));
  EXPECT_EQ(SpinRegister::uniform(3).hilbert_dim(), 8);
}

TEST(Configuration, IndexRoundTripAndLabel) {
  for (int n = 1; n <= 4; ++n)
    for (int c = 0; c < (1 << n); ++c) EXPECT_EQ(SpinConfiguration::from_index(c, n).index(), c);
  const auto s = SpinConfiguration::from_index(0b010, 3);
  EXPECT_EQ(s.label(), "+-+");
  EXPECT_EQ(s.ups(), 2);
}

TEST(Eigenconfigurations, SingleQubitSigmaX) {
  const auto eb = eigenconfigurations(SpinRegister::uniform(1));
  ASSERT_EQ(eb.configs.size(), 2u);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(eb.V(0, 0) - r), 0, 1e-15);
  EXPECT_NEAR(std::abs(eb.V(1, 0) - r), 0, 1e-15);
  EXPECT_NEAR(std::abs(eb.V(0, 1) - r), 0, 1e-15);
  EXPECT_NEAR(std::abs(eb.V(1, 1) + r), 0, 1e-15);
}

TEST(Eigenconfigurations, DiagonalisesEveryAxis) {
  const SpinRegister reg({SpinAxis(0.3), SpinAxis(1.9), SpinAxis(4.0)});
  const auto eb = eigenconfigurations(reg);
  EXPECT_EQ(eb.configs.size(), 8u);
  EXPECT_LE(max_abs(eb.V.adjoint() * eb.V - CMatrix::Identity(8, 8)), 1e-14);
  for (int q = 0; q < 3; ++q) {
    const CMatrix d = eb.V.adjoint() * embed(sigma_phi(reg.axis(q)), q, reg) * eb.V;
    for (int c = 0; c < 8; ++c) {
      EXPECT_NEAR(std::abs(d(c, c) - static_cast<double>(eb.configs[c].signs[q])), 0, 1e-12);
      for (int r = 0; r < 8; ++r)
        if (r != c) EXPECT_NEAR(std::abs(d(r, c)), 0, 1e-12);
    }
  }
}

TEST(Embedding, QubitZeroIsLeftmost) {
  const CMatrix z0 = embed(pauli_z(), 0, 2);
  EXPECT_LE(max_abs(z0 - kron(pauli_z(), CMatrix::Identity(2, 2))), 0);
  EXPECT_NEAR(z0(2, 2).real(), -1.0, 0);
  EXPECT_LE(max_abs(product_op({pauli_x(), pauli_z()}) - kron(pauli_x(), pauli_z())), 0);
}

TEST(Rz, ZeroAngleAndComposition) {
  EXPECT_LE(max_abs(rz(0.0) - CMatrix::Identity(2, 2)), 1e-15);
  EXPECT_LE(max_abs(rz(0.4) * rz(0.7) - rz(1.1)), 1e-15);
  // rotates the x axis towards y: R_z(t) sigma_x R_z(t)^dag = sigma_{t}
  EXPECT_LE(max_abs(rz(0.6) * pauli_x() * rz(0.6).adjoint() - sigma_phi(SpinAxis(0.6))), 1e-14);
}

TEST(LinearSpinOp, EigenvaluesFollowConfigurations) {
  const SpinRegister reg({SpinAxis(0.0), SpinAxis(0.8)});
  const std::vector<double> c{0.3, -1.2};
  const CMatrix op = linear_spin_op(0.5, c, reg);
  const auto eb = eigenconfigurations(reg);
  const CMatrix d = eb.V.adjoint() * op * eb.V;
  for (int k = 0; k < 4; ++k) {
    const auto& s = eb.configs[k];
    EXPECT_NEAR(d(k, k).real(), 0.5 + 0.3 * s.signs[0] - 1.2 * s.signs[1], 1e-13);
  }
}
