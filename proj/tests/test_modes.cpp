#include <gtest/gtest.h>

#include "squeezegate/modes.hpp"

using namespace sqg;

namespace {

ChainSpec chain(int n, double nz_mhz = 0.9, double nx_mhz = 3.0) {
  ChainSpec c;
  c.n_ions = n;
  c.axial_freq = two_pi * nz_mhz * 1e6;
  c.radial_freq = two_pi * nx_mhz * 1e6;
  return c;
}

}  // namespace

TEST(Equilibrium, SmallChains) {
  EXPECT_EQ(equilibrium_positions(1), std::vector<double>{0.0});
  const auto two = equilibrium_positions(2);
  EXPECT_NEAR(two[0], -std::cbrt(0.25), 1e-12);
  EXPECT_NEAR(two[1], std::cbrt(0.25), 1e-12);
  EXPECT_NEAR(two[1], 0.62996, 1e-5);
  const auto three = equilibrium_positions(3);
  EXPECT_NEAR(three[1], 0.0, 1e-14);
  EXPECT_NEAR(three[2], std::cbrt(1.25), 1e-12);
  EXPECT_NEAR(three[2], 1.0772, 1e-4);
}

TEST(Equilibrium, ForceBalanceAndSymmetry) {
  for (int n = 2; n <= 12; ++n) {
    const auto u = equilibrium_positions(n);
    EXPECT_LE(force_residual(u), 1e-12) << n;
    for (int i = 0; i < n; ++i) EXPECT_NEAR(u[i], -u[n - 1 - i], 1e-12);
    for (int i = 1; i < n; ++i) EXPECT_GT(u[i], u[i - 1]);
  }
}

TEST(TransverseModes, TwoIonAnalytic) {
  const auto c = chain(2);
  const auto md = transverse_modes(c);
  EXPECT_NEAR(md.frequencies[0] / c.radial_freq - 1, 0, 1e-10);
  const double rock = std::sqrt(c.radial_freq * c.radial_freq - c.axial_freq * c.axial_freq);
  EXPECT_NEAR(md.frequencies[1] / rock - 1, 0, 1e-10);
}

TEST(TransverseModes, ParticipationOrthonormal) {
  const auto md = transverse_modes(chain(5));
  const RMatrix b = md.participation;
  EXPECT_LE((b.transpose() * b - RMatrix::Identity(5, 5)).cwiseAbs().maxCoeff(), 1e-12);
  // COM mode at the radial frequency with uniform participation
  EXPECT_NEAR(md.frequencies[0], two_pi * 3e6, 1e-3);
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(b(i, 0), 1 / std::sqrt(5.0), 1e-10);
  for (std::size_t m = 1; m < md.frequencies.size(); ++m) EXPECT_LT(md.frequencies[m], md.frequencies[m - 1]);
  EXPECT_EQ(md.zigzag(), 4);
}

TEST(TransverseModes, FourIonSpectrum) {
  const auto md = transverse_modes(chain(4));
  const double f[] = {3.0, 2.861818, 2.655556, 2.373840};
  for (int m = 0; m < 4; ++m) EXPECT_NEAR(md.frequencies[m] / two_pi / 1e6, f[m], 2e-6);
}

TEST(TransverseModes, UnstableChain) {
  try {
    transverse_modes(chain(4, 2.5, 3.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZigZagUnstable);
  }
}

TEST(LambDicke, ScalesWithParticipation) {
  auto c = chain(3);
  c.wavenumber = two_pi / 355e-9 * std::sqrt(2.0);
  const auto md = transverse_modes(c);
  const auto eta = lamb_dicke(c, md);
  ASSERT_EQ(eta.size(), 3u);
  const double com = c.wavenumber * std::sqrt(hbar / (2 * c.ion_mass * md.frequencies[0]));
  EXPECT_NEAR(std::abs(eta[0]), com, 1e-12);
}

TEST(SidebandGaps, DegenerateFlagged) {
  ModeData md;
  md.frequencies = {3.0, 2.0, 1.0};
  md.participation = RMatrix::Identity(3, 3);
  const auto g = second_sideband_gaps(md, 1);
  bool found = false;
  for (const auto& p : g.pairs)
    if (p.mu == 0 && p.nu == 2) {
      EXPECT_TRUE(p.degenerate);
      EXPECT_EQ(p.delta, 0.0);
      found = true;
    }
  EXPECT_TRUE(found);
  EXPECT_EQ(g.min_pair_gap, 0.0);
  EXPECT_EQ(g.nearest_mode_gap, 1.0);
  EXPECT_THROW(second_sideband_gaps(md, 3), Error);
}

TEST(SidebandGaps, FourIonZigZag) {
  const auto md = transverse_modes(chain(4));
  const auto g = second_sideband_gaps(md, md.zigzag());
  EXPECT_NEAR(g.min_pair_gap / two_pi / 1e3, 281.715, 1e-2);
  EXPECT_NEAR(g.nearest_mode_gap, g.min_pair_gap, 1e-6);
  EXPECT_EQ(g.pairs.size(), 9u);
}

TEST(OffResonant, Examples) {
  const auto e = off_resonant_ratio(0.11, two_pi * 1e6, 4, two_pi * 160e3);
  EXPECT_NEAR(e.epsilon, 9.453125e-3, 1e-9);
  EXPECT_NEAR(e.epsilon_sq, 8.936e-5, 1e-8);
  EXPECT_EQ(off_resonant_ratio(0.11, 0.0, 4, 1.0).epsilon, 0.0);
  EXPECT_THROW(off_resonant_ratio(0.11, 1.0, 4, 0.0), Error);
}

TEST(OffResonant, BandwidthScalingCancels) {
  const auto s = off_resonant_scaling(0.1, two_pi * 1e6, two_pi * 600e3, {2, 4, 8, 16});
  for (const auto& p : s) EXPECT_NEAR(p.epsilon / s[0].epsilon, 1.0, 1e-12);
}

TEST(Timing, FourIonEstimate) {
  const double xi = std::atanh(0.25);
  const double amp = std::sqrt(pi / (2 * std::cosh(xi)));
  const auto t = timing_estimate(xi, two_pi * 1e6, 0.5, 0.11, amp, amp);
  EXPECT_NEAR(t.squeeze_rate, 9503.3, 0.1);
  EXPECT_NEAR(t.db_per_ms, 41.27, 0.01);
  EXPECT_NEAR(t.t_s * 1e6, 26.876, 1e-3);
  EXPECT_NEAR(t.total * 1e6, 136.054, 1e-3);
  EXPECT_NEAR(t.total, 4 * t.t_s + 2 * t.t_x + 2 * t.t_p, 1e-18);
  EXPECT_THROW(timing_estimate(xi, 0.0, 0.5, 0.11, amp, amp), Error);
}

TEST(Timing, BerylliumLikeSpeedup) {
  const double xi = std::atanh(0.25);
  const double amp = std::sqrt(pi / (2 * std::cosh(xi)));
  const auto yb = timing_estimate(xi, two_pi * 1e6, 0.5, 0.11, amp, amp);
  const auto be = timing_estimate(xi, two_pi * 1e6, 0.5, 0.25, amp, amp);
  EXPECT_NEAR(yb.t_s / be.t_s, std::pow(0.25 / 0.11, 2), 1e-12);
  EXPECT_GT(yb.total / be.total, 4.0);
}
