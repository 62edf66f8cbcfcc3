#include <random>

#include <gtest/gtest.h>

#include "squeezegate/gates.hpp"
#include "squeezegate/protocol.hpp"

using namespace sqg;

namespace {

DriveLimits drive_for(int n, double eta = 0.055) {
  DriveLimits d;
  d.lamb_dicke.assign(static_cast<std::size_t>(n), eta);
  return d;
}

struct RandomRect {
  DisplacementSet a, b;
  SqueezeAmplitudeSet xi;
};

RandomRect random_rect(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  RandomRect r;
  r.a.common = u(rng);
  r.b.common = u(rng);
  for (int q = 0; q < n; ++q) {
    r.a.per_qubit.push_back(u(rng));
    r.b.per_qubit.push_back(u(rng));
    r.xi.per_qubit.push_back(u(rng));
  }
  return r;
}

}  // namespace

TEST(PhaseTable, SpinIndependentNoSqueeze) {
  const auto reg = SpinRegister::uniform(1);
  const auto t = seq_phase_table(DisplacementSet::uniform(0.5), DisplacementSet::uniform(0.5), SqueezeAmplitudeSet{}, reg);
  for (double p : t.phase) EXPECT_NEAR(p, 0.5, 1e-15);
}

TEST(PhaseTable, ExponentialSingleQubit) {
  const auto reg = SpinRegister::uniform(1);
  const double xi = std::log(2.0);
  const double ab = 0.5 * pi * std::exp(-xi);
  const auto t = seq_phase_table(DisplacementSet::uniform(std::sqrt(ab)), DisplacementSet::uniform(std::sqrt(ab)),
                                 SqueezeAmplitudeSet::uniform(1, xi), reg);
  EXPECT_NEAR(t.at(SpinConfiguration{{+1}}), pi, 1e-14);
  EXPECT_NEAR(t.at(SpinConfiguration{{-1}}), pi / 4, 1e-14);
}

TEST(PhaseTable, AxisMismatch) {
  const auto reg = SpinRegister::uniform(2);
  EXPECT_THROW(seq_phase_table({0.1, {0.1, 0.2, 0.3}}, {}, {}, reg), Error);
}

TEST(PhaseTable, ExponentialPhaseLaw) {
  // uniform xi: phase(s)/phase(s') = exp(xi (sum s - sum s'))
  const int n = 4;
  const double xi = 0.37;
  const auto reg = SpinRegister::uniform(n);
  const auto t = seq_phase_table(DisplacementSet::uniform(0.8), DisplacementSet::uniform(0.6),
                                 SqueezeAmplitudeSet::uniform(n, xi), reg);
  for (int c = 0; c < 16; ++c)
    for (int d = 0; d < 16; ++d) {
      const auto s = SpinConfiguration::from_index(c, n), r = SpinConfiguration::from_index(d, n);
      const int ds = 2 * s.ups() - 2 * r.ups();
      EXPECT_NEAR(t.phase[c] / t.phase[d], std::exp(xi * ds), 1e-9 * std::exp(xi * std::abs(ds)));
    }
}

TEST(SeqUnitary, ZeroAndPi) {
  const auto reg = SpinRegister({SpinAxis(0.2), SpinAxis(1.0)});
  EXPECT_LE(max_abs(seq_unitary_exact({2, std::vector<double>(4, 0.0)}, reg) - CMatrix::Identity(4, 4)), 1e-14);
  EXPECT_LE(max_abs(seq_unitary_exact({2, std::vector<double>(4, pi)}, reg) + CMatrix::Identity(4, 4)), 1e-14);
}

TEST(SeqUnitary, ThreeBodyTableMakesGhz) {
  const auto s = three_body_setup(3, 0, 1, 2, pi / 4);
  const CMatrix u = seq_unitary_exact(seq_phase_table(s.a, s.b, s.xi, s.reg), s.reg);
  CVector in = CVector::Zero(8);
  in(0) = 1;
  const CVector out = u * in;
  EXPECT_NEAR(std::norm(ghz_target(3).dot(out)), 1.0, 1e-12);
}

TEST(SeqUnitary, MatchesExponentialOfOperators) {
  // exp(-i 2 A^ B^ e^{xi^}) built from the operator forms
  const SpinRegister reg({SpinAxis(0.0), SpinAxis(0.7)});
  const DisplacementSet a{0.2, {0.3, -0.1}}, b{-0.1, {0.25, 0.4}};
  const SqueezeAmplitudeSet xi{{0.3, -0.2}};
  const CMatrix A = linear_spin_op(a.common, a.per_qubit, reg);
  const CMatrix B = linear_spin_op(b.common, b.per_qubit, reg);
  const CMatrix X = linear_spin_op(0.0, xi.per_qubit, reg);
  const CMatrix u = matrix_exp(cplx(0, -2.0) * A * B * matrix_exp(X));
  EXPECT_LE(max_abs(u - seq_unitary_exact(seq_phase_table(a, b, xi, reg), reg)), 1e-12);
}

TEST(Rectangle, NoSqueezeIsFourSegments) {
  const auto reg = SpinRegister::uniform(2);
  const auto s = rectangle_schedule(reg, {0, {0.3, 0.3}}, {0, {0.2, 0.2}}, {}, {1e-5, 1e-5, 0}, drive_for(2));
  ASSERT_EQ(s.segments.size(), 4u);
  EXPECT_EQ(s.segments[0].kind, SegmentKind::displace_p);
  EXPECT_EQ(s.segments[1].kind, SegmentKind::displace_x);
}

TEST(Rectangle, EightSegmentOrder) {
  const auto reg = SpinRegister::uniform(1);
  const auto s = default_rectangle(reg, {0, {0.3}}, {0, {0.3}}, {{0.2}});
  ASSERT_EQ(s.segments.size(), 8u);
  const SegmentKind expect[] = {SegmentKind::antisqueeze, SegmentKind::displace_p, SegmentKind::squeeze,
                                SegmentKind::displace_x,  SegmentKind::antisqueeze, SegmentKind::displace_p,
                                SegmentKind::squeeze,     SegmentKind::displace_x};
  for (int k = 0; k < 8; ++k) EXPECT_EQ(s.segments[k].kind, expect[k]) << k;
  EXPECT_NO_THROW(s.validate());
}

TEST(Rectangle, SqueezeTimeAtFullDrive) {
  const double xi = 0.2554;
  const auto t = minimal_rectangle_timing({}, {}, SqueezeAmplitudeSet::uniform(1, xi), drive_for(1));
  EXPECT_NEAR(t.t_S, 26.87e-6, 0.05e-6);
}

TEST(Rectangle, TooShortIsInconsistent) {
  const auto reg = SpinRegister::uniform(1);
  const SqueezeAmplitudeSet xi{{0.3}};
  auto t = minimal_rectangle_timing({}, {}, xi, drive_for(1));
  t.t_S *= 0.5;
  EXPECT_THROW(rectangle_schedule(reg, {}, {}, xi, t, drive_for(1)), Error);
  t.t_S = 0;
  try {
    rectangle_schedule(reg, {}, {}, xi, t, drive_for(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InconsistentAmplitudes);
  }
}

TEST(Schedule, ValidateRejectsBadSegments) {
  PulseSchedule s{SpinRegister::uniform(2), {}, {}};
  PulseSegment seg;
  seg.duration = -1;
  s.segments = {seg};
  EXPECT_THROW(s.validate(), Error);
  seg.duration = 1e-6;
  seg.alpha.per_qubit = {1, 2, 3};
  s.segments = {seg};
  try {
    s.validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AxisMismatch);
  }
}

TEST(Factorization, ZeroDrives) {
  PulseSchedule s{SpinRegister::uniform(2), {}, {}};
  PulseSegment seg;
  seg.duration = 1e-6;
  s.segments = {seg};
  const auto f = simultaneous_factorization(s);
  for (double p : f.phases.phase) EXPECT_EQ(p, 0.0);
  EXPECT_EQ(closure_residual(s).max(), 0.0);
}

TEST(Factorization, RectangleMatchesPhaseTable) {
  std::mt19937_64 rng(99);
  for (int n : {1, 2, 3, 4}) {
    const auto reg = SpinRegister::uniform(n);
    const auto r = random_rect(n, rng);
    const auto sched = default_rectangle(reg, r.a, r.b, r.xi);
    const auto f = simultaneous_factorization(sched);
    const auto t = seq_phase_table(r.a, r.b, r.xi, reg);
    for (int c = 0; c < reg.hilbert_dim(); ++c) EXPECT_NEAR(f.phases.phase[c], t.phase[c], 1e-9) << n << " " << c;
    EXPECT_LE(closure_residual(sched).max(), 1e-12);
  }
}

TEST(Factorization, SimultaneousDriveOracle) {
  // one segment with constant xidot, alpha, beta followed by exact undo
  // segments; the phase is +2 int B dA with A = int e^xi alpha, B = int e^-xi beta.
  const auto reg = SpinRegister::uniform(1);
  PulseSegment seg;
  seg.duration = 1.0;
  seg.squeeze_rate.per_qubit = {0.4};
  seg.alpha.common = 0.3;
  seg.beta.common = 0.5;
  PulseSchedule sched{reg, {seg}, {}};
  const auto f = simultaneous_factorization(sched);
  for (int c = 0; c < 2; ++c) {
    const double r = 0.4 * (c == 0 ? 1 : -1);
    // A(t) = 0.3 (e^{rt}-1)/r, B(t) = 0.5 (1-e^{-rt})/r; dA = 0.3 e^{rt} dt
    // phase = 2 int_0^1 B(t) 0.3 e^{rt} dt = 2*0.15/r int (e^{rt} - 1) dt
    const double phase = 0.3 / r * ((std::exp(r) - 1) / r - 1.0);
    EXPECT_NEAR(f.phases.phase[c], phase, 1e-9);
    EXPECT_NEAR(f.configs[c].a_end, 0.3 * (std::exp(r) - 1) / r, 1e-12);
    EXPECT_NEAR(f.configs[c].b_end, 0.5 * (1 - std::exp(-r)) / r, 1e-12);
    EXPECT_NEAR(f.configs[c].xi_end, r, 1e-15);
  }
}

TEST(Factorization, OffAxisSqueezeRejected) {
  PulseSegment seg;
  seg.duration = 1e-6;
  seg.squeeze_rate.per_qubit = {1e4};
  seg.squeeze_phase = 0.5 * pi;
  PulseSchedule s{SpinRegister::uniform(1), {seg}, {}};
  try {
    simultaneous_factorization(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonCommutingDrives);
  }
}

TEST(Closure, SingleDisplacementResidual) {
  const auto reg = SpinRegister::uniform(2);
  PulseSegment seg;
  seg.duration = 2e-6;
  seg.alpha = {0.1e6, {0.2e6, -0.05e6}};
  PulseSchedule s{reg, {seg}, {}};
  double expect = 0;
  for (int c = 0; c < 4; ++c) expect = std::max(expect, std::abs(2e-6 * seg.alpha.eigenvalue(SpinConfiguration::from_index(c, 2))));
  const auto r = closure_residual(s);
  EXPECT_NEAR(r.a, expect, 1e-12);
  EXPECT_EQ(r.b, 0.0);
  EXPECT_EQ(r.xi, 0.0);
}

TEST(Closure, MissingFinalSqueeze) {
  std::mt19937_64 rng(4);
  const int n = 3;
  const auto reg = SpinRegister::uniform(n);
  const auto r = random_rect(n, rng);
  auto sched = default_rectangle(reg, r.a, r.b, r.xi);
  sched.segments.erase(sched.segments.begin() + 6);
  double xi_pred = 0;
  for (int c = 0; c < reg.hilbert_dim(); ++c) xi_pred = std::max(xi_pred, std::abs(r.xi.eigenvalue(SpinConfiguration::from_index(c, n))));
  EXPECT_NEAR(closure_residual(sched).xi, xi_pred, 1e-9);
}

TEST(Envelope, CoversCoherentDisplacement) {
  PulseSegment seg;
  seg.duration = 1.0;
  seg.alpha.common = 1.5;
  PulseSchedule s{SpinRegister::uniform(1), {seg}, {}};
  const auto e = envelope_extent(s, MotionalState::vacuum(), 1e-8);
  EXPECT_NEAR(e.max_displacement, 1.5, 1e-12);
  EXPECT_EQ(e.max_squeeze, 0.0);
  EXPECT_GE(truncation_for_schedule(s, MotionalState::vacuum(), 1e-8), choose_truncation(1.5, 0, 0, 1e-8));
}

TEST(Timing, RatesPerIon) {
  EXPECT_NEAR(squeeze_rate_per_ion(0.11 * 0.5, two_pi * 1e6), 9503.3177771, 1e-6);
  EXPECT_NEAR(displacement_rate_per_ion(0.1, 2.0), 0.1, 1e-16);
}
