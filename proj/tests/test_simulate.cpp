#include <random>

#include <gtest/gtest.h>

#include "squeezegate/acceptance.hpp"
#include "squeezegate/gates.hpp"
#include "squeezegate/simulate.hpp"

using namespace sqg;

namespace {

CVector random_state(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVector v(d);
  for (int i = 0; i < d; ++i) v(i) = cplx(g(rng), g(rng));
  return v.normalized();
}

PulseSchedule small_rectangle(int n, std::mt19937_64& rng, double scale = 0.5) {
  std::uniform_real_distribution<double> u(-scale, scale);
  DisplacementSet a, b;
  SqueezeAmplitudeSet xi;
  a.common = u(rng);
  b.common = u(rng);
  for (int q = 0; q < n; ++q) {
    a.per_qubit.push_back(u(rng));
    b.per_qubit.push_back(u(rng));
    xi.per_qubit.push_back(u(rng));
  }
  return default_rectangle(SpinRegister::uniform(n), a, b, xi);
}

double joint_fidelity(const SimulationResult& x, const SimulationResult& y) {
  double f = 0;
  for (std::size_t k = 0; k < x.joint.size(); ++k)
    f += x.weights[k] * std::norm((x.joint[k].conjugate().cwiseProduct(y.joint[k])).sum());
  return f;
}

}  // namespace

TEST(Simulate, EmptyScheduleKeepsInput) {
  std::mt19937_64 rng(1);
  PulseSchedule s{SpinRegister::uniform(2), {}, {}};
  const CVector psi = random_state(4, rng);
  for (Engine e : {Engine::block, Engine::stepped}) {
    SimulationOptions o;
    o.engine = e;
    const auto r = simulate_schedule(s, psi, MotionalState::fock(1), 6, o);
    EXPECT_EQ(r.dim, 6);
    for (int b = 0; b < 4; ++b) {
      EXPECT_NEAR(std::abs(r.joint[0](1, b) - psi(b)), 0, 1e-15);
      EXPECT_NEAR(r.joint[0].col(b).norm(), std::abs(psi(b)), 1e-15);
    }
  }
}

TEST(Simulate, SingleSqueezeSegmentMatchesSqueezeOperator) {
  const double xi = 0.35;
  const auto reg = SpinRegister::uniform(1, 0.4);
  PulseSegment seg;
  seg.kind = SegmentKind::squeeze;
  seg.duration = 2e-5;
  seg.squeeze_rate.per_qubit = {xi / seg.duration};
  PulseSchedule s{reg, {seg}, {0.055}};
  const CVector up = axis_eigenvector(reg.axis(0), +1);
  const int d = 40;
  const CVector expect = squeeze_op(TruncatedMode(d), xi).col(0);
  for (Engine e : {Engine::block, Engine::stepped}) {
    SimulationOptions o;
    o.engine = e;
    const auto r = simulate_schedule(s, up, MotionalState::vacuum(), d, o);
    // joint = |up> (x) S(xi)|0>
    for (int b = 0; b < 2; ++b) EXPECT_LE(max_abs(r.joint[0].col(b) - up(b) * expect), 1e-9) << to_string(e);
  }
}

TEST(Simulate, EnginesAgree) {
  std::mt19937_64 rng(21);
  for (int n : {1, 2}) {
    auto sched = small_rectangle(n, rng, 0.4);
    // a simultaneous segment exercises mixed generators
    PulseSegment mix;
    mix.duration = 1e-5;
    mix.alpha = {2e4, std::vector<double>(static_cast<std::size_t>(n), -1e4)};
    mix.beta = {-1e4, std::vector<double>(static_cast<std::size_t>(n), 3e4)};
    mix.squeeze_rate.per_qubit.assign(static_cast<std::size_t>(n), 1.5e4);
    sched.segments.insert(sched.segments.begin() + 3, mix);
    const CVector psi = random_state(1 << n, rng);
    for (const auto& m : {MotionalState::vacuum(), MotionalState::thermal(0.3)}) {
      const int dim = truncation_for_schedule(sched, m, 1e-9);
      SimulationOptions o;
      const auto rb = simulate_schedule(sched, psi, m, dim, o);
      o.engine = Engine::stepped;
      const auto rs = simulate_schedule(sched, psi, m, dim, o);
      ASSERT_EQ(rb.joint.size(), rs.joint.size());
      for (std::size_t k = 0; k < rb.joint.size(); ++k) EXPECT_LE(max_abs(rb.joint[k] - rs.joint[k]), 1e-7);
      EXPECT_GE(joint_fidelity(rb, rs), 1 - 1e-10);
    }
  }
}

TEST(Simulate, FactorizationTheorem) {
  std::mt19937_64 rng(8);
  for (int n : {1, 2, 3}) {
    const auto sched = small_rectangle(n, rng);
    const auto f = simultaneous_factorization(sched);
    const CMatrix u = seq_unitary_exact(f.phases, sched.reg);
    const CVector psi = random_state(1 << n, rng);
    const int dim = truncation_for_schedule(sched, MotionalState::vacuum(), 1e-9);
    const auto r = simulate_schedule(sched, psi, MotionalState::vacuum(), dim);
    // final joint state = (U psi) (x) |0>
    const CVector out = u * psi;
    cplx ov = 0;
    for (int b = 0; b < (1 << n); ++b) ov += std::conj(out(b)) * r.joint[0](0, b);
    EXPECT_GE(std::norm(ov), 1 - 1e-6) << n;
  }
}

TEST(Simulate, MotionalInsensitivity) {
  std::mt19937_64 rng(13);
  const auto sched = small_rectangle(2, rng);
  const CVector psi = random_state(4, rng);
  std::vector<MotionalState> inputs{MotionalState::fock(0), MotionalState::fock(1), MotionalState::fock(2),
                                    MotionalState::fock(3), MotionalState::thermal(0.5),
                                    MotionalState::coherent(cplx(0.5, 0.0))};
  std::vector<CMatrix> rhos;
  for (const auto& m : inputs) {
    const int dim = truncation_for_schedule(sched, m, 1e-9);
    rhos.push_back(reduced_spin_density(simulate_schedule(sched, psi, m, dim)));
  }
  for (std::size_t i = 0; i < rhos.size(); ++i)
    for (std::size_t j = i + 1; j < rhos.size(); ++j) EXPECT_GE(uhlmann_fidelity(rhos[i], rhos[j]), 1 - 1e-5);
}

TEST(Simulate, LeakageMonitorTrips) {
  std::mt19937_64 rng(2);
  PulseSegment seg;
  seg.duration = 1.0;
  seg.alpha.common = 3.0;
  PulseSchedule s{SpinRegister::uniform(1), {seg}, {}};
  try {
    simulate_schedule(s, CVector::Unit(2, 0), MotionalState::vacuum(), 20);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LeakageExceeded);
    EXPECT_TRUE(is_numerical(e.code()));
  }
  SimulationOptions o;
  o.enforce_leakage = false;
  EXPECT_GT(simulate_schedule(s, CVector::Unit(2, 0), MotionalState::vacuum(), 20, o).leakage, 1e-8);
}

TEST(Simulate, InputValidation) {
  PulseSchedule s{SpinRegister::uniform(2), {}, {}};
  EXPECT_THROW(simulate_schedule(s, CVector::Unit(2, 0), MotionalState::vacuum(), 8), Error);
  CVector bad = CVector::Zero(4);
  bad(0) = std::nan("");
  EXPECT_THROW(simulate_schedule(s, bad, MotionalState::vacuum(), 8), Error);
}

TEST(Simulate, ThreadCountDoesNotChangeResult) {
  std::mt19937_64 rng(30);
  const auto sched = small_rectangle(3, rng);
  const CVector psi = random_state(8, rng);
  const int dim = truncation_for_schedule(sched, MotionalState::thermal(0.5), 1e-8);
  SimulationOptions o1, o4;
  o4.threads = 4;
  const auto a = simulate_schedule(sched, psi, MotionalState::thermal(0.5), dim, o1);
  const auto b = simulate_schedule(sched, psi, MotionalState::thermal(0.5), dim, o4);
  for (std::size_t k = 0; k < a.joint.size(); ++k) EXPECT_EQ(max_abs(a.joint[k] - b.joint[k]), 0.0);
}

TEST(FockUnitary, MatchesSeqUnitary) {
  std::mt19937_64 rng(40);
  const auto sched = small_rectangle(2, rng);
  const auto t = simultaneous_factorization(sched).phases;
  const int dim = truncation_for_schedule(sched, MotionalState::fock(2), 1e-9);
  for (Engine e : {Engine::block, Engine::stepped}) {
    SimulationOptions o;
    o.engine = e;
    const auto r = fock_spin_unitary(sched, MotionalState::fock(2), dim, o);
    EXPECT_GE(entanglement_fidelity(seq_unitary_exact(t, sched.reg), r.unitary, 1e-6), 1 - 1e-6);
    EXPECT_GE(r.motion_return, 1 - 1e-6);
  }
}

TEST(FockUnitary, ToffoliTenDbReturnsMotion) {
  const auto s = toffoli_setup(3, 10.0);
  const auto sched = default_rectangle(s.reg, s.a, s.b, s.xi);
  const int dim = truncation_for_schedule(sched, MotionalState::vacuum(), 1e-8);
  const auto r = fock_spin_unitary(sched, MotionalState::vacuum(), dim);
  EXPECT_GE(r.motion_return, 1 - 1e-6);
  EXPECT_LE(r.leakage, 1e-8);
  const CMatrix exact = seq_unitary_exact(seq_phase_table(s.a, s.b, s.xi, s.reg), s.reg);
  EXPECT_GE(trace_overlap(exact, r.unitary), 1 - 1e-6);
}

TEST(Trajectory, EmptyScheduleIsConstant) {
  PulseSchedule s{SpinRegister::uniform(1), {}, {}};
  const auto tr = trajectory(s, SpinConfiguration{{1}}, MotionalState::vacuum(), 8, 5);
  ASSERT_EQ(tr.size(), 5u);
  for (const auto& p : tr) {
    EXPECT_EQ(p.t, 0.0);
    EXPECT_NEAR(p.m.x_mean, 0, 1e-15);
    EXPECT_NEAR(p.m.x_var, 0.25, 1e-15);
    EXPECT_NEAR(p.m.p_var, 0.25, 1e-15);
  }
}

TEST(Trajectory, DisplacementAlongX) {
  PulseSegment seg;
  seg.duration = 4e-6;
  seg.alpha.common = 1.3 / 4e-6;
  PulseSchedule s{SpinRegister::uniform(1), {seg}, {}};
  const auto tr = trajectory(s, SpinConfiguration{{1}}, MotionalState::vacuum(), 40, 11);
  EXPECT_NEAR(tr.back().m.x_mean, 1.3, 1e-8);
  EXPECT_NEAR(tr[5].m.x_mean, 0.65, 1e-8);
  EXPECT_NEAR(tr.back().t, 4e-6, 1e-18);
}

TEST(Trajectory, AllUpSqueezedCorner) {
  const auto s = toffoli_setup(3, 10.0);
  const auto sched = default_rectangle(s.reg, s.a, s.b, s.xi);
  const int dim = truncation_for_schedule(sched, MotionalState::vacuum(), 1e-8);
  const auto tr = trajectory(sched, SpinConfiguration{{1, 1, 1}}, MotionalState::vacuum(), dim, 33);
  const double ts = sched.segments[0].duration;
  const auto one = trajectory(PulseSchedule{sched.reg, {sched.segments[0]}, sched.lamb_dicke}, SpinConfiguration{{1, 1, 1}},
                              MotionalState::vacuum(), dim, 2);
  const double nxi = 3 * s.xi.per_qubit[0];
  // relative accuracy set by the 1e-8 leakage budget of the basis
  EXPECT_NEAR(one.back().m.p_var / (0.25 * std::exp(-2 * nxi)), 1.0, 1e-5);
  EXPECT_NEAR(one.back().m.x_var / (0.25 * std::exp(2 * nxi)), 1.0, 1e-5);
  EXPECT_NEAR(one.back().t, ts, 1e-18);
  // loop closes
  EXPECT_NEAR(tr.back().m.x_mean, 0, 1e-7);
  EXPECT_NEAR(tr.back().m.p_mean, 0, 1e-7);
  EXPECT_NEAR(tr.back().m.x_var, 0.25, 1e-7);
}
