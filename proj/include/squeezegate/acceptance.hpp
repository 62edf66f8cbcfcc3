#ifndef SQUEEZEGATE_ACCEPTANCE_HPP
#define SQUEEZEGATE_ACCEPTANCE_HPP

// End-to-end acceptance checks. Each criterion returns a pass flag, the
// measured quantities and the pinned tolerance. Shared by `squeezegate verify`
// and the acceptance test binary.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "squeezegate/csv.hpp"
#include "squeezegate/fockspace.hpp"
#include "squeezegate/gates.hpp"
#include "squeezegate/modes.hpp"
#include "squeezegate/protocol.hpp"
#include "squeezegate/simulate.hpp"

namespace sqg {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

/// (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2
inline double uhlmann_fidelity(const CMatrix& rho, const CMatrix& sigma) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho);
  const RVector ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const CMatrix sr = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
  const CMatrix m = sr * sigma * sr;
  Eigen::SelfAdjointEigenSolver<CMatrix> em(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  const double t = em.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return t * t;
}

namespace acceptance {

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

struct RandomAmplitudes {
  DisplacementSet a;
  DisplacementSet b;
  SqueezeAmplitudeSet xi;
};

inline RandomAmplitudes random_amplitudes(int n, std::mt19937_64& rng, bool squeeze = true) {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  RandomAmplitudes r;
  for (int q = 0; q < n; ++q) {
    r.a.per_qubit.push_back(u(rng));
    r.b.per_qubit.push_back(u(rng));
    r.xi.per_qubit.push_back(squeeze ? u(rng) : 0.0);
  }
  return r;
}

inline std::vector<MotionalState> motional_inputs() {
  return {MotionalState::vacuum(), MotionalState::fock(2), MotionalState::thermal(0.5)};
}

inline CVector random_spin_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVector v(1 << n);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cplx(g(rng), g(rng));
  return v.normalized();
}

// Operator identity S^dag D(iB) S = D(iB e^{-xi}) compared on the block of
// levels the truncation reproduces: k = floor(dim e^{-2|xi|} / 4).
inline CriterionResult criterion_1() {
  CriterionResult r{1, "operator identity S^dag D(iB) S = D(iB e^{-xi})", true, ""};
  const TruncatedMode mode(128);
  double worst = 0.0;
  double worst_full_mirror = 0.0;
  for (double xi : {0.1, 0.3, 0.5})
    for (double bb : {0.3, 1.0}) {
      const CMatrix s = squeeze_op(mode, xi);
      const CMatrix lhs = s.adjoint() * displacement_op(mode, cplx(0.0, bb)) * s;
      const CMatrix rhs = displacement_op(mode, cplx(0.0, bb * std::exp(-xi)));
      const CMatrix mirror = displacement_op(mode, cplx(0.0, bb * std::exp(xi)));
      const int k = static_cast<int>(std::floor(mode.dim() * std::exp(-2.0 * xi) / 4.0));
      worst = std::max(worst, max_abs(lhs.topLeftCorner(k, k) - rhs.topLeftCorner(k, k)));
      worst_full_mirror = std::max(worst_full_mirror, max_abs(lhs.topLeftCorner(k, k) - mirror.topLeftCorner(k, k)));
    }
  r.pass = worst <= 1e-8 && worst_full_mirror > 1e-3;
  r.detail = "max err " + fmt(worst) + " (tol 1e-8); opposite sign err " + fmt(worst_full_mirror);
  return r;
}

inline CriterionResult criterion_2(int threads = 1) {
  CriterionResult r{2, "sequential factorization vs Fock simulation", true, ""};
  std::mt19937_64 rng(20240611);
  double worst_f = 1.0;
  double worst_ret = 1.0;
  double worst_leak = 0.0;
  for (int n : {2, 3})
    for (int trial = 0; trial < 3; ++trial) {
      const auto amp = random_amplitudes(n, rng);
      const auto reg = SpinRegister::uniform(n, 0.0);
      const PulseSchedule sched = default_rectangle(reg, amp.a, amp.b, amp.xi);
      const CMatrix exact = seq_unitary_exact(seq_phase_table(amp.a, amp.b, amp.xi, reg), reg);
      for (const auto& m : motional_inputs()) {
        SimulationOptions opt;
        opt.threads = threads;
        const int dim = truncation_for_schedule(sched, m, opt.leak_tol);
        const auto su = fock_spin_unitary(sched, m, dim, opt);
        worst_f = std::min(worst_f, trace_overlap(exact, su.unitary));
        worst_ret = std::min(worst_ret, su.motion_return);
        worst_leak = std::max(worst_leak, su.leakage);
      }
    }
  r.pass = worst_f >= 1.0 - 1e-6 && worst_ret >= 1.0 - 1e-6;
  r.detail = "min F " + fmt(worst_f) + ", min motional return " + fmt(worst_ret) + " (tol 1-1e-6), max leakage " +
             fmt(worst_leak);
  return r;
}

inline CriterionResult criterion_3(int threads = 1) {
  CriterionResult r{3, "motional insensitivity of the reduced spin state", true, ""};
  std::mt19937_64 rng(7);
  double worst = -1.0;
  for (int n : {2, 3}) {
    const auto amp = random_amplitudes(n, rng);
    const auto reg = SpinRegister::uniform(n, 0.0);
    const PulseSchedule sched = default_rectangle(reg, amp.a, amp.b, amp.xi);
    const CVector psi = random_spin_state(n, rng);
    std::vector<CMatrix> rhos;
    for (const auto& m : motional_inputs()) {
      SimulationOptions opt;
      opt.threads = threads;
      const int dim = truncation_for_schedule(sched, m, opt.leak_tol);
      rhos.push_back(reduced_spin_density(simulate_schedule(sched, psi, m, dim, opt)));
    }
    for (std::size_t i = 0; i < rhos.size(); ++i)
      for (std::size_t j = i + 1; j < rhos.size(); ++j) worst = std::max(worst, 1.0 - uhlmann_fidelity(rhos[i], rhos[j]));
  }
  r.pass = worst <= 1e-5;
  r.detail = "max pairwise 1-F " + fmt(worst) + " (tol 1e-5)";
  return r;
}

inline CriterionResult criterion_4() {
  CriterionResult r{4, "no squeezing gives at most two-body phases", true, ""};
  std::mt19937_64 rng(11);
  double worst = 0.0;
  for (int n : {3, 4, 5})
    for (int trial = 0; trial < 4; ++trial) {
      auto amp = random_amplitudes(n, rng, false);
      amp.a.common = 0.3 * trial;
      amp.b.common = -0.2 * trial;
      const auto reg = SpinRegister::uniform(n, 0.0);
      worst = std::max(worst, max_weight_coeff(pauli_spectrum(seq_phase_table(amp.a, amp.b, amp.xi, reg)), 3));
      const PulseSchedule sched = default_rectangle(reg, amp.a, amp.b, amp.xi);
      worst = std::max(worst, max_weight_coeff(pauli_spectrum(simultaneous_factorization(sched).phases), 3));
    }
  r.pass = worst <= 1e-10;
  r.detail = "max weight>=3 coefficient " + fmt(worst) + " (tol 1e-10)";
  return r;
}

inline CriterionResult criterion_5() {
  CriterionResult r{5, "GHZ state from the three-body gate at phi = pi/4", true, ""};
  const auto s = three_body_setup(3, 0, 1, 2, 0.25 * pi);
  const PulseSchedule sched = default_rectangle(s.reg, s.a, s.b, s.xi);
  const MotionalState vac = MotionalState::vacuum();
  const int dim = truncation_for_schedule(sched, vac, 1e-8);
  CVector in = CVector::Zero(8);
  in(0) = 1.0;
  const auto res = simulate_schedule(sched, in, vac, dim);
  const CMatrix rho = reduced_spin_density(res);
  const CVector ghz = ghz_target(3);
  const double f = std::real(ghz.dot(rho * ghz));
  const double db = 10.0 * std::log10(std::exp(s.xi.per_qubit[2]));
  r.pass = f >= 0.999;
  r.detail = "fidelity " + fmt(f) + " (tol 0.999), xi_k " + fmt(s.xi.per_qubit[2]) + " = " + fmt(db) + " dB, dim " +
             std::to_string(dim);
  return r;
}

inline std::vector<double> db_grid(double lo, double hi, double step) {
  std::vector<double> g;
  const int n = static_cast<int>(std::lround((hi - lo) / step));
  for (int i = 0; i <= n; ++i) g.push_back(lo + step * i);
  return g;
}

inline bool monotone(const std::vector<OverlapPoint>& c, double slack = 1e-12) {
  for (std::size_t i = 1; i < c.size(); ++i)
    if (c[i].overlap < c[i - 1].overlap - slack || c[i].overlap > 1.0 + slack) return false;
  return true;
}

inline CriterionResult criterion_6(int threads = 1) {
  CriterionResult r{6, "Toffoli overlap curve", true, ""};
  const auto c3 = toffoli_overlap_curve(3, db_grid(0.0, 30.0, 0.5), threads);
  const auto c4 = toffoli_overlap_curve(4, db_grid(0.0, 40.0, 0.5), threads);
  const double o0 = toffoli_overlap(3, 0.0).overlap;
  const double o10 = toffoli_overlap(3, 10.0).overlap;
  const double o20 = toffoli_overlap(3, 20.0).overlap;
  const double o4 = c4.back().overlap;
  // the N=4 curve dips below its 0 dB value before rising to 1
  std::size_t dip = 0;
  for (std::size_t i = 1; i < c4.size(); ++i)
    if (c4[i].overlap < c4[dip].overlap) dip = i;
  const std::vector<OverlapPoint> c4_rise(c4.begin() + static_cast<std::ptrdiff_t>(dip), c4.end());
  double sim_err = 0.0;
  for (double db : {0.0, 2.5, 5.0, 7.5, 10.0}) {
    const auto s = simulated_toffoli_overlap(3, db, 1e-8, threads);
    sim_err = std::max(sim_err, std::abs(s.overlap - s.analytic));
  }
  const bool ok = std::abs(o0 - 0.5625) <= 1e-6 && std::abs(o10 - 0.92) <= 0.01 && o20 >= 0.99 && monotone(c3) &&
                  monotone(c4_rise) && o4 >= 0.99 && sim_err <= 2e-3;
  r.pass = ok;
  r.detail = "N=3: " + fmt(o0) + " @0dB, " + fmt(o10) + " @10dB, " + fmt(o20) + " @20dB; N=4 @40dB " + fmt(o4) +
             " (minimum " + fmt(c4[dip].overlap) + " @" + fmt(c4[dip].db) + "dB); N=3 monotone " +
             (monotone(c3) ? "yes" : "no") + ", N=4 rise monotone " + (monotone(c4_rise) ? "yes" : "no") +
             "; Fock vs analytic " + fmt(sim_err) +
             " (tol 2e-3)";
  return r;
}

inline CriterionResult criterion_7() {
  CriterionResult r{7, "closure residuals", true, ""};
  std::mt19937_64 rng(3);
  double closed = 0.0;
  double pred_err = 0.0;
  for (int n : {1, 2, 3, 4}) {
    const auto amp = random_amplitudes(n, rng);
    const auto reg = SpinRegister::uniform(n, 0.0);
    const PulseSchedule full = default_rectangle(reg, amp.a, amp.b, amp.xi);
    closed = std::max(closed, closure_residual(full).max());

    double max_a = 0.0;
    double max_xi = 0.0;
    double max_a_shrunk = 0.0;
    for (int c = 0; c < reg.hilbert_dim(); ++c) {
      const auto s = SpinConfiguration::from_index(c, n);
      const double as = amp.a.eigenvalue(s);
      const double xs = amp.xi.eigenvalue(s);
      max_a = std::max(max_a, std::abs(as));
      max_xi = std::max(max_xi, std::abs(xs));
      max_a_shrunk = std::max(max_a_shrunk, std::abs(as * (1.0 - std::exp(-xs))));
    }
    // last position kick removed
    PulseSchedule no_last = full;
    no_last.segments.pop_back();
    const auto r1 = closure_residual(no_last);
    pred_err = std::max({pred_err, std::abs(r1.a - max_a), r1.b, r1.xi});
    // last squeeze removed: the final kick lands on the contracted frame
    PulseSchedule no_sq = full;
    no_sq.segments.erase(no_sq.segments.begin() + 6);
    const auto r2 = closure_residual(no_sq);
    pred_err = std::max({pred_err, std::abs(r2.xi - max_xi), std::abs(r2.a - max_a_shrunk), r2.b});
  }
  r.pass = closed <= 1e-12 && pred_err <= 1e-9;
  r.detail = "closed residual " + fmt(closed) + " (tol 1e-12); truncated prediction error " + fmt(pred_err) +
             " (tol 1e-9)";
  return r;
}

inline CriterionResult criterion_8() {
  CriterionResult r{8, "timing estimates", true, ""};
  const double xi = std::atanh(0.25);
  const double amp = std::sqrt(pi / (2.0 * std::cosh(xi)));
  const auto t = timing_estimate(xi, two_pi * 1e6, 0.5, 0.11, amp, amp);
  const bool ok = std::abs(t.squeeze_rate / 9.5e3 - 1.0) <= 0.02 && std::abs(t.db_per_ms - 41.0) <= 1.0 &&
                  t.t_s >= 25e-6 && t.t_s <= 28e-6 && t.total >= 125e-6 && t.total <= 145e-6;
  r.pass = ok;
  r.detail = "dxi/dt " + fmt(t.squeeze_rate) + " 1/s, " + fmt(t.db_per_ms) + " dB/ms, t_S " + fmt(t.t_s * 1e6) +
             " us, T " + fmt(t.total * 1e6) + " us";
  return r;
}

inline CriterionResult criterion_9() {
  CriterionResult r{9, "mode spectrum and zig-zag gap", true, ""};
  ChainSpec c;
  c.n_ions = 4;
  c.axial_freq = two_pi * 0.9e6;
  c.radial_freq = two_pi * 3e6;
  const ModeData md = transverse_modes(c);
  const GapReport g = second_sideband_gaps(md, md.zigzag());
  const double gap_khz = g.min_pair_gap / two_pi / 1e3;
  const auto eps = off_resonant_ratio(0.11, two_pi * 1e6, 4, g.min_pair_gap);

  ChainSpec c2 = c;
  c2.n_ions = 2;
  const ModeData m2 = transverse_modes(c2);
  const double w_zz = std::sqrt(c.radial_freq * c.radial_freq - c.axial_freq * c.axial_freq);
  const double rel = std::max(std::abs(m2.frequencies[0] / c.radial_freq - 1.0), std::abs(m2.frequencies[1] / w_zz - 1.0));

  const bool gap_ok = gap_khz >= 120.0 && gap_khz <= 200.0;
  r.pass = gap_ok && eps.epsilon_sq <= 0.01 && rel <= 1e-10;
  r.detail = "zig-zag gap " + fmt(gap_khz) + " kHz (band 120-200), eps^2 " + fmt(eps.epsilon_sq) +
             " (tol 0.01), two-ion rel err " + fmt(rel) + " (tol 1e-10)";
  return r;
}

/// The CSV set written by `verify`, keyed by file name.
inline std::map<std::string, std::string> verify_csvs(int threads) {
  std::map<std::string, std::string> out;
  out["overlap_N3.csv"] = overlap_csv(toffoli_overlap_curve(3, db_grid(0.0, 30.0, 0.5), threads));
  out["overlap_N4.csv"] = overlap_csv(toffoli_overlap_curve(4, db_grid(0.0, 30.0, 0.5), threads));
  {
    CsvWriter w({"squeezing_db", "overlap"});
    const std::vector<double> grid{0.0, 2.5, 5.0, 7.5, 10.0};
    std::vector<SimulatedOverlap> pts(grid.size());
    parallel_for(static_cast<int>(grid.size()), threads,
                 [&](int i) { pts[static_cast<std::size_t>(i)] = simulated_toffoli_overlap(3, grid[static_cast<std::size_t>(i)]); });
    for (const auto& p : pts) w.row({p.db, p.overlap});
    out["overlap_N3_fock.csv"] = w.str();
  }
  const auto s = toffoli_setup(3, 10.0);
  const PulseSchedule sched = default_rectangle(s.reg, s.a, s.b, s.xi);
  const MotionalState vac = MotionalState::vacuum();
  const int dim = truncation_for_schedule(sched, vac, 1e-8);
  std::vector<std::string> traj(8);
  parallel_for(8, threads, [&](int c) {
    traj[static_cast<std::size_t>(c)] = trajectory_csv(trajectory(sched, SpinConfiguration::from_index(c, 3), vac, dim, 161));
  });
  for (int c = 0; c < 8; ++c)
    out["trajectory_" + SpinConfiguration::from_index(c, 3).label() + ".csv"] = traj[static_cast<std::size_t>(c)];
  return out;
}

inline CriterionResult criterion_10(int threads = 8) {
  CriterionResult r{10, "determinism across thread counts", true, ""};
  const auto a = verify_csvs(1);
  const auto b = verify_csvs(threads);
  r.pass = a == b;
  std::size_t bytes = 0;
  for (const auto& [k, v] : a) bytes += v.size();
  r.detail = std::to_string(a.size()) + " CSV files, " + std::to_string(bytes) + " bytes, threads 1 vs " +
             std::to_string(threads) + (r.pass ? ": identical" : ": DIFFER");
  return r;
}

}  // namespace acceptance

/// Runs criteria 1-10 in order, calling `report` after each.
inline std::vector<CriterionResult> run_acceptance(int threads, const std::function<void(const CriterionResult&)>& report = {}) {
  using namespace acceptance;
  std::vector<std::function<CriterionResult()>> checks = {
      [] { return criterion_1(); },
      [&] { return criterion_2(threads); },
      [&] { return criterion_3(threads); },
      [] { return criterion_4(); },
      [] { return criterion_5(); },
      [&] { return criterion_6(threads); },
      [] { return criterion_7(); },
      [] { return criterion_8(); },
      [] { return criterion_9(); },
      [&] { return criterion_10(std::max(threads, 8)); },
  };
  std::vector<CriterionResult> out;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    CriterionResult res;
    try {
      res = checks[i]();
    } catch (const std::exception& e) {
      res = {static_cast<int>(i) + 1, "criterion " + std::to_string(i + 1), false, std::string("exception: ") + e.what()};
    }
    if (report) report(res);
    out.push_back(std::move(res));
  }
  return out;
}

inline std::string format_result(const CriterionResult& r) {
  return std::string(r.pass ? "PASS" : "FAIL") + " criterion " + std::to_string(r.id) + ": " + r.name + " | " + r.detail;
}

}  // namespace sqg

#endif  // SQUEEZEGATE_ACCEPTANCE_HPP
