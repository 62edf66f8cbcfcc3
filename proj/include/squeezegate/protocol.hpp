#ifndef SQUEEZEGATE_PROTOCOL_HPP
#define SQUEEZEGATE_PROTOCOL_HPP

// Pulse schedules for spin-dependent displacement and squeezing of one
// motional mode, and the analytic spin-diagonal phase they imprint.
//
// Every drive on the register is linear in the commuting operators
// sigma_phi_q, so on a joint eigen-configuration s each segment acts on the
// motion as the scalar generator
//   K(s) = tau [ xidot(s) G_dphi + (alpha(s) + i beta(s)) a^dag - h.c. ],
// with xidot(s) = sum_q s_q xidot_q and alpha(s) = alpha_0 + sum_q s_q alpha_q.
//
// Phase sign: writing the evolution as U = S_xi(t) U_D(t) with
// U_D = e^{-i Phi} D(iB) D(A), the phase accumulates as Phi = +2 int B dA
// (the mirror image of the -2 int B dA form, because D(alpha) D(beta) =
// e^{i Im(alpha beta^*)} D(alpha + beta) for our D).

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "squeezegate/core.hpp"
#include "squeezegate/fockspace.hpp"
#include "squeezegate/spinreg.hpp"

namespace sqg {

/// A0 * 1 + sum_q A_q sigma_phi_q, dimensionless (x~/p~ units) or a rate.
struct DisplacementSet {
  double common = 0.0;
  std::vector<double> per_qubit;

  static DisplacementSet uniform(double value) { return {value, {}}; }

  double eigenvalue(const SpinConfiguration& s) const {
    double v = common;
    for (std::size_t q = 0; q < per_qubit.size(); ++q) v += per_qubit[q] * s.signs.at(q);
    return v;
  }
  bool is_zero() const {
    return common == 0.0 && std::all_of(per_qubit.begin(), per_qubit.end(), [](double x) { return x == 0.0; });
  }
  DisplacementSet scaled(double f) const {
    DisplacementSet out{common * f, per_qubit};
    for (auto& x : out.per_qubit) x *= f;
    return out;
  }
};

/// xi_hat = sum_q xi_q sigma_phi_q
struct SqueezeAmplitudeSet {
  std::vector<double> per_qubit;

  static SqueezeAmplitudeSet uniform(int n, double xi) { return {std::vector<double>(static_cast<std::size_t>(n), xi)}; }

  double eigenvalue(const SpinConfiguration& s) const {
    double v = 0.0;
    for (std::size_t q = 0; q < per_qubit.size(); ++q) v += per_qubit[q] * s.signs.at(q);
    return v;
  }
  bool is_zero() const {
    return std::all_of(per_qubit.begin(), per_qubit.end(), [](double x) { return x == 0.0; });
  }
  SqueezeAmplitudeSet scaled(double f) const {
    SqueezeAmplitudeSet out = *this;
    for (auto& x : out.per_qubit) x *= f;
    return out;
  }
};

enum class SegmentKind { displace_x, displace_p, squeeze, antisqueeze, simultaneous };

inline const char* to_string(SegmentKind k) {
  switch (k) {
    case SegmentKind::displace_x: return "displace_x";
    case SegmentKind::displace_p: return "displace_p";
    case SegmentKind::squeeze: return "squeeze";
    case SegmentKind::antisqueeze: return "antisqueeze";
    case SegmentKind::simultaneous: return "simultaneous";
  }
  return "?";
}

/// Piecewise-constant drive. Rates are per second; `rabi` records the carrier
/// Rabi rates (rad/s) that produce them and is informational.
struct PulseSegment {
  SegmentKind kind = SegmentKind::simultaneous;
  double duration = 0.0;
  DisplacementSet alpha;             // dA/dt
  DisplacementSet beta;              // dB/dt
  SqueezeAmplitudeSet squeeze_rate;  // dxi_q/dt
  double squeeze_phase = 0.0;        // common delta phi
  std::vector<double> rabi;

  /// Motional generator on configuration s for a fraction of the segment.
  QuadraticGenerator generator(const SpinConfiguration& s, double fraction = 1.0) const {
    const double tau = duration * fraction;
    QuadraticGenerator g;
    g.squeeze = tau * squeeze_rate.eigenvalue(s);
    g.squeeze_phase = squeeze_phase;
    g.displacement = cplx(tau * alpha.eigenvalue(s), tau * beta.eigenvalue(s));
    return g;
  }
};

struct PulseSchedule {
  SpinRegister reg;
  std::vector<PulseSegment> segments;
  std::vector<double> lamb_dicke;

  double total_time() const {
    double t = 0.0;
    for (const auto& s : segments) t += s.duration;
    return t;
  }

  void validate() const {
    const auto n = static_cast<std::size_t>(reg.size());
    for (std::size_t k = 0; k < segments.size(); ++k) {
      const auto& seg = segments[k];
      const std::string where = "segment " + std::to_string(k);
      if (!(seg.duration > 0.0) || !std::isfinite(seg.duration))
        throw Error(ErrorCode::InvalidArgument, where + ": duration must be positive");
      for (const auto* v : {&seg.alpha.per_qubit, &seg.beta.per_qubit, &seg.squeeze_rate.per_qubit})
        if (!v->empty() && v->size() != n)
          throw Error(ErrorCode::AxisMismatch, where + ": per-qubit list length differs from register size");
      if (!std::isfinite(seg.alpha.common) || !std::isfinite(seg.beta.common) || !std::isfinite(seg.squeeze_phase))
        throw Error(ErrorCode::NonFinite, where + ": non-finite drive");
    }
    if (!lamb_dicke.empty() && lamb_dicke.size() != n)
      throw Error(ErrorCode::AxisMismatch, "lamb_dicke list length differs from register size");
  }
};

/// Accumulated phase per spin configuration (index order of SpinConfiguration).
struct PhaseTable {
  int n_qubits = 0;
  std::vector<double> phase;

  double at(const SpinConfiguration& s) const { return phase.at(static_cast<std::size_t>(s.index())); }
};

namespace detail {
inline void check_set_size(std::size_t size, const SpinRegister& reg, const char* what) {
  if (size != 0 && size != static_cast<std::size_t>(reg.size()))
    throw Error(ErrorCode::AxisMismatch, std::string(what) + " does not match the register size");
}
}  // namespace detail

/// phase(s) = 2 A(s) B(s) exp(xi(s)), the spin-diagonal form of 2 A B e^{xi}.
inline PhaseTable seq_phase_table(const DisplacementSet& a, const DisplacementSet& b, const SqueezeAmplitudeSet& xi,
                                  const SpinRegister& reg) {
  detail::check_set_size(a.per_qubit.size(), reg, "A");
  detail::check_set_size(b.per_qubit.size(), reg, "B");
  detail::check_set_size(xi.per_qubit.size(), reg, "xi");
  PhaseTable t{reg.size(), std::vector<double>(static_cast<std::size_t>(reg.hilbert_dim()))};
  for (int c = 0; c < reg.hilbert_dim(); ++c) {
    const auto s = SpinConfiguration::from_index(c, reg.size());
    t.phase[static_cast<std::size_t>(c)] = 2.0 * a.eigenvalue(s) * b.eigenvalue(s) * std::exp(xi.eigenvalue(s));
  }
  return t;
}

/// V diag(e^{-i phase}) V^dag
inline CMatrix seq_unitary_exact(const PhaseTable& table, const SpinRegister& reg) {
  if (table.n_qubits != reg.size()) throw Error(ErrorCode::AxisMismatch, "phase table size differs from register");
  const EigenBasis eb = eigenconfigurations(reg);
  CVector d(reg.hilbert_dim());
  for (int c = 0; c < reg.hilbert_dim(); ++c) d(c) = std::polar(1.0, -table.phase[static_cast<std::size_t>(c)]);
  return eb.V * d.asDiagonal() * eb.V.adjoint();
}

struct RectangleTiming {
  double t_x = 0.0;
  double t_p = 0.0;
  double t_S = 0.0;

  double total() const { return 4.0 * t_S + 2.0 * t_x + 2.0 * t_p; }
};

/// Drive capabilities: maximal carrier Rabi rate and per-qubit Lamb-Dicke
/// parameters eta_im. First-sideband displacement runs at
/// dA_q/dt = eta_q Omega_q / 2, second-sideband squeezing at
/// dxi_q/dt = eta_q^2 Omega_q / 2. Spin-independent displacements (A0, B0)
/// come from electrode forces with no Rabi limit; `electrode_time` is their
/// default segment length.
struct DriveLimits {
  double rabi = two_pi * 1e6;
  std::vector<double> lamb_dicke;
  double electrode_time = 1e-6;
};

inline double squeeze_rate_per_ion(double eta, double rabi) { return 0.5 * eta * eta * rabi; }
inline double displacement_rate_per_ion(double eta, double rabi) { return 0.5 * eta * rabi; }

/// Shortest timing that reaches the requested amplitudes at full drive.
inline RectangleTiming minimal_rectangle_timing(const DisplacementSet& a, const DisplacementSet& b,
                                                const SqueezeAmplitudeSet& xi, const DriveLimits& drive) {
  RectangleTiming t;
  auto eta = [&](std::size_t q) {
    if (q >= drive.lamb_dicke.size()) throw Error(ErrorCode::AxisMismatch, "missing Lamb-Dicke parameter");
    return drive.lamb_dicke[q];
  };
  for (std::size_t q = 0; q < xi.per_qubit.size(); ++q)
    if (xi.per_qubit[q] != 0.0)
      t.t_S = std::max(t.t_S, std::abs(xi.per_qubit[q]) / squeeze_rate_per_ion(eta(q), drive.rabi));
  auto disp_time = [&](const DisplacementSet& d) {
    double tt = d.common != 0.0 ? drive.electrode_time : 0.0;
    for (std::size_t q = 0; q < d.per_qubit.size(); ++q)
      if (d.per_qubit[q] != 0.0)
        tt = std::max(tt, std::abs(d.per_qubit[q]) / displacement_rate_per_ion(eta(q), drive.rabi));
    return tt;
  };
  t.t_x = disp_time(a);
  t.t_p = disp_time(b);
  return t;
}

/// Eight-segment rectangle: each momentum kick is bracketed by an
/// anti-squeeze (S^dag, dphi = pi) before and a squeeze (S) after, so that
/// S D(iB) S^dag = D(iB e^{xi}) and
///   U = D(-A) S D(-iB) S^dag D(A) S D(iB) S^dag = exp(-i 2 A B e^{xi}).
/// Time order: S^dag, D(iB), S, D(A), S^dag, D(-iB), S, D(-A).
/// With xi = 0 the squeeze segments are dropped (four-segment loop).
inline PulseSchedule rectangle_schedule(const SpinRegister& reg, const DisplacementSet& a, const DisplacementSet& b,
                                        const SqueezeAmplitudeSet& xi, const RectangleTiming& timing,
                                        const DriveLimits& drive) {
  detail::check_set_size(a.per_qubit.size(), reg, "A");
  detail::check_set_size(b.per_qubit.size(), reg, "B");
  detail::check_set_size(xi.per_qubit.size(), reg, "xi");
  const auto n = static_cast<std::size_t>(reg.size());
  const bool needs_eta = !xi.is_zero() || !a.per_qubit.empty() || !b.per_qubit.empty();
  if (needs_eta && drive.lamb_dicke.size() != n)
    throw Error(ErrorCode::AxisMismatch, "drive needs one Lamb-Dicke parameter per qubit");
  const double slack = 1.0 + 1e-12;

  auto required_rabi = [&](const std::vector<double>& amps, double t, bool squeeze, const char* what) {
    std::vector<double> rabi(n, 0.0);
    for (std::size_t q = 0; q < amps.size(); ++q) {
      if (amps[q] == 0.0) continue;
      if (!(t > 0.0))
        throw Error(ErrorCode::InconsistentAmplitudes, std::string(what) + ": nonzero amplitude with zero duration");
      const double eta = drive.lamb_dicke[q];
      const double r = squeeze ? 2.0 * std::abs(amps[q]) / (eta * eta * t) : 2.0 * std::abs(amps[q]) / (eta * t);
      if (r > drive.rabi * slack)
        throw Error(ErrorCode::InconsistentAmplitudes,
                    std::string(what) + ": qubit " + std::to_string(q) + " needs Rabi rate above the drive limit");
      rabi[q] = r;
    }
    return rabi;
  };
  if ((a.common != 0.0 && !(timing.t_x > 0.0)) || (b.common != 0.0 && !(timing.t_p > 0.0)))
    throw Error(ErrorCode::InconsistentAmplitudes, "spin-independent displacement with zero duration");

  const auto rabi_x = required_rabi(a.per_qubit, timing.t_x, false, "A");
  const auto rabi_p = required_rabi(b.per_qubit, timing.t_p, false, "B");
  const auto rabi_s = required_rabi(xi.per_qubit, timing.t_S, true, "xi");

  PulseSchedule sched{reg, {}, drive.lamb_dicke};
  const bool squeezing = !xi.is_zero();
  auto sq = [&](bool anti) {
    PulseSegment s;
    s.kind = anti ? SegmentKind::antisqueeze : SegmentKind::squeeze;
    s.duration = timing.t_S;
    s.squeeze_rate = xi.scaled(1.0 / timing.t_S);
    if (s.squeeze_rate.per_qubit.empty()) s.squeeze_rate.per_qubit.assign(n, 0.0);
    s.squeeze_phase = anti ? pi : 0.0;
    s.rabi = rabi_s;
    return s;
  };
  auto dx = [&](double sign) {
    PulseSegment s;
    s.kind = SegmentKind::displace_x;
    s.duration = timing.t_x;
    s.alpha = a.scaled(sign / timing.t_x);
    s.rabi = rabi_x;
    return s;
  };
  auto dp = [&](double sign) {
    PulseSegment s;
    s.kind = SegmentKind::displace_p;
    s.duration = timing.t_p;
    s.beta = b.scaled(sign / timing.t_p);
    s.rabi = rabi_p;
    return s;
  };
  const bool has_x = !a.is_zero();
  const bool has_p = !b.is_zero();
  auto push = [&](PulseSegment s, bool keep) {
    if (keep) sched.segments.push_back(std::move(s));
  };
  push(sq(true), squeezing);
  push(dp(+1.0), has_p);
  push(sq(false), squeezing);
  push(dx(+1.0), has_x);
  push(sq(true), squeezing);
  push(dp(-1.0), has_p);
  push(sq(false), squeezing);
  push(dx(-1.0), has_x);
  return sched;
}

/// cos(dphi) for a squeeze phase on the common axis; throws otherwise.
inline double collinear_sign(double dphi) {
  const double c = std::cos(dphi);
  if (std::abs(std::sin(dphi)) > 1e-12)
    throw Error(ErrorCode::NonCommutingDrives, "squeeze phase off the common squeezing axis");
  return c > 0 ? 1.0 : -1.0;
}

struct ConfigFactorization {
  double xi_end = 0.0;
  double a_end = 0.0;
  double b_end = 0.0;
  double phase = 0.0;
  std::vector<double> xi_at_boundaries;  // xi(s) at t = 0 and every segment end
};

struct Factorization {
  std::vector<ConfigFactorization> configs;
  PhaseTable phases;
  std::vector<double> boundary_times;
  int substeps = 0;  // per segment at convergence
};

namespace detail {

// Trapezoid evaluation of A, B and Phi = 2 int B dA on one configuration.
inline ConfigFactorization integrate_config(const PulseSchedule& sched, const SpinConfiguration& s, int sub) {
  ConfigFactorization out;
  double xi = 0.0;
  double a = 0.0;
  double b = 0.0;
  double phi = 0.0;
  out.xi_at_boundaries.push_back(0.0);
  for (const auto& seg : sched.segments) {
    const double r = seg.squeeze_rate.eigenvalue(s) * collinear_sign(seg.squeeze_phase);
    const double al = seg.alpha.eigenvalue(s);
    const double be = seg.beta.eigenvalue(s);
    const double h = seg.duration / sub;
    double xi_prev = xi;
    double ad_prev = al * std::exp(xi_prev);
    double bd_prev = be * std::exp(-xi_prev);
    for (int k = 1; k <= sub; ++k) {
      const double xi_k = xi + r * h * k;
      const double ad_k = al * std::exp(xi_k);
      const double bd_k = be * std::exp(-xi_k);
      const double b_next = b + 0.5 * h * (bd_prev + bd_k);
      phi += h * (b * ad_prev + b_next * ad_k);
      a += 0.5 * h * (ad_prev + ad_k);
      b = b_next;
      ad_prev = ad_k;
      bd_prev = bd_k;
      xi_prev = xi_k;
    }
    xi += r * seg.duration;
    out.xi_at_boundaries.push_back(xi);
  }
  out.xi_end = xi;
  out.a_end = a;
  out.b_end = b;
  out.phase = phi;
  return out;
}

}  // namespace detail

/// Factorised description U(T) = S_xi(T) e^{-i Phi} D(iB(T)) D(A(T)) per
/// configuration, with A = int e^{xi} alpha dt, B = int e^{-xi} beta dt and
/// Phi = 2 int B dA. Trapezoid rule with step halving until A, B and Phi move
/// by less than `tol`; the returned values are Richardson-extrapolated.
inline Factorization simultaneous_factorization(const PulseSchedule& sched, double tol = 1e-9) {
  sched.validate();
  for (const auto& seg : sched.segments) collinear_sign(seg.squeeze_phase);
  const int n = sched.reg.size();
  const int d = sched.reg.hilbert_dim();
  Factorization out;
  out.phases.n_qubits = n;
  out.phases.phase.resize(static_cast<std::size_t>(d));
  out.configs.resize(static_cast<std::size_t>(d));
  double t = 0.0;
  out.boundary_times.push_back(0.0);
  for (const auto& seg : sched.segments) out.boundary_times.push_back(t += seg.duration);

  int worst_sub = 1;
  for (int c = 0; c < d; ++c) {
    const auto s = SpinConfiguration::from_index(c, n);
    int sub = 1;
    ConfigFactorization coarse = detail::integrate_config(sched, s, sub);
    for (;;) {
      ConfigFactorization fine = detail::integrate_config(sched, s, 2 * sub);
      const double change = std::max({std::abs(fine.phase - coarse.phase), std::abs(fine.a_end - coarse.a_end),
                                       std::abs(fine.b_end - coarse.b_end)});
      if (change < tol) {
        fine.phase = (4.0 * fine.phase - coarse.phase) / 3.0;
        fine.a_end = (4.0 * fine.a_end - coarse.a_end) / 3.0;
        fine.b_end = (4.0 * fine.b_end - coarse.b_end) / 3.0;
        out.configs[static_cast<std::size_t>(c)] = std::move(fine);
        break;
      }
      sub *= 2;
      if (sub > (1 << 22)) throw Error(ErrorCode::NoConvergence, "phase integral did not converge");
      coarse = std::move(fine);
    }
    worst_sub = std::max(worst_sub, 2 * sub);
    out.phases.phase[static_cast<std::size_t>(c)] = out.configs[static_cast<std::size_t>(c)].phase;
  }
  out.substeps = worst_sub;
  return out;
}

struct ClosureResidual {
  double a = 0.0;
  double b = 0.0;
  double xi = 0.0;

  double max() const { return std::max({a, b, xi}); }
  bool closed(double tol = 1e-9) const { return max() <= tol; }
};

/// max over configurations of |A(T)|, |B(T)|, |xi(T)|
inline ClosureResidual closure_residual(const PulseSchedule& sched, double tol = 1e-9) {
  const Factorization f = simultaneous_factorization(sched, tol);
  ClosureResidual r;
  for (const auto& c : f.configs) {
    r.a = std::max(r.a, std::abs(c.a_end));
    r.b = std::max(r.b, std::abs(c.b_end));
    r.xi = std::max(r.xi, std::abs(c.xi_end));
  }
  return r;
}

/// Worst phase-space extent of the Gaussian envelope of the motion over the
/// whole schedule, for every configuration. Means obey
///   dx/dt = -xidot x + alpha,  dp/dt = xidot p + beta
/// and the standard deviations scale as e^{-xi}, e^{+xi}.
struct EnvelopeExtent {
  double max_radius_sq = 0.0;  // (|x| + z sx)^2 + (|p| + z sp)^2
  double max_squeeze = 0.0;    // max |xi(s, t)|
  double max_displacement = 0.0;
};

inline EnvelopeExtent envelope_extent(const PulseSchedule& sched, const MotionalState& motion, double leak_tol,
                                      int samples_per_segment = 32) {
  const double z = gaussian_tail_z(leak_tol);
  const double sigma0 = 0.5 * std::sqrt(2.0 * motion.envelope_nbar() + 1.0);
  const cplx mean0 = motion.kind() == MotionalState::Kind::coherent ? motion.alpha() : cplx{};
  EnvelopeExtent ext;
  const int n = sched.reg.size();
  for (int c = 0; c < sched.reg.hilbert_dim(); ++c) {
    const auto s = SpinConfiguration::from_index(c, n);
    double x = mean0.real();
    double p = mean0.imag();
    double xi = 0.0;
    auto record = [&]() {
      const double rx = std::abs(x) + z * sigma0 * std::exp(-xi);
      const double rp = std::abs(p) + z * sigma0 * std::exp(xi);
      ext.max_radius_sq = std::max(ext.max_radius_sq, rx * rx + rp * rp);
      ext.max_squeeze = std::max(ext.max_squeeze, std::abs(xi));
      ext.max_displacement = std::max(ext.max_displacement, std::hypot(x, p));
    };
    record();
    for (const auto& seg : sched.segments) {
      // off-axis squeeze phases are sized as if collinear with |xidot|
      const double sgn = std::abs(std::sin(seg.squeeze_phase)) > 1e-12 ? 1.0 : (std::cos(seg.squeeze_phase) > 0 ? 1.0 : -1.0);
      const double r = seg.squeeze_rate.eigenvalue(s) * sgn;
      const double al = seg.alpha.eigenvalue(s);
      const double be = seg.beta.eigenvalue(s);
      const double h = seg.duration / samples_per_segment;
      for (int k = 0; k < samples_per_segment; ++k) {
        if (r == 0.0) {
          x += al * h;
          p += be * h;
        } else {
          const double e = std::exp(r * h);
          x = x / e + al * (1.0 - 1.0 / e) / r;
          p = p * e + be * (e - 1.0) / r;
        }
        xi += r * h;
        record();
      }
    }
  }
  return ext;
}

/// Truncation for simulating `sched` from `motion` with population beyond
/// the top 10% of levels kept below leak_tol.
inline int truncation_for_schedule(const PulseSchedule& sched, const MotionalState& motion, double leak_tol) {
  const EnvelopeExtent e = envelope_extent(sched, motion, leak_tol);
  int dim = static_cast<int>(std::ceil((e.max_radius_sq + 1.0) / 0.9));
  const double sh = std::sinh(e.max_squeeze);
  dim = std::max(dim, static_cast<int>(std::ceil(4.0 * sh * sh)) + 1);
  if (motion.kind() == MotionalState::Kind::fock)
    dim = std::max(dim, static_cast<int>(std::ceil((motion.fock_index() + 1) / 0.9)) + 1);
  return std::max(dim, 2);
}

}  // namespace sqg

#endif  // SQUEEZEGATE_PROTOCOL_HPP
