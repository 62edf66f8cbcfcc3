#ifndef SQUEEZEGATE_GATES_HPP
#define SQUEEZEGATE_GATES_HPP

// Target gates and overlap measures for the squeezing-enhanced phase gates.
//
// Toffoli construction: controls interact along sigma_x (phi = 0), the
// target t along sigma_y (phi = pi/2), and the sequence is wrapped as
// R_z^(t)(pi/2) U_seq R_z^(t)(-pi/2). As the squeezing grows
// U_seq -> 1 - 2 P_+ with P_+ the all-up projector, and the wrap turns the
// target's up state into |->, so the gate applies sigma_x to the target
// whenever every control is in |+>. Comparisons with the computational
// Toffoli use the frame W that sends |1> -> |+> and |0> -> |-> on every
// control and leaves the target alone.

#include <cmath>
#include <string>
#include <vector>

#include "squeezegate/core.hpp"
#include "squeezegate/parallel.hpp"
#include "squeezegate/protocol.hpp"
#include "squeezegate/simulate.hpp"
#include "squeezegate/spinreg.hpp"

namespace sqg {

/// Flips `target` (0-based) when all other qubits are |1>.
inline CMatrix ideal_toffoli(int n, int target) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "Toffoli needs at least two qubits");
  if (target < 0 || target >= n) throw Error(ErrorCode::IndexOutOfRange, "target outside register");
  const int d = 1 << n;
  const int tbit = 1 << (n - 1 - target);
  const int controls = (d - 1) & ~tbit;
  CMatrix t = CMatrix::Zero(d, d);
  for (int b = 0; b < d; ++b) {
    const int out = (b & controls) == controls ? b ^ tbit : b;
    t(out, b) = 1.0;
  }
  return t;
}

/// |Tr(U^dag V)|^2 / d^2 with no unitarity check.
inline double trace_overlap(const CMatrix& u, const CMatrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols() || u.rows() != u.cols())
    throw Error(ErrorCode::DimensionMismatch, "overlap needs square matrices of equal size");
  const double d = static_cast<double>(u.rows());
  return std::norm((u.adjoint() * v).trace()) / (d * d);
}

inline double entanglement_fidelity(const CMatrix& u, const CMatrix& v, double unitary_tol = 1e-8) {
  if (u.rows() != v.rows() || u.cols() != v.cols() || u.rows() != u.cols())
    throw Error(ErrorCode::DimensionMismatch, "entanglement_fidelity needs square matrices of equal size");
  if (unitarity_error(u) > unitary_tol || unitarity_error(v) > unitary_tol)
    throw Error(ErrorCode::NonUnitary, "entanglement_fidelity input is not unitary");
  return trace_overlap(u, v);
}

struct ThreeBodyParams {
  double xi_k = 0.0;
  double ab = 0.0;  // A_i * B_j
};

/// A_i B_j cosh(xi_k) = pi/2 and phi = pi tanh(xi_k).
inline ThreeBodyParams three_body_params(double phi) {
  if (!(std::abs(phi) < pi)) throw Error(ErrorCode::PhaseOutOfRange, "three-body phase must satisfy |phi| < pi");
  const double xi = std::atanh(phi / pi);
  return {xi, pi / (2.0 * std::cosh(xi))};
}

/// 2 A B e^{N xi} = pi
inline double toffoli_params(int n, double xi_bar) {
  if (!(xi_bar >= 0.0)) throw Error(ErrorCode::InvalidArgument, "mean squeezing must be >= 0");
  return 0.5 * pi * std::exp(-n * xi_bar);
}

/// 10 log10(e^{N xi}) <-> xi
inline double squeezing_db(int n, double xi_bar) { return 10.0 * std::log10(std::exp(n * xi_bar)); }
inline double xi_from_db(int n, double db) { return db * std::log(10.0) / (10.0 * n); }

/// exp(-i phi sigma_x^(i) sigma_x^(j) sigma_x^(k))
inline CMatrix three_body_gate(int n, int i, int j, int k, double phi) {
  const CMatrix p = embed(pauli_x(), i, n) * embed(pauli_x(), j, n) * embed(pauli_x(), k, n);
  return matrix_exp(cplx(0.0, -phi) * p);
}

/// (|00..0> - i|11..1>)/sqrt(2)
inline CVector ghz_target(int n) {
  CVector v = CVector::Zero(1 << n);
  v(0) = 1.0 / std::sqrt(2.0);
  v((1 << n) - 1) = cplx(0.0, -1.0 / std::sqrt(2.0));
  return v;
}

/// A_i sigma_x^(i), B_j sigma_x^(j), xi_k sigma_x^(k) with A_i = B_j.
struct ThreeBodySetup {
  SpinRegister reg;
  DisplacementSet a;
  DisplacementSet b;
  SqueezeAmplitudeSet xi;
};

inline ThreeBodySetup three_body_setup(int n, int i, int j, int k, double phi) {
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "three-body gate needs at least three qubits");
  for (int q : {i, j, k})
    if (q < 0 || q >= n) throw Error(ErrorCode::IndexOutOfRange, "three-body qubit outside register");
  if (i == j || j == k || i == k) throw Error(ErrorCode::InvalidArgument, "three-body qubits must be distinct");
  const auto p = three_body_params(phi);
  const double amp = std::sqrt(p.ab);
  ThreeBodySetup s{SpinRegister::uniform(n, 0.0), {}, {}, {}};
  s.a.per_qubit.assign(static_cast<std::size_t>(n), 0.0);
  s.b.per_qubit.assign(static_cast<std::size_t>(n), 0.0);
  s.xi.per_qubit.assign(static_cast<std::size_t>(n), 0.0);
  s.a.per_qubit[static_cast<std::size_t>(i)] = amp;
  s.b.per_qubit[static_cast<std::size_t>(j)] = amp;
  s.xi.per_qubit[static_cast<std::size_t>(k)] = p.xi_k;
  return s;
}

/// Controls along phi = 0, target along phi = pi/2.
inline SpinRegister toffoli_register(int n, int target) {
  std::vector<SpinAxis> axes(static_cast<std::size_t>(n), SpinAxis(0.0));
  axes.at(static_cast<std::size_t>(target)) = SpinAxis(0.5 * pi);
  return SpinRegister(axes);
}

/// Uniform squeezing and spin-independent AB tuned for the N-qubit Toffoli
/// at `db` of total squeezing.
struct ToffoliSetup {
  SpinRegister reg;
  DisplacementSet a;
  DisplacementSet b;
  SqueezeAmplitudeSet xi;
  int target = 0;
};

inline ToffoliSetup toffoli_setup(int n, double db, int target = -1) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "Toffoli needs at least two qubits");
  if (!(db >= 0.0) || !std::isfinite(db)) throw Error(ErrorCode::InvalidArgument, "squeezing in dB must be >= 0");
  if (target < 0) target = n - 1;
  if (target >= n) throw Error(ErrorCode::IndexOutOfRange, "target outside register");
  const double xi = xi_from_db(n, db);
  const double amp = std::sqrt(toffoli_params(n, xi));
  return {toffoli_register(n, target), DisplacementSet::uniform(amp), DisplacementSet::uniform(amp),
          SqueezeAmplitudeSet::uniform(n, xi), target};
}

/// R_z^(t)(pi/2) U R_z^(t)(-pi/2)
inline CMatrix toffoli_wrap(const CMatrix& u_seq, int n, int target) {
  return embed(rz(0.5 * pi), target, n) * u_seq * embed(rz(-0.5 * pi), target, n);
}

/// Frame sending computational controls to the sigma_x eigenbasis.
inline CMatrix toffoli_frame(int n, int target) {
  CMatrix h(2, 2);
  h.col(0) = axis_eigenvector(SpinAxis(0.0), -1);
  h.col(1) = axis_eigenvector(SpinAxis(0.0), +1);
  std::vector<CMatrix> ops;
  for (int q = 0; q < n; ++q) ops.push_back(q == target ? CMatrix(CMatrix::Identity(2, 2)) : h);
  return product_op(ops);
}

/// Computational Toffoli expressed in the register frame.
inline CMatrix register_toffoli(int n, int target) {
  const CMatrix w = toffoli_frame(n, target);
  return w * ideal_toffoli(n, target) * w.adjoint();
}

/// 1 - 2 P_+ with P_+ the all-up projector of the register (the
/// infinite-squeezing limit of the sequence).
inline CMatrix controlled_phase_limit(const SpinRegister& reg) {
  const EigenBasis eb = eigenconfigurations(reg);
  const CVector up = eb.V.col(0);
  return CMatrix::Identity(reg.hilbert_dim(), reg.hilbert_dim()) - 2.0 * up * up.adjoint();
}

struct OverlapPoint {
  double db = 0.0;
  double overlap = 0.0;          // wrapped sequence vs Toffoli
  double phase_overlap = 0.0;    // bare sequence vs 1 - 2 P_+
};

inline OverlapPoint toffoli_overlap(int n, double db, int target = -1) {
  const auto s = toffoli_setup(n, db, target);
  const CMatrix u = seq_unitary_exact(seq_phase_table(s.a, s.b, s.xi, s.reg), s.reg);
  OverlapPoint p;
  p.db = db;
  p.overlap = entanglement_fidelity(register_toffoli(n, s.target), toffoli_wrap(u, n, s.target));
  p.phase_overlap = entanglement_fidelity(controlled_phase_limit(s.reg), u);
  return p;
}

/// Overlap per grid point, evaluated in parallel, returned in grid order.
inline std::vector<OverlapPoint> toffoli_overlap_curve(int n, const std::vector<double>& grid_db, int threads = 1,
                                                       int target = -1) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "Toffoli needs at least two qubits");
  std::vector<OverlapPoint> out(grid_db.size());
  parallel_for(static_cast<int>(grid_db.size()), threads,
               [&](int i) { out[static_cast<std::size_t>(i)] = toffoli_overlap(n, grid_db[static_cast<std::size_t>(i)], target); });
  return out;
}

/// Rectangle schedule with the given amplitudes at full drive (default
/// Lamb-Dicke 0.055 per qubit, 1 MHz Rabi rate).
inline PulseSchedule default_rectangle(const SpinRegister& reg, const DisplacementSet& a, const DisplacementSet& b,
                                       const SqueezeAmplitudeSet& xi, DriveLimits drive = {}) {
  if (drive.lamb_dicke.empty()) drive.lamb_dicke.assign(static_cast<std::size_t>(reg.size()), 0.055);
  return rectangle_schedule(reg, a, b, xi, minimal_rectangle_timing(a, b, xi, drive), drive);
}

struct SimulatedOverlap {
  double db = 0.0;
  double overlap = 0.0;
  double analytic = 0.0;
  double motion_return = 0.0;
  double leakage = 0.0;
  int dim = 0;
};

/// Toffoli overlap from a Fock-space simulation of the rectangle schedule.
inline SimulatedOverlap simulated_toffoli_overlap(int n, double db, double leak_tol = 1e-8, int threads = 1,
                                                  int target = -1) {
  const auto s = toffoli_setup(n, db, target);
  const PulseSchedule sched = default_rectangle(s.reg, s.a, s.b, s.xi);
  const MotionalState vac = MotionalState::vacuum();
  const int dim = truncation_for_schedule(sched, vac, leak_tol);
  SimulationOptions opt;
  opt.leak_tol = leak_tol;
  opt.threads = threads;
  const auto r = fock_spin_unitary(sched, vac, dim, opt);
  SimulatedOverlap out;
  out.db = db;
  out.overlap = trace_overlap(register_toffoli(n, s.target), toffoli_wrap(r.unitary, n, s.target));
  out.analytic = toffoli_overlap(n, db, s.target).overlap;
  out.motion_return = r.motion_return;
  out.leakage = r.leakage;
  out.dim = dim;
  return out;
}

struct PauliTerm {
  unsigned mask = 0;  // bit (N-1-q) set when qubit q carries sigma_phi
  std::string label;  // 'I' or 'P' per qubit, qubit 0 first
  int weight = 0;
  double coeff = 0.0;
};

/// Expansion phase(s) = sum_S c_S prod_{q in S} s_q by a Walsh-Hadamard
/// transform; terms ordered by mask.
inline std::vector<PauliTerm> pauli_spectrum(const PhaseTable& table) {
  const int n = table.n_qubits;
  const std::size_t d = std::size_t{1} << n;
  if (table.phase.size() != d) throw Error(ErrorCode::DimensionMismatch, "phase table does not cover 2^N entries");
  // configuration index c has bit (N-1-q) set when s_q = -1, so
  // prod_{q in S} s_q = (-1)^{popcount(c & S)}
  std::vector<double> f = table.phase;
  for (std::size_t h = 1; h < d; h <<= 1)
    for (std::size_t i = 0; i < d; i += 2 * h)
      for (std::size_t j = i; j < i + h; ++j) {
        const double u = f[j];
        const double v = f[j + h];
        f[j] = u + v;
        f[j + h] = u - v;
      }
  std::vector<PauliTerm> out(d);
  for (std::size_t m = 0; m < d; ++m) {
    PauliTerm& t = out[m];
    t.mask = static_cast<unsigned>(m);
    t.coeff = f[m] / static_cast<double>(d);
    for (int q = 0; q < n; ++q) {
      const bool on = (m >> (n - 1 - q)) & 1U;
      t.label.push_back(on ? 'P' : 'I');
      t.weight += on ? 1 : 0;
    }
  }
  return out;
}

/// Largest |coefficient| among terms of weight >= w.
inline double max_weight_coeff(const std::vector<PauliTerm>& spec, int w) {
  double m = 0.0;
  for (const auto& t : spec)
    if (t.weight >= w) m = std::max(m, std::abs(t.coeff));
  return m;
}

}  // namespace sqg

#endif  // SQUEEZEGATE_GATES_HPP
