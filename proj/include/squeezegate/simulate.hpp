#ifndef SQUEEZEGATE_SIMULATE_HPP
#define SQUEEZEGATE_SIMULATE_HPP

// Joint spin (x) motion evolution through a PulseSchedule.
//
// Joint states are stored as a dim x 2^N matrix Psi with
// |psi> = sum_{b,n} Psi(n, b) |b>|n>, b the computational spin index.
// Mixed motional inputs are decomposed into pure components (Fock states for
// thermal inputs) that evolve independently; reduced densities are summed in
// component order.

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "squeezegate/core.hpp"
#include "squeezegate/fockspace.hpp"
#include "squeezegate/parallel.hpp"
#include "squeezegate/protocol.hpp"
#include "squeezegate/spinreg.hpp"

namespace sqg {

enum class Engine { block, stepped };

inline const char* to_string(Engine e) { return e == Engine::block ? "block" : "stepped"; }

struct SimulationOptions {
  Engine engine = Engine::block;
  double leak_tol = 1e-8;
  bool enforce_leakage = true;
  int threads = 1;
  double step_tol = 1e-8;  // stepped engine: accepted change on step doubling
};

struct SimulationResult {
  int dim = 0;
  int n_qubits = 0;
  Engine engine = Engine::block;
  std::vector<double> weights;
  std::vector<CMatrix> joint;  // per component, dim x 2^N
  double leakage = 0.0;        // worst weighted top-10% population seen

  /// Joint vector with index b * dim + n (spin factor first).
  CVector pure_state() const {
    if (joint.size() != 1) throw Error(ErrorCode::InvalidArgument, "mixed result has no pure joint state");
    const CMatrix& psi = joint.front();
    CVector v(psi.size());
    for (Eigen::Index b = 0; b < psi.cols(); ++b) v.segment(b * dim, dim) = psi.col(b);
    return v;
  }
};

/// rho_spin = sum_k w_k Psi_k^T conj(Psi_k)
inline CMatrix reduced_spin_density(const SimulationResult& r) {
  const Eigen::Index d = r.joint.empty() ? 0 : r.joint.front().cols();
  CMatrix rho = CMatrix::Zero(d, d);
  for (std::size_t k = 0; k < r.joint.size(); ++k)
    rho += r.weights[k] * (r.joint[k].transpose() * r.joint[k].conjugate());
  return rho;
}

/// rho_motion = sum_k w_k Psi_k Psi_k^dag
inline CMatrix reduced_motion_density(const SimulationResult& r) {
  CMatrix rho = CMatrix::Zero(r.dim, r.dim);
  for (std::size_t k = 0; k < r.joint.size(); ++k) rho += r.weights[k] * (r.joint[k] * r.joint[k].adjoint());
  return rho;
}

/// Per-configuration motional propagators M_s applied to each motional
/// input component (columns), in the sigma_phi eigenbasis.
struct BlockEvolution {
  int dim = 0;
  EigenBasis basis;
  std::vector<double> weights;
  CMatrix initial;              // dim x K
  std::vector<CMatrix> final_;  // per configuration, dim x K
  double leakage = 0.0;
};

namespace detail {

inline void check_inputs(const PulseSchedule& sched, int dim) {
  sched.validate();
  if (dim < 2) throw Error(ErrorCode::InvalidArgument, "dim must be >= 2");
}

inline double weighted_tail(const std::vector<double>& w, const CMatrix& states) {
  double leak = 0.0;
  for (Eigen::Index k = 0; k < states.cols(); ++k) leak += w[static_cast<std::size_t>(k)] * tail_population(states.col(k));
  return leak;
}

inline void leak_check(double leak, const SimulationOptions& opt) {
  if (!std::isfinite(leak)) throw Error(ErrorCode::NonFinite, "state became non-finite");
  if (opt.enforce_leakage && leak > opt.leak_tol)
    throw Error(ErrorCode::LeakageExceeded,
                "population " + std::to_string(leak) + " in the top 10% of Fock levels exceeds leak_tol");
}

}  // namespace detail

/// Evolves every spin configuration's motional block segment by segment.
/// Configurations with identical generator sequences are computed once.
inline BlockEvolution evolve_blocks(const PulseSchedule& sched, const MotionalState& motion, int dim,
                                    const SimulationOptions& opt = {}) {
  detail::check_inputs(sched, dim);
  BlockEvolution out;
  out.dim = dim;
  out.basis = eigenconfigurations(sched.reg);
  const auto comps = motion.components(dim);
  out.initial = CMatrix(dim, static_cast<Eigen::Index>(comps.size()));
  for (std::size_t k = 0; k < comps.size(); ++k) {
    out.weights.push_back(comps[k].weight);
    out.initial.col(static_cast<Eigen::Index>(k)) = comps[k].state;
  }
  const int nconf = sched.reg.hilbert_dim();

  std::map<std::vector<double>, int> seen;
  std::vector<int> owner(static_cast<std::size_t>(nconf));
  std::vector<int> unique;
  for (int c = 0; c < nconf; ++c) {
    const auto& s = out.basis.configs[static_cast<std::size_t>(c)];
    std::vector<double> key;
    for (const auto& seg : sched.segments) {
      const auto g = seg.generator(s);
      key.insert(key.end(), {g.squeeze, g.squeeze_phase, g.displacement.real(), g.displacement.imag()});
    }
    auto [it, inserted] = seen.emplace(std::move(key), c);
    owner[static_cast<std::size_t>(c)] = it->second;
    if (inserted) unique.push_back(c);
  }

  const auto prop_ptr = shared_propagator(dim);
  const ModePropagator& prop = *prop_ptr;
  out.final_.assign(static_cast<std::size_t>(nconf), CMatrix());
  std::vector<double> leak(unique.size(), 0.0);
  parallel_for(static_cast<int>(unique.size()), opt.threads, [&](int u) {
    const int c = unique[static_cast<std::size_t>(u)];
    const auto& s = out.basis.configs[static_cast<std::size_t>(c)];
    CMatrix m = out.initial;
    double worst = 0.0;
    for (const auto& seg : sched.segments) {
      m = prop.apply(m, seg.generator(s));
      const double l = detail::weighted_tail(out.weights, m);
      worst = std::max(worst, l);
      detail::leak_check(l, opt);
    }
    out.final_[static_cast<std::size_t>(c)] = std::move(m);
    leak[static_cast<std::size_t>(u)] = worst;
  });
  for (int c = 0; c < nconf; ++c)
    if (owner[static_cast<std::size_t>(c)] != c)
      out.final_[static_cast<std::size_t>(c)] = out.final_[static_cast<std::size_t>(owner[static_cast<std::size_t>(c)])];
  for (double l : leak) out.leakage = std::max(out.leakage, l);
  return out;
}

namespace detail {

inline SimulationResult assemble_blocks(const BlockEvolution& evo, const CVector& spin_in, int n_qubits) {
  SimulationResult r;
  r.dim = evo.dim;
  r.n_qubits = n_qubits;
  r.engine = Engine::block;
  r.weights = evo.weights;
  r.leakage = evo.leakage;
  const CVector c = evo.basis.V.adjoint() * spin_in;
  const auto nconf = static_cast<Eigen::Index>(evo.final_.size());
  const CMatrix vt = evo.basis.V.transpose();
  for (std::size_t k = 0; k < evo.weights.size(); ++k) {
    CMatrix cols(evo.dim, nconf);
    for (Eigen::Index s = 0; s < nconf; ++s) cols.col(s) = c(s) * evo.final_[static_cast<std::size_t>(s)].col(static_cast<Eigen::Index>(k));
    r.joint.push_back(cols * vt);
  }
  return r;
}

struct SpinDrives {
  CMatrix squeeze;  // sum_q xidot_q sigma_phi_q
  CMatrix alpha;
  CMatrix beta;
};

inline SpinDrives spin_drives(const PulseSegment& seg, const SpinRegister& reg) {
  return {linear_spin_op(0.0, seg.squeeze_rate.per_qubit, reg), linear_spin_op(seg.alpha.common, seg.alpha.per_qubit, reg),
          linear_spin_op(seg.beta.common, seg.beta.per_qubit, reg)};
}

inline double herm_norm(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().colwise().sum().maxCoeff(); }

// Evolves one joint state through one segment in `steps` equal time steps,
// each the exponential of the full Hamiltonian over that step.
inline CMatrix step_segment(const CMatrix& psi, const PulseSegment& seg, const SpinDrives& sd, const SparseC& g,
                            const SparseC& x, const SparseC& y, int steps) {
  const double h = seg.duration / steps;
  const CMatrix sq_t = (h * sd.squeeze).transpose();
  const CMatrix al_t = (h * sd.alpha).transpose();
  const CMatrix be_t = (h * sd.beta).transpose();
  const bool has_sq = herm_norm(sd.squeeze) > 0.0;
  const bool has_al = herm_norm(sd.alpha) > 0.0;
  const bool has_be = herm_norm(sd.beta) > 0.0;
  auto apply = [&](const CMatrix& v) -> CMatrix {
    CMatrix out = CMatrix::Zero(v.rows(), v.cols());
    if (has_sq) out += (g * v) * sq_t;
    if (has_al) out += (x * v) * al_t;
    if (has_be) out += (y * v) * be_t;
    return out;
  };
  const double bound = h * (sparse_norm1(g) * herm_norm(sd.squeeze) + sparse_norm1(x) * herm_norm(sd.alpha) +
                            sparse_norm1(y) * herm_norm(sd.beta));
  CMatrix out = psi;
  for (int k = 0; k < steps; ++k) out = expm_action(apply, bound, std::move(out));
  return out;
}

}  // namespace detail

/// Block-diagonal engine or stepped full-Hamiltonian engine, selected by
/// opt.engine. spin_in is a normalised 2^N computational-basis vector.
inline SimulationResult simulate_schedule(const PulseSchedule& sched, const CVector& spin_in,
                                          const MotionalState& motion, int dim, const SimulationOptions& opt = {}) {
  detail::check_inputs(sched, dim);
  if (spin_in.size() != sched.reg.hilbert_dim())
    throw Error(ErrorCode::DimensionMismatch, "spin input does not match the register dimension");
  if (!spin_in.allFinite()) throw Error(ErrorCode::NonFinite, "spin input is not finite");
  if (envelope_extent(sched, MotionalState::vacuum(), 0.5).max_squeeze > squeeze_limit(dim))
    throw Error(ErrorCode::TruncationTooSmall, "schedule squeezes beyond 4 sinh^2(xi) <= dim");

  if (opt.engine == Engine::block) {
    return detail::assemble_blocks(evolve_blocks(sched, motion, dim, opt), spin_in, sched.reg.size());
  }

  SimulationResult r;
  r.dim = dim;
  r.n_qubits = sched.reg.size();
  r.engine = Engine::stepped;
  const auto comps = motion.components(dim);
  for (const auto& c : comps) {
    r.weights.push_back(c.weight);
    r.joint.push_back(c.state * spin_in.transpose());
  }
  const SparseC x = generator_sparse(dim, {0.0, 0.0, cplx(1.0, 0.0)});
  const SparseC y = generator_sparse(dim, {0.0, 0.0, cplx(0.0, 1.0)});
  for (const auto& seg : sched.segments) {
    const auto sd = detail::spin_drives(seg, sched.reg);
    const SparseC g = generator_sparse(dim, {1.0, seg.squeeze_phase, cplx{}});
    std::vector<CMatrix> next(r.joint.size());
    parallel_for(static_cast<int>(r.joint.size()), opt.threads, [&](int k) {
      const auto& psi = r.joint[static_cast<std::size_t>(k)];
      int steps = 1;
      CMatrix coarse = detail::step_segment(psi, seg, sd, g, x, y, steps);
      for (;;) {
        CMatrix fine = detail::step_segment(psi, seg, sd, g, x, y, 2 * steps);
        const double change = (fine - coarse).norm();
        if (change < opt.step_tol) {
          next[static_cast<std::size_t>(k)] = std::move(fine);
          return;
        }
        steps *= 2;
        if (steps > (1 << 16)) throw Error(ErrorCode::NoConvergence, "time stepping did not converge");
        coarse = std::move(fine);
      }
    });
    r.joint = std::move(next);
    double leak = 0.0;
    for (std::size_t k = 0; k < r.joint.size(); ++k) {
      const auto& psi = r.joint[k];
      const auto top = std::max<Eigen::Index>(1, static_cast<Eigen::Index>(std::ceil(0.1 * dim)));
      leak += r.weights[k] * psi.bottomRows(top).squaredNorm() / psi.squaredNorm();
    }
    r.leakage = std::max(r.leakage, leak);
    detail::leak_check(leak, opt);
  }
  return r;
}

struct SpinUnitaryResult {
  CMatrix unitary;             // spin part, projected on the motional input
  double motion_return = 1.0;  // min over configurations of (sum_k w_k |<phi_k|M_s|phi_k>|)^2
  double leakage = 0.0;
  int dim = 0;
};

/// Effective spin unitary of a closed schedule from a Fock-space simulation:
/// U = V diag(m_s) V^dag with m_s = sum_k w_k <phi_k|M_s|phi_k>. The motional
/// return is a lower bound on the fidelity of each block's motion with its
/// input.
inline SpinUnitaryResult fock_spin_unitary(const PulseSchedule& sched, const MotionalState& motion, int dim,
                                           const SimulationOptions& opt = {}) {
  SpinUnitaryResult out;
  out.dim = dim;
  const int d = sched.reg.hilbert_dim();
  if (opt.engine == Engine::block) {
    const BlockEvolution evo = evolve_blocks(sched, motion, dim, opt);
    CVector diag(d);
    for (int s = 0; s < d; ++s) {
      cplx amp{};
      double mag = 0.0;
      for (std::size_t k = 0; k < evo.weights.size(); ++k) {
        const cplx o = evo.initial.col(static_cast<Eigen::Index>(k)).dot(evo.final_[static_cast<std::size_t>(s)].col(static_cast<Eigen::Index>(k)));
        amp += evo.weights[k] * o;
        mag += evo.weights[k] * std::abs(o);
      }
      diag(s) = amp;
      out.motion_return = std::min(out.motion_return, mag * mag);
    }
    out.unitary = evo.basis.V * diag.asDiagonal() * evo.basis.V.adjoint();
    out.leakage = evo.leakage;
    return out;
  }
  out.unitary = CMatrix::Zero(d, d);
  const auto comps = motion.components(dim);
  for (int b = 0; b < d; ++b) {
    CVector e = CVector::Zero(d);
    e(b) = 1.0;
    const SimulationResult r = simulate_schedule(sched, e, motion, dim, opt);
    for (std::size_t k = 0; k < comps.size(); ++k)
      out.unitary.col(b) += r.weights[k] * (r.joint[k].transpose() * comps[k].state.conjugate());
    out.leakage = std::max(out.leakage, r.leakage);
  }
  const EigenBasis eb = eigenconfigurations(sched.reg);
  const CMatrix diag = eb.V.adjoint() * out.unitary * eb.V;
  for (int s = 0; s < d; ++s) out.motion_return = std::min(out.motion_return, std::norm(diag(s, s)));
  return out;
}

struct TrajectorySample {
  double t = 0.0;
  PhaseSpaceMoments m{};
};

/// Quadrature moments of the motion on one spin configuration, sampled at
/// `samples` equally spaced times from 0 to T inclusive.
inline std::vector<TrajectorySample> trajectory(const PulseSchedule& sched, const SpinConfiguration& config,
                                                const MotionalState& motion, int dim, int samples,
                                                const SimulationOptions& opt = {}) {
  detail::check_inputs(sched, dim);
  if (samples < 2) throw Error(ErrorCode::InvalidArgument, "trajectory needs at least two samples");
  if (static_cast<int>(config.signs.size()) != sched.reg.size())
    throw Error(ErrorCode::AxisMismatch, "configuration length differs from register size");
  const auto comps = motion.components(dim);
  std::vector<double> w;
  CMatrix states(dim, static_cast<Eigen::Index>(comps.size()));
  for (std::size_t k = 0; k < comps.size(); ++k) {
    w.push_back(comps[k].weight);
    states.col(static_cast<Eigen::Index>(k)) = comps[k].state;
  }
  const auto prop_ptr = shared_propagator(dim);
  const ModePropagator& prop = *prop_ptr;
  const double total = sched.total_time();
  std::vector<TrajectorySample> out;
  out.reserve(static_cast<std::size_t>(samples));

  std::size_t seg = 0;
  double seg_start = 0.0;
  double pos = 0.0;  // time already applied
  for (int j = 0; j < samples; ++j) {
    const double target = j + 1 == samples ? total : total * j / (samples - 1);
    while (seg < sched.segments.size()) {
      const auto& sg = sched.segments[seg];
      const double seg_end = seg_start + sg.duration;
      const double stop = std::min(target, seg_end);
      if (stop > pos) {
        states = prop.apply(states, sg.generator(config, (stop - pos) / sg.duration));
        pos = stop;
      }
      if (target < seg_end) break;
      pos = seg_end;
      seg_start = seg_end;
      ++seg;
    }
    detail::leak_check(detail::weighted_tail(w, states), opt);
    out.push_back({target, moments(w, states)});
  }
  return out;
}

}  // namespace sqg

#endif  // SQUEEZEGATE_SIMULATE_HPP
