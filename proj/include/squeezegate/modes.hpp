#ifndef SQUEEZEGATE_MODES_HPP
#define SQUEEZEGATE_MODES_HPP

// Linear ion chain in a harmonic trap: equilibrium positions, transverse
// normal modes, second-sideband detunings and drive-time estimates.
// Positions are in units of l = (e^2 / (4 pi eps0 M w_z^2))^{1/3};
// frequencies are angular (rad/s).

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>

#include "squeezegate/core.hpp"

namespace sqg {

inline constexpr double hbar = 1.054571817e-34;
inline constexpr double atomic_mass = 1.66053906660e-27;
inline constexpr double yb171_mass = 170.936 * atomic_mass;

struct ChainSpec {
  int n_ions = 1;
  double ion_mass = yb171_mass;  // kg
  double axial_freq = 0.0;       // rad/s
  double radial_freq = 0.0;      // rad/s
  double wavenumber = 0.0;       // 1/m, optional

  void validate() const {
    if (n_ions < 1) throw Error(ErrorCode::InvalidArgument, "chain needs at least one ion");
    if (!(axial_freq > 0.0)) throw Error(ErrorCode::InvalidArgument, "axial frequency must be positive");
    if (!(radial_freq > axial_freq)) throw Error(ErrorCode::InvalidArgument, "radial frequency must exceed axial");
    if (!(ion_mass > 0.0)) throw Error(ErrorCode::InvalidArgument, "ion mass must be positive");
  }
};

struct ModeData {
  std::vector<double> frequencies;  // descending, COM first
  RMatrix participation;            // b(i, mu): ion i, mode mu
  double bandwidth = 0.0;

  int zigzag() const { return static_cast<int>(frequencies.size()) - 1; }
};

/// max_i |u_i - sum_{j != i} sign(u_i - u_j) / (u_i - u_j)^2|
inline double force_residual(const std::vector<double>& u) {
  double r = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    double f = u[i];
    for (std::size_t j = 0; j < u.size(); ++j) {
      if (j == i) continue;
      const double d = u[i] - u[j];
      f -= (d > 0 ? 1.0 : -1.0) / (d * d);
    }
    r = std::max(r, std::abs(f));
  }
  return r;
}

/// Damped Newton solve of the axial force balance from a uniform seed.
inline std::vector<double> equilibrium_positions(int n, int max_iter = 200) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "chain needs at least one ion");
  std::vector<double> u(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) u[static_cast<std::size_t>(i)] = i - 0.5 * (n - 1);
  if (n == 1) return {0.0};

  auto forces = [&](const std::vector<double>& x) {
    RVector f(n);
    for (int i = 0; i < n; ++i) {
      double v = x[static_cast<std::size_t>(i)];
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const double d = x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)];
        v -= (d > 0 ? 1.0 : -1.0) / (d * d);
      }
      f(i) = v;
    }
    return f;
  };
  auto ordered = [](const std::vector<double>& x) {
    for (std::size_t i = 1; i < x.size(); ++i)
      if (!(x[i] > x[i - 1])) return false;
    return true;
  };

  RVector f = forces(u);
  for (int it = 0; it < max_iter; ++it) {
    if (f.cwiseAbs().maxCoeff() <= 1e-13) break;
    RMatrix jac = RMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      jac(i, i) = 1.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const double d = std::abs(u[static_cast<std::size_t>(i)] - u[static_cast<std::size_t>(j)]);
        const double k = 2.0 / (d * d * d);
        jac(i, i) += k;
        jac(i, j) = -k;
      }
    }
    const RVector step = jac.partialPivLu().solve(-f);
    double lambda = 1.0;
    for (;;) {
      std::vector<double> trial = u;
      for (int i = 0; i < n; ++i) trial[static_cast<std::size_t>(i)] += lambda * step(i);
      if (ordered(trial)) {
        const RVector ft = forces(trial);
        if (ft.norm() < f.norm() || lambda < 1e-8) {
          u = std::move(trial);
          f = ft;
          break;
        }
      }
      lambda *= 0.5;
      if (lambda < 1e-12) throw Error(ErrorCode::NoConvergence, "equilibrium line search stalled");
    }
  }
  for (int i = 0; i < n / 2; ++i) {
    const double m = 0.5 * (u[static_cast<std::size_t>(n - 1 - i)] - u[static_cast<std::size_t>(i)]);
    u[static_cast<std::size_t>(i)] = -m;
    u[static_cast<std::size_t>(n - 1 - i)] = m;
  }
  if (n % 2 == 1) u[static_cast<std::size_t>(n / 2)] = 0.0;
  if (force_residual(u) > 1e-12) throw Error(ErrorCode::NoConvergence, "equilibrium residual above 1e-12");
  return u;
}

/// K_ii = sum_j 1/|u_ij|^3, K_ij = -1/|u_ij|^3
inline RMatrix coulomb_coupling(const std::vector<double>& u) {
  const auto n = static_cast<Eigen::Index>(u.size());
  RMatrix k = RMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const double d = std::abs(u[static_cast<std::size_t>(i)] - u[static_cast<std::size_t>(j)]);
      const double c = 1.0 / (d * d * d);
      k(i, i) += c;
      k(i, j) = -c;
    }
  return k;
}

/// Eigenmodes of w_x^2 - w_z^2 K. Columns sorted by descending frequency;
/// each column's largest-magnitude entry is made positive.
inline ModeData transverse_modes(const ChainSpec& chain) {
  chain.validate();
  const auto u = equilibrium_positions(chain.n_ions);
  const auto n = static_cast<Eigen::Index>(chain.n_ions);
  const double wx2 = chain.radial_freq * chain.radial_freq;
  const double wz2 = chain.axial_freq * chain.axial_freq;
  const RMatrix h = wx2 * RMatrix::Identity(n, n) - wz2 * coulomb_coupling(u);
  Eigen::SelfAdjointEigenSolver<RMatrix> es(h);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NoConvergence, "mode eigensolver failed");
  if (es.eigenvalues().minCoeff() <= 0.0) throw Error(ErrorCode::ZigZagUnstable, "transverse mode frequency is not real");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return es.eigenvalues()(a) > es.eigenvalues()(b); });
  ModeData md;
  md.participation = RMatrix(n, n);
  for (Eigen::Index m = 0; m < n; ++m) {
    const Eigen::Index src = order[static_cast<std::size_t>(m)];
    md.frequencies.push_back(std::sqrt(es.eigenvalues()(src)));
    RVector v = es.eigenvectors().col(src);
    Eigen::Index imax = 0;
    for (Eigen::Index i = 1; i < n; ++i)
      if (std::abs(v(i)) > std::abs(v(imax)) + 1e-12) imax = i;
    if (v(imax) < 0) v = -v;
    md.participation.col(m) = v;
  }
  md.bandwidth = md.frequencies.front() - md.frequencies.back();
  return md;
}

/// eta_m = k sqrt(hbar / (2 M w_m)) per mode; requires a wavenumber.
inline std::vector<double> lamb_dicke(const ChainSpec& chain, const ModeData& md) {
  if (!(chain.wavenumber > 0.0)) throw Error(ErrorCode::InvalidArgument, "wavenumber must be positive");
  std::vector<double> eta;
  for (double w : md.frequencies) eta.push_back(chain.wavenumber * std::sqrt(hbar / (2.0 * chain.ion_mass * w)));
  return eta;
}

struct SidebandGap {
  int mu = 0;
  int nu = 0;
  double delta = 0.0;  // 2 w_m - w_mu - w_nu, rad/s
  bool degenerate = false;
};

struct GapReport {
  int target = 0;
  std::vector<SidebandGap> pairs;  // mu <= nu, (m, m) excluded
  double min_pair_gap = 0.0;       // min |Delta_mu nu|
  double nearest_mode_gap = 0.0;   // min_mu |w_m - w_mu|
  int nearest_mode = -1;
};

inline GapReport second_sideband_gaps(const ModeData& md, int target) {
  const int n = static_cast<int>(md.frequencies.size());
  if (target < 0 || target >= n) throw Error(ErrorCode::IndexOutOfRange, "target mode outside spectrum");
  GapReport r;
  r.target = target;
  const double wm = md.frequencies[static_cast<std::size_t>(target)];
  r.min_pair_gap = std::numeric_limits<double>::infinity();
  r.nearest_mode_gap = std::numeric_limits<double>::infinity();
  for (int mu = 0; mu < n; ++mu)
    for (int nu = mu; nu < n; ++nu) {
      if (mu == target && nu == target) continue;
      SidebandGap g{mu, nu, 2.0 * wm - md.frequencies[static_cast<std::size_t>(mu)] - md.frequencies[static_cast<std::size_t>(nu)], false};
      g.degenerate = std::abs(g.delta) <= 1e-9 * wm;
      r.min_pair_gap = std::min(r.min_pair_gap, std::abs(g.delta));
      r.pairs.push_back(g);
    }
  for (int mu = 0; mu < n; ++mu) {
    if (mu == target) continue;
    const double d = std::abs(wm - md.frequencies[static_cast<std::size_t>(mu)]);
    if (d < r.nearest_mode_gap) {
      r.nearest_mode_gap = d;
      r.nearest_mode = mu;
    }
  }
  if (n == 1) r.min_pair_gap = r.nearest_mode_gap = 0.0;
  return r;
}

struct OffResonantRatio {
  double epsilon = 0.0;
  double epsilon_sq = 0.0;
};

/// eps = eta^2 Omega / (2 N Delta)
inline OffResonantRatio off_resonant_ratio(double eta, double rabi, int n, double delta) {
  if (delta == 0.0) throw Error(ErrorCode::ZeroDetuning, "off-resonant ratio needs a nonzero detuning");
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "ion count must be positive");
  const double e = eta * eta * rabi / (2.0 * n * std::abs(delta));
  return {e, e * e};
}

struct ScalingPoint {
  int n = 0;
  double delta = 0.0;
  double epsilon = 0.0;
};

/// eps(N) with Delta = bandwidth / N at fixed Omega.
inline std::vector<ScalingPoint> off_resonant_scaling(double eta, double rabi, double bandwidth, const std::vector<int>& ns) {
  std::vector<ScalingPoint> out;
  for (int n : ns) {
    const double d = bandwidth / n;
    out.push_back({n, d, off_resonant_ratio(eta, rabi, n, d).epsilon});
  }
  return out;
}

struct TimingEstimate {
  double squeeze_rate = 0.0;  // dxi/dt, 1/s
  double db_per_ms = 0.0;
  double t_s = 0.0;
  double t_x = 0.0;
  double t_p = 0.0;
  double total = 0.0;
};

/// Full-rate second- and first-sideband drive on participation b.
inline TimingEstimate timing_estimate(double xi_bar, double rabi, double b, double eta, double a_amp, double b_amp) {
  if (!(xi_bar > 0.0 && rabi > 0.0 && b > 0.0 && eta > 0.0 && a_amp > 0.0 && b_amp > 0.0))
    throw Error(ErrorCode::InvalidArgument, "timing estimate needs positive inputs");
  TimingEstimate t;
  const double be = b * eta;
  t.squeeze_rate = 0.5 * be * be * rabi;
  t.db_per_ms = 10.0 * std::log10(std::exp(1.0)) * t.squeeze_rate * 1e-3;
  t.t_s = xi_bar / t.squeeze_rate;
  t.t_x = 2.0 * a_amp / (be * rabi);
  t.t_p = 2.0 * b_amp / (be * rabi);
  t.total = 4.0 * t.t_s + 2.0 * t.t_x + 2.0 * t.t_p;
  return t;
}

}  // namespace sqg

#endif  // SQUEEZEGATE_MODES_HPP
