#ifndef SQUEEZEGATE_FOCKSPACE_HPP
#define SQUEEZEGATE_FOCKSPACE_HPP

// Single bosonic mode truncated to levels |0>..|dim-1>.
//
// Phase-space units follow x~ = (a + a^dag)/2, p~ = i(a^dag - a)/2 with
// [x~, p~] = i/2, so the vacuum has Var x~ = Var p~ = 1/4.
//
// Squeezing convention (pinned by the conjugation test in test_fockspace):
//   S(xi, dphi) = exp[(xi/2)(e^{i dphi} a^2 - e^{-i dphi} a^dag^2)]
//   S^dag a S = a cosh(xi) - a^dag sinh(xi)            (dphi = 0)
// so for xi > 0 the state S|0> has Var x~ = e^{-2 xi}/4 (squeezed) and
// Var p~ = e^{+2 xi}/4 (anti-squeezed), and
//   S^dag(xi) D(iB) S(xi) = D(iB e^{-xi}),   S(xi) D(iB) S^dag(xi) = D(iB e^{+xi}).

#include <algorithm>
#include <cmath>
#include <deque>
#include <memory>
#include <mutex>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>

#include "squeezegate/core.hpp"
#include "squeezegate/linalg.hpp"

namespace sqg {

using SparseC = Eigen::SparseMatrix<cplx>;

class TruncatedMode {
 public:
  explicit TruncatedMode(int dim) : dim_(dim) {
    if (dim < 2) throw Error(ErrorCode::InvalidArgument, "Fock truncation must be at least 2 levels");
  }
  int dim() const noexcept { return dim_; }

 private:
  int dim_;
};

inline CMatrix annihilation(const TruncatedMode& mode) {
  const int d = mode.dim();
  CMatrix a = CMatrix::Zero(d, d);
  for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

inline CMatrix creation(const TruncatedMode& mode) { return annihilation(mode).adjoint(); }

inline CMatrix number_op(const TruncatedMode& mode) {
  const int d = mode.dim();
  CMatrix n = CMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) n(k, k) = k;
  return n;
}

struct Quadratures {
  CMatrix x;
  CMatrix p;
};

inline Quadratures quadratures(const TruncatedMode& mode) {
  const CMatrix a = annihilation(mode);
  const CMatrix ad = a.adjoint();
  return {(ad + a) * 0.5, (ad - a) * (0.5 * I)};
}

/// Largest |xi| accepted for a basis of `dim` levels: 4 sinh^2(xi) <= dim.
inline double squeeze_limit(int dim) { return std::asinh(std::sqrt(dim / 4.0)); }

/// xi*G + (alpha a^dag - alpha^* a), G = (e^{i dphi} a^2 - e^{-i dphi} a^dag^2)/2.
/// Anti-Hermitian on the truncated space; exp() of it is the motional
/// propagator of one piecewise-constant drive segment.
struct QuadraticGenerator {
  double squeeze = 0.0;
  double squeeze_phase = 0.0;
  cplx displacement{0.0, 0.0};

  bool is_zero() const { return squeeze == 0.0 && displacement == cplx{0.0, 0.0}; }
};

inline SparseC generator_sparse(int dim, const QuadraticGenerator& g) {
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(4 * static_cast<std::size_t>(dim));
  const cplx e = std::polar(1.0, g.squeeze_phase);
  for (int n = 0; n < dim; ++n) {
    if (g.squeeze != 0.0 && n + 2 < dim) {
      const double s = std::sqrt(static_cast<double>((n + 1) * (n + 2)));
      trips.emplace_back(n, n + 2, 0.5 * g.squeeze * e * s);                 // a^2
      trips.emplace_back(n + 2, n, -0.5 * g.squeeze * std::conj(e) * s);    // a^dag^2
    }
    if (g.displacement != cplx{0.0, 0.0} && n + 1 < dim) {
      const double s = std::sqrt(static_cast<double>(n + 1));
      trips.emplace_back(n + 1, n, g.displacement * s);              // a^dag
      trips.emplace_back(n, n + 1, -std::conj(g.displacement) * s);  // a
    }
  }
  SparseC k(dim, dim);
  k.setFromTriplets(trips.begin(), trips.end());
  return k;
}

inline double sparse_norm1(const SparseC& m) {
  double best = 0.0;
  for (int c = 0; c < m.outerSize(); ++c) {
    double s = 0.0;
    for (SparseC::InnerIterator it(m, c); it; ++it) s += std::abs(it.value());
    best = std::max(best, s);
  }
  return best;
}

/// D(alpha) = exp(alpha a^dag - alpha^* a), dense.
inline CMatrix displacement_op(const TruncatedMode& mode, cplx alpha) {
  if (std::norm(alpha) > mode.dim() / 4.0)
    throw Error(ErrorCode::TruncationTooSmall, "|alpha|^2 exceeds dim/4 for displacement_op");
  QuadraticGenerator g;
  g.displacement = alpha;
  return matrix_exp(CMatrix(generator_sparse(mode.dim(), g)));
}

/// S(xi, dphi) = exp[(xi/2)(e^{i dphi} a^2 - e^{-i dphi} a^dag^2)], dense.
inline CMatrix squeeze_op(const TruncatedMode& mode, double xi, double dphi = 0.0) {
  if (std::abs(xi) > squeeze_limit(mode.dim()))
    throw Error(ErrorCode::TruncationTooSmall, "4 sinh^2(xi) exceeds dim for squeeze_op");
  QuadraticGenerator g;
  g.squeeze = xi;
  g.squeeze_phase = dphi;
  return matrix_exp(CMatrix(generator_sparse(mode.dim(), g)));
}

/// Population fraction in the top `fraction` of Fock levels (columns are states).
inline double tail_population(const CMatrix& states, double fraction = 0.1) {
  const auto d = states.rows();
  const auto top = std::max<Eigen::Index>(1, static_cast<Eigen::Index>(std::ceil(fraction * d)));
  double worst = 0.0;
  for (Eigen::Index c = 0; c < states.cols(); ++c) {
    const double total = states.col(c).squaredNorm();
    if (total == 0.0) continue;
    worst = std::max(worst, states.col(c).tail(top).squaredNorm() / total);
  }
  return worst;
}

/// Two-sided Gaussian quantile: P(|X| > z sigma) = tol.
inline double gaussian_tail_z(double tol) {
  double lo = 0.0;
  double hi = 40.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (std::erfc(mid / std::sqrt(2.0)) > tol) lo = mid; else hi = mid;
  }
  return hi;
}

/// Fock truncation from a Gaussian phase-space envelope. The state is assumed
/// to stay inside radius R = max_disp + z sigma with sigma = sqrt(2 nbar + 1)/2
/// * e^{max_squeeze}, z the two-sided quantile of leak_tol; the basis keeps
/// R^2 + 1 levels below its top 10% (the leakage monitor's window).
inline int choose_truncation(double max_disp, double max_squeeze, double nbar, double leak_tol) {
  if (max_disp < 0 || max_squeeze < 0 || nbar < 0)
    throw Error(ErrorCode::InvalidArgument, "choose_truncation arguments must be non-negative");
  if (!(leak_tol > 0.0 && leak_tol < 1.0))
    throw Error(ErrorCode::InvalidArgument, "leak_tol must lie in (0,1)");
  const double z = gaussian_tail_z(leak_tol);
  const double sigma = 0.5 * std::sqrt(2.0 * nbar + 1.0) * std::exp(max_squeeze);
  const double radius = max_disp + z * sigma;
  int dim = static_cast<int>(std::ceil((radius * radius + 1.0) / 0.9));
  const double sh = std::sinh(max_squeeze);
  dim = std::max(dim, static_cast<int>(std::ceil(4.0 * sh * sh)) + 1);
  return std::max(dim, 2);
}

class MotionalState {
 public:
  enum class Kind { fock, coherent, thermal };

  struct Component {
    double weight;
    CVector state;
  };

  static MotionalState fock(int n) {
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "Fock index must be non-negative");
    MotionalState s(Kind::fock);
    s.n_ = n;
    return s;
  }
  static MotionalState coherent(cplx alpha) {
    MotionalState s(Kind::coherent);
    s.alpha_ = alpha;
    return s;
  }
  static MotionalState thermal(double nbar) {
    if (!(nbar >= 0.0)) throw Error(ErrorCode::InvalidArgument, "thermal occupation must be >= 0");
    MotionalState s(Kind::thermal);
    s.nbar_ = nbar;
    return s;
  }
  static MotionalState vacuum() { return fock(0); }

  Kind kind() const noexcept { return kind_; }
  int fock_index() const noexcept { return n_; }
  cplx alpha() const noexcept { return alpha_; }
  double nbar() const noexcept { return nbar_; }

  double mean_number() const {
    switch (kind_) {
      case Kind::fock: return n_;
      case Kind::coherent: return std::norm(alpha_);
      case Kind::thermal: return nbar_;
    }
    return 0.0;
  }

  /// Occupation scale used for truncation sizing.
  double envelope_nbar() const { return kind_ == Kind::coherent ? 0.0 : mean_number(); }
  double envelope_displacement() const { return kind_ == Kind::coherent ? std::abs(alpha_) : 0.0; }

  /// Pure-state decomposition rho = sum_k w_k |psi_k><psi_k| in the truncated
  /// basis. Weights sum to 1; each psi_k has unit norm.
  std::vector<Component> components(int dim) const {
    if (dim < 2) throw Error(ErrorCode::InvalidArgument, "dim must be >= 2");
    std::vector<Component> out;
    switch (kind_) {
      case Kind::fock: {
        if (n_ >= dim) throw Error(ErrorCode::TruncationTooSmall, "fock(n) requires n < dim");
        CVector v = CVector::Zero(dim);
        v(n_) = 1.0;
        out.push_back({1.0, v});
        break;
      }
      case Kind::coherent: {
        CVector v(dim);
        v(0) = std::exp(-0.5 * std::norm(alpha_));
        for (int n = 1; n < dim; ++n) v(n) = v(n - 1) * alpha_ / std::sqrt(static_cast<double>(n));
        v.normalize();
        out.push_back({1.0, v});
        break;
      }
      case Kind::thermal: {
        const double q = nbar_ / (nbar_ + 1.0);
        double p = 1.0 / (nbar_ + 1.0);
        double total = 0.0;
        for (int n = 0; n < dim; ++n) {
          if (n > 0 && p < 1e-16) break;
          CVector v = CVector::Zero(dim);
          v(n) = 1.0;
          out.push_back({p, v});
          total += p;
          p *= q;
        }
        for (auto& c : out) c.weight /= total;
        break;
      }
    }
    return out;
  }

  /// Population lost to the truncation before renormalisation.
  double truncation_loss(int dim) const {
    switch (kind_) {
      case Kind::fock: return n_ < dim ? 0.0 : 1.0;
      case Kind::coherent: {
        double p = std::exp(-std::norm(alpha_));
        double kept = 0.0;
        for (int n = 0; n < dim; ++n) {
          kept += p;
          p *= std::norm(alpha_) / (n + 1);
        }
        return std::max(0.0, 1.0 - kept);
      }
      case Kind::thermal: return std::pow(nbar_ / (nbar_ + 1.0), dim);
    }
    return 0.0;
  }

  CMatrix density_matrix(int dim) const {
    CMatrix rho = CMatrix::Zero(dim, dim);
    for (const auto& c : components(dim)) rho += c.weight * c.state * c.state.adjoint();
    return rho;
  }

 private:
  explicit MotionalState(Kind k) : kind_(k) {}

  Kind kind_;
  int n_ = 0;
  cplx alpha_{0.0, 0.0};
  double nbar_ = 0.0;
};

/// Exact propagators for one truncated mode. Displacements and squeezes are
/// applied through cached eigendecompositions of x~ and (a^2 + a^dag^2)/2
/// combined with diagonal phase rotations; mixed generators go through a
/// Taylor action of the sparse generator. The object is immutable after
/// construction.
class ModePropagator {
 public:
  explicit ModePropagator(const TruncatedMode& mode) : dim_(mode.dim()) {
    const int d = dim_;
    // x~ is tridiagonal with off-diagonal sqrt(n)/2.
    RVector diag = RVector::Zero(d);
    RVector off(d - 1);
    for (int n = 0; n + 1 < d; ++n) off(n) = 0.5 * std::sqrt(static_cast<double>(n + 1));
    Eigen::SelfAdjointEigenSolver<RMatrix> xs;
    xs.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
    x_vals_ = xs.eigenvalues();
    x_vecs_ = xs.eigenvectors();

    // (a^2 + a^dag^2)/2 splits into tridiagonal blocks on even and odd levels.
    for (int parity = 0; parity < 2; ++parity) {
      const int m = (d - parity + 1) / 2;
      auto& blk = parity == 0 ? even_ : odd_;
      if (m == 0) continue;
      RVector bd = RVector::Zero(m);
      RVector bo(std::max(m - 1, 0));
      for (int k = 0; k + 1 < m; ++k) {
        const int n = parity + 2 * k;
        bo(k) = 0.5 * std::sqrt(static_cast<double>((n + 1) * (n + 2)));
      }
      if (m == 1) {
        blk.vals = RVector::Zero(1);
        blk.vecs = RMatrix::Identity(1, 1);
      } else {
        Eigen::SelfAdjointEigenSolver<RMatrix> es;
        es.computeFromTridiagonal(bd, bo, Eigen::ComputeEigenvectors);
        blk.vals = es.eigenvalues();
        blk.vecs = es.eigenvectors();
      }
    }
  }

  int dim() const noexcept { return dim_; }

  /// D(alpha) applied to every column.
  CMatrix displace(const CMatrix& states, cplx alpha) const {
    if (alpha == cplx{0.0, 0.0}) return states;
    const double r = std::abs(alpha);
    const double theta = std::arg(alpha) + 0.5 * pi;
    CMatrix work = rotate(states, -theta);
    CMatrix coeffs = x_vecs_.transpose() * work;
    for (int k = 0; k < dim_; ++k) coeffs.row(k) *= std::polar(1.0, -2.0 * r * x_vals_(k));
    work = x_vecs_ * coeffs;
    return rotate(work, theta);
  }

  /// S(xi, dphi) applied to every column.
  CMatrix squeeze(const CMatrix& states, double xi, double dphi = 0.0) const {
    if (xi == 0.0) return states;
    const double theta = -0.5 * dphi - 0.25 * pi;
    CMatrix work = rotate(states, -theta);
    for (int parity = 0; parity < 2; ++parity) {
      const auto& blk = parity == 0 ? even_ : odd_;
      const auto m = blk.vals.size();
      if (m == 0) continue;
      CMatrix sub(m, work.cols());
      for (Eigen::Index k = 0; k < m; ++k) sub.row(k) = work.row(parity + 2 * k);
      CMatrix coeffs = blk.vecs.transpose() * sub;
      for (Eigen::Index k = 0; k < m; ++k) coeffs.row(k) *= std::polar(1.0, -xi * blk.vals(k));
      sub = blk.vecs * coeffs;
      for (Eigen::Index k = 0; k < m; ++k) work.row(parity + 2 * k) = sub.row(k);
    }
    return rotate(work, theta);
  }

  /// exp(K) for a general quadratic generator.
  CMatrix apply(const CMatrix& states, const QuadraticGenerator& g) const {
    if (g.is_zero()) return states;
    if (g.squeeze == 0.0) return displace(states, g.displacement);
    if (g.displacement == cplx{0.0, 0.0}) return squeeze(states, g.squeeze, g.squeeze_phase);
    const SparseC k = generator_sparse(dim_, g);
    return expm_action([&k](const CMatrix& v) -> CMatrix { return k * v; }, sparse_norm1(k), states);
  }

 private:
  struct Block {
    RVector vals;
    RMatrix vecs;
  };

  // diag(e^{i theta n}) applied to every column
  CMatrix rotate(const CMatrix& states, double theta) const {
    CMatrix out = states;
    for (int n = 0; n < dim_; ++n) out.row(n) *= std::polar(1.0, theta * n);
    return out;
  }

  int dim_;
  RVector x_vals_;
  RMatrix x_vecs_;
  Block even_;
  Block odd_;
};

/// Propagator for `dim` levels, shared across calls (a few recent dims are
/// kept). Safe to call from several threads.
inline std::shared_ptr<const ModePropagator> shared_propagator(int dim) {
  static std::mutex mutex;
  static std::deque<std::pair<int, std::shared_ptr<const ModePropagator>>> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    for (const auto& [d, p] : cache)
      if (d == dim) return p;
  }
  auto p = std::make_shared<const ModePropagator>(TruncatedMode(dim));
  std::lock_guard<std::mutex> lock(mutex);
  for (const auto& [d, q] : cache)
    if (d == dim) return q;
  cache.emplace_back(dim, p);
  if (cache.size() > 4) cache.pop_front();
  return p;
}

struct PhaseSpaceMoments {
  double x_mean;
  double p_mean;
  double x_var;
  double p_var;
};

/// Quadrature moments of a mixture of pure motional states (columns).
inline PhaseSpaceMoments moments(const std::vector<double>& weights, const CMatrix& states) {
  const auto d = states.rows();
  double xm = 0, pm = 0, x2 = 0, p2 = 0;
  for (Eigen::Index c = 0; c < states.cols(); ++c) {
    const auto v = states.col(c);
    double cx = 0, cp = 0, cx2 = 0, cp2 = 0;
    for (Eigen::Index n = 0; n < d; ++n) {
      // (x~ v)_n and (p~ v)_n from the ladder structure
      const cplx lo = n > 0 ? std::sqrt(static_cast<double>(n)) * v(n - 1) : cplx{};
      const cplx hi = n + 1 < d ? std::sqrt(static_cast<double>(n + 1)) * v(n + 1) : cplx{};
      const cplx xv = 0.5 * (lo + hi);
      const cplx pv = 0.5 * I * (lo - hi);
      cx += (std::conj(v(n)) * xv).real();
      cp += (std::conj(v(n)) * pv).real();
      cx2 += std::norm(xv);
      cp2 += std::norm(pv);
    }
    const double w = weights[static_cast<std::size_t>(c)];
    xm += w * cx;
    pm += w * cp;
    x2 += w * cx2;
    p2 += w * cp2;
  }
  return {xm, pm, x2 - xm * xm, p2 - pm * pm};
}

}  // namespace sqg

#endif  // SQUEEZEGATE_FOCKSPACE_HPP
