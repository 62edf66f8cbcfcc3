#ifndef SQUEEZEGATE_SPINREG_HPP
#define SQUEEZEGATE_SPINREG_HPP

// Qubit register algebra. Tensor ordering: qubit 0 is the leftmost factor,
// so basis index = sum_q bit_q * 2^(N-1-q). Computational |0> = (1,0).
//
// Spin configurations enumerate joint sigma_phi eigenvalues: configuration
// index c assigns qubit q the sign +1 if bit (N-1-q) of c is 0, else -1.
// Index 0 is therefore "all up".

#include <cmath>
#include <string>
#include <vector>

#include "squeezegate/core.hpp"

namespace sqg {

class SpinAxis {
 public:
  SpinAxis() = default;
  explicit SpinAxis(double phi) : phi_(std::fmod(phi, two_pi)) {
    if (!std::isfinite(phi)) throw Error(ErrorCode::NonFinite, "spin axis angle is not finite");
    if (phi_ < 0.0) phi_ += two_pi;
    if (phi_ >= two_pi) phi_ = 0.0;
  }
  double phi() const noexcept { return phi_; }

 private:
  double phi_ = 0.0;
};

inline constexpr int default_max_qubits = 8;

class SpinRegister {
 public:
  SpinRegister(std::vector<SpinAxis> axes, int max_qubits = default_max_qubits) : axes_(std::move(axes)) {
    if (axes_.empty()) throw Error(ErrorCode::InvalidArgument, "register needs at least one qubit");
    if (static_cast<int>(axes_.size()) > max_qubits)
      throw Error(ErrorCode::InvalidArgument, "register exceeds the configured qubit limit");
  }
  /// N qubits sharing one axis.
  static SpinRegister uniform(int n, double phi = 0.0) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "register needs at least one qubit");
    return SpinRegister(std::vector<SpinAxis>(static_cast<std::size_t>(n), SpinAxis(phi)));
  }

  int size() const noexcept { return static_cast<int>(axes_.size()); }
  int hilbert_dim() const noexcept { return 1 << size(); }
  const SpinAxis& axis(int q) const { return axes_.at(static_cast<std::size_t>(q)); }
  const std::vector<SpinAxis>& axes() const noexcept { return axes_; }

 private:
  std::vector<SpinAxis> axes_;
};

struct SpinConfiguration {
  std::vector<int> signs;

  static SpinConfiguration from_index(int index, int n) {
    SpinConfiguration s;
    s.signs.resize(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) s.signs[static_cast<std::size_t>(q)] = ((index >> (n - 1 - q)) & 1) ? -1 : 1;
    return s;
  }
  int index() const {
    int idx = 0;
    for (int s : signs) idx = (idx << 1) | (s < 0 ? 1 : 0);
    return idx;
  }
  int ups() const {
    int k = 0;
    for (int s : signs) k += s > 0 ? 1 : 0;
    return k;
  }
  /// "+-+" style label
  std::string label() const {
    std::string out;
    for (int s : signs) out.push_back(s > 0 ? '+' : '-');
    return out;
  }
};

inline CMatrix pauli_x() { return (CMatrix(2, 2) << 0, 1, 1, 0).finished(); }
inline CMatrix pauli_y() { return (CMatrix(2, 2) << 0, -I, I, 0).finished(); }
inline CMatrix pauli_z() { return (CMatrix(2, 2) << 1, 0, 0, -1).finished(); }

/// sigma_x cos(phi) + sigma_y sin(phi)
inline CMatrix sigma_phi(const SpinAxis& axis) {
  const double c = std::cos(axis.phi());
  const double s = std::sin(axis.phi());
  return (CMatrix(2, 2) << 0, cplx(c, -s), cplx(c, s), 0).finished();
}

/// R_z(angle) = diag(e^{-i angle/2}, e^{+i angle/2})
inline CMatrix rz(double angle) {
  return (CMatrix(2, 2) << std::polar(1.0, -0.5 * angle), 0, 0, std::polar(1.0, 0.5 * angle)).finished();
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline CMatrix embed(const CMatrix& op, int qubit, int n_qubits) {
  if (qubit < 0 || qubit >= n_qubits)
    throw Error(ErrorCode::IndexOutOfRange, "qubit " + std::to_string(qubit) + " outside register");
  if (op.rows() != 2 || op.cols() != 2) throw Error(ErrorCode::DimensionMismatch, "embed expects a 2x2 operator");
  const CMatrix left = CMatrix::Identity(1 << qubit, 1 << qubit);
  const CMatrix right = CMatrix::Identity(1 << (n_qubits - 1 - qubit), 1 << (n_qubits - 1 - qubit));
  return kron(kron(left, op), right);
}

inline CMatrix embed(const CMatrix& op, int qubit, const SpinRegister& reg) { return embed(op, qubit, reg.size()); }

/// Tensor product of one 2x2 operator per qubit.
inline CMatrix product_op(const std::vector<CMatrix>& ops) {
  CMatrix out = CMatrix::Identity(1, 1);
  for (const auto& o : ops) out = kron(out, o);
  return out;
}

/// sigma_phi eigenvector for eigenvalue +1 or -1.
inline CVector axis_eigenvector(const SpinAxis& axis, int sign) {
  CVector v(2);
  v << 1.0, static_cast<double>(sign) * std::polar(1.0, axis.phi());
  return v / std::sqrt(2.0);
}

struct EigenBasis {
  std::vector<SpinConfiguration> configs;
  /// column c = joint eigenvector of configuration c in the computational basis
  CMatrix V;
};

inline EigenBasis eigenconfigurations(const SpinRegister& reg) {
  const int n = reg.size();
  const int d = reg.hilbert_dim();
  EigenBasis out;
  out.configs.reserve(static_cast<std::size_t>(d));
  out.V = CMatrix(d, d);
  for (int c = 0; c < d; ++c) {
    auto cfg = SpinConfiguration::from_index(c, n);
    CVector col = CVector::Ones(1);
    for (int q = 0; q < n; ++q) {
      const CVector e = axis_eigenvector(reg.axis(q), cfg.signs[static_cast<std::size_t>(q)]);
      CVector next(col.size() * 2);
      for (Eigen::Index i = 0; i < col.size(); ++i) next.segment(2 * i, 2) = col(i) * e;
      col = next;
    }
    out.V.col(c) = col;
    out.configs.push_back(std::move(cfg));
  }
  return out;
}

/// Hermitian operator c0 * 1 + sum_q c_q sigma_phi_q (a DisplacementSet or
/// squeeze amplitude set in operator form).
inline CMatrix linear_spin_op(double common, const std::vector<double>& per_qubit, const SpinRegister& reg) {
  const int d = reg.hilbert_dim();
  CMatrix out = common * CMatrix::Identity(d, d);
  for (int q = 0; q < reg.size() && q < static_cast<int>(per_qubit.size()); ++q)
    if (per_qubit[static_cast<std::size_t>(q)] != 0.0)
      out += per_qubit[static_cast<std::size_t>(q)] * embed(sigma_phi(reg.axis(q)), q, reg);
  return out;
}

}  // namespace sqg

#endif  // SQUEEZEGATE_SPINREG_HPP
