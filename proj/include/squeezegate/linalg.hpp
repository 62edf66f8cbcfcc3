#ifndef SQUEEZEGATE_LINALG_HPP
#define SQUEEZEGATE_LINALG_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <span>

#include "squeezegate/core.hpp"

namespace sqg {

namespace detail {

inline double norm1(const CMatrix& a) { return a.cwiseAbs().colwise().sum().maxCoeff(); }

// Pade numerator/denominator pieces U (odd) and V (even), exp(A) ~ (V+U)/(V-U).
inline void pade_low(const CMatrix& a, std::span<const double> b, CMatrix& u, CMatrix& v) {
  const auto n = a.rows();
  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix a2 = a * a;
  CMatrix pw = id;
  CMatrix odd = b[1] * id;
  CMatrix even = b[0] * id;
  for (std::size_t k = 2; k < b.size(); k += 2) {
    pw = pw * a2;
    even += b[k] * pw;
    if (k + 1 < b.size()) odd += b[k + 1] * pw;
  }
  u = a * odd;
  v = even;
}

inline void pade13(const CMatrix& a, CMatrix& u, CMatrix& v) {
  static constexpr std::array<double, 14> b = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
      129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
      1323241920.0,        40840800.0,          960960.0,           16380.0,
      182.0,               1.0};
  const auto n = a.rows();
  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix a2 = a * a;
  const CMatrix a4 = a2 * a2;
  const CMatrix a6 = a4 * a2;
  const CMatrix t = b[13] * a6 + b[11] * a4 + b[9] * a2;
  u = a * (a6 * t + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
  const CMatrix w = b[12] * a6 + b[10] * a4 + b[8] * a2;
  v = a6 * w + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
}

}  // namespace detail

/// Dense matrix exponential by scaling and squaring with Pade approximants
/// (degree chosen from the 1-norm as in Higham 2005).
inline CMatrix matrix_exp(const CMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix_exp needs a square matrix");
  if (!a.allFinite()) throw Error(ErrorCode::NonFinite, "matrix_exp input has NaN/Inf entries");
  const auto n = a.rows();
  if (n == 0) return a;

  static constexpr std::array<double, 4> b3 = {120.0, 60.0, 12.0, 1.0};
  static constexpr std::array<double, 6> b5 = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
  static constexpr std::array<double, 8> b7 = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                               25200.0,    1512.0,    56.0,      1.0};
  static constexpr std::array<double, 10> b9 = {17643225600.0, 8821612800.0, 2075673600.0,
                                                302702400.0,   30270240.0,   2162160.0,
                                                110880.0,      3960.0,       90.0,
                                                1.0};
  static constexpr std::array<double, 4> theta = {1.495585217958292e-2, 2.539398330063230e-1,
                                                  9.504178996162932e-1, 2.097847961257068e0};
  constexpr double theta13 = 5.371920351148152e0;

  const double nrm = detail::norm1(a);
  CMatrix u;
  CMatrix v;
  int squarings = 0;
  if (nrm <= theta[0]) {
    detail::pade_low(a, b3, u, v);
  } else if (nrm <= theta[1]) {
    detail::pade_low(a, b5, u, v);
  } else if (nrm <= theta[2]) {
    detail::pade_low(a, b7, u, v);
  } else if (nrm <= theta[3]) {
    detail::pade_low(a, b9, u, v);
  } else {
    squarings = std::max(0, static_cast<int>(std::ceil(std::log2(nrm / theta13))));
    const CMatrix scaled = a / std::ldexp(1.0, squarings);
    detail::pade13(scaled, u, v);
  }
  CMatrix r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) r = r * r;
  return r;
}

/// Action exp(K) psi of a linear operator, by truncated Taylor series on
/// substeps of 1-norm at most `substep_norm`. `apply(x)` returns K x and
/// `norm_bound` must bound the operator norm of K.
template <typename Apply, typename State>
State expm_action(Apply&& apply, double norm_bound, State psi, double substep_norm = 1.0) {
  if (!std::isfinite(norm_bound)) throw Error(ErrorCode::NonFinite, "expm_action: non-finite generator norm");
  if (norm_bound == 0.0) return psi;
  const int steps = std::max(1, static_cast<int>(std::ceil(norm_bound / substep_norm)));
  const double inv = 1.0 / steps;
  for (int s = 0; s < steps; ++s) {
    State term = psi;
    State acc = psi;
    const double base = acc.norm();
    for (int k = 1; k < 60; ++k) {
      term = apply(term) * (inv / k);
      acc += term;
      if (term.norm() <= 1e-17 * std::max(base, 1e-300)) break;
    }
    psi = std::move(acc);
  }
  return psi;
}

}  // namespace sqg

#endif  // SQUEEZEGATE_LINALG_HPP
