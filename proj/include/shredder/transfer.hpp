#pragma once

#include <complex>

#include "shredder/barriers.hpp"

namespace shredder {

/// Real 2x2 transfer matrix acting on (phi, phi') with a factored-out scale:
/// the true matrix is exp(log_scale) * [[m11, m12], [m21, m22]].
///
/// Products of many factors grow exponentially in norm, so compose() pulls
/// powers of two out of the entries whenever max|m_ij| leaves [0.5, 2].
/// The rescaling is exact in binary floating point.
struct TransferMatrix {
  double m11 = 1.0;
  double m12 = 0.0;
  double m21 = 0.0;
  double m22 = 1.0;
  double log_scale = 0.0;

  static TransferMatrix identity() { return {}; }

  double max_abs() const;
  /// Determinant of the stored (scaled) entries.
  double scaled_det() const;
  /// ln of the spectral norm of the true matrix.
  double log_norm() const;
  /// Brings max|m_ij| into [0.5, 2] by an exact power-of-two factor.
  void renormalize();
  /// Entries of the true matrix; overflows to inf for very long chains.
  TransferMatrix unscaled() const;
};

/// Free motion over `length` at momentum k: (cos kL, sin kL / k; -k sin kL, cos kL).
/// Throws std::invalid_argument for k <= 0.
TransferMatrix free_matrix(double k, double length);

/// Crossing a delta barrier of strength v: (1, 0; v, 1).
TransferMatrix barrier_matrix(double v);

/// left * right; `right` acts first (it belongs to the interval further left).
TransferMatrix compose(const TransferMatrix& left, const TransferMatrix& right);

/// M(x_last + 0, x_first - 0) for the whole array.
TransferMatrix total_transfer(const BarrierArray& arr, double k);

struct ScatterResult {
  double k = 0.0;
  std::complex<double> t{1.0, 0.0};
  std::complex<double> r{0.0, 0.0};
  /// |t| underflowed: the array is effectively opaque at this k.
  bool opaque = false;

  double transmission() const { return std::norm(t); }
  double reflection() const { return std::norm(r); }
};

/// Transmission and reflection for a wave e^{ikx} incident from the left:
///
///   phi = e^{ikx} + r e^{-ikx}   (x < x_first)
///   phi = t e^{ikx}              (x > x_last)
///
/// With K = W^{-1} M W in the plane-wave basis W = [(1, ik), (1, -ik)] one
/// gets t = e^{-ik(x_last - x_first)} / K22 and r = -e^{2ik x_first} K21 / K22.
ScatterResult scattering(const BarrierArray& arr, double k);
ScatterResult scattering(const TransferMatrix& m, double k, double x_first, double x_last);

/// Spectral norm of one barrier matrix, nu = |v|/2 + sqrt(v^2/4 + 1).
double barrier_norm(double v);

/// ln of the growth bound M[v,k]^n on ||M(x_n, 0)|| with
/// M[v,k] = nu * max(k, 1/k), the product of the factor norms.
double norm_bound(double v, double k, int n);

/// 2 (ln max(k, 1/k) + ln nu): exponential gap growth faster than this rate
/// makes sum Delta_n / M[v,k]^{2n} diverge.
double rate_threshold(double v, double k);

} // namespace shredder
