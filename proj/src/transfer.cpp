#include "shredder/transfer.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace shredder {

double TransferMatrix::max_abs() const {
  return std::max({std::abs(m11), std::abs(m12), std::abs(m21), std::abs(m22)});
}

double TransferMatrix::scaled_det() const { return m11 * m22 - m12 * m21; }

double TransferMatrix::log_norm() const {
  // largest singular value of a 2x2 matrix in closed form
  const double sigma = 0.5 * (std::hypot(m11 + m22, m12 - m21) + std::hypot(m11 - m22, m12 + m21));
  return log_scale + std::log(sigma);
}

void TransferMatrix::renormalize() {
  const double mx = max_abs();
  if (mx == 0.0 || !std::isfinite(mx) || (mx >= 0.5 && mx <= 2.0)) return;
  int e = 0;
  std::frexp(mx, &e);
  m11 = std::ldexp(m11, -e);
  m12 = std::ldexp(m12, -e);
  m21 = std::ldexp(m21, -e);
  m22 = std::ldexp(m22, -e);
  log_scale += e * std::numbers::ln2;
}

TransferMatrix TransferMatrix::unscaled() const {
  const double s = std::exp(log_scale);
  return {m11 * s, m12 * s, m21 * s, m22 * s, 0.0};
}

TransferMatrix free_matrix(double k, double length) {
  if (!(k > 0.0)) throw std::invalid_argument("free_matrix: k must be positive");
  const double c = std::cos(k * length);
  const double s = std::sin(k * length);
  return {c, s / k, -k * s, c, 0.0};
}

TransferMatrix barrier_matrix(double v) { return {1.0, 0.0, v, 1.0, 0.0}; }

TransferMatrix compose(const TransferMatrix& left, const TransferMatrix& right) {
  TransferMatrix out{left.m11 * right.m11 + left.m12 * right.m21,
                     left.m11 * right.m12 + left.m12 * right.m22,
                     left.m21 * right.m11 + left.m22 * right.m21,
                     left.m21 * right.m12 + left.m22 * right.m22,
                     left.log_scale + right.log_scale};
  out.renormalize();
  return out;
}

TransferMatrix total_transfer(const BarrierArray& arr, double k) {
  if (!(k > 0.0)) throw std::invalid_argument("total_transfer: k must be positive");
  TransferMatrix m;
  if (arr.empty()) return m;
  const TransferMatrix jump = barrier_matrix(arr.strength);
  m = jump;
  for (std::size_t i = 1; i < arr.size(); ++i) {
    m = compose(free_matrix(k, arr.positions[i] - arr.positions[i - 1]), m);
    m = compose(jump, m);
  }
  return m;
}

ScatterResult scattering(const TransferMatrix& m, double k, double x_first, double x_last) {
  if (!(k > 0.0)) throw std::invalid_argument("scattering: k must be positive");
  using namespace std::complex_literals;
  const std::complex<double> k21 = 0.5 * (m.m11 - m.m22 + 1i * (k * m.m12 + m.m21 / k));
  const std::complex<double> k22 = 0.5 * (m.m11 + m.m22 + 1i * (m.m21 / k - k * m.m12));

  ScatterResult res;
  res.k = k;
  res.r = -std::polar(1.0, 2.0 * k * x_first) * k21 / k22;

  const double log_abs_t = -m.log_scale - std::log(std::abs(k22));
  if (log_abs_t < std::log(DBL_MIN)) {
    res.t = 0.0;
    res.opaque = true;
    return res;
  }
  res.t = std::polar(std::exp(-m.log_scale), -k * (x_last - x_first)) / k22;
  return res;
}

ScatterResult scattering(const BarrierArray& arr, double k) {
  if (arr.empty()) {
    if (!(k > 0.0)) throw std::invalid_argument("scattering: k must be positive");
    return ScatterResult{k, {1.0, 0.0}, {0.0, 0.0}, false};
  }
  return scattering(total_transfer(arr, k), k, arr.positions.front(), arr.positions.back());
}

double barrier_norm(double v) { return std::abs(v) / 2.0 + std::sqrt(v * v / 4.0 + 1.0); }

double norm_bound(double v, double k, int n) {
  return n * (std::log(barrier_norm(v)) + std::log(std::max(k, 1.0 / k)));
}

double rate_threshold(double v, double k) {
  return 2.0 * (std::log(std::max(k, 1.0 / k)) + std::log(barrier_norm(v)));
}

} // namespace shredder
