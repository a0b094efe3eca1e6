#include "shredder/pruefer.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "shredder/transfer.hpp"

namespace shredder {

using std::numbers::pi;

double PrueferParams::beta_offset() const { return v >= 0.0 ? alpha : pi - alpha; }

PrueferParams make_params(double v, double k, double theta0) {
  if (!(k > 0.0)) throw std::invalid_argument("pruefer: k must be positive");
  const double g = v / k;
  PrueferParams p;
  p.v = v;
  p.k = k;
  p.mu = 1.0 + g * g / 2.0;
  p.alpha = std::acos(1.0 / std::sqrt(1.0 + g * g / 4.0));
  p.nu = barrier_norm(v);
  p.theta0 = fold_theta(theta0);
  return p;
}

double fold_theta(double theta) {
  double t = std::fmod(theta, pi);
  if (t <= 0.0) t += pi;
  return t;
}

double fold_beta(double beta) {
  double t = std::fmod(beta + pi, 2.0 * pi);
  if (t < 0.0) t += 2.0 * pi;
  t -= pi;
  if (t >= pi) t = -pi;
  return t;
}

double initial_theta(double v, double k, std::optional<double> boundary_phase) {
  const double vartheta = boundary_phase ? *boundary_phase : -std::asin(1.0 / std::sqrt(1.0 + v * v / 4.0));
  // sin(theta) cos(vartheta) + k cos(theta) sin(vartheta) = 0
  return fold_theta(std::atan2(-k * std::sin(vartheta), std::cos(vartheta)));
}

namespace {

// theta + k Delta folded into (0, pi]; reducing k Delta first keeps the
// rounding error at the size of theta rather than of k Delta
double advance(double theta, double k_delta) { return fold_theta(theta + std::fmod(k_delta, pi)); }

double cross(double phase, double v_over_k) {
  if (phase == pi) return pi;
  const double s = std::sin(phase);
  return std::atan2(s, std::cos(phase) + v_over_k * s);
}

} // namespace

double eggarter_step(double theta, double k_delta, double v_over_k) {
  return cross(advance(theta, k_delta), v_over_k);
}

PrueferOrbit iterate(const PrueferParams& params, std::span<const double> gaps, std::size_t n_steps) {
  if (n_steps > gaps.size()) throw std::invalid_argument("iterate: more steps than gaps");
  const double g = params.v / params.k;
  const double amp = std::sqrt(params.mu * params.mu - 1.0);
  const double offset = params.beta_offset();

  PrueferOrbit orbit;
  orbit.thetas.reserve(n_steps);
  orbit.betas.reserve(n_steps);
  orbit.log_r2.reserve(n_steps);
  orbit.log_r2_direct.reserve(n_steps);
  orbit.cum_log_R2.reserve(n_steps);

  double theta = params.theta0;
  double cum = 0.0;
  for (std::size_t n = 0; n < n_steps; ++n) {
    const double phase = advance(theta, params.k * gaps[n]);
    const double next = cross(phase, g);
    const double beta = fold_beta(2.0 * phase - offset);
    const double lr = std::log(params.mu + amp * std::sin(beta));
    double direct = 0.0;
    if (phase != pi) {
      const double s0 = std::sin(phase);
      const double s1 = std::sin(next);
      direct = 2.0 * (std::log(s0) - std::log(s1));
    }
    cum += lr;
    orbit.thetas.push_back(theta);
    orbit.betas.push_back(beta);
    orbit.log_r2.push_back(lr);
    orbit.log_r2_direct.push_back(direct);
    orbit.cum_log_R2.push_back(cum);
    theta = next;
  }
  return orbit;
}

std::vector<double> iterate_beta(const PrueferParams& params, std::span<const double> gaps,
                                 std::size_t n_steps) {
  if (n_steps > gaps.size()) throw std::invalid_argument("iterate_beta: more steps than gaps");
  const double g = params.v / params.k;
  const double offset = params.beta_offset();
  std::vector<double> betas;
  betas.reserve(n_steps);
  if (n_steps == 0) return betas;

  auto beta_from = [&](double theta, double gap) {
    return fold_beta(2.0 * theta + 2.0 * std::fmod(params.k * gap, pi) - offset);
  };
  double beta = beta_from(params.theta0, gaps[0]);
  betas.push_back(beta);
  for (std::size_t n = 1; n < n_steps; ++n) {
    const double theta = cross(fold_theta((beta + offset) / 2.0), g);
    beta = beta_from(theta, gaps[n]);
    betas.push_back(beta);
  }
  return betas;
}

double growth_exponent(const PrueferOrbit& orbit) {
  if (orbit.log_r2.empty()) throw std::invalid_argument("growth_exponent: empty orbit");
  double sum = 0.0;
  for (double x : orbit.log_r2) sum += x;
  return sum / static_cast<double>(orbit.log_r2.size());
}

double equidistributed_growth(double mu) { return std::log((mu + 1.0) / 2.0); }

double EquidistributionStats::max_weyl() const {
  return weyl_magnitudes.empty() ? 0.0 : *std::max_element(weyl_magnitudes.begin(), weyl_magnitudes.end());
}

EquidistributionStats equidistribution_stats(std::span<const double> samples, int n_bins, int n_weyl) {
  if (samples.empty()) throw std::invalid_argument("equidistribution_stats: no samples");
  if (n_bins < 2) throw std::invalid_argument("equidistribution_stats: need at least two bins");
  if (n_weyl < 0) throw std::invalid_argument("equidistribution_stats: negative Weyl order");
  const auto n = samples.size();
  const double width = 2.0 * pi / n_bins;

  EquidistributionStats st;
  st.histogram.assign(static_cast<std::size_t>(n_bins), 0);
  std::vector<double> cdf;
  cdf.reserve(n);
  for (double b : samples) {
    if (!(b >= -pi && b < pi)) throw std::invalid_argument("equidistribution_stats: sample outside [-pi, pi)");
    auto bin = static_cast<std::size_t>((b + pi) / width);
    st.histogram[std::min(bin, st.histogram.size() - 1)]++;
    cdf.push_back((b + pi) / (2.0 * pi));
  }

  std::sort(cdf.begin(), cdf.end());
  const double dn = static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i)
    st.ks_statistic = std::max({st.ks_statistic, (i + 1) / dn - cdf[i], cdf[i] - i / dn});

  for (int m = 1; m <= n_weyl; ++m) {
    std::complex<double> acc = 0.0;
    for (double b : samples) acc += std::polar(1.0, m * b);
    st.weyl_magnitudes.push_back(std::abs(acc) / dn);
  }
  return st;
}

namespace {

double log_add(double a, double b) {
  if (a == -INFINITY) return b;
  if (b == -INFINITY) return a;
  return a > b ? a + std::log1p(std::exp(b - a)) : b + std::log1p(std::exp(a - b));
}

// least-squares slope of log_sums[n-1] against ln n for n in [lo, hi]
double loglog_slope(const std::vector<double>& log_sums, std::size_t lo, std::size_t hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(hi - lo + 1);
  for (std::size_t n = lo; n <= hi; ++n) {
    const double x = std::log(static_cast<double>(n));
    const double y = log_sums[n - 1];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

} // namespace

PointSpectrumDiagnostic point_spectrum_diagnostic(const BarrierArray& arr, double v, double k, int N,
                                                  const Calibration& cal) {
  if (!(k > 0.0)) throw std::invalid_argument("point_spectrum_diagnostic: k must be positive");
  if (N < 20) throw std::invalid_argument("point_spectrum_diagnostic: N must be at least 20");
  PointSpectrumDiagnostic d;
  d.gaps = gaps(arr);
  if (d.gaps.size() < static_cast<std::size_t>(N))
    throw std::invalid_argument("point_spectrum_diagnostic: array has fewer than N positive-side gaps");
  d.gaps.resize(static_cast<std::size_t>(N));

  const TransferMatrix jump = barrier_matrix(v);
  TransferMatrix m;
  double bound_sum = -INFINITY;
  double sharp_sum = -INFINITY;
  for (int n = 1; n <= N; ++n) {
    const double gap = d.gaps[static_cast<std::size_t>(n - 1)];
    const double log_gap = std::log(gap);
    bound_sum = log_add(bound_sum, log_gap - 2.0 * norm_bound(v, k, n));
    m = compose(jump, compose(free_matrix(k, gap), m));
    sharp_sum = log_add(sharp_sum, log_gap - 2.0 * m.log_norm());
    d.log_bound_sums.push_back(bound_sum);
    d.log_sharp_sums.push_back(sharp_sum);
  }

  const auto n = static_cast<std::size_t>(N);
  const std::size_t last_lo = (n + 9) / 10;
  const std::size_t prev_lo = std::max<std::size_t>(1, (n + 99) / 100);
  d.bound_slope = loglog_slope(d.log_bound_sums, last_lo, n);
  d.bound_prev_slope = loglog_slope(d.log_bound_sums, prev_lo, last_lo);
  d.sharp_slope = loglog_slope(d.log_sharp_sums, last_lo, n);
  d.sharp_prev_slope = loglog_slope(d.log_sharp_sums, prev_lo, last_lo);

  auto trend = [&](double last, double prev) {
    return last > cal.trend_min_slope && last >= cal.trend_decay_tolerance * prev;
  };
  d.diverging_trend = trend(d.bound_slope, d.bound_prev_slope);
  d.sharp_diverging_trend = trend(d.sharp_slope, d.sharp_prev_slope);
  return d;
}

} // namespace shredder
