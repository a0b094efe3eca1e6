#pragma once

#include <optional>
#include <span>
#include <vector>

#include "shredder/barriers.hpp"
#include "shredder/config.hpp"

namespace shredder {

/// Constants of the phase map at one (v, k):
///   mu    = 1 + v^2 / (2 k^2)
///   alpha = arccos (1 + v^2 / (4 k^2))^{-1/2}
///   nu    = |v|/2 + sqrt(v^2/4 + 1)
struct PrueferParams {
  double v = 0.0;
  double k = 1.0;
  double mu = 1.0;
  double alpha = 0.0;
  double nu = 1.0;
  double theta0 = 0.0;

  /// Phase offset in beta_n = 2 theta_n + 2 k Delta_n - offset. Equal to
  /// alpha for v >= 0; pi - alpha for v < 0, where the sine in
  /// r_n^2 = mu + sqrt(mu^2 - 1) sin(beta_n) picks up the sign of v.
  double beta_offset() const;
};

/// Throws std::invalid_argument for k <= 0.
PrueferParams make_params(double v, double k, double theta0);

/// Prüfer phase at the origin for the boundary condition
/// phi(0) cos(vartheta) + phi'(0) sin(vartheta) = 0, folded into (0, pi].
/// Without an explicit boundary phase, vartheta = -arcsin (1 + v^2/4)^{-1/2}
/// (the delta barrier at the origin in the even sector).
double initial_theta(double v, double k, std::optional<double> boundary_phase = std::nullopt);

/// Folds into (0, pi].
double fold_theta(double theta);
/// Folds into [-pi, pi).
double fold_beta(double beta);

/// One barrier crossing: cot theta' = cot(theta + k Delta) + v/k, theta' in (0, pi].
/// At a node, sin(theta + k Delta) = 0, the barrier is invisible.
double eggarter_step(double theta, double k_delta, double v_over_k);

struct PrueferOrbit {
  std::vector<double> thetas;       // theta_n, phase entering gap n
  std::vector<double> betas;        // beta_n in [-pi, pi)
  std::vector<double> log_r2;       // ln(mu + sqrt(mu^2-1) sin beta_n)
  std::vector<double> log_r2_direct; // ln[sin^2(theta_n + k Delta_n) / sin^2 theta_{n+1}]
  std::vector<double> cum_log_R2;   // ln R_{n+1}^2 - ln R_1^2

  std::size_t size() const { return betas.size(); }
};

/// Runs the phase map over the first n_steps gaps.
PrueferOrbit iterate(const PrueferParams& params, std::span<const double> gaps, std::size_t n_steps);

/// Same beta sequence, iterated directly on beta:
/// cot((beta_{n+1} + offset)/2 - k Delta_{n+1}) = cot((beta_n + offset)/2) + v/k.
std::vector<double> iterate_beta(const PrueferParams& params, std::span<const double> gaps,
                                 std::size_t n_steps);

/// (1/N) sum ln r_n^2.
double growth_exponent(const PrueferOrbit& orbit);

/// Average of ln(mu + sqrt(mu^2-1) sin beta) over uniformly distributed beta:
/// ln((mu + 1) / 2).
double equidistributed_growth(double mu);

struct EquidistributionStats {
  std::vector<std::size_t> histogram;
  double ks_statistic = 0.0;
  std::vector<double> weyl_magnitudes; // m = 1 .. n_weyl
  double max_weyl() const;
};

/// Histogram over equal bins of [-pi, pi), Kolmogorov-Smirnov distance to the
/// uniform law, and Weyl sums |(1/N) sum exp(i m beta_n)|.
/// Throws std::invalid_argument for samples outside [-pi, pi).
EquidistributionStats equidistribution_stats(std::span<const double> samples, int n_bins, int n_weyl);

struct PointSpectrumDiagnostic {
  std::vector<double> gaps;
  /// ln of S_n = sum_{j<=n} Delta_j / M[v,k]^{2j}.
  std::vector<double> log_bound_sums;
  /// ln of sum_{j<=n} Delta_j / ||M(x_j, 0)||^2 with the actual transfer matrix.
  std::vector<double> log_sharp_sums;
  double bound_slope = 0.0;      // log-log slope over the last decade of n
  double bound_prev_slope = 0.0; // and over the decade before
  double sharp_slope = 0.0;
  double sharp_prev_slope = 0.0;
  bool diverging_trend = false;       // bound-based sums
  bool sharp_diverging_trend = false;
};

/// Partial sums bounding the integral of dx / ||M(x,0)||^2 from below.
/// The trend flag is a heuristic: the last-decade log-log slope must exceed
/// cal.trend_min_slope and must not have dropped below
/// cal.trend_decay_tolerance times the previous decade's slope.
/// Requires N >= 20 and at least N positive-side gaps.
PointSpectrumDiagnostic point_spectrum_diagnostic(const BarrierArray& arr, double v, double k, int N,
                                                  const Calibration& cal = {});

} // namespace shredder
