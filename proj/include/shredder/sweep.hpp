#pragma once

#include <optional>
#include <vector>

#include "shredder/barriers.hpp"
#include "shredder/csv.hpp"

namespace shredder {

/// Momenta at or below this are clamped up to it; t(k) is undefined at k = 0.
inline constexpr double kMinMomentum = 1e-6;

struct SweepRequest {
  SparsenessSpec spacing = SparsenessSpec::exponential();
  int n_per_side = 5;
  double v = 1.0;
  double k_min = 0.1;
  double k_max = 5.0;
  int n_points = 4000;
  std::vector<double> zoom_factors;
  std::optional<double> zoom_anchor; // default: midpoint of the enclosing window
  unsigned threads = 0;              // 0: hardware concurrency
};

/// Throws std::invalid_argument if k_min >= k_max (after clamping) or n_points < 2.
void validate(const SweepRequest& req);

struct SweepRecord {
  double k = 0.0;
  double t_re = 0.0;
  double t_im = 0.0;
  double abs_t2 = 0.0;
  bool opaque = false;
};

/// Inclusive uniform grid k_min .. k_max.
std::vector<double> k_grid(double k_min, double k_max, int n_points);

/// Transmission over a k grid; records are in grid order regardless of how
/// many worker threads evaluate them.
std::vector<SweepRecord> sweep_array(const BarrierArray& arr, const std::vector<double>& ks,
                                     unsigned threads = 0);

/// The symmetric array described by the request (2 n_per_side + 1 barriers).
BarrierArray request_array(const SweepRequest& req);

std::vector<SweepRecord> run_sweep(const SweepRequest& req);

struct ZoomLevel {
  double scale = 1.0; // accumulated magnification
  double k_lo = 0.0;
  double k_hi = 0.0;
  std::vector<SweepRecord> records;
};

/// Level 0 spans [k_min, k_max]; each further level shrinks the window by
/// the next zoom factor around the anchor (clamped so that every window
/// stays inside its parent). Throws std::range_error when a window would
/// fall below floating-point resolution.
std::vector<ZoomLevel> run_zoom(const SweepRequest& req);

struct RandomComparison {
  double sparse_median_t2 = 0.0;
  std::vector<double> random_median_t2;
  std::vector<std::uint64_t> seeds;
  double span = 0.0;
};

/// Sparse sweep vs. n_realizations sweeps with the same number of
/// barriers placed uniformly at random on [-x_N, x_N]. Realization i uses
/// seed base_seed + i.
RandomComparison compare_random(const SweepRequest& req, int n_realizations, std::uint64_t base_seed);

/// std / mean of abs_t2.
double normalized_fluctuation(const std::vector<SweepRecord>& records);
double median_t2(const std::vector<SweepRecord>& records);

CsvTable sweep_table(const std::vector<SweepRecord>& records);

} // namespace shredder
