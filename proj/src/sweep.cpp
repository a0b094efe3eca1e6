#include "shredder/sweep.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <stdexcept>

#include "shredder/parallel.hpp"
#include "shredder/transfer.hpp"

namespace shredder {

void validate(const SweepRequest& req) {
  validate(req.spacing);
  if (req.n_per_side < 0) throw std::invalid_argument("sweep: barrier count must be non-negative");
  if (req.n_points < 2) throw std::invalid_argument("sweep: n_points must be at least 2");
  if (!std::isfinite(req.k_min) || !std::isfinite(req.k_max))
    throw std::invalid_argument("sweep: k range must be finite");
  if (!(std::max(req.k_min, kMinMomentum) < req.k_max))
    throw std::invalid_argument("sweep: k_min must be below k_max");
  for (double z : req.zoom_factors)
    if (!(z > 1.0) || !std::isfinite(z)) throw std::invalid_argument("zoom: factors must exceed 1");
}

std::vector<double> k_grid(double k_min, double k_max, int n_points) {
  if (n_points < 2) throw std::invalid_argument("k_grid: n_points must be at least 2");
  std::vector<double> ks(static_cast<std::size_t>(n_points));
  const double step = (k_max - k_min) / (n_points - 1);
  for (int i = 0; i < n_points; ++i) ks[static_cast<std::size_t>(i)] = k_min + i * step;
  ks.back() = k_max;
  return ks;
}

std::vector<SweepRecord> sweep_array(const BarrierArray& arr, const std::vector<double>& ks,
                                     unsigned threads) {
  std::vector<SweepRecord> out(ks.size());
  parallel_for(ks.size(), threads, [&](std::size_t i) {
    const auto s = scattering(arr, ks[i]);
    auto& rec = out[i];
    rec.k = ks[i];
    rec.t_re = s.t.real();
    rec.t_im = s.t.imag();
    rec.abs_t2 = std::min(1.0, rec.t_re * rec.t_re + rec.t_im * rec.t_im);
    rec.opaque = s.opaque;
  });
  return out;
}

BarrierArray request_array(const SweepRequest& req) {
  return generate_positions(req.spacing, req.n_per_side, req.v, true);
}

std::vector<SweepRecord> run_sweep(const SweepRequest& req) {
  validate(req);
  const auto arr = request_array(req);
  return sweep_array(arr, k_grid(std::max(req.k_min, kMinMomentum), req.k_max, req.n_points), req.threads);
}

std::vector<ZoomLevel> run_zoom(const SweepRequest& req) {
  validate(req);
  if (req.zoom_factors.empty()) throw std::invalid_argument("zoom: need at least one zoom factor");
  const auto arr = request_array(req);

  std::vector<ZoomLevel> levels;
  double lo = std::max(req.k_min, kMinMomentum);
  double hi = req.k_max;
  double scale = 1.0;
  for (std::size_t j = 0; j <= req.zoom_factors.size(); ++j) {
    if (j > 0) {
      const double width = (hi - lo) / req.zoom_factors[j - 1];
      double center = req.zoom_anchor.value_or(0.5 * (lo + hi));
      center = std::clamp(center, lo + 0.5 * width, hi - 0.5 * width);
      if (width < 64.0 * DBL_EPSILON * center)
        throw std::range_error("zoom: window narrower than floating-point resolution");
      lo = center - 0.5 * width;
      hi = center + 0.5 * width;
      scale *= req.zoom_factors[j - 1];
    }
    levels.push_back({scale, lo, hi, sweep_array(arr, k_grid(lo, hi, req.n_points), req.threads)});
  }
  return levels;
}

RandomComparison compare_random(const SweepRequest& req, int n_realizations, std::uint64_t base_seed) {
  validate(req);
  if (req.spacing.family == Family::Random)
    throw std::invalid_argument("compare-random: the reference array must not be random");
  if (n_realizations < 1) throw std::invalid_argument("compare-random: need at least one realization");

  const auto sparse = request_array(req);
  const auto ks = k_grid(std::max(req.k_min, kMinMomentum), req.k_max, req.n_points);

  RandomComparison cmp;
  cmp.span = sparse.empty() ? 0.0 : sparse.positions.back();
  cmp.sparse_median_t2 = median_t2(sweep_array(sparse, ks, req.threads));
  if (!(cmp.span > 0.0)) throw std::invalid_argument("compare-random: reference array has zero span");
  for (int i = 0; i < n_realizations; ++i) {
    const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(i);
    const auto arr = generate_positions(SparsenessSpec::random(cmp.span, seed), req.n_per_side, req.v, false);
    cmp.seeds.push_back(seed);
    cmp.random_median_t2.push_back(median_t2(sweep_array(arr, ks, req.threads)));
  }
  return cmp;
}

double normalized_fluctuation(const std::vector<SweepRecord>& records) {
  if (records.empty()) throw std::invalid_argument("normalized_fluctuation: no records");
  double mean = 0.0;
  for (const auto& r : records) mean += r.abs_t2;
  mean /= static_cast<double>(records.size());
  double var = 0.0;
  for (const auto& r : records) var += (r.abs_t2 - mean) * (r.abs_t2 - mean);
  var /= static_cast<double>(records.size());
  return std::sqrt(var) / mean;
}

double median_t2(const std::vector<SweepRecord>& records) {
  if (records.empty()) throw std::invalid_argument("median_t2: no records");
  std::vector<double> v;
  v.reserve(records.size());
  for (const auto& r : records) v.push_back(r.abs_t2);
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

CsvTable sweep_table(const std::vector<SweepRecord>& records) {
  CsvTable t{{"k", "t_re", "t_im", "abs_t2", "opaque"}, {}};
  t.rows.reserve(records.size());
  for (const auto& r : records) t.add({r.k, r.t_re, r.t_im, r.abs_t2, r.opaque ? 1.0 : 0.0});
  return t;
}

} // namespace shredder
