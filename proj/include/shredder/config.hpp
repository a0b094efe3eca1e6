#pragma once

#include <filesystem>
#include <map>
#include <string>

namespace shredder {

/// Oracle-calibrated thresholds. Defaults are the values recorded in
/// docs/calibration.md; a `[calibration]` section of a run config file can
/// override any of them.
struct Calibration {
  // phase equidistribution (v = k = 1, x_n = n^2, 20000 steps)
  double ks_max = 0.05;
  double weyl_max = 0.05;
  int weyl_terms = 8;
  double growth_rel_tol = 0.05;

  // point-spectrum partial-sum trend
  double trend_min_slope = 1e-3;
  double trend_decay_tolerance = 0.9;

  // multi-scale fluctuation of |t|^2 (std / mean) at every zoom level
  double zoom_fluctuation_floor = 0.1;

  // sparse median |t|^2 over random-placement median
  double anderson_factor = 10.0;

  // wave-packet shredding
  double xcorr_peak_max = 0.5;
  double spread_ratio_min = 5.0;
};

/// Flat `key = value` file with `[section]` headers. Lines starting with
/// '#' or ';' are comments. Throws std::runtime_error on malformed lines.
using ConfigSections = std::map<std::string, std::map<std::string, std::string>>;
ConfigSections read_config(const std::filesystem::path& path);

/// Applies the `[calibration]` section; unknown keys are errors.
void apply_calibration(const ConfigSections& cfg, Calibration& cal);

} // namespace shredder
