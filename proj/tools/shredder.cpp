#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "shredder/barriers.hpp"
#include "shredder/config.hpp"
#include "shredder/csv.hpp"
#include "shredder/pruefer.hpp"
#include "shredder/svg.hpp"
#include "shredder/sweep.hpp"
#include "shredder/transfer.hpp"
#include "shredder/wavepacket.hpp"

namespace fs = std::filesystem;
using namespace shredder;

namespace {

constexpr const char* kOutDirEnv = "SHREDDER_OUT_DIR";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string spacing;
  double v = 1.0;
  std::string out;
  std::string out_dir;
  bool svg = false;
  unsigned threads = 0;
};

fs::path resolve(const Common& c, const std::string& name) {
  fs::path p(name);
  if (p.is_absolute()) return p;
  fs::path dir;
  if (!c.out_dir.empty())
    dir = c.out_dir;
  else if (const char* env = std::getenv(kOutDirEnv); env && *env)
    dir = env;
  else
    dir = ".";
  return dir / p;
}

fs::path with_suffix(const fs::path& csv, const std::string& suffix) {
  fs::path p = csv;
  p.replace_extension();
  return p.string() + suffix;
}

void say(const std::string& key, double value) { std::cout << key << " = " << format_real(value) << '\n'; }
void say(const std::string& key, const std::string& value) { std::cout << key << " = " << value << '\n'; }

int half_count(int barriers) {
  if (barriers < 1 || barriers % 2 == 0)
    throw UsageError("--barriers: symmetric arrays need an odd count 2N+1 >= 1, got " + std::to_string(barriers));
  return (barriers - 1) / 2;
}

SparsenessSpec spacing_of(const Common& c) {
  try {
    auto spec = parse_spacing(c.spacing);
    validate(spec);
    return spec;
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    throw UsageError(what.rfind("--spacing", 0) == 0 ? what : "--spacing: " + what);
  }
}

void check_k_range(const SweepRequest& req) {
  if (!(std::max(req.k_min, kMinMomentum) < req.k_max))
    throw UsageError("--kmin/--kmax: need kmin < kmax, got " + format_real(req.k_min) + " and " + format_real(req.k_max));
}

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    char* end = nullptr;
    const double x = std::strtod(item.c_str(), &end);
    if (item.empty() || *end != '\0') throw UsageError(flag + ": bad list entry '" + item + "'");
    out.push_back(x);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

void add_common(CLI::App* sub, Common& c, const std::string& spacing, const std::string& out, bool with_v = true) {
  c.spacing = spacing;
  c.out = out;
  sub->add_option("--spacing", c.spacing,
                  "barrier placement: power:beta=B | exp | paper:b=,beta=,c=,a=,gamma= | random:span=S,seed=N")
      ->capture_default_str();
  if (with_v) sub->add_option("--v", c.v, "barrier strength")->capture_default_str();
  sub->add_option("--out", c.out, "output file, relative to the output directory")->capture_default_str();
  sub->add_option("--out-dir", c.out_dir,
                  std::string("output directory (default: $") + kOutDirEnv + " or the working directory)");
  sub->add_flag("--svg", c.svg, "also write SVG plots next to the CSV output");
}

void add_threads(CLI::App* sub, Common& c) {
  sub->add_option("--threads", c.threads, "worker threads, 0 = hardware concurrency; output does not depend on it")
      ->capture_default_str();
}

void add_k_range(CLI::App* sub, SweepRequest& req) {
  sub->add_option("--kmin", req.k_min, "lowest momentum (clamped to 1e-6)")->capture_default_str();
  sub->add_option("--kmax", req.k_max, "highest momentum")->capture_default_str();
  sub->add_option("--npoints", req.n_points, "grid points per window, endpoints included")
      ->capture_default_str()
      ->check(CLI::Range(2, 100000000));
}

void write_sweep_svgs(const std::vector<SweepRecord>& recs, const fs::path& csv, const std::string& title) {
  Series t2{"|t|^2", {}, {}}, traj{"t(k)", {}, {}};
  for (const auto& r : recs) {
    t2.x.push_back(r.k);
    t2.y.push_back(r.abs_t2);
    traj.x.push_back(r.t_re);
    traj.y.push_back(r.t_im);
  }
  emit_svg_plot({t2}, {PlotStyle::Line, title, "k", "|t|^2"}, with_suffix(csv, "_abs_t2.svg"));
  emit_svg_plot({traj}, {PlotStyle::Scatter, title, "Re t", "Im t"}, with_suffix(csv, "_trajectory.svg"));
}

std::string window_name(const std::string& prefix, const ZoomLevel& z) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s_x%.9g_k%.9g_%.9g.csv", prefix.c_str(), z.scale, z.k_lo, z.k_hi);
  return buf;
}

std::vector<std::string> config_args(CLI::App* sub, const ConfigSections& cfg) {
  std::vector<std::string> out;
  const auto it = cfg.find(sub->get_name());
  if (it == cfg.end()) return out;
  for (const auto& [key, value] : it->second) {
    if (key == "config" || key == "help") throw UsageError("config [" + it->first + "]: key '" + key + "' not allowed");
    if (!sub->get_option_no_throw("--" + key))
      throw UsageError("config [" + it->first + "]: unknown key '" + key + "'");
    out.push_back("--" + key + "=" + value);
  }
  return out;
}

void check_sections(const CLI::App& app, const ConfigSections& cfg) {
  for (const auto& [section, kv] : cfg) {
    (void)kv;
    if (section == "calibration") continue;
    if (section.empty()) throw UsageError("config: keys must sit inside a [section]");
    bool known = false;
    for (const auto* s : app.get_subcommands({})) known = known || s->get_name() == section;
    if (!known) throw UsageError("config: unknown section [" + section + "]");
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transmission through sparse delta-barrier arrays: sweeps, phase orbits, diagnostics, wave packets.\n"
               "Exit codes: 0 success, 1 usage or input error, 2 numerical range failure.\n"
               "Relative output paths go to --out-dir, else $SHREDDER_OUT_DIR, else the working directory.\n"
               "Outputs are byte-identical across runs and thread counts for identical inputs.",
               "shredder"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path,
                 "INI file: [subcommand] sections of flag = value, plus an optional [calibration] section; "
                 "command-line flags override file values. Must precede the subcommand.");

  Calibration cal;
  std::function<void()> run;

  // positions
  Common pos_c;
  int pos_barriers = 21;
  bool pos_half = false;
  auto* pos = app.add_subcommand("positions", "barrier positions, CSV n,x");
  add_common(pos, pos_c, "exp", "positions.csv", false);
  pos->add_option("--barriers", pos_barriers, "barrier count: 2N+1 (odd) for symmetric arrays, N with --half-line")
      ->capture_default_str();
  pos->add_flag("--half-line", pos_half, "x_1 .. x_N only; not defined for random spacing");
  pos->callback([&] {
    run = [&] {
      const auto spec = spacing_of(pos_c);
      BarrierArray arr;
      if (pos_half) {
        if (pos_barriers < 1) throw UsageError("--barriers: need at least one barrier");
        if (spec.family == Family::Random)
          throw UsageError("--half-line: not defined for random spacing");
        arr = generate_positions(spec, pos_barriers, pos_c.v, false);
      } else {
        const int n = half_count(pos_barriers);
        arr = generate_positions(spec, n, pos_c.v, spec.family != Family::Random);
      }
      CsvTable t{{"n", "x"}, {}};
      for (std::size_t i = 0; i < arr.size(); ++i)
        t.add({static_cast<double>(arr.first_index + static_cast<int>(i)), arr.positions[i]});
      const auto path = resolve(pos_c, pos_c.out);
      write_csv(t, path);
      if (pos_c.svg) {
        Series s{"x_n", {}, {}};
        for (const auto& row : t.rows) {
          s.x.push_back(row[0]);
          s.y.push_back(row[1]);
        }
        emit_svg_plot({s}, {PlotStyle::Scatter, to_string(spec), "n", "x_n"}, with_suffix(path, ".svg"));
      }
      say("spacing", to_string(spec));
      say("barriers", static_cast<double>(arr.size()));
      say("sparse", validate_sparseness(arr) ? "yes" : "no");
    };
  });

  // sweep
  Common sw_c;
  SweepRequest sw_req;
  int sw_barriers = 11;
  auto* sw = app.add_subcommand("sweep", "|t(k)|^2 over a momentum grid, CSV k,t_re,t_im,abs_t2,opaque");
  add_common(sw, sw_c, "exp", "sweep.csv");
  sw->add_option("--barriers", sw_barriers, "symmetric barrier count 2N+1")->capture_default_str();
  add_k_range(sw, sw_req);
  add_threads(sw, sw_c);
  sw->callback([&] {
    run = [&] {
      check_k_range(sw_req);
      sw_req.spacing = spacing_of(sw_c);
      sw_req.n_per_side = half_count(sw_barriers);
      sw_req.v = sw_c.v;
      sw_req.threads = sw_c.threads;
      const auto recs = run_sweep(sw_req);
      const auto path = resolve(sw_c, sw_c.out);
      write_csv(sweep_table(recs), path);
      if (sw_c.svg) write_sweep_svgs(recs, path, to_string(sw_req.spacing));
      std::size_t opaque = 0;
      for (const auto& r : recs) opaque += r.opaque;
      say("median_abs_t2", median_t2(recs));
      say("normalized_fluctuation", normalized_fluctuation(recs));
      say("opaque_points", static_cast<double>(opaque));
    };
  });

  // zoom
  Common zm_c;
  SweepRequest zm_req;
  int zm_barriers = 21;
  std::string zm_factors = "10,10";
  std::optional<double> zm_anchor;
  auto* zm = app.add_subcommand("zoom", "nested |t|^2 windows; one CSV per level named <prefix>_x<scale>_k<lo>_<hi>.csv");
  add_common(zm, zm_c, "exp", "zoom");
  zm->get_option("--out")->description("file name prefix, relative to the output directory");
  zm->add_option("--barriers", zm_barriers, "symmetric barrier count 2N+1")->capture_default_str();
  add_k_range(zm, zm_req);
  zm->add_option("--zooms", zm_factors, "comma-separated magnification per level")->capture_default_str();
  zm->add_option("--anchor", zm_anchor, "window centre (default: midpoint of the enclosing window)");
  add_threads(zm, zm_c);
  zm->callback([&] {
    run = [&] {
      check_k_range(zm_req);
      zm_req.spacing = spacing_of(zm_c);
      zm_req.n_per_side = half_count(zm_barriers);
      zm_req.v = zm_c.v;
      zm_req.threads = zm_c.threads;
      zm_req.zoom_factors = parse_list(zm_factors, "--zooms");
      zm_req.zoom_anchor = zm_anchor;
      const auto levels = run_zoom(zm_req);
      for (std::size_t j = 0; j < levels.size(); ++j) {
        const auto& z = levels[j];
        const auto path = resolve(zm_c, window_name(zm_c.out, z));
        write_csv(sweep_table(z.records), path);
        if (zm_c.svg) write_sweep_svgs(z.records, path, "x" + format_real(z.scale));
        say("level" + std::to_string(j) + ".window", format_real(z.k_lo) + " " + format_real(z.k_hi));
        say("level" + std::to_string(j) + ".normalized_fluctuation", normalized_fluctuation(z.records));
      }
    };
  });

  // pruefer / histogram
  struct OrbitOpts {
    Common c;
    double k = 1.0;
    int steps = 20000;
    std::optional<double> boundary;
    int bins = 50;
  };
  OrbitOpts pr_o, hi_o;
  auto add_orbit = [&](CLI::App* sub, OrbitOpts& o, const std::string& out) {
    add_common(sub, o.c, "power:beta=2", out);
    sub->add_option("--k", o.k, "momentum")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--steps", o.steps, "number of barriers crossed")->capture_default_str()->check(CLI::Range(1, 1 << 30));
    sub->add_option("--boundary-phase", o.boundary,
                    "vartheta in phi(0) cos(vartheta) + phi'(0) sin(vartheta) = 0 "
                    "(default: even sector, -arcsin (1 + v^2/4)^(-1/2))");
  };
  auto orbit_of = [](const OrbitOpts& o) {
    const auto arr = generate_positions(spacing_of(o.c), o.steps, o.c.v, false);
    const auto p = make_params(o.c.v, o.k, initial_theta(o.c.v, o.k, o.boundary));
    return std::pair{arr, iterate(p, gaps(arr), static_cast<std::size_t>(o.steps))};
  };
  auto say_orbit = [&](const OrbitOpts& o, const PrueferOrbit& orbit) {
    const auto st = equidistribution_stats(orbit.betas, o.bins, cal.weyl_terms);
    const double mu = make_params(o.c.v, o.k, 0.0).mu;
    say("growth_exponent", growth_exponent(orbit));
    say("equidistributed_growth", equidistributed_growth(mu));
    say("ks_statistic", st.ks_statistic);
    say("max_weyl", st.max_weyl());
    return st;
  };

  auto* pr = app.add_subcommand("pruefer", "phase orbit, CSV n,x,theta,beta,log_r2,cum_log_R2");
  add_orbit(pr, pr_o, "orbit.csv");
  pr->callback([&] {
    run = [&] {
      const auto [arr, orbit] = orbit_of(pr_o);
      CsvTable t{{"n", "x", "theta", "beta", "log_r2", "cum_log_R2"}, {}};
      for (std::size_t i = 0; i < orbit.size(); ++i)
        t.add({static_cast<double>(i + 1), arr.positions[i], orbit.thetas[i], orbit.betas[i], orbit.log_r2[i],
               orbit.cum_log_R2[i]});
      const auto path = resolve(pr_o.c, pr_o.c.out);
      write_csv(t, path);
      if (pr_o.c.svg) {
        Series s{"beta_n", {}, orbit.betas};
        for (std::size_t i = 0; i < orbit.size(); ++i) s.x.push_back(static_cast<double>(i + 1));
        emit_svg_plot({s}, {PlotStyle::Scatter, "phase orbit", "n", "beta_n"}, with_suffix(path, ".svg"));
      }
      say_orbit(pr_o, orbit);
    };
  });

  auto* hi = app.add_subcommand("histogram", "histogram of the phase orbit, CSV bin_lo,bin_hi,count");
  add_orbit(hi, hi_o, "histogram.csv");
  hi->add_option("--bins", hi_o.bins, "equal bins over [-pi, pi)")->capture_default_str()->check(CLI::Range(1, 1 << 20));
  hi->callback([&] {
    run = [&] {
      const auto [arr, orbit] = orbit_of(hi_o);
      (void)arr;
      const auto st = say_orbit(hi_o, orbit);
      CsvTable t{{"bin_lo", "bin_hi", "count"}, {}};
      Series s{"count", {}, {}};
      const double w = 2.0 * std::numbers::pi / hi_o.bins;
      for (int b = 0; b < hi_o.bins; ++b) {
        const double lo = -std::numbers::pi + b * w;
        const double up = b + 1 == hi_o.bins ? std::numbers::pi : lo + w;
        t.add({lo, up, static_cast<double>(st.histogram[static_cast<std::size_t>(b)])});
        s.x.push_back(lo);
        s.y.push_back(static_cast<double>(st.histogram[static_cast<std::size_t>(b)]));
      }
      s.x.push_back(std::numbers::pi);
      const auto path = resolve(hi_o.c, hi_o.c.out);
      write_csv(t, path);
      if (hi_o.c.svg) emit_svg_plot({s}, {PlotStyle::Histogram, "beta_n", "beta", "count"}, with_suffix(path, ".svg"));
    };
  });

  // diagnose
  Common dg_c;
  double dg_k = 1.0;
  int dg_terms = 300;
  auto* dg = app.add_subcommand("diagnose",
                                "point-spectrum partial sums, CSV n,gap,log_bound_sum,log_sharp_sum");
  add_common(dg, dg_c, "exp", "diagnose.csv");
  dg->add_option("--k", dg_k, "momentum")->capture_default_str()->check(CLI::PositiveNumber);
  dg->add_option("--terms", dg_terms, "number of partial sums N (>= 20)")->capture_default_str();
  dg->callback([&] {
    run = [&] {
      const auto arr = generate_positions(spacing_of(dg_c), dg_terms, dg_c.v, false);
      const auto d = point_spectrum_diagnostic(arr, dg_c.v, dg_k, dg_terms, cal);
      CsvTable t{{"n", "gap", "log_bound_sum", "log_sharp_sum"}, {}};
      Series sb{"bound", {}, d.log_bound_sums}, ss{"sharp", {}, d.log_sharp_sums};
      for (std::size_t i = 0; i < d.gaps.size(); ++i) {
        t.add({static_cast<double>(i + 1), d.gaps[i], d.log_bound_sums[i], d.log_sharp_sums[i]});
        sb.x.push_back(static_cast<double>(i + 1));
      }
      ss.x = sb.x;
      const auto path = resolve(dg_c, dg_c.out);
      write_csv(t, path);
      if (dg_c.svg) emit_svg_plot({sb, ss}, {PlotStyle::Line, "partial sums", "n", "ln S_n"}, with_suffix(path, ".svg"));
      say("rate_threshold", rate_threshold(dg_c.v, dg_k));
      say("bound_slope", d.bound_slope);
      say("bound_prev_slope", d.bound_prev_slope);
      say("sharp_slope", d.sharp_slope);
      say("sharp_prev_slope", d.sharp_prev_slope);
      say("diverging_trend", d.diverging_trend ? "true" : "false");
      say("sharp_diverging_trend", d.sharp_diverging_trend ? "true" : "false");
    };
  });

  // packet
  Common pk_c;
  double pk_k0 = 1.0, pk_sigma = 0.05;
  int pk_barriers = 21;
  std::size_t pk_samples = 1u << 14;
  auto* pk = app.add_subcommand("packet",
                                "Gaussian packet through the array; writes <prefix>_{in,out}_{x,k}.csv and <prefix>_metrics.csv");
  add_common(pk, pk_c, "exp", "packet");
  pk->get_option("--out")->description("file name prefix, relative to the output directory");
  pk->add_option("--barriers", pk_barriers, "symmetric barrier count 2N+1")->capture_default_str();
  pk->add_option("--k0", pk_k0, "mean momentum")->capture_default_str();
  pk->add_option("--sigma", pk_sigma, "momentum width; the k window is [k0 - 8 sigma, k0 + 8 sigma)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  pk->add_option("--samples", pk_samples, "grid size")->capture_default_str()->check(CLI::Range(2, 1 << 26));
  add_threads(pk, pk_c);
  pk->callback([&] {
    run = [&] {
      const auto arr = generate_positions(spacing_of(pk_c), half_count(pk_barriers), pk_c.v, true);
      const auto in = gaussian_packet(pk_k0, pk_sigma, default_grid(pk_k0, pk_sigma, pk_samples));
      const auto out = transmit_packet(in, arr, pk_c.threads);
      const auto m = shredding_metrics(in, out.packet);
      const auto base = resolve(pk_c, pk_c.out).string();
      write_csv(position_table(in), base + "_in_x.csv");
      write_csv(momentum_table(in), base + "_in_k.csv");
      write_csv(position_table(out.packet), base + "_out_x.csv");
      write_csv(momentum_table(out.packet), base + "_out_k.csv");
      CsvTable mt{{"xcorr_peak", "spread_ratio", "spectral_entropy_ratio", "transmitted_fraction"}, {}};
      mt.add({m.xcorr_peak, m.spread_ratio, m.spectral_entropy_ratio, out.transmitted_fraction});
      write_csv(mt, base + "_metrics.csv");
      if (pk_c.svg) {
        Series si{"in", {}, {}}, so{"out", {}, {}};
        for (std::size_t j = 0; j < in.grid.n_samples; ++j) {
          si.x.push_back(in.x_at(j));
          si.y.push_back(std::norm(in.amplitudes_x[j]));
          so.y.push_back(std::norm(out.packet.amplitudes_x[j]));
        }
        so.x = si.x;
        emit_svg_plot({si, so}, {PlotStyle::Line, "packet", "x", "|phi|^2"}, base + "_x.svg");
      }
      if (out.aliasing_warning)
        std::cerr << "warning: " << format_real(out.edge_fraction)
                  << " of the transmitted norm sits at the window edges; raise --samples\n";
      say("transmitted_fraction", out.transmitted_fraction);
      say("xcorr_peak", m.xcorr_peak);
      say("spread_ratio", m.spread_ratio);
      say("spectral_entropy_ratio", m.spectral_entropy_ratio);
    };
  });

  // compare-random
  Common cr_c;
  SweepRequest cr_req;
  cr_req.k_min = 0.5;
  cr_req.k_max = 1.5;
  int cr_barriers = 21, cr_realizations = 10;
  std::uint64_t cr_seed = 1;
  auto* cr = app.add_subcommand(
      "compare-random",
      "median |t|^2 of the sparse array vs random placements on [-x_N, x_N], "
      "CSV realization,seed,random_median_abs_t2,sparse_median_abs_t2,ratio");
  add_common(cr, cr_c, "exp", "compare_random.csv");
  cr->add_option("--barriers", cr_barriers, "symmetric barrier count 2N+1; random arrays get the same count")
      ->capture_default_str();
  add_k_range(cr, cr_req);
  cr->add_option("--realizations", cr_realizations, "random arrays")->capture_default_str()->check(CLI::Range(1, 1000000));
  cr->add_option("--seed", cr_seed, "realization i uses seed + i")
      ->capture_default_str()
      ->check(CLI::Range(std::uint64_t{0}, std::uint64_t{1} << 52));
  add_threads(cr, cr_c);
  cr->callback([&] {
    run = [&] {
      check_k_range(cr_req);
      cr_req.spacing = spacing_of(cr_c);
      cr_req.n_per_side = half_count(cr_barriers);
      cr_req.v = cr_c.v;
      cr_req.threads = cr_c.threads;
      const auto cmp = compare_random(cr_req, cr_realizations, cr_seed);
      CsvTable t{{"realization", "seed", "random_median_abs_t2", "sparse_median_abs_t2", "ratio"}, {}};
      Series s{"random", {}, cmp.random_median_t2};
      double worst = 0.0;
      for (std::size_t i = 0; i < cmp.seeds.size(); ++i) {
        const double ratio = cmp.sparse_median_t2 / cmp.random_median_t2[i];
        worst = i == 0 ? ratio : std::min(worst, ratio);
        t.add({static_cast<double>(i), static_cast<double>(cmp.seeds[i]), cmp.random_median_t2[i], cmp.sparse_median_t2,
               ratio});
        s.x.push_back(static_cast<double>(i));
      }
      const auto path = resolve(cr_c, cr_c.out);
      write_csv(t, path);
      if (cr_c.svg) {
        Series sp{"sparse", s.x, std::vector<double>(s.x.size(), cmp.sparse_median_t2)};
        emit_svg_plot({s, sp}, {PlotStyle::Scatter, "median |t|^2", "realization", "median |t|^2"},
                      with_suffix(path, ".svg"));
      }
      say("span", cmp.span);
      say("sparse_median_abs_t2", cmp.sparse_median_t2);
      say("min_ratio", worst);
    };
  });

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::size_t at = 0;
    if (at < args.size() && args[at].rfind("--config=", 0) == 0) {
      config_path = args[at].substr(9);
      ++at;
    } else if (at + 1 < args.size() && args[at] == "--config") {
      config_path = args[at + 1];
      at += 2;
    }
    if (!config_path.empty()) {
      const auto cfg = read_config(config_path);
      check_sections(app, cfg);
      apply_calibration(cfg, cal);
      if (at < args.size()) {
        if (auto* sub = app.get_subcommand_no_throw(args[at])) {
          const auto extra = config_args(sub, cfg);
          args.insert(args.begin() + static_cast<std::ptrdiff_t>(at + 1), extra.begin(), extra.end());
        }
      }
      args.erase(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(at));
    }
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const std::range_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    run();
  } catch (const std::range_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
