#include <cstdlib>
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "shredder/config.hpp"
#include "shredder/csv.hpp"
#include "shredder/svg.hpp"

using namespace shredder;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "shredder_test_io";
  fs::create_directories(dir);
  return dir / name;
}

} // namespace

TEST_CASE("csv formatting") {
  CsvTable t{{"n", "x"}, {}};
  CHECK(to_csv(t) == "n,x\n");
  t.add({-1, 0.1});
  t.add({2, 1e300});
  CHECK(to_csv(t) == "n,x\n-1,0.10000000000000001\n2,1.0000000000000001e+300\n");
  CHECK_THROWS_AS(t.add({1}), std::invalid_argument);
  t.rows.push_back({3, std::nan("")});
  CHECK_THROWS_AS(to_csv(t), std::invalid_argument);
  t.rows.back() = {3, INFINITY};
  CHECK_THROWS_AS(to_csv(t), std::invalid_argument);
}

TEST_CASE("csv round trip of doubles is exact") {
  for (double x : {M_PI, -1.0 / 3.0, 6.02214076e23, 5e-324}) CHECK(std::strtod(format_real(x).c_str(), nullptr) == x);
}

TEST_CASE("csv files are byte deterministic") {
  CsvTable t{{"k", "v"}, {{0.5, 1.25}, {0.75, -2.0}}};
  const auto p1 = scratch("a.csv"), p2 = scratch("b.csv");
  write_csv(t, p1);
  write_csv(t, p2);
  CHECK(slurp(p1) == slurp(p2));
  CHECK(slurp(p1).find('\r') == std::string::npos);
  CHECK_THROWS_AS(write_csv(t, fs::path("/proc/definitely/not/here.csv")), std::runtime_error);
}

TEST_CASE("svg plots") {
  Series s{"abs_t2", {0, 1, 2, 3}, {0.1, 0.9, 0.4, 0.7}};
  const auto a = render_svg({s}, {PlotStyle::Line, "T", "k", "|t|^2"});
  CHECK(a.find("<polyline") != std::string::npos);
  CHECK(a.find("|t|^2") != std::string::npos);
  CHECK(a == render_svg({s}, {PlotStyle::Line, "T", "k", "|t|^2"}));
  CHECK(render_svg({s}, {PlotStyle::Scatter, "", "Re t", "Im t"}).find("<circle") != std::string::npos);
  Series h{"beta", {-3, -1, 1, 3}, {4, 5, 6}};
  const auto hs = render_svg({h}, {PlotStyle::Histogram, "hist", "beta", "count"});
  CHECK(hs.find("<rect x=") != std::string::npos);
  CHECK(render_svg({Series{"<&>", {1}, {1}}}, {}).find("&lt;&amp;&gt;") != std::string::npos);
  CHECK_THROWS_AS(render_svg({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(render_svg({Series{"x", {1, 2}, {1}}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(render_svg({Series{"x", {}, {}}}, {}), std::invalid_argument);
}

TEST_CASE("config file sections and calibration overrides") {
  const auto p = scratch("run.ini");
  {
    std::ofstream os(p);
    os << "# comment\n[sweep]\nv = 2\nspacing = exp\n\n[calibration]\nks_max = 0.02\nweyl_terms = 4\n";
  }
  const auto cfg = read_config(p);
  CHECK(cfg.at("sweep").at("v") == "2");
  CHECK(cfg.at("sweep").at("spacing") == "exp");
  Calibration cal;
  apply_calibration(cfg, cal);
  CHECK(cal.ks_max == 0.02);
  CHECK(cal.weyl_terms == 4);
  CHECK(cal.weyl_max == 0.05);

  const auto bad = scratch("bad.ini");
  {
    std::ofstream os(bad);
    os << "[calibration]\nunknown = 1\n";
  }
  Calibration c2;
  CHECK_THROWS_AS(apply_calibration(read_config(bad), c2), std::runtime_error);
  {
    std::ofstream os(bad);
    os << "[sweep]\nnot a pair\n";
  }
  CHECK_THROWS_AS(read_config(bad), std::runtime_error);
  {
    std::ofstream os(bad);
    os << "[sweep]\nv = 1\nv = 2\n";
  }
  CHECK_THROWS_AS(read_config(bad), std::runtime_error);
}
