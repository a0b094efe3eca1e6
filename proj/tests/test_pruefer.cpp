#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "shredder/pruefer.hpp"
#include "shredder/transfer.hpp"

using namespace shredder;
using std::numbers::pi;

namespace {

std::vector<double> square_gaps(int n) {
  const auto arr = generate_positions(SparsenessSpec::power(2.0), n, 1.0, false);
  return gaps(arr);
}

double circular_distance(double a, double b) {
  const double d = std::fmod(std::abs(a - b), 2.0 * pi);
  return std::min(d, 2.0 * pi - d);
}

// sin(theta) cos(vartheta) + k cos(theta) sin(vartheta) = 0 on (0, pi) by bisection
double solve_boundary_phase(double vartheta, double k) {
  auto f = [&](double th) { return std::sin(th) * std::cos(vartheta) + k * std::cos(th) * std::sin(vartheta); };
  double best = 0.0;
  const int n = 20000;
  for (int i = 1; i < n; ++i) {
    double lo = pi * (i - 1) / n + 1e-15, hi = pi * i / n;
    if (f(lo) * f(hi) > 0) continue;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (f(lo) * f(mid) <= 0 ? hi : lo) = mid;
    }
    best = 0.5 * (lo + hi);
  }
  return best;
}

} // namespace

TEST_CASE("phase folding") {
  CHECK(fold_theta(pi) == pi);
  CHECK(fold_theta(0.0) == pi);
  CHECK(fold_theta(-0.5) == doctest::Approx(pi - 0.5));
  CHECK(fold_theta(1.0 + 3 * pi) == doctest::Approx(1.0));
  CHECK(fold_beta(pi) == -pi);
  CHECK(fold_beta(-pi) == -pi);
  CHECK(fold_beta(3.0 * pi + 0.25) == doctest::Approx(-pi + 0.25));
  for (double x = -50; x < 50; x += 0.37) {
    const double t = fold_theta(x), b = fold_beta(x);
    CHECK((t > 0 && t <= pi));
    CHECK((b >= -pi && b < pi));
  }
}

TEST_CASE("initial phase from the boundary condition") {
  CHECK(initial_theta(1.0, 1.0, pi / 2) == doctest::Approx(pi / 2).epsilon(1e-15));
  CHECK(initial_theta(1.0, 1.0, 0.0) == pi);
  const double vartheta = -std::asin(1.0 / std::sqrt(1.25));
  CHECK(vartheta == doctest::Approx(-1.107149).epsilon(1e-6));
  for (double k : {1.0, 0.4, 2.5}) {
    const double expected = solve_boundary_phase(vartheta, k);
    CHECK(initial_theta(1.0, k) == doctest::Approx(expected).epsilon(1e-12));
  }
  // v = 0: Neumann
  CHECK(initial_theta(0.0, 1.3) == doctest::Approx(pi / 2).epsilon(1e-15));
}

TEST_CASE("eggarter step") {
  CHECK(eggarter_step(pi / 4, pi / 2, 1.0) == doctest::Approx(pi / 2).epsilon(1e-15));
  for (double th : {0.3, 1.7, 3.0})
    for (double kd : {0.0, 0.9, 17.3}) CHECK(eggarter_step(th, kd, 0.0) == doctest::Approx(fold_theta(th + kd)));
  CHECK(eggarter_step(pi / 2, pi / 2, 2.0) == pi);
  CHECK(eggarter_step(pi, 0.0, -1.0) == pi);
  // cot relation away from nodes
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double th = pi * (1 - u(rng)), kd = 10 * u(rng), g = 6 * u(rng) - 3;
    const double out = eggarter_step(th, kd, g);
    CHECK((out > 0 && out <= pi));
    CHECK(1.0 / std::tan(out) == doctest::Approx(1.0 / std::tan(th + kd) + g).epsilon(1e-8));
  }
}

TEST_CASE("params") {
  const auto p = make_params(1.0, 1.0, 1.0);
  CHECK(p.mu == 1.5);
  CHECK(p.alpha == doctest::Approx(std::acos(1.0 / std::sqrt(1.25))).epsilon(1e-15));
  CHECK(p.nu == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-15));
  CHECK(make_params(0.0, 2.0, 1.0).mu == 1.0);
  CHECK(make_params(0.0, 2.0, 1.0).alpha == 0.0);
  CHECK(make_params(-0.1, 2.0, 1.0).mu > 1.0);
  CHECK_THROWS_AS(make_params(1.0, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("free orbit has no growth") {
  const auto g = square_gaps(200);
  const auto orbit = iterate(make_params(0.0, 1.0, 0.7), g, 200);
  for (std::size_t n = 0; n < orbit.size(); ++n) {
    CHECK(orbit.log_r2[n] == 0.0);
    CHECK(std::abs(orbit.log_r2_direct[n]) < 1e-12);
    CHECK(orbit.cum_log_R2[n] == 0.0);
  }
  CHECK(growth_exponent(orbit) == 0.0);
}

TEST_CASE("amplitude ratio identity agrees with the direct sine ratio") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const double v = 6 * u(rng) - 3, k = 0.2 + 3 * u(rng);
    const auto p = make_params(v, k, initial_theta(v, k));
    std::vector<double> g(500);
    for (auto& x : g) x = 100 * u(rng);
    const auto orbit = iterate(p, g, g.size());
    const double amp = std::sqrt(p.mu * p.mu - 1);
    for (std::size_t n = 0; n < orbit.size(); ++n) {
      CHECK(std::abs(orbit.log_r2[n] - orbit.log_r2_direct[n]) < 1e-10);
      CHECK(std::abs(orbit.log_r2[n] - std::log(p.mu + amp * std::sin(orbit.betas[n]))) < 1e-12);
      CHECK(orbit.log_r2[n] >= std::log(p.mu - amp) - 1e-12);
      CHECK(orbit.log_r2[n] <= std::log(p.mu + amp) + 1e-12);
      CHECK((orbit.thetas[n] > 0 && orbit.thetas[n] <= pi));
      CHECK((orbit.betas[n] >= -pi && orbit.betas[n] < pi));
    }
  }
}

TEST_CASE("beta recursion reproduces the theta route") {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double v : {1.0, -1.4, 0.3, 2.5}) {
    const double k = 0.3 + 2 * u(rng);
    const auto p = make_params(v, k, initial_theta(v, k));
    const auto g = square_gaps(1000);
    const auto orbit = iterate(p, g, 1000);
    const auto betas = iterate_beta(p, g, 1000);
    REQUIRE(betas.size() == 1000);
    for (std::size_t n = 0; n < 1000; ++n) CHECK(circular_distance(betas[n], orbit.betas[n]) < 1e-9);
  }
}

TEST_CASE("cumulative ln R^2 matches the transfer-matrix solution") {
  for (auto [v, k] : {std::pair{1.0, 1.0}, {0.5, 2.0}, {-1.5, 0.7}, {3.0, 0.25}}) {
    const double theta0 = initial_theta(v, k);
    const auto g = square_gaps(100);
    const auto orbit = iterate(make_params(v, k, theta0), g, 100);
    const auto ref = oracle::transfer_log_R2(v, k, theta0, g, 100);
    for (std::size_t n = 0; n < 100; ++n) CHECK(std::abs(orbit.cum_log_R2[n] - ref[n]) < 1e-8);
  }
}

TEST_CASE("equidistributed growth rate against quadrature") {
  for (double mu : {1.1, 1.5, 2.0, 5.0}) {
    const double amp = std::sqrt(mu * mu - 1);
    const double direct = oracle::periodic_mean([&](double b) { return std::log(mu + amp * std::sin(b)); });
    const double paired =
        0.5 * oracle::periodic_mean([&](double b) { return std::log(mu * mu * std::cos(b) * std::cos(b) + std::sin(b) * std::sin(b)); });
    CHECK(std::abs(direct - equidistributed_growth(mu)) < 1e-10);
    CHECK(std::abs(paired - equidistributed_growth(mu)) < 1e-10);
    // half-period form: integral over [0, pi] equals the full [-pi, pi] integral of ln r^2
    const double half = oracle::gauss_legendre(
        [&](double b) { return std::log(mu * mu * std::cos(b) * std::cos(b) + std::sin(b) * std::sin(b)); }, 0.0, pi);
    CHECK(std::abs(half / (2 * pi) - equidistributed_growth(mu)) < 1e-10);
    CHECK(equidistributed_growth(mu) > 0.0);
  }
  CHECK(equidistributed_growth(1.5) == doctest::Approx(0.223144).epsilon(1e-6));
  CHECK(equidistributed_growth(2.0) == doctest::Approx(0.405465).epsilon(1e-6));
}

TEST_CASE("equidistribution statistics") {
  const int n = 1000;
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = -pi + 2 * pi * (i + 0.5) / n;
  const auto st = equidistribution_stats(grid, 50, 8);
  CHECK(st.ks_statistic <= 1.0 / n + 1e-12);
  CHECK(st.max_weyl() < 1e-10);
  for (auto c : st.histogram) CHECK(c == 20);

  std::vector<double> constant(500, 0.0);
  const auto cs = equidistribution_stats(constant, 10, 4);
  CHECK(cs.ks_statistic == doctest::Approx(0.5));
  for (double w : cs.weyl_magnitudes) CHECK(w == doctest::Approx(1.0));

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-pi, pi);
  std::vector<double> xs(700);
  for (auto& x : xs) x = u(rng);
  const auto rs = equidistribution_stats(xs, 7, 3);
  CHECK(rs.ks_statistic == doctest::Approx(oracle::brute_ks(xs)).epsilon(1e-12));
  std::size_t total = 0;
  for (auto c : rs.histogram) total += c;
  CHECK(total == xs.size());

  CHECK_THROWS_AS(equidistribution_stats(std::vector<double>{pi}, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(equidistribution_stats(std::vector<double>{}, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(equidistribution_stats(xs, 1, 1), std::invalid_argument);
}

TEST_CASE("orbits that pass the uniformity thresholds grow") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto g = square_gaps(5000);
  int checked = 0;
  for (int trial = 0; trial < 12; ++trial) {
    const double v = (u(rng) < 0.5 ? -1 : 1) * (0.3 + 2.5 * u(rng));
    const double k = 0.3 + 2.5 * u(rng);
    const auto orbit = iterate(make_params(v, k, initial_theta(v, k)), g, g.size());
    const auto st = equidistribution_stats(orbit.betas, 50, 8);
    if (st.ks_statistic < 0.05 && st.max_weyl() < 0.05) {
      ++checked;
      CHECK(growth_exponent(orbit) > 0.0);
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("point spectrum diagnostic") {
  SUBCASE("free case sums the gaps") {
    const auto arr = generate_positions(SparsenessSpec::power(2.0), 200, 0.0, false);
    const auto d = point_spectrum_diagnostic(arr, 0.0, 1.0, 200);
    CHECK(std::exp(d.log_bound_sums.back()) == doctest::Approx(arr.positions[199]).epsilon(1e-12));
    CHECK(d.diverging_trend);
  }
  SUBCASE("exponential gaps beat the rate threshold") {
    const auto arr = generate_positions(SparsenessSpec::exponential(), 300, 1.0, false);
    CHECK(1.0 > rate_threshold(1.0, 1.0));
    const auto d = point_spectrum_diagnostic(arr, 1.0, 1.0, 300);
    CHECK(d.diverging_trend);
    CHECK(d.sharp_diverging_trend);
  }
  SUBCASE("square gaps leave the bound inconclusive") {
    const auto arr = generate_positions(SparsenessSpec::power(2.0), 2000, 1.0, false);
    const auto d = point_spectrum_diagnostic(arr, 1.0, 1.0, 2000);
    CHECK_FALSE(d.diverging_trend);
    CHECK(d.bound_slope < 1e-6);
    CHECK(d.log_sharp_sums.back() >= d.log_bound_sums.back());
  }
  SUBCASE("errors") {
    const auto arr = generate_positions(SparsenessSpec::power(2.0), 30, 1.0, false);
    CHECK_THROWS_AS(point_spectrum_diagnostic(arr, 1.0, 1.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(point_spectrum_diagnostic(arr, 1.0, 1.0, 40), std::invalid_argument);
  }
}
