#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "shredder/fft.hpp"
#include "shredder/wavepacket.hpp"

using namespace shredder;

TEST_CASE("unitary dft against the direct sum") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  const std::size_t n = 24;
  cvec x(n);
  for (auto& z : x) z = {g(rng), g(rng)};
  const auto f = dft(x);
  for (std::size_t m = 0; m < n; ++m) {
    std::complex<double> s = 0;
    for (std::size_t j = 0; j < n; ++j) s += x[j] * std::polar(1.0, -2 * M_PI * double(m * j) / double(n));
    CHECK(std::abs(f[m] - s / std::sqrt(double(n))) < 1e-12);
  }
  const auto back = idft(f);
  for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(back[j] - x[j]) < 1e-12);
}

TEST_CASE("gaussian packet normalization and moments") {
  const double k0 = 1.0, sigma = 0.05;
  const auto p = gaussian_packet(k0, sigma, default_grid(k0, sigma, 4096));
  CHECK(p.norm_k() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p.norm_x() == doctest::Approx(1.0).epsilon(1e-10));
  double m1 = 0, m2 = 0;
  for (std::size_t m = 0; m < p.grid.n_samples; ++m) {
    const double w = std::norm(p.amplitudes_k[m]) * p.grid.dk();
    m1 += w * p.k_at(m);
  }
  for (std::size_t m = 0; m < p.grid.n_samples; ++m) {
    const double w = std::norm(p.amplitudes_k[m]) * p.grid.dk();
    m2 += w * (p.k_at(m) - m1) * (p.k_at(m) - m1);
  }
  CHECK(std::abs(m1 - k0) < p.grid.dk());
  CHECK(m2 == doctest::Approx(sigma * sigma).epsilon(0.01));
  // |phi(x)|^2 has std 1 / (2 sigma)
  CHECK(rms_width(p) == doctest::Approx(1.0 / (2 * sigma)).epsilon(1e-6));
  CHECK_THROWS_AS(gaussian_packet(k0, sigma, GridSpec{1024, 0.9, 1.1, 0.0}), std::invalid_argument);
}

TEST_CASE("position-momentum round trip") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  const GridSpec grid{1000, 0.3, 1.7, 12.5};
  cvec k(grid.n_samples);
  for (auto& z : k) z = {g(rng), g(rng)};
  const auto x = momentum_to_position(grid, k);
  const auto back = position_to_momentum(grid, x);
  double err = 0, ref = 0;
  for (std::size_t m = 0; m < k.size(); ++m) {
    err = std::max(err, std::abs(back[m] - k[m]));
    ref = std::max(ref, std::abs(k[m]));
  }
  CHECK(err < 1e-10 * ref);
  CHECK(grid.dx() * grid.dk() == doctest::Approx(2 * M_PI / 1000));
}

TEST_CASE("free transmission is the identity") {
  const auto p = gaussian_packet(1.0, 0.05, default_grid(1.0, 0.05, 4096));
  const auto arr = generate_positions(SparsenessSpec::exponential(), 10, 0.0, true);
  const auto out = transmit_packet(p, arr);
  CHECK(out.transmitted_fraction == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t j = 0; j < p.grid.n_samples; ++j) CHECK(std::abs(out.packet.amplitudes_x[j] - p.amplitudes_x[j]) < 1e-10);
  const auto met = shredding_metrics(p, out.packet);
  CHECK(met.xcorr_peak == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(met.spread_ratio == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(met.spectral_entropy_ratio == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("narrow packet through one barrier transmits |t(k0)|^2") {
  const auto p = gaussian_packet(1.0, 0.05, default_grid(1.0, 0.05, 4096));
  const auto out = transmit_packet(p, BarrierArray{{0.0}, 1.0, true, 0});
  CHECK(out.transmitted_fraction == doctest::Approx(oracle::single_delta_t2(1.0, 1.0)).epsilon(0.01));
  double parseval = 0;
  for (std::size_t m = 0; m < p.grid.n_samples; ++m)
    parseval += oracle::single_delta_t2(1.0, p.k_at(m)) * std::norm(p.amplitudes_k[m]) * p.grid.dk();
  CHECK(std::abs(out.transmitted_fraction - parseval) < 1e-10);
  CHECK(out.packet.norm_x() == doctest::Approx(out.packet.norm_k()).epsilon(1e-10));
}

TEST_CASE("packets reaching k <= 0 are rejected") {
  const auto p = gaussian_packet(0.1, 0.05, GridSpec{2048, -0.4, 0.6, 0.0});
  CHECK_THROWS_AS(transmit_packet(p, BarrierArray{{0.0}, 1.0, true, 0}), std::invalid_argument);
}

TEST_CASE("metrics are shift invariant and bounded") {
  const auto p = gaussian_packet(1.0, 0.05, default_grid(1.0, 0.05, 4096));
  PacketGrid shifted = p;
  std::rotate(shifted.amplitudes_x.begin(), shifted.amplitudes_x.begin() + 300, shifted.amplitudes_x.end());
  const auto m = shredding_metrics(p, shifted);
  CHECK(m.xcorr_peak == doctest::Approx(1.0).epsilon(1e-10));

  PacketGrid zero = p;
  for (auto& z : zero.amplitudes_x) z = 0;
  CHECK_THROWS_AS(shredding_metrics(p, zero), std::invalid_argument);

  const auto other = gaussian_packet(1.0, 0.05, default_grid(1.0, 0.05, 2048));
  CHECK_THROWS_AS(shredding_metrics(p, other), std::invalid_argument);
}
