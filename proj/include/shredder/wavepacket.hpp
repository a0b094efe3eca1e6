#pragma once

#include <cstddef>

#include "shredder/barriers.hpp"
#include "shredder/csv.hpp"
#include "shredder/fft.hpp"

namespace shredder {

/// Periodic conjugate grids: k_m = k_lo + m dk, x_j = x_lo + j dx,
/// with dx dk = 2 pi / n.
struct GridSpec {
  std::size_t n_samples = 1u << 14;
  double k_lo = 0.0;
  double k_hi = 0.0; // exclusive: dk = (k_hi - k_lo) / n_samples
  double x_center = 0.0;

  double dk() const { return (k_hi - k_lo) / static_cast<double>(n_samples); }
  double dx() const;
  double x_lo() const;
};

/// k window [k0 - 8 sigma, k0 + 8 sigma) on n samples, x window centred on 0.
GridSpec default_grid(double k0, double sigma, std::size_t n_samples = 1u << 14);

/// Amplitudes in both representations:
///   phi(x_j) = sqrt(dk / dx) e^{i k_lo x_j} n^{-1/2} sum_m [phi(k_m) e^{i m dk x_lo}] e^{2 pi i m j / n}
/// so that sum |phi(k)|^2 dk = sum |phi(x)|^2 dx.
struct PacketGrid {
  GridSpec grid;
  cvec amplitudes_k;
  cvec amplitudes_x;

  double k_at(std::size_t m) const { return grid.k_lo + static_cast<double>(m) * grid.dk(); }
  double x_at(std::size_t j) const { return grid.x_lo() + static_cast<double>(j) * grid.dx(); }
  double norm_k() const;
  double norm_x() const;
};

cvec momentum_to_position(const GridSpec& grid, const cvec& amplitudes_k);
cvec position_to_momentum(const GridSpec& grid, const cvec& amplitudes_x);

/// phi(k) proportional to exp(-(k - k0)^2 / (4 sigma^2)), unit norm.
/// Throws std::invalid_argument if the k window misses k0 +- 6 sigma.
PacketGrid gaussian_packet(double k0, double sigma, const GridSpec& grid);

struct TransmittedPacket {
  PacketGrid packet;
  double transmitted_fraction = 0.0;
  /// more than 1% of the norm sits in the outer 5% of the x window
  bool aliasing_warning = false;
  double edge_fraction = 0.0;
};

/// phi_out(k) = t(k) phi_in(k), the convolution phi_out = t * phi_in taken
/// on the Fourier side. Samples with k <= 0 are dropped; they must carry
/// less than 1e-8 of the norm or std::invalid_argument is thrown.
TransmittedPacket transmit_packet(const PacketGrid& packet, const BarrierArray& arr, unsigned threads = 0);

/// Free evolution phase exp(-i k^2 tau) for visualization.
PacketGrid free_evolve(const PacketGrid& packet, double tau);

struct ShreddingMetrics {
  double xcorr_peak = 0.0;
  double spread_ratio = 0.0;
  double spectral_entropy_ratio = 0.0;
};

/// Shape comparison of |phi_in(x)| and |phi_out(x)| on shared grids:
/// peak circular cross-correlation (normalized), ratio of rms widths of
/// |phi|^2, ratio of Shannon entropies of |phi|^2 / sum |phi|^2.
ShreddingMetrics shredding_metrics(const PacketGrid& input, const PacketGrid& output);

double rms_width(const PacketGrid& packet);

CsvTable position_table(const PacketGrid& packet);
CsvTable momentum_table(const PacketGrid& packet);

} // namespace shredder
