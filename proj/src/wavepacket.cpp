#include "shredder/wavepacket.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "shredder/parallel.hpp"
#include "shredder/transfer.hpp"

namespace shredder {

using std::numbers::pi;

double GridSpec::dx() const { return 2.0 * pi / (static_cast<double>(n_samples) * dk()); }

double GridSpec::x_lo() const { return x_center - 0.5 * static_cast<double>(n_samples) * dx(); }

GridSpec default_grid(double k0, double sigma, std::size_t n_samples) {
  if (!(sigma > 0.0)) throw std::invalid_argument("packet: sigma must be positive");
  if (n_samples < 2) throw std::invalid_argument("packet: need at least two samples");
  return {n_samples, k0 - 8.0 * sigma, k0 + 8.0 * sigma, 0.0};
}

namespace {

double sum_abs2(const cvec& a) {
  double s = 0.0;
  for (const auto& z : a) s += std::norm(z);
  return s;
}

void check_grid(const GridSpec& g) {
  if (g.n_samples < 2 || !(g.k_hi > g.k_lo)) throw std::invalid_argument("packet: degenerate grid");
}

} // namespace

double PacketGrid::norm_k() const { return sum_abs2(amplitudes_k) * grid.dk(); }
double PacketGrid::norm_x() const { return sum_abs2(amplitudes_x) * grid.dx(); }

cvec momentum_to_position(const GridSpec& grid, const cvec& amplitudes_k) {
  check_grid(grid);
  if (amplitudes_k.size() != grid.n_samples) throw std::invalid_argument("packet: size mismatch");
  const double dk = grid.dk();
  const double dx = grid.dx();
  const double x_lo = grid.x_lo();
  cvec work(grid.n_samples);
  for (std::size_t m = 0; m < grid.n_samples; ++m)
    work[m] = amplitudes_k[m] * std::polar(1.0, static_cast<double>(m) * dk * x_lo);
  cvec out = idft(work);
  const double scale = std::sqrt(dk / dx);
  for (std::size_t j = 0; j < grid.n_samples; ++j)
    out[j] *= scale * std::polar(1.0, grid.k_lo * (x_lo + static_cast<double>(j) * dx));
  return out;
}

cvec position_to_momentum(const GridSpec& grid, const cvec& amplitudes_x) {
  check_grid(grid);
  if (amplitudes_x.size() != grid.n_samples) throw std::invalid_argument("packet: size mismatch");
  const double dk = grid.dk();
  const double dx = grid.dx();
  const double x_lo = grid.x_lo();
  cvec work(grid.n_samples);
  for (std::size_t j = 0; j < grid.n_samples; ++j)
    work[j] = amplitudes_x[j] * std::polar(1.0, -grid.k_lo * (x_lo + static_cast<double>(j) * dx));
  cvec out = dft(work);
  const double scale = std::sqrt(dx / dk);
  for (std::size_t m = 0; m < grid.n_samples; ++m)
    out[m] *= scale * std::polar(1.0, -static_cast<double>(m) * dk * x_lo);
  return out;
}

PacketGrid gaussian_packet(double k0, double sigma, const GridSpec& grid) {
  check_grid(grid);
  if (!(sigma > 0.0)) throw std::invalid_argument("packet: sigma must be positive");
  if (grid.k_lo > k0 - 6.0 * sigma || grid.k_hi < k0 + 6.0 * sigma)
    throw std::invalid_argument("packet: k window must cover k0 +- 6 sigma");

  PacketGrid p;
  p.grid = grid;
  p.amplitudes_k.resize(grid.n_samples);
  for (std::size_t m = 0; m < grid.n_samples; ++m) {
    const double d = p.k_at(m) - k0;
    p.amplitudes_k[m] = std::exp(-d * d / (4.0 * sigma * sigma));
  }
  const double scale = 1.0 / std::sqrt(p.norm_k());
  for (auto& z : p.amplitudes_k) z *= scale;
  p.amplitudes_x = momentum_to_position(grid, p.amplitudes_k);
  return p;
}

TransmittedPacket transmit_packet(const PacketGrid& packet, const BarrierArray& arr, unsigned threads) {
  const std::size_t n = packet.grid.n_samples;
  const double dk = packet.grid.dk();
  const double total = packet.norm_k();
  if (!(total > 0.0)) throw std::invalid_argument("transmit: input packet has zero norm");
  double nonpositive = 0.0;
  for (std::size_t m = 0; m < n; ++m)
    if (packet.k_at(m) <= 0.0) nonpositive += std::norm(packet.amplitudes_k[m]) * dk;
  if (nonpositive >= 1e-8 * total)
    throw std::invalid_argument("transmit: packet has non-negligible weight at k <= 0");

  TransmittedPacket out;
  out.packet.grid = packet.grid;
  out.packet.amplitudes_k.assign(n, 0.0);
  parallel_for(n, threads, [&](std::size_t m) {
    const double k = packet.k_at(m);
    if (k > 0.0) out.packet.amplitudes_k[m] = scattering(arr, k).t * packet.amplitudes_k[m];
  });
  out.packet.amplitudes_x = momentum_to_position(packet.grid, out.packet.amplitudes_k);
  out.transmitted_fraction = out.packet.norm_k() / total;

  const std::size_t edge = std::max<std::size_t>(1, n / 40); // 2.5% on each side
  double edge_power = 0.0;
  for (std::size_t j = 0; j < edge; ++j)
    edge_power += std::norm(out.packet.amplitudes_x[j]) + std::norm(out.packet.amplitudes_x[n - 1 - j]);
  const double out_norm = sum_abs2(out.packet.amplitudes_x);
  out.edge_fraction = out_norm > 0.0 ? edge_power / out_norm : 0.0;
  out.aliasing_warning = out.edge_fraction >= 0.01;
  return out;
}

PacketGrid free_evolve(const PacketGrid& packet, double tau) {
  PacketGrid out = packet;
  for (std::size_t m = 0; m < out.grid.n_samples; ++m) {
    const double k = out.k_at(m);
    out.amplitudes_k[m] *= std::polar(1.0, -k * k * tau);
  }
  out.amplitudes_x = momentum_to_position(out.grid, out.amplitudes_k);
  return out;
}

double rms_width(const PacketGrid& packet) {
  double w = 0.0, m1 = 0.0, m2 = 0.0;
  for (std::size_t j = 0; j < packet.grid.n_samples; ++j) {
    const double p = std::norm(packet.amplitudes_x[j]);
    const double x = packet.x_at(j);
    w += p;
    m1 += p * x;
    m2 += p * x * x;
  }
  if (!(w > 0.0)) throw std::invalid_argument("packet: zero norm");
  m1 /= w;
  return std::sqrt(std::max(0.0, m2 / w - m1 * m1));
}

namespace {

double entropy(const cvec& amps) {
  const double total = sum_abs2(amps);
  double h = 0.0;
  for (const auto& z : amps) {
    const double p = std::norm(z) / total;
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

} // namespace

ShreddingMetrics shredding_metrics(const PacketGrid& input, const PacketGrid& output) {
  const auto& gi = input.grid;
  const auto& go = output.grid;
  if (gi.n_samples != go.n_samples || gi.k_lo != go.k_lo || gi.k_hi != go.k_hi || gi.x_center != go.x_center)
    throw std::invalid_argument("shredding_metrics: packets live on different grids");
  if (!(sum_abs2(output.amplitudes_x) > 0.0)) throw std::invalid_argument("shredding_metrics: zero-norm output");
  if (!(sum_abs2(input.amplitudes_x) > 0.0)) throw std::invalid_argument("shredding_metrics: zero-norm input");

  const std::size_t n = gi.n_samples;
  cvec a(n), b(n);
  double na = 0.0, nb = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    a[j] = std::abs(input.amplitudes_x[j]);
    b[j] = std::abs(output.amplitudes_x[j]);
    na += std::norm(a[j]);
    nb += std::norm(b[j]);
  }
  // circular correlation sum_j a_j b_{j+l} through the unitary transforms
  const cvec fa = dft(a);
  const cvec fb = dft(b);
  cvec prod(n);
  for (std::size_t m = 0; m < n; ++m) prod[m] = std::conj(fa[m]) * fb[m];
  const cvec corr = idft(prod);
  double peak = 0.0;
  for (const auto& c : corr) peak = std::max(peak, c.real());
  peak *= std::sqrt(static_cast<double>(n)) / std::sqrt(na * nb);

  ShreddingMetrics m;
  m.xcorr_peak = std::clamp(peak, 0.0, 1.0);
  m.spread_ratio = rms_width(output) / rms_width(input);
  m.spectral_entropy_ratio = entropy(output.amplitudes_x) / entropy(input.amplitudes_x);
  return m;
}

CsvTable position_table(const PacketGrid& packet) {
  CsvTable t{{"x", "re", "im", "abs2"}, {}};
  t.rows.reserve(packet.grid.n_samples);
  for (std::size_t j = 0; j < packet.grid.n_samples; ++j) {
    const auto z = packet.amplitudes_x[j];
    t.add({packet.x_at(j), z.real(), z.imag(), std::norm(z)});
  }
  return t;
}

CsvTable momentum_table(const PacketGrid& packet) {
  CsvTable t{{"k", "re", "im", "abs2"}, {}};
  t.rows.reserve(packet.grid.n_samples);
  for (std::size_t m = 0; m < packet.grid.n_samples; ++m) {
    const auto z = packet.amplitudes_k[m];
    t.add({packet.k_at(m), z.real(), z.imag(), std::norm(z)});
  }
  return t;
}

} // namespace shredder
