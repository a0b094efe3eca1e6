#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace shredder {

enum class Family { PaperCombined, PurePower, PureExponential, Random };

/// Parameters of a barrier placement rule.
///
///   PaperCombined    x_n = b n^beta + c exp(a n^gamma)
///   PurePower        x_n = n^beta
///   PureExponential  x_n = e^n
///   Random           uniform on [-span, span], seeded SplitMix64
///
/// PurePower accepts beta = 1 as the evenly spaced (periodic) baseline.
struct SparsenessSpec {
  Family family = Family::PurePower;
  double b = 1.0;
  double beta = 2.0;
  double c = 1.0;
  double a = 1.0;
  double gamma = 1.0;
  double span = 100.0;
  std::uint64_t seed = 0;
  bool has_seed = false;

  static SparsenessSpec power(double beta);
  static SparsenessSpec exponential();
  static SparsenessSpec combined(double b, double beta, double c, double a, double gamma);
  static SparsenessSpec random(double span, std::uint64_t seed);
};

/// Throws std::invalid_argument naming the offending parameter.
void validate(const SparsenessSpec& spec);

struct BarrierArray {
  std::vector<double> positions; // strictly increasing
  double strength = 0.0;         // common coupling v
  bool symmetric = false;
  int first_index = 1;           // signed index n of positions[0]

  std::size_t size() const { return positions.size(); }
  bool empty() const { return positions.empty(); }
};

/// Builds the barrier array for a placement rule.
///
/// symmetric = true yields 2 n_per_side + 1 positions x_{-n} = -x_n with
/// x_0 = 0. symmetric = false yields the half-line array x_1 .. x_n (for
/// Random: 2 n_per_side + 1 unconstrained draws).
///
/// Throws std::invalid_argument for parameter domain violations and
/// std::range_error when positions overflow double precision (e.g.
/// PureExponential beyond n = 700).
BarrierArray generate_positions(const SparsenessSpec& spec, int n_per_side, double v,
                                bool symmetric);

/// Positive half-axis gaps Delta_n = x_n - x_{n-1}, measured from the origin.
std::vector<double> gaps(const BarrierArray& arr);

/// True iff the gaps grow strictly outward on both half-axes.
bool validate_sparseness(const BarrierArray& arr);

/// Parses the compact spacing literal used on the command line:
///   power:beta=2 | exp | paper:b=1,beta=2,c=1,a=1,gamma=1.5 | random:span=100,seed=7
SparsenessSpec parse_spacing(std::string_view text);
std::string to_string(const SparsenessSpec& spec);

} // namespace shredder
