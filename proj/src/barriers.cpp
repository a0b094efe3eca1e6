#include "shredder/barriers.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "shredder/csv.hpp"
#include "shredder/rng.hpp"

namespace shredder {

SparsenessSpec SparsenessSpec::power(double beta) {
  SparsenessSpec s;
  s.family = Family::PurePower;
  s.beta = beta;
  return s;
}

SparsenessSpec SparsenessSpec::exponential() {
  SparsenessSpec s;
  s.family = Family::PureExponential;
  return s;
}

SparsenessSpec SparsenessSpec::combined(double b, double beta, double c, double a,
                                        double gamma) {
  SparsenessSpec s;
  s.family = Family::PaperCombined;
  s.b = b;
  s.beta = beta;
  s.c = c;
  s.a = a;
  s.gamma = gamma;
  return s;
}

SparsenessSpec SparsenessSpec::random(double span, std::uint64_t seed) {
  SparsenessSpec s;
  s.family = Family::Random;
  s.span = span;
  s.seed = seed;
  s.has_seed = true;
  return s;
}

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

double half_line_position(const SparsenessSpec& spec, int n) {
  const double dn = n;
  switch (spec.family) {
  case Family::PaperCombined:
    return spec.b * std::pow(dn, spec.beta) + spec.c * std::exp(spec.a * std::pow(dn, spec.gamma));
  case Family::PurePower:
    return std::pow(dn, spec.beta);
  case Family::PureExponential:
    return std::exp(dn);
  case Family::Random:
    break;
  }
  throw std::logic_error("half_line_position: random family has no closed form");
}

std::vector<double> random_draws(const SparsenessSpec& spec, std::size_t count, bool positive_only) {
  SplitMix64 rng(spec.seed);
  std::set<double> drawn;
  while (drawn.size() < count) {
    const double u = rng.uniform();
    double x = positive_only ? spec.span * (1.0 - u) : spec.span * (2.0 * u - 1.0);
    if (positive_only && x == 0.0) continue;
    drawn.insert(x); // colliding draws are simply redrawn
  }
  return {drawn.begin(), drawn.end()};
}

bool strictly_increasing_gaps(std::vector<double> radii) {
  // radii sorted ascending, measured from the origin
  if (radii.empty() || radii.front() != 0.0) radii.insert(radii.begin(), 0.0);
  double prev = -1.0;
  for (std::size_t i = 1; i < radii.size(); ++i) {
    const double gap = radii[i] - radii[i - 1];
    if (!(gap > prev)) return false;
    prev = gap;
  }
  return true;
}

} // namespace

void validate(const SparsenessSpec& spec) {
  switch (spec.family) {
  case Family::PaperCombined:
    require(spec.a > 0.0, "a must be positive");
    require(spec.b > 0.0, "b must be positive");
    require(spec.c >= 0.0, "c must be non-negative");
    require(spec.beta > 1.0, "beta must exceed 1");
    require(spec.gamma >= 1.0, "gamma must be at least 1");
    break;
  case Family::PurePower:
    require(spec.beta >= 1.0, "beta must be at least 1");
    break;
  case Family::PureExponential:
    break;
  case Family::Random:
    require(spec.span > 0.0, "span must be positive");
    require(spec.has_seed, "random spacing requires an explicit seed");
    break;
  }
  require(std::isfinite(spec.a) && std::isfinite(spec.b) && std::isfinite(spec.c) &&
              std::isfinite(spec.beta) && std::isfinite(spec.gamma) && std::isfinite(spec.span),
          "spacing parameters must be finite");
}

BarrierArray generate_positions(const SparsenessSpec& spec, int n_per_side, double v,
                                bool symmetric) {
  validate(spec);
  require(n_per_side >= 0, "n_per_side must be non-negative");
  require(std::isfinite(v), "v must be finite");

  BarrierArray arr;
  arr.strength = v;
  arr.symmetric = symmetric;

  const auto n = static_cast<std::size_t>(n_per_side);
  std::vector<double> half;
  if (spec.family == Family::Random) {
    if (!symmetric) {
      arr.positions = random_draws(spec, 2 * n + 1, false);
      arr.first_index = -n_per_side;
      return arr;
    }
    half = random_draws(spec, n, true);
  } else {
    if (spec.family == Family::PureExponential && n_per_side > 700)
      throw std::range_error("exponential spacing overflows beyond 700 barriers per side");
    half.reserve(n);
    for (int i = 1; i <= n_per_side; ++i) {
      const double x = half_line_position(spec, i);
      if (!std::isfinite(x)) throw std::range_error("barrier position overflows at n = " + std::to_string(i));
      half.push_back(x);
    }
    if (spec.family == Family::PaperCombined && !strictly_increasing_gaps(half))
      throw std::invalid_argument("paper spacing parameters do not give increasing gaps");
  }

  if (symmetric) {
    arr.positions.reserve(2 * n + 1);
    for (auto it = half.rbegin(); it != half.rend(); ++it) arr.positions.push_back(-*it);
    arr.positions.push_back(0.0);
    arr.positions.insert(arr.positions.end(), half.begin(), half.end());
    arr.first_index = -n_per_side;
  } else {
    arr.positions = std::move(half);
    arr.first_index = 1;
  }
  return arr;
}

std::vector<double> gaps(const BarrierArray& arr) {
  if (arr.size() < 2) throw std::invalid_argument("gaps: need at least two positions");
  auto first = std::lower_bound(arr.positions.begin(), arr.positions.end(), 0.0);
  std::vector<double> out;
  double prev = 0.0;
  for (auto it = first; it != arr.positions.end(); ++it) {
    if (it == first && *it == 0.0) continue;
    out.push_back(*it - prev);
    prev = *it;
  }
  return out;
}

bool validate_sparseness(const BarrierArray& arr) {
  std::vector<double> right;
  std::vector<double> left;
  for (double x : arr.positions) {
    if (x >= 0.0) right.push_back(x);
    if (x <= 0.0) left.push_back(-x);
  }
  std::reverse(left.begin(), left.end());
  return strictly_increasing_gaps(right) && strictly_increasing_gaps(left);
}

namespace {

double parse_number(std::string_view key, std::string_view text) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value))
    throw std::invalid_argument("--spacing: bad value for " + std::string(key) + ": '" +
                                std::string(text) + "'");
  return value;
}

std::map<std::string, std::string, std::less<>> parse_keys(std::string_view body) {
  std::map<std::string, std::string, std::less<>> kv;
  while (!body.empty()) {
    const auto comma = body.find(',');
    const auto item = body.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0)
      throw std::invalid_argument("--spacing: expected key=value, got '" + std::string(item) + "'");
    kv.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return kv;
}

} // namespace

SparsenessSpec parse_spacing(std::string_view text) {
  const auto colon = text.find(':');
  const auto name = text.substr(0, colon);
  const auto body = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  auto kv = parse_keys(body);

  SparsenessSpec spec;
  auto take = [&](std::string_view key, double& field) {
    if (auto it = kv.find(key); it != kv.end()) {
      field = parse_number(key, it->second);
      kv.erase(it);
    }
  };

  if (name == "power") {
    spec.family = Family::PurePower;
    take("beta", spec.beta);
  } else if (name == "exp") {
    spec.family = Family::PureExponential;
  } else if (name == "paper") {
    spec.family = Family::PaperCombined;
    take("b", spec.b);
    take("beta", spec.beta);
    take("c", spec.c);
    take("a", spec.a);
    take("gamma", spec.gamma);
  } else if (name == "random") {
    spec.family = Family::Random;
    take("span", spec.span);
    if (auto it = kv.find("seed"); it != kv.end()) {
      const auto& s = it->second;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), spec.seed);
      if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::invalid_argument("--spacing: bad value for seed: '" + s + "'");
      spec.has_seed = true;
      kv.erase(it);
    }
  } else {
    throw std::invalid_argument("--spacing: unknown family '" + std::string(name) + "'");
  }
  if (!kv.empty())
    throw std::invalid_argument("--spacing: unknown key '" + kv.begin()->first + "' for " + std::string(name));
  validate(spec);
  return spec;
}

std::string to_string(const SparsenessSpec& spec) {
  switch (spec.family) {
  case Family::PurePower:
    return "power:beta=" + format_real(spec.beta);
  case Family::PureExponential:
    return "exp";
  case Family::PaperCombined:
    return "paper:b=" + format_real(spec.b) + ",beta=" + format_real(spec.beta) +
           ",c=" + format_real(spec.c) + ",a=" + format_real(spec.a) +
           ",gamma=" + format_real(spec.gamma);
  case Family::Random:
    return "random:span=" + format_real(spec.span) + ",seed=" + std::to_string(spec.seed);
  }
  return {};
}

} // namespace shredder
