#include "shredder/config.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace shredder {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
void assign(const std::string& key, const std::string& text, T& out) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw std::runtime_error("config: bad value for calibration." + key + ": '" + text + "'");
  out = value;
}

} // namespace

ConfigSections read_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config '" + path.string() + "'");
  ConfigSections out;
  std::string section;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": unterminated section");
      section = trim(line.substr(1, line.size() - 2));
      out[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": empty key");
    auto [it, fresh] = out[section].emplace(key, value);
    if (!fresh)
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }
  return out;
}

void apply_calibration(const ConfigSections& cfg, Calibration& cal) {
  auto sec = cfg.find("calibration");
  if (sec == cfg.end()) return;
  for (const auto& [key, value] : sec->second) {
    if (key == "ks_max") assign(key, value, cal.ks_max);
    else if (key == "weyl_max") assign(key, value, cal.weyl_max);
    else if (key == "weyl_terms") assign(key, value, cal.weyl_terms);
    else if (key == "growth_rel_tol") assign(key, value, cal.growth_rel_tol);
    else if (key == "trend_min_slope") assign(key, value, cal.trend_min_slope);
    else if (key == "trend_decay_tolerance") assign(key, value, cal.trend_decay_tolerance);
    else if (key == "zoom_fluctuation_floor") assign(key, value, cal.zoom_fluctuation_floor);
    else if (key == "anderson_factor") assign(key, value, cal.anderson_factor);
    else if (key == "xcorr_peak_max") assign(key, value, cal.xcorr_peak_max);
    else if (key == "spread_ratio_min") assign(key, value, cal.spread_ratio_min);
    else throw std::runtime_error("config: unknown calibration key '" + key + "'");
  }
}

} // namespace shredder
