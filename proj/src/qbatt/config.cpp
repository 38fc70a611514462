// config.cpp — flat key = value scenario configuration.

#include "qbatt/config.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "qbatt/errors.hpp"

namespace qbatt {

namespace {

constexpr std::array kKnownKeys = {
    "scenario",         "n_levels_top",  "energy_spacing", "n_atoms",
    "polar_angle",      "azimuthal_angle", "coherence_factor", "tau",
    "steps",            "k_tau_budget",  "record_stride",  "initial_level",
    "theta_min",        "theta_max",     "theta_count",    "tau_min",
    "tau_max",          "tau_count",     "na_min",         "na_max",
    "output_path",      "numeric_tolerance", "threads",
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

bool config::known_key(const std::string& key) {
  for (const char* k : kKnownKeys)
    if (key == k) return true;
  return false;
}

config config::from_string(const std::string& text) {
  config c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(status::invalid_argument,
           "config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      fail(status::invalid_argument,
           "config line " + std::to_string(lineno) + ": empty key or value");
    if (!known_key(key))
      fail(status::unknown_key, "unknown config key '" + key + "'");
    if (c.entries_.count(key))
      fail(status::invalid_argument, "duplicate config key '" + key + "'");
    c.entries_[key] = value;
  }
  return c;
}

config config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(status::io, "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_string(buf.str());
}

bool config::has(const std::string& key) const {
  return entries_.count(key) != 0;
}

void config::set(const std::string& key, const std::string& value) {
  if (!known_key(key)) fail(status::unknown_key, "unknown config key '" + key + "'");
  if (trim(value).empty())
    fail(status::invalid_argument, "empty value for config key '" + key + "'");
  entries_[key] = trim(value);
}

std::string config::get_string(const std::string& key,
                               const std::string& fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second;
}

double config::get_double(const std::string& key, double fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size())
      fail(status::invalid_argument,
           "config key '" + key + "': trailing characters in number");
    return v;
  } catch (const error&) {
    throw;
  } catch (const std::exception&) {
    fail(status::invalid_argument,
         "config key '" + key + "': not a number: '" + it->second + "'");
  }
}

std::int64_t config::get_int(const std::string& key,
                             std::int64_t fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  std::int64_t v = 0;
  const char* first = it->second.data();
  const char* last = first + it->second.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last)
    fail(status::invalid_argument,
         "config key '" + key + "': not an integer: '" + it->second + "'");
  return v;
}

}  // namespace qbatt
