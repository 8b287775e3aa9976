#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rapsim/errors.hpp"
#include "rapsim/experiment.hpp"
#include "rapsim/scenario.hpp"

namespace rapsim {

// Full experiment setup: scenario parameters plus sweep controls.
struct RunConfig {
  ScenarioParams params;
  int repetitions = 20;
  // Total agent counts for the sweep grid; empty means a single point at
  // (num_humans, num_robots). Each total splits in the base human:robot ratio.
  std::vector<int> sweep_agents;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

inline double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    throw ConfigError("config: bad numeric value for " + key + ": '" + value + "'");
  }
  if (used != value.size())
    throw ConfigError("config: trailing junk in value for " + key + ": '" + value + "'");
  return v;
}

inline long long parse_int(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(value, &used);
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer value for " + key + ": '" + value + "'");
  }
  if (used != value.size())
    throw ConfigError("config: trailing junk in value for " + key + ": '" + value + "'");
  return v;
}

inline std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(value, &used);
  } catch (const std::exception&) {
    throw ConfigError("config: bad seed value for " + key + ": '" + value + "'");
  }
  if (used != value.size())
    throw ConfigError("config: trailing junk in value for " + key + ": '" + value + "'");
  return v;
}

inline std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
  std::vector<int> out;
  std::stringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError("config: empty list item for " + key);
    out.push_back(static_cast<int>(parse_int(key, item)));
  }
  if (out.empty()) throw ConfigError("config: empty list for " + key);
  return out;
}

}  // namespace detail

// `key = value` lines; '#' starts a comment; later keys win. Unknown keys
// are configuration errors.
inline RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(line_no) + " is not 'key = value'");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config: line " + std::to_string(line_no) + " has empty key or value");

    ScenarioParams& p = cfg.params;
    if (key == "map_file") p.map_file = value;
    else if (key == "map_width") p.map_width = static_cast<int>(detail::parse_int(key, value));
    else if (key == "map_height") p.map_height = static_cast<int>(detail::parse_int(key, value));
    else if (key == "aisle_spacing") p.aisle_spacing = static_cast<int>(detail::parse_int(key, value));
    else if (key == "num_humans") p.num_humans = static_cast<int>(detail::parse_int(key, value));
    else if (key == "num_robots") p.num_robots = static_cast<int>(detail::parse_int(key, value));
    else if (key == "radio_range") p.radio_range = detail::parse_double(key, value);
    else if (key == "budget") p.budget = detail::parse_double(key, value);
    else if (key == "initial_offer") p.initial_offer = detail::parse_double(key, value);
    else if (key == "offer_increment") p.offer_increment = detail::parse_double(key, value);
    else if (key == "min_offer_lo") p.min_offer_lo = detail::parse_double(key, value);
    else if (key == "min_offer_hi") p.min_offer_hi = detail::parse_double(key, value);
    else if (key == "sigma") p.sigma = detail::parse_double(key, value);
    else if (key == "busy_prob") p.busy_prob = detail::parse_double(key, value);
    else if (key == "requests") p.requests = static_cast<int>(detail::parse_int(key, value));
    else if (key == "demand_humans") p.demand_humans = static_cast<int>(detail::parse_int(key, value));
    else if (key == "demand_robots") p.demand_robots = static_cast<int>(detail::parse_int(key, value));
    else if (key == "request_start") p.request_start = detail::parse_double(key, value);
    else if (key == "request_step") p.request_step = detail::parse_double(key, value);
    else if (key == "alpha") p.weights.alpha = detail::parse_double(key, value);
    else if (key == "beta") p.weights.beta = detail::parse_double(key, value);
    else if (key == "seed") p.seed = detail::parse_u64(key, value);
    else if (key == "repetitions") cfg.repetitions = static_cast<int>(detail::parse_int(key, value));
    else if (key == "sweep_agents") cfg.sweep_agents = detail::parse_int_list(key, value);
    else throw ConfigError("config: unknown key '" + key + "'");
  }
  validate_params(cfg.params);
  if (cfg.repetitions < 2) throw ConfigError("config: repetitions must be >= 2");
  return cfg;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open file: " + path);
  return parse_config(in);
}

inline std::string sweep_point_label(int humans, int robots) {
  return "M=" + std::to_string(humans) + ",N=" + std::to_string(robots);
}

// Sweep grid from a config: either the single configured point or one point
// per total in sweep_agents, splitting each total in the base ratio.
inline std::vector<SweepPoint> sweep_points(const RunConfig& cfg) {
  std::vector<SweepPoint> points;
  const ScenarioParams& base = cfg.params;
  if (cfg.sweep_agents.empty()) {
    points.push_back({sweep_point_label(base.num_humans, base.num_robots), base});
    return points;
  }
  const int base_total = base.num_humans + base.num_robots;
  if (base_total <= 0)
    throw ConfigError("config: sweep_agents needs num_humans + num_robots > 0 for the split ratio");
  for (int total : cfg.sweep_agents) {
    if (total < 0) throw ConfigError("config: sweep_agents entries must be >= 0");
    ScenarioParams p = base;
    p.num_humans = (total * base.num_humans + base_total / 2) / base_total;
    p.num_robots = total - p.num_humans;
    points.push_back({sweep_point_label(p.num_humans, p.num_robots), p});
  }
  return points;
}

}  // namespace rapsim
