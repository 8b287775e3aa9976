#pragma once

#include <cmath>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rapsim/agents.hpp"
#include "rapsim/errors.hpp"
#include "rapsim/grid.hpp"
#include "rapsim/protocol.hpp"
#include "rapsim/radio.hpp"
#include "rapsim/rng.hpp"

namespace rapsim {

// Every generated agent offers this resource type, so request feasibility is
// governed by the demanded head counts alone.
inline const std::string kGenericResource = "assist";

struct ScenarioParams {
  std::string map_file;  // empty: generate the store map below
  int map_width = 28;
  int map_height = 18;
  int aisle_spacing = 6;

  int num_humans = 15;
  int num_robots = 10;
  double radio_range = 10.0;

  double budget = 110.0;
  double initial_offer = 70.0;
  double offer_increment = 10.0;
  double min_offer_lo = 20.0;
  double min_offer_hi = 35.0;
  double sigma = 4.0;
  double busy_prob = 0.1;

  int requests = 5;
  int demand_humans = 3;
  int demand_robots = 1;
  double request_start = 9.0;
  double request_step = 0.25;

  CostWeights weights;
  std::uint64_t seed = 42;
};

inline void validate_params(const ScenarioParams& p) {
  auto fail = [](const std::string& what) { throw ConfigError(what); };
  if (p.map_file.empty()) {
    if (p.map_width < 1 || p.map_height < 1) fail("map dimensions must be >= 1");
    if (p.aisle_spacing < 2) fail("aisle_spacing must be >= 2");
  }
  if (p.num_humans < 0 || p.num_robots < 0) fail("agent counts must be >= 0");
  if (p.radio_range < 0) fail("radio_range must be >= 0");
  if (p.budget < 0) fail("budget must be >= 0");
  if (p.initial_offer < 0 || p.initial_offer > p.budget)
    fail("initial_offer must lie in [0, budget]");
  if (p.offer_increment <= 0) fail("offer_increment must be > 0");
  if (p.min_offer_lo < 0 || p.min_offer_lo > p.min_offer_hi)
    fail("min_offer range must satisfy 0 <= lo <= hi");
  if (p.sigma <= 0) fail("sigma must be > 0");
  if (p.busy_prob < 0 || p.busy_prob > 1) fail("busy_prob must lie in [0, 1]");
  if (p.requests < 1) fail("requests must be >= 1");
  if (p.demand_humans < 0 || p.demand_robots < 0) fail("demand counts must be >= 0");
  if (p.request_start < 0 || p.request_start >= 24)
    fail("request_start must lie in [0, 24)");
  if (p.request_step < 0) fail("request_step must be >= 0");
  if (p.weights.alpha < 0 || p.weights.beta < 0) fail("cost weights must be >= 0");
}

struct Scenario {
  Grid grid{1, 1};
  RadioConfig radio;
  Roster roster;
  std::vector<Request> requests;
  // busy_by_request[k][j]: robot j's busy flag while request k is served;
  // all three methods consume the same draws.
  std::vector<std::vector<bool>> busy_by_request;
  CostWeights weights;
  std::uint64_t seed = 0;
};

// Deterministic function of (params, seed): placements without replacement
// on free cells, then per-human peak times and thresholds, then per-request
// robot busy draws, in that fixed stream order.
inline Scenario generate_scenario(const ScenarioParams& params) {
  validate_params(params);

  Scenario s;
  s.grid = params.map_file.empty()
               ? make_store_map(params.map_width, params.map_height, params.aisle_spacing)
               : Grid::load(params.map_file);
  s.radio.range = params.radio_range;
  s.weights = params.weights;
  s.seed = params.seed;

  Rng rng(params.seed);

  const int agents = params.num_humans + params.num_robots + 1;
  std::vector<Position> cells = s.grid.free_cells();
  if (static_cast<int>(cells.size()) < agents)
    throw GenerationError("generate_scenario: more agents than free cells");
  for (int i = 0; i < agents; ++i) {
    const auto j = i + static_cast<int>(rng.bounded(cells.size() - i));
    std::swap(cells[i], cells[j]);
  }

  s.roster.customer.id = 0;
  s.roster.customer.pos = cells[0];
  s.roster.customer.budget = params.budget;
  s.roster.customer.initial_offer = params.initial_offer;
  s.roster.customer.offer_increment = params.offer_increment;

  for (int i = 0; i < params.num_humans; ++i) {
    HumanAssistant h;
    h.id = 1 + i;
    h.pos = cells[1 + i];
    h.peak_time = rng.uniform(0.0, 24.0);
    h.min_offer = rng.uniform(params.min_offer_lo, params.min_offer_hi);
    h.sigma = params.sigma;
    h.resources.insert(kGenericResource);
    s.roster.humans.push_back(std::move(h));
  }
  for (int i = 0; i < params.num_robots; ++i) {
    Robot r;
    r.id = 1 + params.num_humans + i;
    r.pos = cells[1 + params.num_humans + i];
    r.busy = false;
    r.resources.insert(kGenericResource);
    s.roster.robots.push_back(std::move(r));
  }

  s.busy_by_request.assign(params.requests, std::vector<bool>(params.num_robots, false));
  for (int k = 0; k < params.requests; ++k)
    for (int j = 0; j < params.num_robots; ++j)
      s.busy_by_request[k][j] = rng.bernoulli(params.busy_prob);

  for (int k = 0; k < params.requests; ++k) {
    Request req;
    req.issued_at = std::fmod(params.request_start + k * params.request_step, 24.0);
    for (int d = 0; d < params.demand_humans; ++d)
      req.demands.push_back({kGenericResource, ProviderClass::Human});
    for (int d = 0; d < params.demand_robots; ++d)
      req.demands.push_back({kGenericResource, ProviderClass::Robot});
    s.requests.push_back(std::move(req));
  }
  return s;
}

// Canonical text form; two generations agree iff their dumps agree.
inline void dump_scenario(std::ostream& out, const Scenario& s) {
  out.precision(17);
  out << "seed " << s.seed << "\n";
  out << "radio_range " << s.radio.range << "\n";
  out << "weights " << s.weights.alpha << " " << s.weights.beta << "\n";
  out << "map\n" << s.grid.to_text();
  const Customer& c = s.roster.customer;
  out << "customer " << c.id << " " << c.pos.x << " " << c.pos.y << " " << c.budget
      << " " << c.initial_offer << " " << c.offer_increment << "\n";
  for (const HumanAssistant& h : s.roster.humans) {
    out << "human " << h.id << " " << h.pos.x << " " << h.pos.y << " " << h.min_offer
        << " " << h.peak_time << " " << h.sigma;
    for (const auto& r : h.resources) out << " " << r;
    out << "\n";
  }
  for (const Robot& r : s.roster.robots) {
    out << "robot " << r.id << " " << r.pos.x << " " << r.pos.y;
    for (const auto& res : r.resources) out << " " << res;
    out << "\n";
  }
  for (std::size_t k = 0; k < s.requests.size(); ++k) {
    const Request& req = s.requests[k];
    out << "request " << k << " " << req.issued_at << " h=" << req.human_count()
        << " r=" << req.robot_count() << " busy=";
    for (bool b : s.busy_by_request[k]) out << (b ? '1' : '0');
    out << "\n";
  }
}

inline std::string dump_scenario(const Scenario& s) {
  std::ostringstream out;
  dump_scenario(out, s);
  return out.str();
}

}  // namespace rapsim
