#pragma once

// Shared fixtures for the unit and acceptance suites: tiny roster builders,
// independent shortest-path oracles, and a random-instance generator for the
// allocator cross-checks.

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "rapsim/agents.hpp"
#include "rapsim/grid.hpp"
#include "rapsim/radio.hpp"
#include "rapsim/rng.hpp"
#include "rapsim/scenario.hpp"

namespace support {

using namespace rapsim;

inline constexpr int kInf = std::numeric_limits<int>::max() / 4;

inline HumanAssistant make_human(AgentId id, Position pos, double min_offer,
                                 double peak = 12.0, double sigma = 2.0) {
  HumanAssistant h;
  h.id = id;
  h.pos = pos;
  h.min_offer = min_offer;
  h.peak_time = peak;
  h.sigma = sigma;
  h.resources.insert(kGenericResource);
  return h;
}

inline Robot make_robot(AgentId id, Position pos, bool busy = false) {
  Robot r;
  r.id = id;
  r.pos = pos;
  r.busy = busy;
  r.resources.insert(kGenericResource);
  return r;
}

inline Customer make_customer(Position pos, double budget, double initial_offer,
                              double increment) {
  Customer c;
  c.id = 0;
  c.pos = pos;
  c.budget = budget;
  c.initial_offer = initial_offer;
  c.offer_increment = increment;
  return c;
}

inline Demand human_demand() { return {kGenericResource, ProviderClass::Human}; }
inline Demand robot_demand() { return {kGenericResource, ProviderClass::Robot}; }

inline Request make_request(int humans, int robots, double issued_at = 12.0) {
  Request req;
  req.issued_at = issued_at;
  for (int i = 0; i < humans; ++i) req.demands.push_back(human_demand());
  for (int i = 0; i < robots; ++i) req.demands.push_back(robot_demand());
  return req;
}

// Floyd-Warshall over free cells: an all-pairs oracle that shares no code
// with Grid::distance_field.
struct AllPairsOracle {
  std::vector<Position> cells;
  std::vector<int> cell_of;           // grid index -> oracle index, -1 for walls
  std::vector<std::vector<int>> dist;  // kInf where unreachable

  explicit AllPairsOracle(const Grid& g) {
    cell_of.assign(static_cast<std::size_t>(g.width()) * g.height(), -1);
    for (int y = 0; y < g.height(); ++y)
      for (int x = 0; x < g.width(); ++x)
        if (g.at({x, y}) == Cell::Free) {
          cell_of[g.index({x, y})] = static_cast<int>(cells.size());
          cells.push_back({x, y});
        }
    const int n = static_cast<int>(cells.size());
    dist.assign(n, std::vector<int>(n, kInf));
    for (int i = 0; i < n; ++i) dist[i][i] = 0;
    for (int i = 0; i < n; ++i) {
      const Position p = cells[i];
      const Position steps[2] = {{p.x + 1, p.y}, {p.x, p.y + 1}};
      for (const Position& q : steps) {
        if (!g.in_bounds(q) || g.at(q) == Cell::Wall) continue;
        const int j = cell_of[g.index(q)];
        dist[i][j] = 1;
        dist[j][i] = 1;
      }
    }
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (dist[i][k] + dist[k][j] < dist[i][j]) dist[i][j] = dist[i][k] + dist[k][j];
  }

  int lookup(const Grid& g, Position a, Position b) const {
    return dist[cell_of[g.index(a)]][cell_of[g.index(b)]];
  }
};

// Connected components of free cells, by test-local flood fill.
inline std::vector<int> free_components(const Grid& g) {
  std::vector<int> label(static_cast<std::size_t>(g.width()) * g.height(), -1);
  int next = 0;
  for (int y = 0; y < g.height(); ++y)
    for (int x = 0; x < g.width(); ++x) {
      const Position start{x, y};
      if (g.at(start) == Cell::Wall || label[g.index(start)] >= 0) continue;
      std::vector<Position> stack{start};
      label[g.index(start)] = next;
      while (!stack.empty()) {
        const Position p = stack.back();
        stack.pop_back();
        const Position steps[4] = {
            {p.x + 1, p.y}, {p.x - 1, p.y}, {p.x, p.y + 1}, {p.x, p.y - 1}};
        for (const Position& q : steps) {
          if (!g.in_bounds(q) || g.at(q) == Cell::Wall) continue;
          if (label[g.index(q)] >= 0) continue;
          label[g.index(q)] = next;
          stack.push_back(q);
        }
      }
      ++next;
    }
  return label;
}

// Radio component of each agent position, recomputed pairwise without the
// CommGraph class.
inline std::vector<int> radio_components(const std::vector<Position>& positions,
                                         const RadioConfig& cfg) {
  const int n = static_cast<int>(positions.size());
  std::vector<int> label(n, -1);
  int next = 0;
  for (int s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    std::vector<int> stack{s};
    label[s] = next;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < n; ++v) {
        if (label[v] >= 0 || !in_radio_range(cfg, positions[u], positions[v])) continue;
        label[v] = next;
        stack.push_back(v);
      }
    }
    ++next;
  }
  return label;
}

inline Grid random_grid(Rng& rng, int max_side = 8, double wall_prob = 0.25) {
  const int w = 2 + static_cast<int>(rng.bounded(max_side - 1));
  const int h = 2 + static_cast<int>(rng.bounded(max_side - 1));
  Grid g(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (rng.bernoulli(wall_prob)) g.set({x, y}, Cell::Wall);
  // keep at least one free cell
  g.set({0, 0}, Cell::Free);
  return g;
}

// Small allocator instance: a random roster and request on a random grid,
// with at most five offer levels.
struct AllocatorInstance {
  Grid grid{1, 1};
  Roster roster;
  Request request;
};

inline AllocatorInstance random_allocator_instance(Rng& rng, int max_agents = 10) {
  AllocatorInstance inst{random_grid(rng, 7, 0.2), {}, {}};
  Grid& g = inst.grid;
  const auto free = g.free_cells();
  auto random_free = [&]() -> Position {
    return free[rng.bounded(free.size())];
  };

  const double budget = 2.0 + rng.uniform(0.0, 10.0);
  const double initial = rng.uniform(0.0, budget);
  const double increment = std::max((budget - initial) / 4.0, 0.5);  // <= 5 levels
  inst.roster.customer = make_customer(random_free(), budget, initial, increment);

  const int total = 1 + static_cast<int>(rng.bounded(max_agents));
  const int humans = static_cast<int>(rng.bounded(total + 1));
  for (int i = 0; i < humans; ++i)
    inst.roster.humans.push_back(make_human(1 + i, random_free(), rng.uniform(0.0, 10.0),
                                            rng.uniform(0.0, 24.0),
                                            0.5 + rng.uniform(0.0, 3.5)));
  for (int i = 0; i < total - humans; ++i)
    inst.roster.robots.push_back(
        make_robot(1 + humans + i, random_free(), rng.bernoulli(0.3)));

  const int max_h = static_cast<int>(inst.roster.humans.size());
  const int max_r = static_cast<int>(inst.roster.robots.size());
  inst.request = make_request(static_cast<int>(rng.bounded(max_h + 2)),
                              static_cast<int>(rng.bounded(max_r + 2)),
                              rng.uniform(0.0, 24.0));
  return inst;
}

}  // namespace support
