#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rapsim/agents.hpp"
#include "rapsim/grid.hpp"
#include "rapsim/protocol.hpp"

namespace rapsim {

// Benchmark solution: which agents the customer would recruit with full
// information, and at which reward level.
struct Allocation {
  std::vector<AgentId> selected_humans;  // ascending id
  std::vector<AgentId> selected_robots;  // ascending id
  double offer_level = 0.0;
  double cost = 0.0;
};

namespace detail {

// Single summation route used by both the exact solver and the brute-force
// oracle: ascending-id order, humans then robots, so equal selections
// produce bit-identical costs.
inline double allocation_cost_on_field(const std::vector<int>& move_field,
                                       const Grid& grid, const Roster& roster,
                                       std::vector<AgentId> humans,
                                       std::vector<AgentId> robots,
                                       double offer_level, const CostWeights& w) {
  std::sort(humans.begin(), humans.end());
  std::sort(robots.begin(), robots.end());
  double cost = 0.0;
  for (AgentId id : humans) {
    auto it = std::find_if(roster.humans.begin(), roster.humans.end(),
                           [id](const HumanAssistant& h) { return h.id == id; });
    if (it == roster.humans.end())
      throw std::invalid_argument("allocation_cost: unknown human id");
    const int d = move_field[grid.index(it->pos)];
    if (d < 0) throw std::invalid_argument("allocation_cost: selected human unreachable");
    cost += w.beta * d + offer_level;
  }
  for (AgentId id : robots) {
    auto it = std::find_if(roster.robots.begin(), roster.robots.end(),
                           [id](const Robot& r) { return r.id == id; });
    if (it == roster.robots.end())
      throw std::invalid_argument("allocation_cost: unknown robot id");
    const int d = move_field[grid.index(it->pos)];
    if (d < 0) throw std::invalid_argument("allocation_cost: selected robot unreachable");
    cost += w.beta * d;
  }
  return cost;
}

// Lexicographic k-combinations of indices [0, n).
template <typename Fn>
inline void for_each_combination(int n, int k, Fn&& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

// Movement-plus-reward cost of a concrete selection at one offer level:
// each human costs beta * path + offer_level, each robot beta * path.
inline double allocation_cost(const std::vector<AgentId>& selected_humans,
                              const std::vector<AgentId>& selected_robots,
                              double offer_level, const Grid& grid,
                              const Roster& roster, const CostWeights& weights) {
  const auto move_field = grid.distance_field(roster.customer.pos);
  return detail::allocation_cost_on_field(move_field, grid, roster, selected_humans,
                                          selected_robots, offer_level, weights);
}

// Exact optimum of the centralized model. Per offer level the objective
// separates per agent, so sorting eligible agents by path cost and taking
// the cheapest c_h humans / c_r robots is optimal; the level then minimizes
// across the schedule. Ties break to the lower level, then to the
// lexicographically smallest id sets. Returns nullopt when no level admits
// enough eligible agents.
inline std::optional<Allocation> optimal_allocation(const Grid& grid,
                                                    const Roster& roster,
                                                    const Request& request,
                                                    const CostWeights& weights) {
  validate_roster(grid, roster);
  validate_request(request);
  const std::vector<double> schedule = offer_schedule(roster.customer);
  if (schedule.empty())
    throw std::invalid_argument("optimal_allocation: empty offer schedule");

  const double t = request.issued_at;
  const int want_humans = request.human_count();
  const int want_robots = request.robot_count();
  const auto move_field = grid.distance_field(roster.customer.pos);

  auto serves_some = [&](const auto& agent) {
    return std::any_of(request.demands.begin(), request.demands.end(),
                       [&](const Demand& d) { return can_serve(agent, d); });
  };

  struct Candidate {
    AgentId id;
    int path;
    double threshold;  // effective min offer; 0 for robots
  };
  std::vector<Candidate> humans;
  for (const HumanAssistant& h : roster.humans) {
    const int d = move_field[grid.index(h.pos)];
    if (d < 0 || !serves_some(h)) continue;
    humans.push_back({h.id, d, effective_min_offer(h, t)});
  }
  std::vector<Candidate> robots;
  for (const Robot& r : roster.robots) {
    const int d = move_field[grid.index(r.pos)];
    if (d < 0 || r.busy || !serves_some(r)) continue;
    robots.push_back({r.id, d, 0.0});
  }
  auto by_path_then_id = [](const Candidate& a, const Candidate& b) {
    if (a.path != b.path) return a.path < b.path;
    return a.id < b.id;
  };
  std::sort(humans.begin(), humans.end(), by_path_then_id);
  std::sort(robots.begin(), robots.end(), by_path_then_id);

  if (static_cast<int>(robots.size()) < want_robots) return std::nullopt;
  std::vector<AgentId> robot_pick;
  for (int i = 0; i < want_robots; ++i) robot_pick.push_back(robots[i].id);
  std::sort(robot_pick.begin(), robot_pick.end());

  std::optional<Allocation> best;
  for (double level : schedule) {
    std::vector<AgentId> human_pick;
    for (const Candidate& c : humans) {
      if (static_cast<int>(human_pick.size()) == want_humans) break;
      if (c.threshold <= level) human_pick.push_back(c.id);
    }
    if (static_cast<int>(human_pick.size()) < want_humans) continue;
    std::sort(human_pick.begin(), human_pick.end());
    const double cost = detail::allocation_cost_on_field(
        move_field, grid, roster, human_pick, robot_pick, level, weights);
    if (!best || cost < best->cost)
      best = Allocation{human_pick, robot_pick, level, cost};
  }
  return best;
}

// Exhaustive oracle over (offer level, human subset, robot subset). Same
// constraints, same cost route, same tie-breaks as optimal_allocation;
// refuses rosters past desk scale.
inline std::optional<Allocation> brute_force_allocation(const Grid& grid,
                                                        const Roster& roster,
                                                        const Request& request,
                                                        const CostWeights& weights) {
  if (roster.humans.size() + roster.robots.size() > 20)
    throw std::invalid_argument("brute_force_allocation: roster larger than 20 agents");
  validate_roster(grid, roster);
  validate_request(request);
  const std::vector<double> schedule = offer_schedule(roster.customer);
  if (schedule.empty())
    throw std::invalid_argument("brute_force_allocation: empty offer schedule");

  const double t = request.issued_at;
  const int want_humans = request.human_count();
  const int want_robots = request.robot_count();
  const auto move_field = grid.distance_field(roster.customer.pos);

  auto serves_some = [&](const auto& agent) {
    return std::any_of(request.demands.begin(), request.demands.end(),
                       [&](const Demand& d) { return can_serve(agent, d); });
  };

  std::vector<HumanAssistant> humans = roster.humans;
  std::sort(humans.begin(), humans.end(),
            [](const HumanAssistant& a, const HumanAssistant& b) { return a.id < b.id; });
  std::vector<Robot> robots = roster.robots;
  std::sort(robots.begin(), robots.end(),
            [](const Robot& a, const Robot& b) { return a.id < b.id; });

  std::optional<Allocation> best;
  for (double level : schedule) {
    std::vector<std::vector<AgentId>> human_sets;
    detail::for_each_combination(
        static_cast<int>(humans.size()), want_humans, [&](const std::vector<int>& idx) {
          std::vector<AgentId> ids;
          for (int i : idx) {
            const HumanAssistant& h = humans[i];
            if (move_field[grid.index(h.pos)] < 0 || !serves_some(h) ||
                effective_min_offer(h, t) > level)
              return;
            ids.push_back(h.id);
          }
          human_sets.push_back(std::move(ids));
        });
    std::vector<std::vector<AgentId>> robot_sets;
    detail::for_each_combination(
        static_cast<int>(robots.size()), want_robots, [&](const std::vector<int>& idx) {
          std::vector<AgentId> ids;
          for (int i : idx) {
            const Robot& r = robots[i];
            if (move_field[grid.index(r.pos)] < 0 || r.busy || !serves_some(r)) return;
            ids.push_back(r.id);
          }
          robot_sets.push_back(std::move(ids));
        });
    for (const auto& hs : human_sets)
      for (const auto& rs : robot_sets) {
        const double cost = detail::allocation_cost_on_field(move_field, grid, roster,
                                                             hs, rs, level, weights);
        if (!best || cost < best->cost) best = Allocation{hs, rs, level, cost};
      }
  }
  return best;
}

}  // namespace rapsim
