#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "rapsim/grid.hpp"

namespace rapsim {

using AgentId = int;

enum class ProviderClass { Human, Robot };

// One requested unit of assistance: a resource type plus who may provide it.
struct Demand {
  std::string resource;
  ProviderClass provider = ProviderClass::Human;
};

struct Request {
  std::vector<Demand> demands;
  double issued_at = 0.0;  // hours in [0, 24)

  int human_count() const {
    return static_cast<int>(std::count_if(demands.begin(), demands.end(),
        [](const Demand& d) { return d.provider == ProviderClass::Human; }));
  }
  int robot_count() const {
    return static_cast<int>(demands.size()) - human_count();
  }
};

struct HumanAssistant {
  AgentId id = 0;
  Position pos{};
  double min_offer = 0.0;   // smallest acceptable offer at peak availability
  double peak_time = 0.0;   // hours in [0, 24)
  double sigma = 2.0;       // availability spread, hours
  std::set<std::string> resources;
};

struct Robot {
  AgentId id = 0;
  Position pos{};
  bool busy = false;
  std::set<std::string> resources;
};

struct HistoryEntry {
  AgentId agent = 0;
  int success_count = 0;
  int last_success_round = 0;
};

// Per-customer record of previously successful assistants.
struct History {
  std::vector<HistoryEntry> entries;
  int completed_rounds = 0;  // monotone counter backing the recency ordering

  void record_success(const std::vector<AgentId>& ids) {
    ++completed_rounds;
    for (AgentId id : ids) {
      auto it = std::find_if(entries.begin(), entries.end(),
                             [id](const HistoryEntry& e) { return e.agent == id; });
      if (it != entries.end()) {
        ++it->success_count;
        it->last_success_round = completed_rounds;
      } else {
        entries.push_back({id, 1, completed_rounds});
      }
    }
  }
};

struct Customer {
  AgentId id = 0;
  Position pos{};
  double budget = 0.0;
  double initial_offer = 0.0;
  double offer_increment = 1.0;  // reward escalation step
  History history;
};

struct Roster {
  Customer customer;
  std::vector<HumanAssistant> humans;
  std::vector<Robot> robots;
};

inline constexpr double kAvailabilityFloor = 1e-6;

inline double circular_hour_distance(double a, double b) {
  double d = std::fabs(a - b);
  d = std::fmod(d, 24.0);
  return std::min(d, 24.0 - d);
}

// Gaussian kernel of clock distance from the assistant's peak time, floored
// so effective thresholds stay finite. Always in (0, 1].
inline double availability(const HumanAssistant& h, double t) {
  const double d = circular_hour_distance(t, h.peak_time);
  const double a = std::exp(-(d * d) / (2.0 * h.sigma * h.sigma));
  return std::max(a, kAvailabilityFloor);
}

// Smallest offer the assistant accepts at time t. human_accepts is defined
// through this threshold so protocol acceptance and allocator eligibility
// can never disagree on a boundary case.
inline double effective_min_offer(const HumanAssistant& h, double t) {
  return h.min_offer / availability(h, t);
}

inline bool human_accepts(const HumanAssistant& h, double offer, double t) {
  return offer >= effective_min_offer(h, t);
}

// Robots are greedy: an idle robot always helps, a busy one never does,
// no matter the offer.
inline bool robot_accepts(const Robot& r) { return !r.busy; }

inline bool can_serve(const HumanAssistant& h, const Demand& d) {
  return d.provider == ProviderClass::Human && h.resources.count(d.resource) > 0;
}

inline bool can_serve(const Robot& r, const Demand& d) {
  return d.provider == ProviderClass::Robot && r.resources.count(d.resource) > 0;
}

// Structural checks shared by the protocols and the allocator. Throws
// std::invalid_argument on the first violation.
inline void validate_roster(const Grid& grid, const Roster& roster) {
  std::set<AgentId> ids;
  auto claim_id = [&ids](AgentId id) {
    if (!ids.insert(id).second)
      throw std::invalid_argument("roster: duplicate agent id");
  };
  auto claim_pos = [&grid](Position p) {
    if (!grid.is_free(p))
      throw std::invalid_argument("roster: agent placed out of bounds or on a wall");
  };

  const Customer& c = roster.customer;
  claim_id(c.id);
  claim_pos(c.pos);
  if (c.budget < 0) throw std::invalid_argument("roster: budget must be >= 0");
  if (c.initial_offer < 0 || c.initial_offer > c.budget)
    throw std::invalid_argument("roster: initial offer must lie in [0, budget]");
  if (c.offer_increment <= 0)
    throw std::invalid_argument("roster: offer increment must be > 0");
  {
    std::set<AgentId> seen;
    for (const HistoryEntry& e : c.history.entries) {
      if (!seen.insert(e.agent).second)
        throw std::invalid_argument("roster: duplicate agent in history");
      if (e.success_count < 1)
        throw std::invalid_argument("roster: history success_count must be >= 1");
    }
  }

  for (const HumanAssistant& h : roster.humans) {
    claim_id(h.id);
    claim_pos(h.pos);
    if (h.min_offer < 0) throw std::invalid_argument("roster: min_offer must be >= 0");
    if (h.sigma <= 0) throw std::invalid_argument("roster: sigma must be > 0");
    if (h.peak_time < 0 || h.peak_time >= 24)
      throw std::invalid_argument("roster: peak_time must lie in [0, 24)");
  }
  for (const Robot& r : roster.robots) {
    claim_id(r.id);
    claim_pos(r.pos);
  }
}

inline void validate_request(const Request& request) {
  if (request.issued_at < 0 || request.issued_at >= 24)
    throw std::invalid_argument("request: issued_at must lie in [0, 24)");
  for (const Demand& d : request.demands)
    if (d.resource.empty())
      throw std::invalid_argument("request: demand resource must be non-empty");
}

}  // namespace rapsim
