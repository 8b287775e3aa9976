#pragma once

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rapsim/agents.hpp"
#include "rapsim/grid.hpp"
#include "rapsim/radio.hpp"

namespace rapsim {

struct CostWeights {
  double alpha = 1.0;  // per radio transmission
  double beta = 1.0;   // per movement step
};

// Request payload carried by one escalation round.
struct InterestMessage {
  int message_id = 0;
  AgentId origin = 0;
  std::vector<Demand> remaining_demands;
  double offer = 0.0;
  int hop_count = 0;
};

struct ProtocolOutcome {
  bool fulfilled = false;
  std::vector<AgentId> selected;  // ascending agent id
  double final_offer = 0.0;
  int messages = 0;       // radio transmissions over all rounds
  int movement_cost = 0;  // sum of selected agents' path lengths to the customer
  double reward_paid = 0.0;
  int escalation_rounds = 0;
};

inline constexpr AgentId kBroadcastReceiver = -1;

// One radio transmission. A run's `messages` equals its trace line count.
struct TraceEvent {
  int round = 0;
  AgentId sender = 0;
  AgentId receiver = kBroadcastReceiver;
  std::string kind;  // interest | reply | accept | decline | confirm
  int message_id = 0;
  int hop = 0;
};

using Trace = std::vector<TraceEvent>;

inline std::string to_csv_line(const TraceEvent& e) {
  std::string receiver = e.receiver == kBroadcastReceiver ? "*" : std::to_string(e.receiver);
  return std::to_string(e.round) + "," + std::to_string(e.sender) + "," + receiver +
         "," + e.kind + "," + std::to_string(e.message_id) + "," + std::to_string(e.hop);
}

inline void write_trace(std::ostream& out, const Trace& trace) {
  for (const TraceEvent& e : trace) out << to_csv_line(e) << '\n';
}

// Discrete reward levels shared by the protocols and the allocator:
// initial_offer, initial_offer + increment, ... up to the budget.
inline std::vector<double> offer_schedule(const Customer& c) {
  if (c.offer_increment <= 0)
    throw std::invalid_argument("offer_schedule: increment must be > 0");
  const double slack = 1e-9 * std::max(1.0, std::fabs(c.budget));
  std::vector<double> levels;
  for (int k = 0;; ++k) {
    const double level = c.initial_offer + k * c.offer_increment;
    if (level > c.budget + slack) break;
    levels.push_back(level);
  }
  return levels;
}

inline double total_cost(const ProtocolOutcome& o, const CostWeights& w) {
  return w.alpha * o.messages + w.beta * o.movement_cost + o.reward_paid;
}

namespace detail {

enum class NodeKind { Customer, Human, Robot };

struct ProtoNode {
  AgentId id = 0;
  Position pos{};
  NodeKind kind = NodeKind::Customer;
  int roster_index = -1;
};

inline std::vector<ProtoNode> build_nodes(const Roster& roster) {
  std::vector<ProtoNode> nodes;
  nodes.reserve(1 + roster.humans.size() + roster.robots.size());
  nodes.push_back({roster.customer.id, roster.customer.pos, NodeKind::Customer, -1});
  for (int i = 0; i < static_cast<int>(roster.humans.size()); ++i)
    nodes.push_back({roster.humans[i].id, roster.humans[i].pos, NodeKind::Human, i});
  for (int i = 0; i < static_cast<int>(roster.robots.size()); ++i)
    nodes.push_back({roster.robots[i].id, roster.robots[i].pos, NodeKind::Robot, i});
  return nodes;
}

inline int node_by_id(const std::vector<ProtoNode>& nodes, AgentId id) {
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
    if (nodes[i].id == id) return i;
  return -1;
}

// History contact order: proven helpers first, then the most recent, then
// the smaller id.
inline std::vector<HistoryEntry> contact_order(const History& history) {
  std::vector<HistoryEntry> order = history.entries;
  std::sort(order.begin(), order.end(), [](const HistoryEntry& a, const HistoryEntry& b) {
    if (a.success_count != b.success_count) return a.success_count > b.success_count;
    if (a.last_success_round != b.last_success_round)
      return a.last_success_round > b.last_success_round;
    return a.agent < b.agent;
  });
  return order;
}

struct HfiRunResult {
  ProtocolOutcome outcome;
  History history;
};

// Shared engine for both decentralized methods. Directed Diffusion is the
// use_history = false path; with an empty history HFI runs the exact same
// transmissions, which the tests pin down as trace equality.
inline HfiRunResult run_protocol(const Grid& grid, const RadioConfig& radio,
                                 const Roster& roster, const Request& request,
                                 const History& initial_history, bool use_history,
                                 Trace* trace) {
  validate_roster(grid, roster);
  validate_request(request);

  const double t = request.issued_at;
  const std::vector<double> schedule = offer_schedule(roster.customer);
  if (schedule.empty())
    throw std::invalid_argument("run_protocol: empty offer schedule");

  const std::vector<ProtoNode> nodes = build_nodes(roster);
  const int node_count = static_cast<int>(nodes.size());
  std::vector<Position> positions(node_count);
  for (int i = 0; i < node_count; ++i) positions[i] = nodes[i].pos;
  const CommGraph comm(positions, radio);
  const CommGraph::BfsResult bfs = comm.bfs_from(0);
  const std::vector<int> move_field = grid.distance_field(roster.customer.pos);

  ProtocolOutcome out;
  out.final_offer = roster.customer.initial_offer;
  History history = initial_history;
  if (request.demands.empty()) {
    out.fulfilled = true;
    return {out, history};
  }

  auto movement_to_customer = [&](int n) { return move_field[grid.index(nodes[n].pos)]; };

  // customer -> node path, endpoints inclusive, along the BFS tree
  auto forward_path = [&](int n) {
    std::vector<int> path;
    for (int v = n; v != -1; v = bfs.parent[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
  };

  std::vector<char> selected(node_count, 0);
  std::vector<int> demand_owner(request.demands.size(), -1);

  auto has_unmet = [&] {
    return std::any_of(demand_owner.begin(), demand_owner.end(),
                       [](int owner) { return owner < 0; });
  };
  auto node_serves = [&](int n, const Demand& demand) {
    if (nodes[n].kind == NodeKind::Human)
      return can_serve(roster.humans[nodes[n].roster_index], demand);
    if (nodes[n].kind == NodeKind::Robot)
      return can_serve(roster.robots[nodes[n].roster_index], demand);
    return false;
  };
  // First unmet demand this node can serve, or -1.
  auto matching_demand = [&](int n) {
    for (int d = 0; d < static_cast<int>(request.demands.size()); ++d)
      if (demand_owner[d] < 0 && node_serves(n, request.demands[d])) return d;
    return -1;
  };
  auto matches_message = [&](int n, const InterestMessage& msg) {
    return std::any_of(msg.remaining_demands.begin(), msg.remaining_demands.end(),
                       [&](const Demand& d) { return node_serves(n, d); });
  };
  auto accepts = [&](int n, double offer) {
    if (nodes[n].kind == NodeKind::Human)
      return human_accepts(roster.humans[nodes[n].roster_index], offer, t);
    if (nodes[n].kind == NodeKind::Robot)
      return robot_accepts(roster.robots[nodes[n].roster_index]);
    return false;
  };
  auto emit = [&](int round, AgentId sender, AgentId receiver, const char* kind,
                  int mid, int hop) {
    ++out.messages;
    if (trace) trace->push_back({round, sender, receiver, kind, mid, hop});
  };
  // Unicast over the BFS path; reversed = towards the customer.
  auto emit_path = [&](int round, const std::vector<int>& path, bool reversed,
                       const char* kind, int mid) {
    const int hops = static_cast<int>(path.size()) - 1;
    for (int i = 0; i < hops; ++i) {
      const int from = reversed ? path[hops - i] : path[i];
      const int to = reversed ? path[hops - i - 1] : path[i + 1];
      emit(round, nodes[from].id, nodes[to].id, kind, mid, i + 1);
    }
  };

  bool fulfilled = false;
  for (int round = 0; round < static_cast<int>(schedule.size()); ++round) {
    const double offer = schedule[round];
    const int mid = round;  // message ids are unique per escalation round
    out.final_offer = offer;
    ++out.escalation_rounds;

    InterestMessage interest{mid, roster.customer.id, {}, offer, 0};
    // after every response the message carries only the still-open demands
    auto refresh_interest = [&] {
      interest.remaining_demands.clear();
      for (int d = 0; d < static_cast<int>(request.demands.size()); ++d)
        if (demand_owner[d] < 0) interest.remaining_demands.push_back(request.demands[d]);
    };
    refresh_interest();

    if (use_history) {
      // Phase 1: unicast the interest to recorded assistants, best first.
      for (const HistoryEntry& entry : contact_order(history)) {
        if (interest.remaining_demands.empty()) break;
        const int n = node_by_id(nodes, entry.agent);
        if (n <= 0 || selected[n]) continue;
        if (!matches_message(n, interest)) continue;
        const int hops = bfs.depth[n];
        if (hops < 0) continue;  // outside the comm graph: zero cost, treated as declining
        const std::vector<int> path = forward_path(n);
        emit_path(round, path, false, "interest", mid);
        if (accepts(n, interest.offer)) {
          emit_path(round, path, true, "accept", mid);
          const int d = matching_demand(n);
          if (movement_to_customer(n) >= 0) {
            demand_owner[d] = n;
            selected[n] = 1;
            emit_path(round, path, false, "confirm", mid);
            refresh_interest();
          }
          // accepted but unable to ship: no assignment, no confirmation
        } else {
          emit_path(round, path, true, "decline", mid);
        }
      }
    }

    if (has_unmet()) {
      // Phase 2: synchronized flood of the (possibly updated) interest.
      // Every node rebroadcasts a message id at most once, on first receipt;
      // transmission order is (depth, index).
      refresh_interest();
      std::vector<int> flood_order;
      for (int n = 0; n < node_count; ++n)
        if (bfs.depth[n] >= 0) flood_order.push_back(n);
      std::stable_sort(flood_order.begin(), flood_order.end(),
                       [&](int a, int b) { return bfs.depth[a] < bfs.depth[b]; });
      for (int n : flood_order)
        emit(round, nodes[n].id, kBroadcastReceiver, "interest", mid, bfs.depth[n]);

      // Replies travel the reverse path of first receipt; every receiver that
      // accepts and matches a demand still open in the broadcast replies.
      std::vector<int> repliers;
      for (int n = 1; n < node_count; ++n) {
        if (bfs.depth[n] < 0 || selected[n]) continue;
        if (!matches_message(n, interest)) continue;
        if (!accepts(n, interest.offer)) continue;
        repliers.push_back(n);
      }
      std::sort(repliers.begin(), repliers.end(), [&](int a, int b) {
        if (bfs.depth[a] != bfs.depth[b]) return bfs.depth[a] < bfs.depth[b];
        return nodes[a].id < nodes[b].id;
      });
      for (int n : repliers) emit_path(round, forward_path(n), true, "reply", mid);

      // Selection in (reply hop count, agent id) order; agents with no free
      // movement path cannot ship and are skipped.
      for (int n : repliers) {
        const int d = matching_demand(n);
        if (d < 0) continue;
        if (movement_to_customer(n) < 0) continue;
        demand_owner[d] = n;
        selected[n] = 1;
        emit_path(round, forward_path(n), false, "confirm", mid);
      }
    }

    if (!has_unmet()) {
      fulfilled = true;
      break;
    }
  }

  out.fulfilled = fulfilled;
  int humans_selected = 0;
  for (int n = 1; n < node_count; ++n) {
    if (!selected[n]) continue;
    out.selected.push_back(nodes[n].id);
    out.movement_cost += movement_to_customer(n);
    if (nodes[n].kind == NodeKind::Human) ++humans_selected;
  }
  std::sort(out.selected.begin(), out.selected.end());
  out.reward_paid = out.final_offer * humans_selected;
  if (use_history && fulfilled) history.record_success(out.selected);
  return {out, history};
}

}  // namespace detail

// Directed Diffusion: flood the interest, reply along reverse paths, select
// by reply hop count, escalate the reward while the budget allows.
inline ProtocolOutcome run_directed_diffusion(const Grid& grid, const RadioConfig& radio,
                                              const Roster& roster, const Request& request,
                                              const CostWeights& /*weights*/ = {},
                                              Trace* trace = nullptr) {
  return detail::run_protocol(grid, radio, roster, request, History{}, false, trace)
      .outcome;
}

struct HfiResult {
  ProtocolOutcome outcome;
  History history;
};

// History-based Financial Incentive: unicast to recorded assistants first,
// flood only for whatever remains, same escalation loop as Directed
// Diffusion. Returns the outcome plus the history advanced by this run.
inline HfiResult run_hfi(const Grid& grid, const RadioConfig& radio, const Roster& roster,
                         const Request& request, const History& history,
                         const CostWeights& /*weights*/ = {}, Trace* trace = nullptr) {
  auto r = detail::run_protocol(grid, radio, roster, request, history, true, trace);
  return {r.outcome, r.history};
}

}  // namespace rapsim
