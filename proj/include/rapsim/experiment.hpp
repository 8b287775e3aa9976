#pragma once

#include <array>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rapsim/allocator.hpp"
#include "rapsim/protocol.hpp"
#include "rapsim/scenario.hpp"
#include "rapsim/stats.hpp"

namespace rapsim {

enum class Method { DD = 0, HFI = 1, OPT = 2 };
inline constexpr std::array<Method, 3> kMethods = {Method::DD, Method::HFI, Method::OPT};

inline const char* method_name(Method m) {
  switch (m) {
    case Method::DD: return "DD";
    case Method::HFI: return "HFI";
    case Method::OPT: return "OPT";
  }
  return "?";
}

// One request under one method, itemized.
struct RequestRow {
  bool fulfilled = false;
  int messages = 0;
  int movement = 0;
  double reward = 0.0;
  double total = 0.0;
  int escalation_rounds = 0;
};

struct MethodTotals {
  int fulfilled = 0;
  int messages = 0;
  int movement = 0;
  double reward = 0.0;
  double total = 0.0;
};

struct ScenarioResult {
  // rows[k][method]: request k under DD / HFI / OPT
  std::vector<std::array<RequestRow, 3>> rows;
  std::array<MethodTotals, 3> totals{};

  const RequestRow& row(int request, Method m) const {
    return rows[request][static_cast<int>(m)];
  }
};

// Runs the scenario's requests in order. DD and the optimizer are stateless
// per request; HFI threads its history across them. All methods see the same
// placements, thresholds, busy flags, and request times.
inline ScenarioResult run_scenario(const Scenario& s) {
  ScenarioResult result;
  Roster roster = s.roster;
  History history = s.roster.customer.history;

  for (std::size_t k = 0; k < s.requests.size(); ++k) {
    const Request& request = s.requests[k];
    for (std::size_t j = 0; j < roster.robots.size(); ++j)
      roster.robots[j].busy = s.busy_by_request[k][j];

    std::array<RequestRow, 3> rows{};

    const ProtocolOutcome dd = run_directed_diffusion(s.grid, s.radio, roster, request, s.weights);
    rows[static_cast<int>(Method::DD)] = {dd.fulfilled, dd.messages, dd.movement_cost,
                                          dd.reward_paid, total_cost(dd, s.weights),
                                          dd.escalation_rounds};

    HfiResult hfi = run_hfi(s.grid, s.radio, roster, request, history, s.weights);
    history = std::move(hfi.history);
    const ProtocolOutcome& ho = hfi.outcome;
    rows[static_cast<int>(Method::HFI)] = {ho.fulfilled, ho.messages, ho.movement_cost,
                                           ho.reward_paid, total_cost(ho, s.weights),
                                           ho.escalation_rounds};

    const std::optional<Allocation> opt = optimal_allocation(s.grid, roster, request, s.weights);
    RequestRow opt_row;
    if (opt) {
      int movement = 0;
      const auto field = s.grid.distance_field(roster.customer.pos);
      auto add_paths = [&](const std::vector<AgentId>& ids, bool is_human) {
        for (AgentId id : ids) {
          for (const HumanAssistant& h : roster.humans)
            if (is_human && h.id == id) movement += field[s.grid.index(h.pos)];
          for (const Robot& r : roster.robots)
            if (!is_human && r.id == id) movement += field[s.grid.index(r.pos)];
        }
      };
      add_paths(opt->selected_humans, true);
      add_paths(opt->selected_robots, false);
      opt_row = {true, 0, movement,
                 opt->offer_level * static_cast<double>(opt->selected_humans.size()),
                 opt->cost, 0};
    }
    rows[static_cast<int>(Method::OPT)] = opt_row;

    result.rows.push_back(rows);
    for (int m = 0; m < 3; ++m) {
      MethodTotals& agg = result.totals[m];
      agg.fulfilled += rows[m].fulfilled ? 1 : 0;
      agg.messages += rows[m].messages;
      agg.movement += rows[m].movement;
      agg.reward += rows[m].reward;
      agg.total += rows[m].total;
    }
  }
  return result;
}

struct SweepPoint {
  std::string label;
  ScenarioParams params;
};

struct SweepRow {
  std::string param_point;
  int scenario_index = 0;
  std::uint64_t seed = 0;
  Method method = Method::DD;
  int requests = 0;
  int fulfilled = 0;
  int messages = 0;
  int movement = 0;
  double reward = 0.0;
  double total = 0.0;
};

struct SweepSummaryRow {
  std::string param_point;
  Method method = Method::DD;
  double mean_total = 0.0;
  double sd_total = 0.0;
  std::optional<double> t_vs_dd, p_vs_dd, t_vs_opt, p_vs_opt;
};

struct SweepOutput {
  std::vector<SweepRow> rows;
  std::vector<SweepSummaryRow> summary;
  // per point, per repetition; kept for inspection and the acceptance suite
  std::vector<std::vector<ScenarioResult>> results;
};

// Repetition i of a point runs with seed = point seed + i, so any scenario
// in a sweep can be regenerated on its own.
inline SweepOutput run_sweep(const std::vector<SweepPoint>& points, int repetitions) {
  if (repetitions < 2)
    throw ConfigError("run_sweep: need at least 2 repetitions for paired t-tests");

  SweepOutput out;
  for (const SweepPoint& point : points) {
    std::vector<ScenarioResult> results;
    std::array<std::vector<double>, 3> totals;
    for (int i = 0; i < repetitions; ++i) {
      ScenarioParams params = point.params;
      params.seed = point.params.seed + static_cast<std::uint64_t>(i);
      const Scenario scenario = generate_scenario(params);
      ScenarioResult r = run_scenario(scenario);
      for (Method m : kMethods) {
        const MethodTotals& agg = r.totals[static_cast<int>(m)];
        out.rows.push_back({point.label, i, params.seed, m,
                            static_cast<int>(scenario.requests.size()), agg.fulfilled,
                            agg.messages, agg.movement, agg.reward, agg.total});
        totals[static_cast<int>(m)].push_back(agg.total);
      }
      results.push_back(std::move(r));
    }

    for (Method m : kMethods) {
      const std::vector<double>& xs = totals[static_cast<int>(m)];
      double sum = 0.0;
      for (double v : xs) sum += v;
      const double mean = sum / static_cast<double>(xs.size());
      double ss = 0.0;
      for (double v : xs) ss += (v - mean) * (v - mean);
      const double sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));

      SweepSummaryRow row;
      row.param_point = point.label;
      row.method = m;
      row.mean_total = mean;
      row.sd_total = sd;
      if (m != Method::DD) {
        const TTestResult t = paired_t_test(xs, totals[static_cast<int>(Method::DD)]);
        row.t_vs_dd = t.t;
        row.p_vs_dd = t.p_two_tailed;
      }
      if (m != Method::OPT) {
        const TTestResult t = paired_t_test(xs, totals[static_cast<int>(Method::OPT)]);
        row.t_vs_opt = t.t;
        row.p_vs_opt = t.p_two_tailed;
      }
      out.summary.push_back(std::move(row));
    }
    out.results.push_back(std::move(results));
  }
  return out;
}

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace detail

inline const char* kSweepCsvHeader =
    "param_point,scenario_index,seed,method,requests,fulfilled,messages,movement,reward,total";
inline const char* kSummaryCsvHeader =
    "param_point,method,mean_total,sd_total,t_vs_dd,p_vs_dd,t_vs_opt,p_vs_opt";

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepCsvHeader << "\n";
  for (const SweepRow& r : rows) {
    out << r.param_point << ',' << r.scenario_index << ',' << r.seed << ','
        << method_name(r.method) << ',' << r.requests << ',' << r.fulfilled << ','
        << r.messages << ',' << r.movement << ',' << detail::format_double(r.reward)
        << ',' << detail::format_double(r.total) << "\n";
  }
}

inline void write_summary_csv(std::ostream& out, const std::vector<SweepSummaryRow>& rows) {
  auto opt_cell = [](const std::optional<double>& v) {
    return v ? detail::format_double(*v) : std::string();
  };
  out << kSummaryCsvHeader << "\n";
  for (const SweepSummaryRow& r : rows) {
    out << r.param_point << ',' << method_name(r.method) << ','
        << detail::format_double(r.mean_total) << ',' << detail::format_double(r.sd_total)
        << ',' << opt_cell(r.t_vs_dd) << ',' << opt_cell(r.p_vs_dd) << ','
        << opt_cell(r.t_vs_opt) << ',' << opt_cell(r.p_vs_opt) << "\n";
  }
}

}  // namespace rapsim
