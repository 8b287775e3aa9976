// Command-line front end: run one scenario, sweep a parameter grid, or write
// a generated map file.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "rapsim/config.hpp"
#include "rapsim/experiment.hpp"
#include "rapsim/grid.hpp"
#include "rapsim/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitGenerationError = 2;

rapsim::RunConfig config_from(const std::string& path) {
  if (path.empty()) return rapsim::RunConfig{};
  return rapsim::load_config(path);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw rapsim::ConfigError("cannot write file: " + path);
  return out;
}

// Summary file path next to the detail file: sweep.csv -> sweep.summary.csv.
std::string derive_summary_path(const std::string& out_path) {
  const auto dot = out_path.find_last_of('.');
  const auto slash = out_path.find_last_of("/\\");
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return out_path + ".summary";
  return out_path.substr(0, dot) + ".summary" + out_path.substr(dot);
}

void print_run_table(const rapsim::Scenario& scenario, const rapsim::ScenarioResult& result) {
  std::printf("%-8s %-6s %-9s %-7s %-9s %-9s %-10s %-10s\n", "request", "method",
              "fulfilled", "rounds", "messages", "movement", "reward", "total");
  for (std::size_t k = 0; k < result.rows.size(); ++k) {
    for (rapsim::Method m : rapsim::kMethods) {
      const rapsim::RequestRow& row = result.row(static_cast<int>(k), m);
      std::printf("%-8zu %-6s %-9s %-7d %-9d %-9d %-10.2f %-10.2f\n", k,
                  rapsim::method_name(m), row.fulfilled ? "yes" : "no",
                  row.escalation_rounds, row.messages, row.movement, row.reward, row.total);
    }
  }
  for (rapsim::Method m : rapsim::kMethods) {
    const rapsim::MethodTotals& t = scenario.requests.empty()
                                        ? rapsim::MethodTotals{}
                                        : result.totals[static_cast<int>(m)];
    std::printf("total    %-6s %d/%zu fulfilled, messages %d, movement %d, reward %.2f, total %.2f\n",
                rapsim::method_name(m), t.fulfilled, scenario.requests.size(), t.messages,
                t.movement, t.reward, t.total);
  }
}

int run_command(const std::string& config_path, std::optional<std::uint64_t> seed,
                const std::string& out_path, const std::string& trace_path) {
  rapsim::RunConfig cfg = config_from(config_path);
  if (seed) cfg.params.seed = *seed;
  const rapsim::Scenario scenario = rapsim::generate_scenario(cfg.params);

  // Traces are collected by re-running the two protocols with sinks attached;
  // runs are deterministic so outcomes match the table.
  if (!trace_path.empty()) {
    auto trace_out = open_output(trace_path);
    rapsim::Roster roster = scenario.roster;
    rapsim::History history = scenario.roster.customer.history;
    for (std::size_t k = 0; k < scenario.requests.size(); ++k) {
      for (std::size_t j = 0; j < roster.robots.size(); ++j)
        roster.robots[j].busy = scenario.busy_by_request[k][j];
      rapsim::Trace dd_trace;
      rapsim::run_directed_diffusion(scenario.grid, scenario.radio, roster,
                                     scenario.requests[k], scenario.weights, &dd_trace);
      trace_out << "# request " << k << " method DD\n";
      rapsim::write_trace(trace_out, dd_trace);
      rapsim::Trace hfi_trace;
      auto hfi = rapsim::run_hfi(scenario.grid, scenario.radio, roster, scenario.requests[k],
                                 history, scenario.weights, &hfi_trace);
      history = std::move(hfi.history);
      trace_out << "# request " << k << " method HFI\n";
      rapsim::write_trace(trace_out, hfi_trace);
    }
  }

  const rapsim::ScenarioResult result = rapsim::run_scenario(scenario);
  print_run_table(scenario, result);

  if (!out_path.empty()) {
    std::vector<rapsim::SweepRow> rows;
    const std::string label =
        rapsim::sweep_point_label(cfg.params.num_humans, cfg.params.num_robots);
    for (rapsim::Method m : rapsim::kMethods) {
      const rapsim::MethodTotals& t = result.totals[static_cast<int>(m)];
      rows.push_back({label, 0, cfg.params.seed, m,
                      static_cast<int>(scenario.requests.size()), t.fulfilled, t.messages,
                      t.movement, t.reward, t.total});
    }
    auto out = open_output(out_path);
    rapsim::write_sweep_csv(out, rows);
  }
  return kExitOk;
}

int sweep_command(const std::string& config_path, std::optional<std::uint64_t> seed,
                  const std::string& out_path, const std::string& summary_path) {
  rapsim::RunConfig cfg = config_from(config_path);
  if (seed) cfg.params.seed = *seed;
  const auto points = rapsim::sweep_points(cfg);
  const rapsim::SweepOutput output = rapsim::run_sweep(points, cfg.repetitions);

  if (out_path.empty()) {
    rapsim::write_sweep_csv(std::cout, output.rows);
    rapsim::write_summary_csv(std::cout, output.summary);
  } else {
    auto out = open_output(out_path);
    rapsim::write_sweep_csv(out, output.rows);
    const std::string spath = summary_path.empty() ? derive_summary_path(out_path) : summary_path;
    auto sout = open_output(spath);
    rapsim::write_summary_csv(sout, output.summary);
  }
  return kExitOk;
}

int gen_map_command(const std::string& config_path, int width, int height, int spacing,
                    const std::string& out_path) {
  rapsim::RunConfig cfg = config_from(config_path);
  if (width > 0) cfg.params.map_width = width;
  if (height > 0) cfg.params.map_height = height;
  if (spacing > 0) cfg.params.aisle_spacing = spacing;
  if (cfg.params.map_width < 1 || cfg.params.map_height < 1 || cfg.params.aisle_spacing < 2)
    throw rapsim::ConfigError("gen-map: need width >= 1, height >= 1, spacing >= 2");
  const rapsim::Grid grid = rapsim::make_store_map(cfg.params.map_width, cfg.params.map_height,
                                                   cfg.params.aisle_spacing);
  if (out_path.empty())
    std::cout << grid.to_text();
  else
    grid.save(out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rapsim: assistance-network protocol simulator (DD / HFI / optimal)"};
  app.require_subcommand(1);

  std::string config_path, out_path, summary_path, trace_path, format = "csv";
  std::optional<std::uint64_t> seed;
  int width = 0, height = 0, spacing = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "key = value config file");
    cmd->add_option("--seed", seed, "override the config seed");
    cmd->add_option("--out", out_path, "output file (default: stdout)");
    cmd->add_option("--format", format, "output format (csv)")->capture_default_str();
  };

  CLI::App* run = app.add_subcommand("run", "run one scenario and print per-request costs");
  add_common(run);
  run->add_option("--trace", trace_path, "write the protocol message trace to this file");

  CLI::App* sweep = app.add_subcommand("sweep", "run a seeded parameter sweep, emit CSV");
  add_common(sweep);
  sweep->add_option("--summary-out", summary_path,
                    "summary CSV path (default: derived from --out)");

  CLI::App* gen_map = app.add_subcommand("gen-map", "write a generated store map");
  gen_map->add_option("--config", config_path, "key = value config file");
  gen_map->add_option("--width", width, "map width in cells");
  gen_map->add_option("--height", height, "map height in cells");
  gen_map->add_option("--spacing", spacing, "aisle wall spacing in cells");
  gen_map->add_option("--out", out_path, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitConfigError;
  }

  try {
    if (format != "csv") throw rapsim::ConfigError("unsupported --format: " + format);
    if (run->parsed()) return run_command(config_path, seed, out_path, trace_path);
    if (sweep->parsed()) return sweep_command(config_path, seed, out_path, summary_path);
    if (gen_map->parsed()) return gen_map_command(config_path, width, height, spacing, out_path);
  } catch (const rapsim::GenerationError& e) {
    std::cerr << "generation error: " << e.what() << "\n";
    return kExitGenerationError;
  } catch (const rapsim::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitConfigError;
}
