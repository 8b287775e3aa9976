#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

#include "rapsim/config.hpp"
#include "rapsim/scenario.hpp"

using namespace rapsim;

TEST_CASE("same params and seed reproduce the scenario exactly") {
  ScenarioParams p;
  p.seed = 91;
  const std::string a = dump_scenario(generate_scenario(p));
  const std::string b = dump_scenario(generate_scenario(p));
  CHECK(a == b);
  p.seed = 92;
  CHECK(dump_scenario(generate_scenario(p)) != a);
}

TEST_CASE("degenerate scenario with no assistants is valid") {
  ScenarioParams p;
  p.num_humans = 0;
  p.num_robots = 0;
  p.demand_humans = 0;
  p.demand_robots = 0;
  const Scenario s = generate_scenario(p);
  CHECK(s.roster.humans.empty());
  CHECK(s.roster.robots.empty());
  CHECK(s.requests.size() == 5);
  CHECK(s.requests[0].demands.empty());
}

TEST_CASE("generation fails when agents outnumber free cells") {
  ScenarioParams p;
  p.map_width = 3;
  p.map_height = 3;
  p.aisle_spacing = 100;
  p.num_humans = 8;
  p.num_robots = 1;  // 10 agents with customer, 9 free cells
  CHECK_THROWS_AS(generate_scenario(p), GenerationError);
}

TEST_CASE("agents land on distinct free cells with valid draws") {
  ScenarioParams p;
  p.seed = 7;
  const Scenario s = generate_scenario(p);
  std::set<std::pair<int, int>> occupied{{s.roster.customer.pos.x, s.roster.customer.pos.y}};
  auto claim = [&](Position pos) {
    CHECK(s.grid.is_free(pos));
    CHECK(occupied.insert({pos.x, pos.y}).second);
  };
  for (const auto& h : s.roster.humans) {
    claim(h.pos);
    CHECK(h.peak_time >= 0.0);
    CHECK(h.peak_time < 24.0);
    CHECK(h.min_offer >= p.min_offer_lo);
    CHECK(h.min_offer <= p.min_offer_hi);
    CHECK(h.resources.count(kGenericResource) == 1);
  }
  for (const auto& r : s.roster.robots) claim(r.pos);
  CHECK(s.busy_by_request.size() == s.requests.size());
  for (std::size_t k = 0; k < s.requests.size(); ++k) {
    CHECK(s.requests[k].issued_at ==
          std::fmod(p.request_start + k * p.request_step, 24.0));
    CHECK(s.requests[k].human_count() == p.demand_humans);
    CHECK(s.requests[k].robot_count() == p.demand_robots);
  }
}

TEST_CASE("placement is uniform over free cells") {
  // customer-only scenarios on an open 10x10 map; per-cell counts must sit
  // within five binomial standard deviations of uniform
  ScenarioParams p;
  p.map_width = 10;
  p.map_height = 10;
  p.aisle_spacing = 50;  // no walls fit
  p.num_humans = 0;
  p.num_robots = 0;
  p.demand_humans = 0;
  p.demand_robots = 0;

  const int trials = 10000;
  std::vector<int> counts(100, 0);
  for (int i = 0; i < trials; ++i) {
    p.seed = 100000 + i;
    const Scenario s = generate_scenario(p);
    ++counts[s.roster.customer.pos.y * 10 + s.roster.customer.pos.x];
  }
  const double expected = trials / 100.0;
  const double sd = std::sqrt(trials * (1.0 / 100.0) * (99.0 / 100.0));
  for (int c : counts) CHECK(std::fabs(c - expected) <= 5.0 * sd);
}

TEST_CASE("scenario can load its map from a file") {
  const std::string path = "test_scenario_map.txt";
  {
    std::ofstream out(path);
    out << "....\n.##.\n....\n";
  }
  ScenarioParams p;
  p.map_file = path;
  p.num_humans = 2;
  p.num_robots = 1;
  const Scenario s = generate_scenario(p);
  CHECK(s.grid.width() == 4);
  CHECK(s.grid.height() == 3);
  CHECK(s.grid.at({1, 1}) == Cell::Wall);
  std::remove(path.c_str());

  p.map_file = "no_such_map_file.txt";
  CHECK_THROWS_AS(generate_scenario(p), std::invalid_argument);
}

TEST_CASE("config files cover every scenario parameter") {
  std::istringstream in(
      "# experiment setup\n"
      "map_width = 20\n"
      "map_height = 12\n"
      "aisle_spacing = 4\n"
      "num_humans = 7\n"
      "num_robots = 3\n"
      "radio_range = 6.5\n"
      "budget = 50\n"
      "initial_offer = 20\n"
      "offer_increment = 5\n"
      "min_offer_lo = 10\n"
      "min_offer_hi = 15\n"
      "sigma = 2.5\n"
      "busy_prob = 0.1\n"
      "requests = 4\n"
      "demand_humans = 1\n"
      "demand_robots = 2\n"
      "request_start = 8\n"
      "request_step = 2\n"
      "alpha = 1.5\n"
      "beta = 0.5\n"
      "seed = 1234\n"
      "repetitions = 6\n"
      "sweep_agents = 10, 20\n");
  const RunConfig cfg = parse_config(in);
  CHECK(cfg.params.map_width == 20);
  CHECK(cfg.params.num_humans == 7);
  CHECK(cfg.params.radio_range == 6.5);
  CHECK(cfg.params.weights.alpha == 1.5);
  CHECK(cfg.params.weights.beta == 0.5);
  CHECK(cfg.params.seed == 1234);
  CHECK(cfg.repetitions == 6);
  CHECK(cfg.sweep_agents == std::vector<int>{10, 20});

  const auto points = sweep_points(cfg);
  REQUIRE(points.size() == 2);
  CHECK(points[0].label == "M=7,N=3");
  CHECK(points[0].params.num_humans == 7);
  CHECK(points[1].params.num_humans == 14);
  CHECK(points[1].params.num_robots == 6);
}

TEST_CASE("config rejects unknown keys and bad values") {
  {
    std::istringstream in("no_such_key = 3\n");
    CHECK_THROWS_AS(parse_config(in), ConfigError);
  }
  {
    std::istringstream in("budget = lots\n");
    CHECK_THROWS_AS(parse_config(in), ConfigError);
  }
  {
    std::istringstream in("budget\n");
    CHECK_THROWS_AS(parse_config(in), ConfigError);
  }
  {
    std::istringstream in("initial_offer = 100\nbudget = 50\n");
    CHECK_THROWS_AS(parse_config(in), ConfigError);  // initial_offer > budget
  }
  {
    std::istringstream in("repetitions = 1\n");
    CHECK_THROWS_AS(parse_config(in), ConfigError);
  }
}

TEST_CASE("default point is used when no sweep grid is configured") {
  RunConfig cfg;
  const auto points = sweep_points(cfg);
  REQUIRE(points.size() == 1);
  CHECK(points[0].label == "M=15,N=10");
}
