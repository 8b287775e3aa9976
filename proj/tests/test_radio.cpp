#include <catch2/catch_amalgamated.hpp>

#include "rapsim/radio.hpp"
#include "rapsim/rng.hpp"
#include "support/builders.hpp"

using namespace rapsim;

TEST_CASE("in_radio_range thresholds") {
  CHECK(in_radio_range({0.0}, {3, 4}, {3, 4}));          // zero distance, zero range
  CHECK(in_radio_range({1.0}, {2, 2}, {3, 2}));          // adjacent, boundary equality
  CHECK_FALSE(in_radio_range({2.9}, {0, 0}, {3, 0}));    // strict threshold
  CHECK(in_radio_range({5.0}, {0, 0}, {3, 4}));          // 3-4-5 triangle, boundary
  CHECK_FALSE(in_radio_range({4.999}, {0, 0}, {3, 4}));
}

TEST_CASE("radio ignores walls entirely") {
  // two cells adjacent across a wall: reception fine, movement blocked
  Grid g(3, 1);
  g.set({1, 0}, Cell::Wall);
  CHECK_FALSE(movement_distance(g, {0, 0}, {2, 0}).has_value());
  CHECK(in_radio_range({2.0}, {0, 0}, {2, 0}));
  const std::vector<Position> agents{{0, 0}, {2, 0}};
  CHECK(hop_distance({2.0}, agents, 0, 1) == 1);
}

TEST_CASE("hop_distance basics") {
  const std::vector<Position> agents{{0, 0}, {2, 0}, {4, 0}};
  const RadioConfig cfg{2.0};
  CHECK(hop_distance(cfg, agents, 1, 1) == 0);
  CHECK(hop_distance(cfg, agents, 0, 1) == 1);
  // collinear agents spaced exactly at range: endpoints two hops apart
  CHECK(hop_distance(cfg, agents, 0, 2) == 2);
  CHECK(hop_distance({1.9}, agents, 0, 1) == std::nullopt);
  CHECK_THROWS_AS(hop_distance(cfg, agents, 0, 3), std::invalid_argument);
}

TEST_CASE("hop_distance agrees with a pairwise component oracle") {
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.bounded(8));
    std::vector<Position> agents;
    for (int i = 0; i < n; ++i)
      agents.push_back({static_cast<int>(rng.bounded(12)), static_cast<int>(rng.bounded(12))});
    const RadioConfig cfg{rng.uniform(1.0, 6.0)};
    const auto components = support::radio_components(agents, cfg);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const auto hops = hop_distance(cfg, agents, a, b);
        CHECK(hops.has_value() == (components[a] == components[b]));
        if (hops) {
          CHECK(hop_distance(cfg, agents, b, a) == hops);  // symmetric
          if (a == b) CHECK(*hops == 0);
        }
      }
  }
}
