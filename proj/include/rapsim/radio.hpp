#pragma once

#include <deque>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rapsim/grid.hpp"

namespace rapsim {

// Fixed-range disk model. Walls carry no attenuation: reception depends on
// Euclidean distance only, while movement goes around obstacles.
struct RadioConfig {
  double range = 1.0;
};

inline bool in_radio_range(const RadioConfig& cfg, Position a, Position b) {
  const double dx = static_cast<double>(a.x) - b.x;
  const double dy = static_cast<double>(a.y) - b.y;
  return dx * dx + dy * dy <= cfg.range * cfg.range;
}

// Unit-disk graph over a fixed node set. Neighbor lists are kept in
// ascending index order so BFS parents are deterministic.
class CommGraph {
 public:
  CommGraph(const std::vector<Position>& positions, const RadioConfig& cfg)
      : adjacency_(positions.size()) {
    const int n = static_cast<int>(positions.size());
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (in_radio_range(cfg, positions[i], positions[j])) {
          adjacency_[i].push_back(j);
          adjacency_[j].push_back(i);
        }
  }

  int size() const { return static_cast<int>(adjacency_.size()); }

  const std::vector<int>& neighbors(int i) const { return adjacency_[i]; }

  struct BfsResult {
    std::vector<int> depth;   // -1 where unreachable
    std::vector<int> parent;  // -1 at the source and where unreachable
  };

  BfsResult bfs_from(int source) const {
    if (source < 0 || source >= size())
      throw std::invalid_argument("CommGraph::bfs_from: bad source index");
    BfsResult r;
    r.depth.assign(adjacency_.size(), -1);
    r.parent.assign(adjacency_.size(), -1);
    std::deque<int> queue;
    r.depth[source] = 0;
    queue.push_back(source);
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int v : adjacency_[u]) {
        if (r.depth[v] >= 0) continue;
        r.depth[v] = r.depth[u] + 1;
        r.parent[v] = u;
        queue.push_back(v);
      }
    }
    return r;
  }

 private:
  std::vector<std::vector<int>> adjacency_;
};

// Hop count between agents a and b in the radio graph; nullopt when they sit
// in different components. Walls are irrelevant here.
inline std::optional<int> hop_distance(const RadioConfig& cfg,
                                       const std::vector<Position>& positions,
                                       int a, int b) {
  const int n = static_cast<int>(positions.size());
  if (a < 0 || a >= n || b < 0 || b >= n)
    throw std::invalid_argument("hop_distance: index out of range");
  if (a == b) return 0;
  const CommGraph graph(positions, cfg);
  const auto bfs = graph.bfs_from(a);
  if (bfs.depth[b] < 0) return std::nullopt;
  return bfs.depth[b];
}

}  // namespace rapsim
