#include "ucl/graph.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <string>

namespace ucl {

bool Graph::has_edge(int a, int b) const {
  if (a < 0 || b < 0 || a >= num_nodes || b >= num_nodes) return false;
  const auto& nb = neighbors[a];
  return std::binary_search(nb.begin(), nb.end(), b);
}

Graph Graph::line(int n) {
  Graph g;
  g.num_nodes = n;
  g.neighbors.resize(n);
  for (int i = 0; i + 1 < n; ++i) {
    g.neighbors[i].push_back(i + 1);
    g.neighbors[i + 1].push_back(i);
  }
  for (auto& nb : g.neighbors) std::sort(nb.begin(), nb.end());
  return g;
}

Graph Graph::grid(int rows, int cols) {
  Graph g;
  g.num_nodes = rows * cols;
  g.neighbors.resize(g.num_nodes);
  auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) {
        g.neighbors[id(r, c)].push_back(id(r, c + 1));
        g.neighbors[id(r, c + 1)].push_back(id(r, c));
      }
      if (r + 1 < rows) {
        g.neighbors[id(r, c)].push_back(id(r + 1, c));
        g.neighbors[id(r + 1, c)].push_back(id(r, c));
      }
    }
  for (auto& nb : g.neighbors) std::sort(nb.begin(), nb.end());
  return g;
}

Graph Graph::complete(int n) {
  Graph g;
  g.num_nodes = n;
  g.neighbors.resize(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) g.neighbors[i].push_back(j);
  return g;
}

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  Graph g;
  g.num_nodes = n;
  g.neighbors.resize(n);
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw std::invalid_argument("edge endpoint out of range: " + std::to_string(a + 1) +
                                  " " + std::to_string(b + 1));
    if (a == b) continue;
    g.neighbors[a].push_back(b);
    g.neighbors[b].push_back(a);
  }
  for (auto& nb : g.neighbors) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }
  return g;
}

ShortestPathTable::ShortestPathTable(const Graph& graph) : num_nodes_(graph.num_nodes) {
  const int n = num_nodes_;
  dist_.assign(n, std::vector<int>(n, -1));
  for (int src = 0; src < n; ++src) {
    auto& d = dist_[src];
    d[src] = 0;
    std::queue<int> frontier;
    frontier.push(src);
    while (!frontier.empty()) {
      const int u = frontier.front();
      frontier.pop();
      for (int v : graph.neighbors[u])
        if (d[v] < 0) {
          d[v] = d[u] + 1;
          frontier.push(v);
        }
    }
    for (int v = 0; v < n; ++v)
      if (d[v] < 0)
        throw std::invalid_argument("graph is disconnected: no path from node " +
                                    std::to_string(src + 1) + " to node " +
                                    std::to_string(v + 1));
  }

  // Walk greedily toward the target, always taking the smallest-id neighbor
  // that still lies on a shortest path; this realizes the lexicographically
  // smallest node sequence.
  mid_.assign(n, std::vector<std::vector<int>>(n));
  for (int from = 0; from < n; ++from)
    for (int to = 0; to < n; ++to) {
      if (from == to) continue;
      const auto& to_dist = dist_[to];
      auto& path = mid_[from][to];
      int cur = from;
      while (to_dist[cur] > 1) {
        for (int v : graph.neighbors[cur])
          if (to_dist[v] == to_dist[cur] - 1) {
            path.push_back(v);
            cur = v;
            break;
          }
      }
    }
}

}  // namespace ucl
