#pragma once

#include <utility>
#include <vector>

namespace ucl {

// Undirected selection-constraint graph over arms (0-based nodes).
struct Graph {
  int num_nodes = 0;
  std::vector<std::vector<int>> neighbors;  // sorted ascending per node

  bool empty() const { return num_nodes == 0; }
  bool has_edge(int a, int b) const;

  static Graph line(int n);
  static Graph grid(int rows, int cols);  // 4-neighbor lattice, row-major ids
  static Graph complete(int n);
  static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);
};

// All-pairs shortest paths with a deterministic tie-break: among equal-length
// paths the lexicographically smallest node sequence wins.  Construction
// throws std::invalid_argument if any pair is unreachable.
class ShortestPathTable {
 public:
  explicit ShortestPathTable(const Graph& graph);

  int num_nodes() const { return num_nodes_; }
  // BFS edge count from -> to; 0 when from == to
  int hops(int from, int to) const { return dist_[from][to]; }
  // nodes strictly between the endpoints, in traversal order
  const std::vector<int>& intermediaries(int from, int to) const { return mid_[from][to]; }

 private:
  int num_nodes_ = 0;
  std::vector<std::vector<int>> dist_;
  std::vector<std::vector<std::vector<int>>> mid_;
};

}  // namespace ucl
