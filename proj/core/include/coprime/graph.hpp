// Small undirected graphs on vertices 1..N, used to state which pairs of
// polynomials in a tuple must be coprime.
#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace coprime {

struct Graph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;  // normalized: i < j, sorted, unique

  Graph(int n, std::vector<std::pair<int, int>> e)
      : vertex_count(n), edges(std::move(e)) {
    if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
    for (auto& [i, j] : edges) {
      if (i > j) std::swap(i, j);
      if (i < 1 || j > n || i == j) throw std::invalid_argument("edge out of range");
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
      throw std::invalid_argument("duplicate edge");
  }

  static Graph complete(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) e.emplace_back(i, j);
    return Graph(n, std::move(e));
  }

  static Graph path(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i < n; ++i) e.emplace_back(i, i + 1);
    return Graph(n, std::move(e));
  }

  static Graph edgeless(int n) { return Graph(n, {}); }

  /// k disjoint edges (1,2), (3,4), ... on 2k vertices.
  static Graph disjoint_edges(int k) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < k; ++i) e.emplace_back(2 * i + 1, 2 * i + 2);
    return Graph(2 * k, std::move(e));
  }
};

}  // namespace coprime
