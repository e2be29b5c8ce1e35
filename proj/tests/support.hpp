#pragma once

// Shared test helpers: tiny-graph enumeration and definition-level brute
// forces kept independent of the library code they check.

#include <functional>
#include <optional>
#include <vector>

#include "equicolor/graph.hpp"

namespace test_support {

using equicolor::Graph;
using equicolor::Vertex;

inline Graph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

// all labeled graphs on n vertices, by edge bitmask
inline void for_all_graphs(int n, const std::function<void(const Graph&)>& fn) {
  std::vector<std::pair<int, int>> slots;
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) slots.emplace_back(u, v);
  for (unsigned long long mask = 0; mask < (1ULL << slots.size()); ++mask) {
    Graph g(n);
    for (size_t i = 0; i < slots.size(); ++i)
      if ((mask >> i) & 1ULL) g.add_edge(slots[i].first, slots[i].second);
    fn(g);
  }
}

// maximum matching size by direct recursion over edges
inline int brute_matching_size(const Graph& g) {
  auto edges = g.edges();
  std::vector<char> used(static_cast<size_t>(g.n()) + 1, 0);
  std::function<int(size_t)> rec = [&](size_t i) -> int {
    if (i == edges.size()) return 0;
    int best = rec(i + 1);
    auto [u, v] = edges[i];
    if (!used[static_cast<size_t>(u)] && !used[static_cast<size_t>(v)]) {
      used[static_cast<size_t>(u)] = used[static_cast<size_t>(v)] = 1;
      best = std::max(best, 1 + rec(i + 1));
      used[static_cast<size_t>(u)] = used[static_cast<size_t>(v)] = 0;
    }
    return best;
  };
  return rec(0);
}

// smallest deletion set (as size) putting the residual graph into the class
// accepted by `pred`; returns nullopt if none within `budget`
inline std::optional<int> brute_min_deletion(const Graph& g, int budget,
                                             const std::function<bool(const Graph&)>& pred) {
  int n = g.n();
  for (int size = 0; size <= std::min(budget, n); ++size) {
    std::vector<int> pick(static_cast<size_t>(size));
    std::function<bool(int, int)> choose = [&](int idx, int from) -> bool {
      if (idx == size) {
        std::vector<Vertex> removed(pick.begin(), pick.end());
        return pred(equicolor::remove_vertices(g, removed));
      }
      for (int v = from; v <= n; ++v) {
        pick[static_cast<size_t>(idx)] = v;
        if (choose(idx + 1, v + 1)) return true;
      }
      return false;
    };
    if (choose(0, 1)) return size;
  }
  return std::nullopt;
}

inline bool pred_cluster(const Graph& g) {
  for (int a = 1; a <= g.n(); ++a)
    for (int b = a + 1; b <= g.n(); ++b)
      for (int c = b + 1; c <= g.n(); ++c) {
        int cnt = static_cast<int>(g.has_edge(a, b)) + static_cast<int>(g.has_edge(a, c)) +
                  static_cast<int>(g.has_edge(b, c));
        if (cnt == 2) return false;
      }
  return true;
}

inline bool pred_cocluster(const Graph& g) { return pred_cluster(equicolor::complement(g)); }

inline bool pred_clique(const Graph& g) {
  for (int a = 1; a <= g.n(); ++a)
    for (int b = a + 1; b <= g.n(); ++b)
      if (!g.has_edge(a, b)) return false;
  return true;
}

inline bool pred_paths(const Graph& g, int ell) {
  for (auto& comp : equicolor::connected_components(g)) {
    if (static_cast<int>(comp.size()) > ell) return false;
    int edges = 0;
    for (Vertex u : comp) {
      int d = g.degree(u);
      if (d > 2) return false;
      edges += d;
    }
    if (edges != 2 * (static_cast<int>(comp.size()) - 1)) return false;  // cycle
  }
  return true;
}

inline Graph petersen() {
  Graph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i + 1, (i + 1) % 5 + 1);        // outer cycle
    g.add_edge(i + 6, (i + 2) % 5 + 6);        // inner pentagram
    g.add_edge(i + 1, i + 6);                  // spokes
  }
  return g;
}

inline Graph worked_extension_graph() {
  // 6 vertices; edges 12, 24, 43, 31, 15, 56, 62
  return graph_from_edges(6, {{1, 2}, {2, 4}, {4, 3}, {3, 1}, {1, 5}, {5, 6}, {6, 2}});
}

}  // namespace test_support
