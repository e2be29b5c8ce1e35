#pragma once

// Maximum matching in general graphs via blossom contraction
// (Edmonds), O(V^3). Needed because the clique-kernel works on complement
// graphs, which are nowhere near bipartite.

#include <queue>
#include <vector>

#include "equicolor/graph.hpp"

namespace equicolor {

namespace detail {

class Blossom {
 public:
  explicit Blossom(const Graph& g)
      : g_(g),
        n_(g.n()),
        match_(static_cast<size_t>(n_) + 1, 0),
        parent_(static_cast<size_t>(n_) + 1, 0),
        base_(static_cast<size_t>(n_) + 1, 0),
        used_(static_cast<size_t>(n_) + 1, 0),
        blossom_(static_cast<size_t>(n_) + 1, 0) {}

  std::vector<std::pair<Vertex, Vertex>> run() {
    for (Vertex v = 1; v <= n_; ++v)
      if (match_[v] == 0) {
        Vertex u = find_path(v);
        if (u != 0) augment(u);
      }
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex v = 1; v <= n_; ++v)
      if (match_[v] > v) out.emplace_back(v, match_[v]);
    return out;
  }

 private:
  Vertex lca(Vertex a, Vertex b) {
    std::vector<char> mark(static_cast<size_t>(n_) + 1, 0);
    for (;;) {
      a = base_[a];
      mark[a] = 1;
      if (match_[a] == 0) break;
      a = parent_[match_[a]];
    }
    for (;;) {
      b = base_[b];
      if (mark[b]) return b;
      b = parent_[match_[b]];
    }
  }

  void mark_path(Vertex v, Vertex b, Vertex child) {
    while (base_[v] != b) {
      blossom_[base_[v]] = 1;
      blossom_[base_[match_[v]]] = 1;
      parent_[v] = child;
      child = match_[v];
      v = parent_[match_[v]];
    }
  }

  Vertex find_path(Vertex root) {
    std::fill(used_.begin(), used_.end(), 0);
    std::fill(parent_.begin(), parent_.end(), 0);
    for (Vertex v = 1; v <= n_; ++v) base_[v] = v;
    used_[root] = 1;
    std::queue<Vertex> q;
    q.push(root);
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop();
      for (Vertex to : g_.neighbors(v)) {
        if (base_[v] == base_[to] || match_[v] == to) continue;
        if (to == root || (match_[to] != 0 && parent_[match_[to]] != 0)) {
          Vertex curbase = lca(v, to);
          std::fill(blossom_.begin(), blossom_.end(), 0);
          mark_path(v, curbase, to);
          mark_path(to, curbase, v);
          for (Vertex i = 1; i <= n_; ++i)
            if (blossom_[base_[i]]) {
              base_[i] = curbase;
              if (!used_[i]) {
                used_[i] = 1;
                q.push(i);
              }
            }
        } else if (parent_[to] == 0) {
          parent_[to] = v;
          if (match_[to] == 0) return to;
          used_[match_[to]] = 1;
          q.push(match_[to]);
        }
      }
    }
    return 0;
  }

  void augment(Vertex v) {
    while (v != 0) {
      Vertex pv = parent_[v];
      Vertex ppv = match_[pv];
      match_[v] = pv;
      match_[pv] = v;
      v = ppv;
    }
  }

  const Graph& g_;
  int n_;
  std::vector<Vertex> match_, parent_, base_;
  std::vector<char> used_, blossom_;
};

}  // namespace detail

// Returns a maximum matching as (u, v) pairs with u < v, ascending by u.
inline std::vector<std::pair<Vertex, Vertex>> maximum_matching(const Graph& g) {
  return detail::Blossom(g).run();
}

}  // namespace equicolor
