#pragma once

// Structural vertex-deletion sets (modulators) consumed by the solvers and
// kernels, plus the host-graph decomposition used by the max-leaf kernel.
// Every modulator carries a certificate of what the residual graph is; the
// certificates are re-verifiable via verify_modulator.

#include <algorithm>
#include <optional>
#include <vector>

#include "equicolor/graph.hpp"

namespace equicolor {

enum class ModulatorKind { cluster, cocluster, clique, paths };

struct Modulator {
  ModulatorKind kind = ModulatorKind::cluster;
  std::vector<Vertex> u;                    // deletion set, sorted
  std::vector<std::vector<Vertex>> parts;   // cluster parts / co-cluster parts /
                                            // the clique / path vertex sequences
  int path_bound = 0;                       // only for kind == paths
};

namespace detail {

// Lexicographically smallest induced P3 as a sorted triple, or empty.
inline std::vector<Vertex> smallest_induced_p3(const Graph& g, const std::vector<char>& gone) {
  int n = g.n();
  for (Vertex a = 1; a <= n; ++a) {
    if (gone[a]) continue;
    for (Vertex b = a + 1; b <= n; ++b) {
      if (gone[b]) continue;
      for (Vertex c = b + 1; c <= n; ++c) {
        if (gone[c]) continue;
        int cnt = static_cast<int>(g.has_edge(a, b)) + static_cast<int>(g.has_edge(a, c)) +
                  static_cast<int>(g.has_edge(b, c));
        if (cnt == 2) return {a, b, c};
      }
    }
  }
  return {};
}

inline void spend_node(long long* nodes_left) {
  if (nodes_left == nullptr) return;
  if (--*nodes_left < 0) throw GuardError("modulator search node budget exhausted");
}

inline bool cluster_branch(const Graph& g, std::vector<char>& gone, int budget,
                           std::vector<Vertex>& chosen, long long* nodes_left) {
  spend_node(nodes_left);
  auto p3 = smallest_induced_p3(g, gone);
  if (p3.empty()) return true;
  if (budget == 0) return false;
  for (Vertex v : p3) {
    gone[v] = 1;
    chosen.push_back(v);
    if (cluster_branch(g, gone, budget - 1, chosen, nodes_left)) return true;
    chosen.pop_back();
    gone[v] = 0;
  }
  return false;
}

}  // namespace detail

inline bool is_cluster_graph(const Graph& g) {
  std::vector<char> gone(static_cast<size_t>(g.n()) + 1, 0);
  return detail::smallest_induced_p3(g, gone).empty();
}

inline std::optional<Modulator> cluster_modulator(const Graph& g, int budget,
                                                  long long* nodes_left = nullptr) {
  if (budget < 0) throw std::invalid_argument("negative budget");
  std::vector<char> gone(static_cast<size_t>(g.n()) + 1, 0);
  std::vector<Vertex> chosen;
  if (!detail::cluster_branch(g, gone, budget, chosen, nodes_left)) return std::nullopt;
  std::sort(chosen.begin(), chosen.end());
  Modulator mod;
  mod.kind = ModulatorKind::cluster;
  mod.u = chosen;
  std::vector<Vertex> rest;
  Graph h = remove_vertices(g, chosen, &rest);
  for (auto& comp : connected_components(h)) {
    std::vector<Vertex> part;
    for (Vertex v : comp) part.push_back(rest[static_cast<size_t>(v) - 1]);
    mod.parts.push_back(std::move(part));
  }
  return mod;
}

inline std::optional<Modulator> cocluster_modulator(const Graph& g, int budget,
                                                    long long* nodes_left = nullptr) {
  Graph co = complement(g);
  auto mod = cluster_modulator(co, budget, nodes_left);
  if (!mod) return std::nullopt;
  mod->kind = ModulatorKind::cocluster;  // parts are the co-components of G - U
  return mod;
}

// Greedy 2-approximation: for each non-edge, remove both endpoints.
inline Modulator clique_modulator_greedy(const Graph& g) {
  std::vector<char> gone(static_cast<size_t>(g.n()) + 1, 0);
  std::vector<Vertex> u;
  for (;;) {
    bool found = false;
    for (Vertex a = 1; a <= g.n() && !found; ++a) {
      if (gone[a]) continue;
      for (Vertex b = a + 1; b <= g.n() && !found; ++b) {
        if (gone[b] || g.has_edge(a, b)) continue;
        gone[a] = gone[b] = 1;
        u.push_back(a);
        u.push_back(b);
        found = true;
      }
    }
    if (!found) break;
  }
  std::sort(u.begin(), u.end());
  Modulator mod;
  mod.kind = ModulatorKind::clique;
  mod.u = u;
  std::vector<Vertex> clique;
  for (Vertex v = 1; v <= g.n(); ++v)
    if (!gone[v]) clique.push_back(v);
  mod.parts.push_back(std::move(clique));
  return mod;
}

namespace detail {

// After all degree->=3 vertices are gone the residue is paths and cycles.
// Obstruction priority: high-degree vertex, then a cycle, then an over-long
// path; each has a witness set of <= max(4, ell + 1) vertices to branch on.
struct PathObstruction {
  std::vector<Vertex> branch_set;
};

inline std::optional<PathObstruction> find_path_obstruction(const Graph& g,
                                                            const std::vector<char>& gone,
                                                            int ell) {
  int n = g.n();
  auto live_degree = [&](Vertex v) {
    int d = 0;
    for (Vertex w : g.neighbors(v))
      if (!gone[w]) ++d;
    return d;
  };
  for (Vertex v = 1; v <= n; ++v) {
    if (gone[v]) continue;
    if (live_degree(v) >= 3) {
      PathObstruction ob;
      ob.branch_set.push_back(v);
      for (Vertex w : g.neighbors(v)) {
        if (gone[w]) continue;
        ob.branch_set.push_back(w);
        if (ob.branch_set.size() == 4) break;
      }
      return ob;
    }
  }
  // cycles: walk from the smallest vertex of any cycle toward its smaller
  // neighbor; any ell+1 consecutive cycle vertices must contain a deletion.
  std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
  for (Vertex s = 1; s <= n; ++s) {
    if (gone[s] || seen[s]) continue;
    std::vector<Vertex> comp;
    std::vector<Vertex> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (Vertex w : g.neighbors(u))
        if (!gone[w] && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    int edges = 0;
    for (Vertex u : comp)
      for (Vertex w : g.neighbors(u))
        if (!gone[w] && u < w) ++edges;
    std::sort(comp.begin(), comp.end());
    bool is_cycle = edges == static_cast<int>(comp.size()) && comp.size() >= 3;
    if (is_cycle) {
      PathObstruction ob;
      Vertex cur = comp.front(), prev = 0;
      // smaller live neighbor first
      for (size_t steps = 0; steps < comp.size() && ob.branch_set.size() < static_cast<size_t>(ell) + 1;
           ++steps) {
        ob.branch_set.push_back(cur);
        Vertex next = 0;
        for (Vertex w : g.neighbors(cur))
          if (!gone[w] && w != prev) {
            next = w;
            break;
          }
        prev = cur;
        cur = next;
      }
      return ob;
    }
    if (static_cast<int>(comp.size()) > ell) {
      // path component with > ell vertices: ell+1 consecutive from the
      // smaller endpoint
      Vertex endp = 0;
      for (Vertex u : comp) {
        int d = 0;
        for (Vertex w : g.neighbors(u))
          if (!gone[w]) ++d;
        if (d <= 1) {
          endp = u;
          break;
        }
      }
      PathObstruction ob;
      Vertex cur = endp, prev = 0;
      while (ob.branch_set.size() < static_cast<size_t>(ell) + 1) {
        ob.branch_set.push_back(cur);
        Vertex next = 0;
        for (Vertex w : g.neighbors(cur))
          if (!gone[w] && w != prev) {
            next = w;
            break;
          }
        prev = cur;
        cur = next;
      }
      return ob;
    }
  }
  return std::nullopt;
}

inline bool path_branch(const Graph& g, std::vector<char>& gone, int ell, int budget,
                        std::vector<Vertex>& chosen, long long* nodes_left) {
  spend_node(nodes_left);
  auto ob = find_path_obstruction(g, gone, ell);
  if (!ob) return true;
  if (budget == 0) return false;
  for (Vertex v : ob->branch_set) {
    gone[v] = 1;
    chosen.push_back(v);
    if (path_branch(g, gone, ell, budget - 1, chosen, nodes_left)) return true;
    chosen.pop_back();
    gone[v] = 0;
  }
  return false;
}

// Orders a path component as a vertex sequence starting at its smaller
// endpoint; throws if the component is not a path.
inline std::vector<Vertex> order_path(const Graph& g, const std::vector<Vertex>& comp) {
  if (comp.size() == 1) return comp;
  auto inside = [&](Vertex w) { return std::binary_search(comp.begin(), comp.end(), w); };
  int edges = 0;
  Vertex endp = 0;
  for (Vertex u : comp) {
    int d = 0;
    for (Vertex w : g.neighbors(u))
      if (inside(w)) ++d;
    if (d > 2) throw ContractViolation("component is not a path");
    if (d == 1 && endp == 0) endp = u;
    edges += d;
  }
  if (endp == 0 || edges != 2 * (static_cast<int>(comp.size()) - 1))
    throw ContractViolation("component is not a path");
  std::vector<Vertex> seq;
  Vertex cur = endp, prev = 0;
  while (seq.size() < comp.size()) {
    seq.push_back(cur);
    Vertex next = 0;
    for (Vertex w : g.neighbors(cur))
      if (inside(w) && w != prev) {
        next = w;
        break;
      }
    prev = cur;
    cur = next;
    if (cur == 0 && seq.size() < comp.size())
      throw ContractViolation("component is not a path");
  }
  return seq;
}

}  // namespace detail

inline std::optional<Modulator> path_modulator(const Graph& g, int ell, int budget,
                                               long long* nodes_left = nullptr) {
  if (ell < 1) throw std::invalid_argument("path bound must be >= 1");
  if (budget < 0) throw std::invalid_argument("negative budget");
  std::vector<char> gone(static_cast<size_t>(g.n()) + 1, 0);
  std::vector<Vertex> chosen;
  if (!detail::path_branch(g, gone, ell, budget, chosen, nodes_left)) return std::nullopt;
  std::sort(chosen.begin(), chosen.end());
  Modulator mod;
  mod.kind = ModulatorKind::paths;
  mod.path_bound = ell;
  mod.u = chosen;
  std::vector<Vertex> rest;
  Graph h = remove_vertices(g, chosen, &rest);
  for (auto& comp : connected_components(h)) {
    auto seq = detail::order_path(h, comp);
    std::vector<Vertex> part;
    for (Vertex v : seq) part.push_back(rest[static_cast<size_t>(v) - 1]);
    mod.parts.push_back(std::move(part));
  }
  return mod;
}

inline bool verify_modulator(const Graph& g, const Modulator& mod) {
  std::vector<char> in_u(static_cast<size_t>(g.n()) + 1, 0);
  for (Vertex v : mod.u) {
    if (!g.valid_vertex(v) || in_u[v]) return false;
    in_u[v] = 1;
  }
  std::vector<char> covered(static_cast<size_t>(g.n()) + 1, 0);
  for (const auto& part : mod.parts)
    for (Vertex v : part) {
      if (!g.valid_vertex(v) || in_u[v] || covered[v]) return false;
      covered[v] = 1;
    }
  for (Vertex v = 1; v <= g.n(); ++v)
    if (!in_u[v] && !covered[v]) return false;

  auto same_part_index = [&] {
    std::vector<int> idx(static_cast<size_t>(g.n()) + 1, -1);
    for (size_t i = 0; i < mod.parts.size(); ++i)
      for (Vertex v : mod.parts[i]) idx[static_cast<size_t>(v)] = static_cast<int>(i);
    return idx;
  }();

  switch (mod.kind) {
    case ModulatorKind::cluster: {
      // parts are the components of G - U and each is a clique
      for (const auto& part : mod.parts)
        for (size_t i = 0; i < part.size(); ++i)
          for (size_t j = i + 1; j < part.size(); ++j)
            if (!g.has_edge(part[i], part[j])) return false;
      for (Vertex v = 1; v <= g.n(); ++v)
        if (!in_u[v])
          for (Vertex w : g.neighbors(v))
            if (!in_u[w] && same_part_index[v] != same_part_index[w]) return false;
      return true;
    }
    case ModulatorKind::cocluster: {
      // parts are independent sets and all cross-part pairs are adjacent
      for (const auto& part : mod.parts)
        for (size_t i = 0; i < part.size(); ++i)
          for (size_t j = i + 1; j < part.size(); ++j)
            if (g.has_edge(part[i], part[j])) return false;
      for (Vertex v = 1; v <= g.n(); ++v)
        if (!in_u[v])
          for (Vertex w = v + 1; w <= g.n(); ++w)
            if (!in_u[w] && same_part_index[v] != same_part_index[w] && !g.has_edge(v, w))
              return false;
      return true;
    }
    case ModulatorKind::clique: {
      if (mod.parts.size() != 1) return false;
      const auto& q = mod.parts[0];
      for (size_t i = 0; i < q.size(); ++i)
        for (size_t j = i + 1; j < q.size(); ++j)
          if (!g.has_edge(q[i], q[j])) return false;
      return true;
    }
    case ModulatorKind::paths: {
      for (const auto& part : mod.parts) {
        if (static_cast<int>(part.size()) > mod.path_bound) return false;
        for (size_t i = 0; i + 1 < part.size(); ++i)
          if (!g.has_edge(part[i], part[i + 1])) return false;
        // no chords, no edges leaving the component within G - U
        for (size_t i = 0; i < part.size(); ++i)
          for (Vertex w : g.neighbors(part[i])) {
            if (in_u[w]) continue;
            bool consecutive = (i > 0 && part[i - 1] == w) || (i + 1 < part.size() && part[i + 1] == w);
            if (!consecutive) return false;
          }
      }
      return true;
    }
  }
  return false;
}

// ---- host graph decomposition (max-leaf kernel) ----

struct HostEdge {
  Vertex u = 0, v = 0;              // host endpoints (u == v for a cycle anchor loop)
  std::vector<Vertex> internal;     // internal path, ordered from u to v
};

struct HostDecomposition {
  int original_n = 0;
  std::vector<Vertex> host_vertices;  // sorted
  std::vector<HostEdge> edges;
};

// Host vertices are the degree-!=2 vertices plus one anchor (minimum id) per
// all-degree-2 component; every other vertex lies inside exactly one
// subdivided edge.
inline HostDecomposition host_graph(const Graph& g) {
  HostDecomposition host;
  host.original_n = g.n();
  std::vector<char> is_host(static_cast<size_t>(g.n()) + 1, 0);
  for (Vertex v = 1; v <= g.n(); ++v)
    if (g.degree(v) != 2) is_host[v] = 1;
  for (const auto& comp : connected_components(g)) {
    bool any = false;
    for (Vertex v : comp)
      if (is_host[v]) any = true;
    if (!any) is_host[comp.front()] = 1;  // cycle component: anchor at min id
  }
  for (Vertex v = 1; v <= g.n(); ++v)
    if (is_host[v]) host.host_vertices.push_back(v);

  // Walk each subdivided edge once. Arms are explored from each host vertex
  // in ascending neighbor order; a (host, first-step) pair identifies an arm.
  std::vector<std::vector<char>> used_arm(static_cast<size_t>(g.n()) + 1);
  for (Vertex v = 1; v <= g.n(); ++v)
    used_arm[v].assign(g.neighbors(v).size(), 0);

  auto arm_index = [&](Vertex v, Vertex w) {
    const auto& nb = g.neighbors(v);
    return static_cast<size_t>(std::lower_bound(nb.begin(), nb.end(), w) - nb.begin());
  };

  for (Vertex hv : host.host_vertices) {
    const auto& nb = g.neighbors(hv);
    for (size_t i = 0; i < nb.size(); ++i) {
      if (used_arm[hv][i]) continue;
      used_arm[hv][i] = 1;
      HostEdge he;
      he.u = hv;
      Vertex prev = hv, cur = nb[i];
      while (!is_host[cur]) {
        he.internal.push_back(cur);
        const auto& cnb = g.neighbors(cur);
        Vertex next = cnb[0] == prev ? cnb[1] : cnb[0];
        prev = cur;
        cur = next;
      }
      he.v = cur;
      used_arm[cur][arm_index(cur, prev)] = 1;
      host.edges.push_back(std::move(he));
    }
  }
  return host;
}

// Rebuilds the original graph from its host decomposition.
inline Graph expand_host(const HostDecomposition& host) {
  Graph g(host.original_n);
  for (const auto& he : host.edges) {
    Vertex prev = he.u;
    for (Vertex x : he.internal) {
      g.add_edge(prev, x);
      prev = x;
    }
    g.add_edge(prev, he.v);
  }
  return g;
}

}  // namespace equicolor
