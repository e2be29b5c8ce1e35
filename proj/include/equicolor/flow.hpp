#pragma once

// Integer max-flow (shortest augmenting path, BFS) plus the
// coloring-extension network: phase 1 demands every color reach the floor
// class size, phase 2 raises selected source arcs by one and resumes
// augmenting from the phase-1 flow.

#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <vector>

#include "equicolor/graph.hpp"
#include "equicolor/modulators.hpp"

namespace equicolor {

enum class ArcTag { none, S, F0, F1, R, T };

struct FlowNetwork {
  int node_count = 0;
  int source = 0, sink = 0;
  struct Arc {
    int from = 0, to = 0;
    long long cap = 0;
    ArcTag tag = ArcTag::none;
  };
  std::vector<Arc> arcs;

  int add_arc(int from, int to, long long cap, ArcTag tag = ArcTag::none) {
    if (cap < 0) throw std::invalid_argument("negative arc capacity");
    arcs.push_back({from, to, cap, tag});
    return static_cast<int>(arcs.size()) - 1;
  }
};

struct FlowResult {
  long long value = 0;
  std::vector<long long> per_arc;
};

// Residual engine; capacities may be raised between runs and augmentation
// resumed, which is what the two-phase extension needs.
class MaxFlowEngine {
 public:
  explicit MaxFlowEngine(const FlowNetwork& net) : net_(net) {
    int n = net.node_count;
    head_.assign(static_cast<size_t>(n), {});
    // residual arc pairs, ordered by ascending (from, to) for reproducibility
    std::vector<int> order(net.arcs.size());
    for (size_t i = 0; i < net.arcs.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      const auto& x = net.arcs[static_cast<size_t>(a)];
      const auto& y = net.arcs[static_cast<size_t>(b)];
      return std::pair(x.from, x.to) < std::pair(y.from, y.to);
    });
    res_of_arc_.assign(net.arcs.size(), -1);
    for (int id : order) {
      const auto& a = net.arcs[static_cast<size_t>(id)];
      res_of_arc_[static_cast<size_t>(id)] = static_cast<int>(to_.size());
      head_[static_cast<size_t>(a.from)].push_back(static_cast<int>(to_.size()));
      to_.push_back(a.to);
      residual_.push_back(a.cap);
      head_[static_cast<size_t>(a.to)].push_back(static_cast<int>(to_.size()));
      to_.push_back(a.from);
      residual_.push_back(0);
    }
  }

  // Augments until no path remains; returns total flow accumulated so far.
  long long run() {
    for (;;) {
      auto path = bfs_path();
      if (path.empty()) break;
      long long push = std::numeric_limits<long long>::max();
      for (int e : path) push = std::min(push, residual_[static_cast<size_t>(e)]);
      for (int e : path) {
        residual_[static_cast<size_t>(e)] -= push;
        residual_[static_cast<size_t>(e ^ 1)] += push;
      }
      value_ += push;
    }
    return value_;
  }

  void raise_capacity(int arc_id, long long extra) {
    if (extra < 0) throw std::invalid_argument("capacity can only be raised");
    residual_[static_cast<size_t>(res_of_arc_[static_cast<size_t>(arc_id)])] += extra;
  }

  long long value() const { return value_; }

  long long flow_on(int arc_id) const {
    int e = res_of_arc_[static_cast<size_t>(arc_id)];
    return residual_[static_cast<size_t>(e ^ 1)];
  }

  FlowResult result() const {
    FlowResult r;
    r.value = value_;
    r.per_arc.resize(net_.arcs.size());
    for (size_t i = 0; i < net_.arcs.size(); ++i) r.per_arc[i] = flow_on(static_cast<int>(i));
    return r;
  }

 private:
  std::vector<int> bfs_path() {
    std::vector<int> pred_edge(static_cast<size_t>(net_.node_count), -1);
    std::vector<char> seen(static_cast<size_t>(net_.node_count), 0);
    std::queue<int> q;
    q.push(net_.source);
    seen[static_cast<size_t>(net_.source)] = 1;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      if (u == net_.sink) break;
      for (int e : head_[static_cast<size_t>(u)]) {
        int v = to_[static_cast<size_t>(e)];
        if (seen[static_cast<size_t>(v)] || residual_[static_cast<size_t>(e)] <= 0) continue;
        seen[static_cast<size_t>(v)] = 1;
        pred_edge[static_cast<size_t>(v)] = e;
        q.push(v);
      }
    }
    std::vector<int> path;
    if (!seen[static_cast<size_t>(net_.sink)]) return path;
    int v = net_.sink;
    while (v != net_.source) {
      int e = pred_edge[static_cast<size_t>(v)];
      path.push_back(e);
      v = to_[static_cast<size_t>(e ^ 1)];
    }
    std::reverse(path.begin(), path.end());
    return path;
  }

  const FlowNetwork& net_;
  std::vector<std::vector<int>> head_;
  std::vector<int> to_;
  std::vector<long long> residual_;
  std::vector<int> res_of_arc_;
  long long value_ = 0;
};

inline FlowResult max_flow(const FlowNetwork& net) {
  MaxFlowEngine engine(net);
  engine.run();
  return engine.result();
}

// The extension network for a cluster modulator. Nodes: s, t, one a_i per
// color, one w_ij per (color, cluster part), one node per vertex of G - U.
// R-arcs exist only where the precoloring leaves the color admissible.
struct ClusterNetwork {
  FlowNetwork net;
  std::vector<int> s_arc;        // per color 1..k
  std::vector<Vertex> arc_vertex;  // per arc: decoded vertex for R arcs, else 0
  std::vector<Color> arc_color;  // per arc: color for S/F0/F1/R arcs, else 0
};

inline ClusterNetwork build_cluster_network(const Graph& g, const Modulator& mod,
                                            const Coloring& pre, int k, long long floor_size) {
  if (mod.kind != ModulatorKind::cluster && mod.kind != ModulatorKind::clique)
    throw ContractViolation("cluster network needs a cluster-style modulator");
  for (Vertex a : mod.u)
    for (Vertex b : mod.u)
      if (a < b && g.has_edge(a, b) && pre.at(a) == pre.at(b) && pre.at(a) != 0)
        throw ContractViolation("precoloring is improper on G[U]");

  size_t covered = mod.u.size();
  for (const auto& part : mod.parts) covered += part.size();
  if (covered != static_cast<size_t>(g.n()))
    throw ContractViolation("modulator certificate does not cover the graph");

  int r = static_cast<int>(mod.parts.size());
  ClusterNetwork cn;
  FlowNetwork& net = cn.net;
  int s = 0, t = 1;
  net.source = s;
  net.sink = t;
  auto a_node = [&](Color i) { return 2 + (i - 1); };
  auto w_node = [&](Color i, int j) { return 2 + k + (i - 1) * r + j; };
  std::vector<int> vertex_node(static_cast<size_t>(g.n()) + 1, -1);
  int next = 2 + k + k * r;
  for (const auto& part : mod.parts)
    for (Vertex v : part) vertex_node[static_cast<size_t>(v)] = next++;
  net.node_count = next;

  std::vector<long long> pre_count(static_cast<size_t>(k) + 1, 0);
  for (Vertex v : mod.u) {
    Color c = pre.at(v);
    if (c < 1 || c > k) throw ContractViolation("precoloring must color all of U with 1..k");
    ++pre_count[static_cast<size_t>(c)];
  }

  cn.s_arc.assign(static_cast<size_t>(k) + 1, -1);
  auto note = [&](int id, Color c, Vertex v) {
    cn.arc_color.resize(net.arcs.size(), 0);
    cn.arc_vertex.resize(net.arcs.size(), 0);
    cn.arc_color[static_cast<size_t>(id)] = c;
    cn.arc_vertex[static_cast<size_t>(id)] = v;
  };
  for (Color i = 1; i <= k; ++i) {
    cn.s_arc[static_cast<size_t>(i)] = net.add_arc(s, a_node(i), floor_size, ArcTag::S);
    note(cn.s_arc[static_cast<size_t>(i)], i, 0);
    note(net.add_arc(a_node(i), t, pre_count[static_cast<size_t>(i)], ArcTag::F0), i, 0);
    for (int j = 0; j < r; ++j) note(net.add_arc(a_node(i), w_node(i, j), 1, ArcTag::F1), i, 0);
  }
  for (int j = 0; j < r; ++j) {
    for (Vertex v : mod.parts[static_cast<size_t>(j)]) {
      for (Color i = 1; i <= k; ++i) {
        bool admissible = true;
        for (Vertex w : g.neighbors(v))
          if (pre.at(w) == i) {
            admissible = false;
            break;
          }
        if (admissible)
          note(net.add_arc(w_node(i, j), vertex_node[static_cast<size_t>(v)], 1, ArcTag::R), i, v);
      }
      note(net.add_arc(vertex_node[static_cast<size_t>(v)], t, 1, ArcTag::T), 0, v);
    }
  }
  return cn;
}

// Two-phase extension with explicit class-size targets: every color must
// reach floor_size; colors in ceil_colors may take one more; the decoded
// (possibly partial on G - U) coloring is returned iff the final flow value
// equals `total`.
inline std::optional<Coloring> extend_precoloring_exact(const Graph& g, const Modulator& mod,
                                                        const Coloring& pre, int k,
                                                        const std::vector<Color>& ceil_colors,
                                                        long long floor_size, long long total) {
  ClusterNetwork cn = build_cluster_network(g, mod, pre, k, floor_size);
  MaxFlowEngine engine(cn.net);
  engine.run();
  if (engine.value() < checked_mul(floor_size, k)) return std::nullopt;
  for (Color c : ceil_colors) {
    if (c < 1 || c > k) throw ContractViolation("ceil color out of range");
    engine.raise_capacity(cn.s_arc[static_cast<size_t>(c)], 1);
  }
  engine.run();
  // phase 2 never drains a source arc below the phase-1 floor
  for (Color i = 1; i <= k; ++i)
    if (engine.flow_on(cn.s_arc[static_cast<size_t>(i)]) < floor_size)
      throw ContractViolation("source arc dropped below floor after phase 2");
  if (engine.value() != total) return std::nullopt;

  Coloring phi(g.n());
  for (Vertex v : mod.u) phi.set(v, pre.at(v));
  for (size_t id = 0; id < cn.net.arcs.size(); ++id) {
    const auto& arc = cn.net.arcs[id];
    if (arc.tag == ArcTag::R && engine.flow_on(static_cast<int>(id)) == 1)
      phi.set(cn.arc_vertex[id], cn.arc_color[id]);
  }
  return phi;
}

// Equitable-extension entry point: floor = n/k, total = n, and by symmetry
// all colors receive the +1 allowance in phase 2.
inline std::optional<Coloring> extend_precoloring(const Graph& g, const Modulator& mod,
                                                  const Coloring& pre, int k) {
  std::vector<Color> all(static_cast<size_t>(k));
  for (Color c = 1; c <= k; ++c) all[static_cast<size_t>(c) - 1] = c;
  auto phi = extend_precoloring_exact(g, mod, pre, k, all, g.n() / k, g.n());
  if (phi && !phi->total()) throw ContractViolation("full extension left a vertex uncolored");
  return phi;
}

}  // namespace equicolor
