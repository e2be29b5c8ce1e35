#pragma once

// Simple undirected graphs on vertices 1..n, colorings (total or partial),
// the two instance kinds handled by the toolkit, and coloring verification.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace equicolor {

using Vertex = int;
using Color = int;

struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ContractViolation : std::logic_error {
  using std::logic_error::logic_error;
};

inline long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("integer overflow in addition");
  return r;
}

inline long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("integer overflow in multiplication");
  return r;
}

class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : adj_(static_cast<size_t>(n) + 1) {}

  int n() const { return static_cast<int>(adj_.size()) - 1; }
  int m() const { return edge_count_; }

  bool valid_vertex(Vertex v) const { return v >= 1 && v <= n(); }

  void check_vertex(Vertex v) const {
    if (!valid_vertex(v))
      throw std::out_of_range("vertex " + std::to_string(v) + " out of range 1.." +
                              std::to_string(n()));
  }

  // Inserts keeping adjacency sorted; parallel edges collapse silently.
  void add_edge(Vertex u, Vertex v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    if (insert_sorted(adj_[u], v)) {
      insert_sorted(adj_[v], u);
      ++edge_count_;
    }
  }

  bool has_edge(Vertex u, Vertex v) const {
    if (!valid_vertex(u) || !valid_vertex(v)) return false;
    const auto& a = adj_[u];
    return std::binary_search(a.begin(), a.end(), v);
  }

  const std::vector<Vertex>& neighbors(Vertex v) const {
    check_vertex(v);
    return adj_[v];
  }

  int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }

  // All edges as (u, v) with u < v, ascending.
  std::vector<std::pair<Vertex, Vertex>> edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(edge_count_);
    for (Vertex u = 1; u <= n(); ++u)
      for (Vertex v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  bool operator==(const Graph& o) const { return adj_ == o.adj_; }

 private:
  static bool insert_sorted(std::vector<Vertex>& xs, Vertex v) {
    auto it = std::lower_bound(xs.begin(), xs.end(), v);
    if (it != xs.end() && *it == v) return false;
    xs.insert(it, v);
    return true;
  }

  std::vector<std::vector<Vertex>> adj_;
  int edge_count_ = 0;
};

inline Graph complement(const Graph& g) {
  Graph h(g.n());
  for (Vertex u = 1; u <= g.n(); ++u) {
    const auto& a = g.neighbors(u);
    size_t i = 0;
    for (Vertex v = u + 1; v <= g.n(); ++v) {
      while (i < a.size() && a[i] < v) ++i;
      if (i < a.size() && a[i] == v) continue;
      h.add_edge(u, v);
    }
  }
  return h;
}

// Components listed sorted internally and ordered by smallest vertex.
inline std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  std::vector<std::vector<Vertex>> comps;
  std::vector<char> seen(static_cast<size_t>(g.n()) + 1, 0);
  std::vector<Vertex> stack;
  for (Vertex s = 1; s <= g.n(); ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> comp;
    stack.push_back(s);
    seen[s] = 1;
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (Vertex w : g.neighbors(u))
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

// Induced subgraph on `verts` (need not be sorted); new vertices are numbered
// 1..|verts| following ascending original ids. old_of_new[i] maps back.
inline Graph induced_subgraph(const Graph& g, std::vector<Vertex> verts,
                              std::vector<Vertex>* old_of_new = nullptr) {
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  Graph h(static_cast<int>(verts.size()));
  std::vector<int> new_of_old(static_cast<size_t>(g.n()) + 1, 0);
  for (size_t i = 0; i < verts.size(); ++i) new_of_old[verts[i]] = static_cast<int>(i) + 1;
  for (Vertex u : verts)
    for (Vertex v : g.neighbors(u))
      if (u < v && new_of_old[v] != 0) h.add_edge(new_of_old[u], new_of_old[v]);
  if (old_of_new) *old_of_new = verts;
  return h;
}

inline Graph remove_vertices(const Graph& g, const std::vector<Vertex>& removed,
                             std::vector<Vertex>* old_of_new = nullptr) {
  std::vector<char> gone(static_cast<size_t>(g.n()) + 1, 0);
  for (Vertex v : removed) gone[v] = 1;
  std::vector<Vertex> keep;
  for (Vertex v = 1; v <= g.n(); ++v)
    if (!gone[v]) keep.push_back(v);
  return induced_subgraph(g, keep, old_of_new);
}

class Coloring {
 public:
  Coloring() = default;
  explicit Coloring(int n) : assigned_(static_cast<size_t>(n) + 1, 0) {}

  int n() const { return static_cast<int>(assigned_.size()) - 1; }
  Color at(Vertex v) const { return assigned_[static_cast<size_t>(v)]; }
  bool colored(Vertex v) const { return at(v) != 0; }

  void set(Vertex v, Color c) {
    if (v < 1 || v > n()) throw std::out_of_range("coloring vertex out of range");
    if (c < 0) throw std::invalid_argument("negative color");
    assigned_[static_cast<size_t>(v)] = c;
  }

  void unset(Vertex v) { set(v, 0); }

  bool total() const {
    for (int v = 1; v <= n(); ++v)
      if (!colored(v)) return false;
    return true;
  }

  int max_color() const {
    int mx = 0;
    for (int v = 1; v <= n(); ++v) mx = std::max(mx, at(v));
    return mx;
  }

  // Class sizes over colors 1..k (index 0 unused).
  std::vector<long long> class_sizes(int k) const {
    std::vector<long long> s(static_cast<size_t>(k) + 1, 0);
    for (int v = 1; v <= n(); ++v) {
      Color c = at(v);
      if (c > k) throw std::out_of_range("color exceeds k in class_sizes");
      if (c > 0) ++s[static_cast<size_t>(c)];
    }
    return s;
  }

  bool operator==(const Coloring& o) const { return assigned_ == o.assigned_; }

 private:
  std::vector<Color> assigned_;
};

struct EquitableInstance {
  Graph graph;
  int k = 1;
};

struct NumberListInstance {
  Graph graph;
  std::vector<std::vector<Color>> lists;  // index 1..n, each sorted
  std::vector<long long> targets;         // index 1..q
  int color_count() const { return static_cast<int>(targets.size()) - 1; }

  const std::vector<Color>& list_of(Vertex v) const {
    return lists[static_cast<size_t>(v)];
  }

  long long target_sum() const {
    long long s = 0;
    for (int c = 1; c <= color_count(); ++c) s = checked_add(s, targets[static_cast<size_t>(c)]);
    return s;
  }
};

enum class SizeMode { none, equitable, exact_targets };

struct VerificationReport {
  bool complete = false;
  bool proper = false;
  std::optional<std::pair<Vertex, Vertex>> violating_edge;
  bool lists_ok = true;
  std::optional<Vertex> violating_list_vertex;
  SizeMode size_mode = SizeMode::none;
  bool sizes_ok = true;
  std::optional<Color> violating_color;

  bool ok() const { return complete && proper && lists_ok && sizes_ok; }
};

namespace detail {

inline void check_proper(const Graph& g, const Coloring& phi, VerificationReport& rep) {
  rep.proper = true;
  for (Vertex u = 1; u <= g.n(); ++u)
    for (Vertex v : g.neighbors(u))
      if (u < v && phi.at(u) != 0 && phi.at(u) == phi.at(v)) {
        rep.proper = false;
        if (!rep.violating_edge) rep.violating_edge = {u, v};
        return;
      }
}

}  // namespace detail

inline VerificationReport verify_coloring(const EquitableInstance& inst, const Coloring& phi) {
  VerificationReport rep;
  rep.size_mode = SizeMode::equitable;
  const Graph& g = inst.graph;
  if (phi.n() != g.n()) throw ContractViolation("coloring size mismatch");
  rep.complete = phi.total();
  if (!rep.complete) return rep;
  int k = inst.k;
  for (Vertex v = 1; v <= g.n(); ++v)
    if (phi.at(v) < 1 || phi.at(v) > k) {
      rep.sizes_ok = false;
      rep.violating_color = phi.at(v);
      return rep;
    }
  detail::check_proper(g, phi, rep);
  auto sizes = phi.class_sizes(k);
  long long lo = g.n() / k, hi = (g.n() + k - 1) / k;
  for (Color c = 1; c <= k; ++c)
    if (sizes[static_cast<size_t>(c)] < lo || sizes[static_cast<size_t>(c)] > hi) {
      rep.sizes_ok = false;
      rep.violating_color = c;
      break;
    }
  return rep;
}

inline VerificationReport verify_coloring(const NumberListInstance& inst, const Coloring& phi) {
  VerificationReport rep;
  rep.size_mode = SizeMode::exact_targets;
  const Graph& g = inst.graph;
  if (phi.n() != g.n()) throw ContractViolation("coloring size mismatch");
  rep.complete = phi.total();
  if (!rep.complete) return rep;
  int q = inst.color_count();
  for (Vertex v = 1; v <= g.n(); ++v) {
    Color c = phi.at(v);
    const auto& lst = inst.list_of(v);
    if (c < 1 || c > q || !std::binary_search(lst.begin(), lst.end(), c)) {
      rep.lists_ok = false;
      if (!rep.violating_list_vertex) rep.violating_list_vertex = v;
    }
  }
  detail::check_proper(g, phi, rep);
  auto sizes = phi.class_sizes(q);
  for (Color c = 1; c <= q; ++c)
    if (sizes[static_cast<size_t>(c)] != inst.targets[static_cast<size_t>(c)]) {
      rep.sizes_ok = false;
      rep.violating_color = c;
      break;
    }
  return rep;
}

}  // namespace equicolor
