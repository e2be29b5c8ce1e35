#pragma once

// The linear clique-distance kernel (with its polynomial decision rule when
// colors outnumber the modulator) and the cubic max-leaf kernel with a
// constructive coloring lift.
//
// The lift extends a balanced coloring over one removed path at a time. The
// case analyses follow the two balancing arguments exactly: a path of k+2
// vertices never worsens the balance by more than one (and only from zero),
// and each full k+1 segment buys one unit of balance back.

#include <optional>
#include <vector>

#include "equicolor/graph.hpp"
#include "equicolor/matching.hpp"
#include "equicolor/modulators.hpp"

namespace equicolor {

struct RemovedPath {
  Vertex host_u = 0, host_v = 0;
  std::vector<Vertex> vertices;  // ordered from the host_u side to the host_v side
  long long x = 0, c = 0;        // |P| = k+2 + c + x(k+1), x maximal
};

struct LiftData {
  Graph original;
  std::vector<Vertex> q_vertices;  // sorted original ids; reduced id i+1 = q_vertices[i]
  std::vector<RemovedPath> paths;
  long long iso_count = 0;

  bool identity() const { return paths.empty() && iso_count == 0; }
};

struct KernelOutcome {
  bool decided = false;
  bool yes = false;
  std::optional<Coloring> witness;            // on the original graph, when decided yes
  std::optional<EquitableInstance> reduced;   // when not decided
  std::optional<LiftData> lift;
};

// ---- distance to clique ----

inline KernelOutcome kernel_distance_to_clique(const Graph& g, int k) {
  KernelOutcome out;
  Modulator mod = clique_modulator_greedy(g);
  int n = g.n();
  if (k > static_cast<int>(mod.u.size()) || n <= 2 * k) {
    // class sizes are forced into {0, 1, 2}: either the colors outnumber the
    // modulator (so the residual clique pins singletons) or n <= 2k outright.
    // Doubled classes are non-edges, so a maximum matching of the complement
    // decides the instance.
    auto matching = maximum_matching(complement(g));
    long long m = static_cast<long long>(matching.size());
    out.decided = true;
    if (n - 2 * m > k - m) {
      out.yes = false;
      return out;
    }
    out.yes = true;
    long long doubled = std::max<long long>(0, n - k);
    Coloring phi(n);
    Color next = 1;
    for (long long i = 0; i < doubled; ++i) {
      phi.set(matching[static_cast<size_t>(i)].first, next);
      phi.set(matching[static_cast<size_t>(i)].second, next);
      ++next;
    }
    for (Vertex v = 1; v <= n; ++v)
      if (!phi.colored(v)) phi.set(v, next++);
    auto rep = verify_coloring(EquitableInstance{g, k}, phi);
    if (!rep.ok()) throw ContractViolation("clique kernel witness failed verification");
    out.witness = phi;
    return out;
  }
  // k <= |U|: the remaining clique must fit in k colors, else reduce to g itself
  if (n - static_cast<int>(mod.u.size()) > k) {
    out.decided = true;
    out.yes = false;
    return out;
  }
  out.reduced = EquitableInstance{g, k};
  LiftData lift;
  lift.original = g;
  lift.q_vertices.resize(static_cast<size_t>(n));
  for (Vertex v = 1; v <= n; ++v) lift.q_vertices[static_cast<size_t>(v) - 1] = v;
  out.lift = lift;
  return out;
}

// ---- small k ----

inline std::optional<Coloring> solve_small_k(const Graph& g, int k) {
  if (k < 1 || k > 2) throw ContractViolation("solve_small_k handles k in {1,2}");
  int n = g.n();
  if (k == 1) {
    if (g.m() > 0) return std::nullopt;
    Coloring phi(n);
    for (Vertex v = 1; v <= n; ++v) phi.set(v, 1);
    return phi;
  }
  // k == 2: each bipartite component offers two side-size splits; a subset-sum
  // over the choices must hit ceil(n/2)
  std::vector<std::pair<std::vector<Vertex>, std::vector<Vertex>>> sides;
  std::vector<int> side_of(static_cast<size_t>(n) + 1, -1);
  for (const auto& comp : connected_components(g)) {
    std::vector<Vertex> a, b;
    std::vector<Vertex> queue{comp.front()};
    side_of[static_cast<size_t>(comp.front())] = 0;
    size_t head = 0;
    while (head < queue.size()) {
      Vertex u = queue[head++];
      (side_of[static_cast<size_t>(u)] == 0 ? a : b).push_back(u);
      for (Vertex w : g.neighbors(u)) {
        if (side_of[static_cast<size_t>(w)] < 0) {
          side_of[static_cast<size_t>(w)] = 1 - side_of[static_cast<size_t>(u)];
          queue.push_back(w);
        } else if (side_of[static_cast<size_t>(w)] == side_of[static_cast<size_t>(u)]) {
          return std::nullopt;  // odd cycle
        }
      }
    }
    sides.emplace_back(std::move(a), std::move(b));
  }
  int target = (n + 1) / 2;
  size_t nc = sides.size();
  std::vector<std::vector<char>> reach(nc + 1, std::vector<char>(static_cast<size_t>(target) + 1, 0));
  reach[0][0] = 1;
  for (size_t i = 0; i < nc; ++i)
    for (int s = 0; s <= target; ++s)
      if (reach[i][static_cast<size_t>(s)]) {
        int wa = static_cast<int>(sides[i].first.size());
        int wb = static_cast<int>(sides[i].second.size());
        if (s + wa <= target) reach[i + 1][static_cast<size_t>(s + wa)] = 1;
        if (s + wb <= target) reach[i + 1][static_cast<size_t>(s + wb)] = 1;
      }
  if (!reach[nc][static_cast<size_t>(target)]) return std::nullopt;
  Coloring phi(n);
  int s = target;
  for (size_t i = nc; i-- > 0;) {
    int wa = static_cast<int>(sides[i].first.size());
    bool pick_a = s - wa >= 0 && reach[i][static_cast<size_t>(s - wa)];
    const auto& ones = pick_a ? sides[i].first : sides[i].second;
    const auto& twos = pick_a ? sides[i].second : sides[i].first;
    for (Vertex v : ones) phi.set(v, 1);
    for (Vertex v : twos) phi.set(v, 2);
    s -= static_cast<int>(ones.size());
  }
  auto rep = verify_coloring(EquitableInstance{g, 2}, phi);
  if (!rep.ok()) throw ContractViolation("solve_small_k produced an invalid coloring");
  return phi;
}

// ---- max leaf kernel ----

inline KernelOutcome kernel_max_leaf(const Graph& g, int k,
                                     std::optional<HostDecomposition> host_opt = std::nullopt) {
  KernelOutcome out;
  if (k <= 2) {
    out.decided = true;
    auto phi = solve_small_k(g, k);
    out.yes = phi.has_value();
    out.witness = phi;
    return out;
  }
  HostDecomposition host = host_opt ? *host_opt : host_graph(g);
  long long threshold = 2LL * k + 3;
  std::vector<RemovedPath> removed;
  std::vector<char> removed_vertex(static_cast<size_t>(g.n()) + 1, 0);
  long long x_sum = 0;
  for (const auto& he : host.edges) {
    if (static_cast<long long>(he.internal.size()) < threshold) continue;
    RemovedPath rp;
    rp.host_u = he.u;
    rp.host_v = he.v;
    rp.vertices = he.internal;
    long long len = static_cast<long long>(rp.vertices.size());
    rp.x = (len - (k + 2)) / (k + 1);
    rp.c = (len - (k + 2)) % (k + 1);
    x_sum += rp.x;
    removed.push_back(rp);
    for (Vertex v : rp.vertices) removed_vertex[static_cast<size_t>(v)] = 1;
  }
  std::vector<Vertex> q_vertices;
  for (Vertex v = 1; v <= g.n(); ++v)
    if (!removed_vertex[static_cast<size_t>(v)]) q_vertices.push_back(v);
  long long q = static_cast<long long>(q_vertices.size());

  LiftData lift;
  lift.original = g;
  if (x_sum >= q && !removed.empty()) {
    long long iso = checked_mul(q, k - 1);
    long long n_red = checked_add(q, iso);
    Graph reduced(static_cast<int>(n_red));
    std::vector<int> new_of_old(static_cast<size_t>(g.n()) + 1, 0);
    for (size_t i = 0; i < q_vertices.size(); ++i)
      new_of_old[static_cast<size_t>(q_vertices[i])] = static_cast<int>(i) + 1;
    for (auto [u, v] : g.edges())
      if (new_of_old[static_cast<size_t>(u)] != 0 && new_of_old[static_cast<size_t>(v)] != 0)
        reduced.add_edge(new_of_old[static_cast<size_t>(u)], new_of_old[static_cast<size_t>(v)]);
    out.reduced = EquitableInstance{std::move(reduced), k};
    lift.q_vertices = q_vertices;
    lift.paths = removed;
    std::sort(lift.paths.begin(), lift.paths.end(),
              [](const RemovedPath& a, const RemovedPath& b) { return a.x > b.x; });
    lift.iso_count = iso;
    out.lift = std::move(lift);
    return out;
  }
  // compression does not apply; the instance itself already meets the bound
  out.reduced = EquitableInstance{g, k};
  lift.q_vertices.resize(static_cast<size_t>(g.n()));
  for (Vertex v = 1; v <= g.n(); ++v) lift.q_vertices[static_cast<size_t>(v) - 1] = v;
  out.lift = std::move(lift);
  return out;
}

// ---- constructive lift ----

namespace detail {

class BalancedExtender {
 public:
  BalancedExtender(const Graph& g, Coloring& phi, int k) : g_(g), phi_(phi), k_(k) {
    sizes_.assign(static_cast<size_t>(k) + 1, 0);
    for (Vertex v = 1; v <= g.n(); ++v)
      if (phi.colored(v)) ++sizes_[static_cast<size_t>(phi.at(v))];
  }

  long long alpha() const {
    auto r = ranks();
    return sizes_[static_cast<size_t>(r.back())] - sizes_[static_cast<size_t>(r.front())];
  }

  // Extends over one removed path with x maximal full segments; the balance
  // afterwards is at most max(alpha - x, 1).
  void add_path(const std::vector<Vertex>& path, Vertex left, Vertex right, long long x) {
    long long before = alpha();
    gap_reduce(path, left, right, x);
    long long after = alpha();
    if (after > std::max(before - x, 1LL))
      throw ContractViolation("balance bound violated while lifting");
  }

 private:
  // colors ordered by (class size, color id); front = smallest class
  std::vector<Color> ranks() const {
    std::vector<Color> r(static_cast<size_t>(k_));
    for (Color c = 1; c <= k_; ++c) r[static_cast<size_t>(c) - 1] = c;
    std::stable_sort(r.begin(), r.end(), [&](Color a, Color b) {
      return sizes_[static_cast<size_t>(a)] < sizes_[static_cast<size_t>(b)];
    });
    return r;
  }

  int tie_count(const std::vector<Color>& r) const {  // s: classes tied at the minimum
    int s = 1;
    while (s < k_ && sizes_[static_cast<size_t>(r[static_cast<size_t>(s)])] ==
                         sizes_[static_cast<size_t>(r[0])])
      ++s;
    return s;
  }

  void assign(Vertex v, Color c) {
    if (phi_.colored(v)) throw ContractViolation("lift revisited a vertex");
    for (Vertex w : g_.neighbors(v))
      if (phi_.at(w) == c) throw ContractViolation("lift created a monochromatic edge");
    phi_.set(v, c);
    ++sizes_[static_cast<size_t>(c)];
  }

  Color color_at(Vertex v) const {
    if (!phi_.colored(v)) throw ContractViolation("path attachment is uncolored");
    return phi_.at(v);
  }

  int rank_of(const std::vector<Color>& r, Color c) const {
    for (size_t i = 0; i < r.size(); ++i)
      if (r[i] == c) return static_cast<int>(i);
    throw ContractViolation("color missing from rank order");
  }

  static std::vector<Vertex> slice(const std::vector<Vertex>& w, size_t from, size_t to) {
    return std::vector<Vertex>(w.begin() + static_cast<long>(from), w.begin() + static_cast<long>(to));
  }

  // ---- the k+2 base extension ----
  void rebalance(std::vector<Vertex> w, Vertex u, Vertex v) {
    if (static_cast<long long>(w.size()) < k_ + 2)
      throw ContractViolation("rebalance needs at least k+2 vertices");
    auto r = ranks();
    if (rank_of(r, color_at(u)) > rank_of(r, color_at(v))) {
      std::reverse(w.begin(), w.end());
      std::swap(u, v);
    }
    size_t p = w.size();
    if (p == static_cast<size_t>(k_) + 2) {
      rebalance_base(w, u, v, r);
      return;
    }
    int s = tie_count(r);
    Color cmin = r[0];
    Color fu = color_at(u), fv = color_at(v);
    if (s == 1) {
      if (fu != cmin) {
        assign(w[0], cmin);
        rebalance(slice(w, 1, p), w[0], v);
      } else if (fv != cmin) {
        assign(w[p - 1], cmin);
        rebalance(slice(w, 0, p - 1), u, w[p - 1]);
      } else if (p == static_cast<size_t>(k_) + 3) {
        corner_case(w, u, v, r);
      } else {
        Color cmax = r[static_cast<size_t>(k_) - 1];
        assign(w[0], cmax);
        assign(w[1], cmin);
        rebalance(slice(w, 2, p), w[1], v);
      }
    } else if (s < k_) {
      Color pick = 0;
      for (int i = 0; i < s; ++i)
        if (r[static_cast<size_t>(i)] != fu) {
          pick = r[static_cast<size_t>(i)];
          break;
        }
      assign(w[0], pick);
      rebalance(slice(w, 1, p), w[0], v);
    } else {
      Color pick = r[0] != fu ? r[0] : r[1];
      assign(w[0], pick);
      rebalance(slice(w, 1, p), w[0], v);
    }
  }

  void rebalance_base(const std::vector<Vertex>& w, Vertex u, Vertex v,
                      const std::vector<Color>& r) {
    int s = tie_count(r);
    Color cmin = r[0], cmax = r[static_cast<size_t>(k_) - 1];
    Color fu = color_at(u), fv = color_at(v);
    size_t p = w.size();
    if (s == 1) {
      if (fu != cmin) {
        assign(w[0], cmin);
        assign(w[1], cmax);
      } else {
        assign(w[0], cmax);
        assign(w[1], cmin);
      }
      if (fv != cmin) {
        assign(w[p - 1], cmin);
        assign(w[p - 2], cmax);
      } else {
        assign(w[p - 1], cmax);
        assign(w[p - 2], cmin);
      }
      for (int i = 2; i < k_; ++i) assign(w[static_cast<size_t>(i)], r[static_cast<size_t>(i) - 1]);
    } else if (s < k_) {
      std::vector<Color> low(r.begin(), r.begin() + s);
      if (low[0] == fu) std::swap(low[0], low[1]);
      for (int i = 0; i < s; ++i) assign(w[static_cast<size_t>(i)], low[static_cast<size_t>(i)]);
      for (int i = s; i < k_; ++i) assign(w[static_cast<size_t>(i)], r[static_cast<size_t>(i)]);
      Color a = r[0], b = r[1];
      if (b == fv) std::swap(a, b);  // w[k+1] must avoid the right attachment
      assign(w[static_cast<size_t>(k_)], a);
      assign(w[static_cast<size_t>(k_) + 1], b);
    } else {
      std::vector<Color> perm;
      Color first = 0, second = 0;
      for (Color c = 1; c <= k_; ++c)
        if (c != fu) {
          first = c;
          break;
        }
      for (Color c = 1; c <= k_; ++c)
        if (c != first && c != fv) {
          second = c;
          break;
        }
      perm.push_back(first);
      perm.push_back(second);
      for (Color c = 1; c <= k_; ++c)
        if (c != first && c != second) perm.push_back(c);
      for (int i = 0; i < k_; ++i) assign(w[static_cast<size_t>(i)], perm[static_cast<size_t>(i)]);
      assign(w[static_cast<size_t>(k_)], perm[0]);
      assign(w[static_cast<size_t>(k_) + 1], perm[1]);
    }
  }

  // p = k+3, unique smallest class, both attachments inside it
  void corner_case(const std::vector<Vertex>& w, Vertex u, Vertex v,
                   const std::vector<Color>& r) {
    (void)u;
    (void)v;
    assign(w[0], r[static_cast<size_t>(k_) - 1]);
    assign(w[1], r[0]);
    assign(w[2], r[1]);
    for (int i = 0; i < k_; ++i) assign(w[static_cast<size_t>(i) + 3], r[static_cast<size_t>(i)]);
  }

  // one balance unit per full k+1 segment, then the base extension
  void gap_reduce(std::vector<Vertex> w, Vertex u, Vertex v, long long x) {
    if (x <= 0) {
      rebalance(std::move(w), u, v);
      return;
    }
    auto r = ranks();
    if (rank_of(r, color_at(u)) > rank_of(r, color_at(v))) {
      std::reverse(w.begin(), w.end());
      std::swap(u, v);
    }
    int s = tie_count(r);
    Color fu = color_at(u);
    if (s == 1) {
      Color cmin = r[0];
      Color pick = 0;
      for (Color c = 1; c <= k_; ++c)
        if (c != cmin && c != fu) {
          pick = c;
          break;
        }
      assign(w[0], pick);
      assign(w[1], cmin);
      size_t pos = 2;
      for (Color c : r)
        if (c != cmin && c != pick) assign(w[pos++], c);
      assign(w[pos], cmin);  // pos == k
      gap_reduce(slice(w, static_cast<size_t>(k_) + 1, w.size()), w[static_cast<size_t>(k_)], v,
                 x - 1);
    } else {
      std::vector<Color> low(r.begin(), r.begin() + s);
      if (low[0] == fu && s > 1) std::swap(low[0], low[1]);
      for (int i = 0; i < s; ++i) assign(w[static_cast<size_t>(i)], low[static_cast<size_t>(i)]);
      gap_reduce(slice(w, static_cast<size_t>(s), w.size()), w[static_cast<size_t>(s) - 1], v,
                 x - 1);
    }
  }

  const Graph& g_;
  Coloring& phi_;
  int k_;
  std::vector<long long> sizes_;
};

}  // namespace detail

// Lifts an equitable coloring of the reduced instance back onto the original
// graph, re-inserting each removed path while keeping the balance bound.
inline Coloring lift_max_leaf(const Coloring& kernel_coloring, const LiftData& lift, int k) {
  const Graph& g = lift.original;
  if (lift.identity()) {
    if (static_cast<size_t>(kernel_coloring.n()) != lift.q_vertices.size())
      throw ContractViolation("kernel coloring size mismatch");
    Coloring phi(g.n());
    for (size_t i = 0; i < lift.q_vertices.size(); ++i)
      phi.set(lift.q_vertices[i], kernel_coloring.at(static_cast<int>(i) + 1));
    return phi;
  }
  long long n_red = static_cast<long long>(lift.q_vertices.size()) + lift.iso_count;
  if (kernel_coloring.n() != static_cast<int>(n_red))
    throw ContractViolation("kernel coloring size mismatch");
  // the kernel coloring must itself be proper and equitable on the reduced
  // instance; rebuild that instance to check
  {
    Graph reduced(static_cast<int>(n_red));
    std::vector<int> new_of_old(static_cast<size_t>(g.n()) + 1, 0);
    for (size_t i = 0; i < lift.q_vertices.size(); ++i)
      new_of_old[static_cast<size_t>(lift.q_vertices[i])] = static_cast<int>(i) + 1;
    for (auto [u, v] : g.edges())
      if (new_of_old[static_cast<size_t>(u)] != 0 && new_of_old[static_cast<size_t>(v)] != 0)
        reduced.add_edge(new_of_old[static_cast<size_t>(u)], new_of_old[static_cast<size_t>(v)]);
    auto rep = verify_coloring(EquitableInstance{std::move(reduced), k}, kernel_coloring);
    if (!rep.ok()) throw ContractViolation("kernel coloring is not a valid equitable coloring");
  }

  Coloring phi(g.n());
  for (size_t i = 0; i < lift.q_vertices.size(); ++i)
    phi.set(lift.q_vertices[i], kernel_coloring.at(static_cast<int>(i) + 1));

  detail::BalancedExtender ext(g, phi, k);
  for (const auto& rp : lift.paths) ext.add_path(rp.vertices, rp.host_u, rp.host_v, rp.x);

  auto rep = verify_coloring(EquitableInstance{g, k}, phi);
  if (!rep.ok()) throw ContractViolation("lifted coloring failed verification");
  return phi;
}

}  // namespace equicolor
