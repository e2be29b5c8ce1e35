#pragma once

// Exponential-time ground-truth deciders. Every solver, kernel, and
// generator in the toolkit is validated against these on small instances.

#include <numeric>
#include <optional>
#include <vector>

#include "equicolor/graph.hpp"

namespace equicolor {

inline constexpr int kDefaultOracleCap = 16;

namespace detail {

inline void check_oracle_cap(int n, int cap) {
  if (n > cap)
    throw GuardError("oracle guard: n = " + std::to_string(n) + " exceeds cap " +
                     std::to_string(cap));
}

class EquitableSearch {
 public:
  EquitableSearch(const Graph& g, int k) : g_(g), k_(k) {
    n_ = g.n();
    floor_ = k > 0 ? n_ / k : 0;
    ceil_ = k > 0 ? (n_ + k - 1) / k : 0;
    ceil_budget_ = n_ - floor_ * k;  // classes allowed to reach ceil (when k does not divide n)
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), 1);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
    phi_ = Coloring(n_);
    sizes_.assign(static_cast<size_t>(k) + 1, 0);
  }

  std::optional<Coloring> run() {
    if (k_ < 1) return std::nullopt;
    if (dfs(0)) return phi_;
    return std::nullopt;
  }

 private:
  bool dfs(int idx) {
    if (idx == n_) return true;
    Vertex v = order_[static_cast<size_t>(idx)];
    bool tried_empty = false;
    for (Color c = 1; c <= k_; ++c) {
      if (sizes_[static_cast<size_t>(c)] == 0) {
        if (tried_empty) break;  // empty classes are interchangeable
        tried_empty = true;
      }
      if (!fits(v, c)) continue;
      phi_.set(v, c);
      ++sizes_[static_cast<size_t>(c)];
      if (capacity_ok(n_ - idx - 1) && dfs(idx + 1)) return true;
      --sizes_[static_cast<size_t>(c)];
      phi_.unset(v);
    }
    return false;
  }

  bool fits(Vertex v, Color c) {
    if (sizes_[static_cast<size_t>(c)] >= ceil_) return false;
    if (floor_ < ceil_ && sizes_[static_cast<size_t>(c)] >= floor_ && over_floor() >= ceil_budget_)
      return false;
    for (Vertex w : g_.neighbors(v))
      if (phi_.at(w) == c) return false;
    return true;
  }

  int over_floor() const {
    int cnt = 0;
    for (Color c = 1; c <= k_; ++c)
      if (sizes_[static_cast<size_t>(c)] > floor_) ++cnt;
    return cnt;
  }

  bool capacity_ok(int remaining) const {
    long long room = 0;
    int over = 0;
    for (Color c = 1; c <= k_; ++c) {
      long long s = sizes_[static_cast<size_t>(c)];
      if (s < floor_) room += floor_ - s;
      if (s > floor_) ++over;
    }
    room += std::max(0, ceil_budget_ - over);
    return room >= remaining;
  }

  const Graph& g_;
  int k_, n_;
  long long floor_ = 0, ceil_ = 0;
  int ceil_budget_ = 0;
  std::vector<Vertex> order_;
  Coloring phi_;
  std::vector<long long> sizes_;
};

}  // namespace detail

inline std::optional<Coloring> brute_force_equitable(const Graph& g, int k,
                                                     int cap = kDefaultOracleCap) {
  detail::check_oracle_cap(g.n(), cap);
  auto res = detail::EquitableSearch(g, k).run();
  if (res) {
    auto rep = verify_coloring(EquitableInstance{g, k}, *res);
    if (!rep.ok()) throw ContractViolation("oracle produced an invalid equitable coloring");
  }
  return res;
}

inline std::optional<Coloring> brute_force_nlc(const NumberListInstance& inst,
                                               int cap = kDefaultOracleCap) {
  const Graph& g = inst.graph;
  detail::check_oracle_cap(g.n(), cap);
  if (inst.target_sum() != g.n()) return std::nullopt;
  int q = inst.color_count();
  std::vector<long long> sizes(static_cast<size_t>(q) + 1, 0);
  Coloring phi(g.n());

  // supply[c] = uncolored vertices still admitting c; a color whose deficit
  // exceeds its supply can never reach its target.
  std::vector<long long> supply(static_cast<size_t>(q) + 1, 0);
  for (Vertex v = 1; v <= g.n(); ++v)
    for (Color c : inst.list_of(v)) ++supply[static_cast<size_t>(c)];

  auto dfs = [&](auto&& self, Vertex v) -> bool {
    if (v > g.n()) return true;  // sizes <= targets and sums match, so all targets are met
    for (Color d : inst.list_of(v)) --supply[static_cast<size_t>(d)];
    bool done = false;
    for (Color c : inst.list_of(v)) {
      if (sizes[static_cast<size_t>(c)] >= inst.targets[static_cast<size_t>(c)]) continue;
      bool conflict = false;
      for (Vertex w : g.neighbors(v))
        if (phi.at(w) == c) {
          conflict = true;
          break;
        }
      if (conflict) continue;
      phi.set(v, c);
      ++sizes[static_cast<size_t>(c)];
      bool feasible = true;
      for (Color d = 1; d <= q && feasible; ++d)
        if (inst.targets[static_cast<size_t>(d)] - sizes[static_cast<size_t>(d)] >
            supply[static_cast<size_t>(d)])
          feasible = false;
      if (feasible && self(self, v + 1)) {
        done = true;
        break;
      }
      --sizes[static_cast<size_t>(c)];
      phi.unset(v);
    }
    if (!done)
      for (Color d : inst.list_of(v)) ++supply[static_cast<size_t>(d)];
    return done;
  };

  if (!dfs(dfs, 1)) return std::nullopt;
  auto rep = verify_coloring(inst, phi);
  if (!rep.ok()) throw ContractViolation("oracle produced an invalid list coloring");
  return phi;
}

// True iff V(G) partitions into vertex-disjoint triangles.
inline bool triangle_partition(const Graph& g, int cap = kDefaultOracleCap) {
  detail::check_oracle_cap(g.n(), cap);
  if (g.n() % 3 != 0) return false;
  std::vector<char> used(static_cast<size_t>(g.n()) + 1, 0);
  auto dfs = [&](auto&& self, int covered) -> bool {
    if (covered == g.n()) return true;
    Vertex v = 1;
    while (used[v]) ++v;
    used[v] = 1;
    const auto& nb = g.neighbors(v);
    for (size_t i = 0; i < nb.size(); ++i) {
      if (used[nb[i]]) continue;
      for (size_t j = i + 1; j < nb.size(); ++j) {
        if (used[nb[j]] || !g.has_edge(nb[i], nb[j])) continue;
        used[nb[i]] = used[nb[j]] = 1;
        if (self(self, covered + 3)) return true;
        used[nb[i]] = used[nb[j]] = 0;
      }
    }
    used[v] = 0;
    return false;
  };
  return dfs(dfs, 0);
}

}  // namespace equicolor
