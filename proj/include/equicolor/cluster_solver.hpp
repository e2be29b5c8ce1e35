#pragma once

// Distance-to-cluster solver: enumerate modulator precolorings as set
// partitions (classes are interchangeable until phase 2, which raises all
// source capacities uniformly) and extend each by the two-phase flow.

#include <optional>

#include "equicolor/flow.hpp"
#include "equicolor/modulators.hpp"
#include "equicolor/partitions.hpp"

namespace equicolor {

inline Modulator find_cluster_modulator(const Graph& g) {
  for (int budget = 0; budget <= g.n(); ++budget)
    if (auto mod = cluster_modulator(g, budget)) return *mod;
  throw ContractViolation("cluster modulator search failed");  // unreachable
}

inline std::optional<Coloring> solve_distance_to_cluster(
    const Graph& g, int k, std::optional<Modulator> modulator = std::nullopt) {
  if (k < 1) return std::nullopt;
  Modulator mod = modulator ? *modulator : find_cluster_modulator(g);
  long long ceil_size = (g.n() + k - 1) / k;

  std::optional<Coloring> found;
  enumerate_independent_partitions(
      g, mod.u, k, ceil_size, [&](const std::vector<std::vector<Vertex>>& classes) {
        Coloring pre(g.n());
        for (size_t i = 0; i < classes.size(); ++i)
          for (Vertex v : classes[i]) pre.set(v, static_cast<Color>(i) + 1);
        auto phi = extend_precoloring(g, mod, pre, k);
        if (phi) {
          found = phi;
          return true;
        }
        return false;
      });
  if (found) {
    auto rep = verify_coloring(EquitableInstance{g, k}, *found);
    if (!rep.ok()) throw ContractViolation("cluster solver emitted an invalid coloring");
  }
  return found;
}

}  // namespace equicolor
