#pragma once

// Set-partition enumeration shared by the modulator-precoloring solvers.
// Partitions are emitted in restricted-growth order; classes are listed in
// first-occurrence order, which is also how they map onto colors 1..t.

#include <functional>
#include <vector>

#include "equicolor/graph.hpp"

namespace equicolor {

// Enumerates partitions of `verts` into at most max_classes nonempty classes,
// each independent in g and of size <= max_class_size. Stops early once fn
// returns true; returns whether any call did.
inline bool enumerate_independent_partitions(
    const Graph& g, const std::vector<Vertex>& verts, int max_classes, long long max_class_size,
    const std::function<bool(const std::vector<std::vector<Vertex>>&)>& fn) {
  if (max_classes <= 0 && !verts.empty()) return false;
  std::vector<std::vector<Vertex>> classes;
  auto independent_from = [&](const std::vector<Vertex>& cls, Vertex v) {
    for (Vertex w : cls)
      if (g.has_edge(w, v)) return false;
    return true;
  };
  auto rec = [&](auto&& self, size_t idx) -> bool {
    if (idx == verts.size()) return fn(classes);
    Vertex v = verts[idx];
    // index-based: the recursion below grows and shrinks `classes`, which
    // invalidates references into it
    for (size_t ci = 0; ci < classes.size(); ++ci) {
      if (static_cast<long long>(classes[ci].size()) >= max_class_size) continue;
      if (!independent_from(classes[ci], v)) continue;
      classes[ci].push_back(v);
      if (self(self, idx + 1)) return true;
      classes[ci].pop_back();
    }
    if (static_cast<int>(classes.size()) < max_classes && max_class_size >= 1) {
      classes.push_back({v});
      if (self(self, idx + 1)) return true;
      classes.pop_back();
    }
    return false;
  };
  return rec(rec, 0);
}

}  // namespace equicolor
