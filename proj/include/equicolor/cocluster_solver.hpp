#pragma once

// Distance-to-co-cluster solver. A dynamic program walks the multipartite
// parts of G - U; transitions ask whether a set of modulator colors can be
// finished inside the current part, which reduces to the two-phase flow
// check with exact per-color targets.

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "equicolor/cluster_solver.hpp"
#include "equicolor/flow.hpp"
#include "equicolor/partitions.hpp"

namespace equicolor {

struct DccState {
  unsigned s_mask = 0;  // classes of psi still to finish
  int p = 0;            // fresh ceil colors remaining
  int q = 0;            // fresh floor colors remaining
  int j = 0;            // part index, 0-based; j == r means done
};

struct ExtTriple {
  unsigned r_mask = 0;
  int x = 0;
  int y = 0;
};

struct DccContext {
  const Graph* g = nullptr;
  const Modulator* mod = nullptr;              // cocluster modulator; parts are I_1..I_r
  std::vector<std::vector<Vertex>> psi;        // modulator color classes, 0-based
  unsigned p_mask = 0;                         // classes targeted at floor+1
  int k = 0;
  long long floor_size = 0;
  mutable std::map<std::pair<unsigned, int>, bool> flow_memo;  // (R, j) -> feasible

  long long target(int cls) const {
    return floor_size + ((p_mask >> cls) & 1u);
  }
  long long count(int cls) const { return static_cast<long long>(psi[static_cast<size_t>(cls)].size()); }
  int classes() const { return static_cast<int>(psi.size()); }
};

namespace detail {

// Flow membership test for one (R, part) pair: can the classes of r_mask be
// finished using vertices of I_j only? Returns the partial coloring of I_j
// in original vertex ids and psi class indices, or nullopt.
inline std::optional<std::vector<std::pair<Vertex, int>>> dcc_extend_part(const DccContext& ctx,
                                                                          unsigned r_mask, int j) {
  const Graph& g = *ctx.g;
  const auto& part = ctx.mod->parts[static_cast<size_t>(j)];
  std::vector<int> r_classes;
  for (int c = 0; c < ctx.classes(); ++c)
    if ((r_mask >> c) & 1u) r_classes.push_back(c);

  std::vector<Vertex> verts;
  for (int c : r_classes)
    for (Vertex v : ctx.psi[static_cast<size_t>(c)]) verts.push_back(v);
  std::vector<Vertex> uprime = verts;
  for (Vertex v : part) verts.push_back(v);

  std::vector<Vertex> old_of_new;
  Graph sub = induced_subgraph(g, verts, &old_of_new);
  std::vector<int> new_of_old(static_cast<size_t>(g.n()) + 1, 0);
  for (size_t i = 0; i < old_of_new.size(); ++i)
    new_of_old[static_cast<size_t>(old_of_new[i])] = static_cast<int>(i) + 1;

  Modulator m2;
  m2.kind = ModulatorKind::cluster;
  for (Vertex v : uprime) m2.u.push_back(new_of_old[static_cast<size_t>(v)]);
  std::sort(m2.u.begin(), m2.u.end());
  for (Vertex v : part) m2.parts.push_back({new_of_old[static_cast<size_t>(v)]});

  Coloring pre(sub.n());
  long long total = 0;
  std::vector<Color> ceil_colors;
  for (size_t idx = 0; idx < r_classes.size(); ++idx) {
    int cls = r_classes[idx];
    Color col = static_cast<Color>(idx) + 1;
    for (Vertex v : ctx.psi[static_cast<size_t>(cls)])
      pre.set(new_of_old[static_cast<size_t>(v)], col);
    total = checked_add(total, ctx.target(cls));
    if ((ctx.p_mask >> cls) & 1u) ceil_colors.push_back(col);
  }

  auto phi = extend_precoloring_exact(sub, m2, pre, static_cast<int>(r_classes.size()),
                                      ceil_colors, ctx.floor_size, total);
  if (!phi) return std::nullopt;
  std::vector<std::pair<Vertex, int>> out;
  for (Vertex v : part) {
    Color c = phi->at(new_of_old[static_cast<size_t>(v)]);
    if (c != 0) out.emplace_back(v, r_classes[static_cast<size_t>(c) - 1]);
  }
  return out;
}

}  // namespace detail

// All triples (R, x, y) by which the DP may advance past part j: the size
// equation holds, the fresh-color budgets are respected, and the flow check
// confirms the classes of R can be finished inside I_j.
inline std::vector<ExtTriple> compute_ext(const DccContext& ctx, const DccState& st) {
  std::vector<ExtTriple> out;
  long long part_size = static_cast<long long>(ctx.mod->parts[static_cast<size_t>(st.j)].size());
  for (unsigned r = 0; r <= st.s_mask; ++r) {
    if ((r & st.s_mask) != r) continue;
    long long alpha = 0;
    bool bad = false;
    for (int c = 0; c < ctx.classes() && !bad; ++c)
      if ((r >> c) & 1u) {
        long long need = ctx.target(c) - ctx.count(c);
        if (need < 0) bad = true;
        alpha += need;
      }
    if (bad) continue;
    long long rem = part_size - alpha;
    if (rem < 0) continue;
    std::vector<std::pair<int, int>> xy;
    if (ctx.floor_size == 0) {
      if (rem <= st.p)
        for (int y = 0; y <= st.q; ++y) xy.emplace_back(static_cast<int>(rem), y);
    } else {
      for (long long x = 0; x <= st.p && x * (ctx.floor_size + 1) <= rem; ++x) {
        long long left = rem - x * (ctx.floor_size + 1);
        if (left % ctx.floor_size != 0) continue;
        long long y = left / ctx.floor_size;
        if (y <= st.q) xy.emplace_back(static_cast<int>(x), static_cast<int>(y));
      }
    }
    if (xy.empty()) continue;
    auto memo_key = std::pair(r, st.j);
    auto it = ctx.flow_memo.find(memo_key);
    bool feasible = it != ctx.flow_memo.end()
                        ? it->second
                        : (ctx.flow_memo[memo_key] = detail::dcc_extend_part(ctx, r, st.j).has_value());
    if (feasible)
      for (auto [x, y] : xy) out.push_back({r, x, y});
  }
  return out;
}

namespace detail {

class DccSolver {
 public:
  DccSolver(const DccContext& ctx) : ctx_(ctx), r_(static_cast<int>(ctx.mod->parts.size())) {}

  bool solve(const DccState& start) {
    start_ = start;
    return value(start);
  }

  // Replays memoized choices into a full coloring of G.
  Coloring reconstruct(int n_total) {
    Coloring phi(n_total);
    for (int c = 0; c < ctx_.classes(); ++c)
      for (Vertex v : ctx_.psi[static_cast<size_t>(c)]) phi.set(v, c + 1);
    int next_fresh = ctx_.classes() + 1;
    DccState st = start_;
    while (st.j < r_) {
      auto key = keyof(st);
      auto it = choice_.find(key);
      if (it == choice_.end()) throw ContractViolation("missing memoized choice");
      const ExtTriple& tr = it->second;
      auto assigned = dcc_extend_part(ctx_, tr.r_mask, st.j);
      if (!assigned) throw ContractViolation("memoized extension no longer feasible");
      std::vector<char> taken(static_cast<size_t>(ctx_.g->n()) + 1, 0);
      for (auto [v, cls] : *assigned) {
        phi.set(v, cls + 1);
        taken[static_cast<size_t>(v)] = 1;
      }
      std::vector<Vertex> leftover;
      for (Vertex v : ctx_.mod->parts[static_cast<size_t>(st.j)])
        if (!taken[static_cast<size_t>(v)]) leftover.push_back(v);
      std::sort(leftover.begin(), leftover.end());
      size_t pos = 0;
      for (int b = 0; b < tr.x; ++b) {
        for (long long i = 0; i <= ctx_.floor_size; ++i) phi.set(leftover[pos++], next_fresh);
        ++next_fresh;
      }
      for (int b = 0; b < tr.y; ++b) {
        for (long long i = 0; i < ctx_.floor_size; ++i) phi.set(leftover[pos++], next_fresh);
        ++next_fresh;
      }
      if (pos != leftover.size()) throw ContractViolation("fresh blocks do not cover the part");
      st = advance(st, tr);
    }
    // colors never used stay as empty classes; that is fine when floor == 0
    return phi;
  }

 private:
  using Key = std::tuple<unsigned, int, int, int>;

  static Key keyof(const DccState& st) { return {st.s_mask, st.p, st.q, st.j}; }

  DccState advance(const DccState& st, const ExtTriple& tr) const {
    return {st.s_mask & ~tr.r_mask, st.p - tr.x, st.q - tr.y, st.j + 1};
  }

  bool value(const DccState& st) {
    if (st.j == r_) return st.s_mask == 0 && st.p == 0 && st.q == 0;
    auto key = keyof(st);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    bool ok = false;
    for (const ExtTriple& tr : compute_ext(ctx_, st)) {
      if (value(advance(st, tr))) {
        choice_[key] = tr;
        ok = true;
        break;
      }
    }
    memo_[key] = ok;
    return ok;
  }

  const DccContext& ctx_;
  int r_;
  DccState start_;
  std::map<Key, bool> memo_;
  std::map<Key, ExtTriple> choice_;
};

}  // namespace detail

inline Modulator find_cocluster_modulator(const Graph& g) {
  for (int budget = 0; budget <= g.n(); ++budget)
    if (auto mod = cocluster_modulator(g, budget)) return *mod;
  throw ContractViolation("cocluster modulator search failed");  // unreachable
}

inline std::optional<Coloring> solve_distance_to_cocluster(
    const Graph& g, int k, std::optional<Modulator> modulator = std::nullopt) {
  if (k < 1) return std::nullopt;
  Modulator mod = modulator ? *modulator : find_cocluster_modulator(g);
  int n = g.n();
  long long floor_size = n / k;
  int n_mod_k = n % k;

  long long ceil_size = (n + k - 1) / k;
  std::optional<Coloring> found;
  enumerate_independent_partitions(
      g, mod.u, k, ceil_size, [&](const std::vector<std::vector<Vertex>>& classes) {
        int t = static_cast<int>(classes.size());
        for (unsigned pmask = 0; pmask < (1u << t); ++pmask) {
          int pc = __builtin_popcount(pmask);
          if (pc > n_mod_k) continue;
          int p0 = n_mod_k - pc;
          int q0 = k - t - p0;
          if (q0 < 0) continue;

          DccContext ctx;
          ctx.g = &g;
          ctx.mod = &mod;
          ctx.psi = classes;
          ctx.p_mask = pmask;
          ctx.k = k;
          ctx.floor_size = floor_size;

          if (mod.parts.empty()) {
            bool exact = p0 == 0 && (q0 == 0 || floor_size == 0);
            for (int c = 0; c < t && exact; ++c)
              if (ctx.count(c) != ctx.target(c)) exact = false;
            if (!exact) continue;
            Coloring phi(n);
            for (int c = 0; c < t; ++c)
              for (Vertex v : classes[static_cast<size_t>(c)]) phi.set(v, c + 1);
            found = phi;
            return true;
          }

          detail::DccSolver solver(ctx);
          DccState start{t == 0 ? 0u : (1u << t) - 1u, p0, q0, 0};
          if (solver.solve(start)) {
            found = solver.reconstruct(n);
            return true;
          }
        }
        return false;
      });

  if (found) {
    auto rep = verify_coloring(EquitableInstance{g, k}, *found);
    if (!rep.ok()) throw ContractViolation("cocluster solver emitted an invalid coloring");
    // containment: every color class meets at most one part of G - U
    std::vector<int> part_of(static_cast<size_t>(g.n()) + 1, -1);
    for (size_t j = 0; j < mod.parts.size(); ++j)
      for (Vertex v : mod.parts[j]) part_of[static_cast<size_t>(v)] = static_cast<int>(j);
    std::vector<int> seen_part(static_cast<size_t>(k) + 1, -1);
    for (Vertex v = 1; v <= g.n(); ++v) {
      int pj = part_of[static_cast<size_t>(v)];
      if (pj < 0) continue;
      Color c = found->at(v);
      if (seen_part[static_cast<size_t>(c)] >= 0 && seen_part[static_cast<size_t>(c)] != pj)
        throw ContractViolation("color class crosses two parts of G - U");
      seen_part[static_cast<size_t>(c)] = pj;
    }
  }
  return found;
}

}  // namespace equicolor
