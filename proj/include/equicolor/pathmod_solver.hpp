#pragma once

// Number List Coloring on disjoint bounded paths, and the
// distance-to-short-paths solver built on top of it.
//
// Components sharing a list pattern are interchangeable, so the search works
// per pattern: a layered flow network carries one unit per member path, an
// integer program chooses how often each color is used inside each pattern
// (the eta variables), and witnesses fall out of an iterated path peeling of
// the per-pattern flow.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "equicolor/flow.hpp"
#include "equicolor/modulators.hpp"
#include "equicolor/partitions.hpp"

namespace equicolor {

struct Pattern {
  std::vector<std::vector<Color>> seq;        // canonical orientation
  std::vector<std::vector<Vertex>> members;   // each oriented to match seq
  int multiplicity() const { return static_cast<int>(members.size()); }
  int length() const { return static_cast<int>(seq.size()); }
};

// Partitions the components of a disjoint-paths graph by pattern. The
// canonical orientation is the lexicographically smaller of the list
// sequence and its reversal, so a path and its mirror share a pattern.
inline std::vector<Pattern> pattern_partition(const Graph& g,
                                              const std::vector<std::vector<Color>>& lists) {
  std::map<std::vector<std::vector<Color>>, std::vector<std::vector<Vertex>>> buckets;
  for (const auto& comp : connected_components(g)) {
    auto seq = detail::order_path(g, comp);
    std::vector<std::vector<Color>> fwd, bwd;
    for (Vertex v : seq) fwd.push_back(lists[static_cast<size_t>(v)]);
    bwd.assign(fwd.rbegin(), fwd.rend());
    if (bwd < fwd) {
      std::reverse(seq.begin(), seq.end());
      fwd.swap(bwd);
    }
    buckets[fwd].push_back(seq);
  }
  std::vector<Pattern> out;
  for (auto& [seq, members] : buckets) out.push_back({seq, std::move(members)});
  return out;
}

// The layered pattern network of one compatible set: u/v node pair per
// (position, admissible color); transition arcs skip equal colors.
struct PatternNetwork {
  FlowNetwork net;
  std::vector<std::map<Color, int>> color_arc;  // per position: color -> (u,v) arc id
  std::vector<std::map<std::pair<Color, Color>, int>> trans_arc;  // per gap
  std::map<Color, int> source_arc, sink_arc;
};

inline PatternNetwork build_pattern_network(const Pattern& pat) {
  PatternNetwork pn;
  long long m = pat.multiplicity();
  int q = pat.length();
  FlowNetwork& net = pn.net;
  net.source = 0;
  net.sink = 1;
  int next = 2;
  std::vector<std::map<Color, std::pair<int, int>>> uv(static_cast<size_t>(q));
  for (int j = 0; j < q; ++j)
    for (Color c : pat.seq[static_cast<size_t>(j)]) {
      uv[static_cast<size_t>(j)][c] = {next, next + 1};
      next += 2;
    }
  net.node_count = next;
  pn.color_arc.resize(static_cast<size_t>(q));
  pn.trans_arc.resize(q > 0 ? static_cast<size_t>(q) - 1 : 0);
  for (Color c : pat.seq[0]) pn.source_arc[c] = net.add_arc(net.source, uv[0][c].first, m);
  for (int j = 0; j < q; ++j)
    for (Color c : pat.seq[static_cast<size_t>(j)]) {
      auto [un, vn] = uv[static_cast<size_t>(j)][c];
      pn.color_arc[static_cast<size_t>(j)][c] = net.add_arc(un, vn, m);
      if (j + 1 < q)
        for (Color d : pat.seq[static_cast<size_t>(j) + 1])
          if (d != c)
            pn.trans_arc[static_cast<size_t>(j)][{c, d}] =
                net.add_arc(vn, uv[static_cast<size_t>(j) + 1][d].first, m);
    }
  for (Color c : pat.seq[static_cast<size_t>(q) - 1])
    pn.sink_arc[c] = net.add_arc(uv[static_cast<size_t>(q) - 1][c].second, net.sink, m);
  return pn;
}

namespace detail {

// Exact feasibility of one pattern against fixed per-color usage counts.
// Searches layer occupancy vectors; consecutive layers may not overload any
// color (o_j(c) + o_{j+1}(c) <= multiplicity), which is exactly when the
// transition flow exists. Returns the occupancies on success.
class PatternFeasibility {
 public:
  PatternFeasibility(const Pattern& pat, const std::map<Color, long long>& eta)
      : pat_(pat), eta_(eta), m_(pat.multiplicity()) {}

  std::optional<std::vector<std::map<Color, long long>>> run() {
    long long total = 0;
    for (auto& [c, v] : eta_) total += v;
    if (total != static_cast<long long>(m_) * pat_.length()) return std::nullopt;
    remaining_ = eta_;
    occ_.assign(static_cast<size_t>(pat_.length()), {});
    if (dfs(0)) return occ_;
    return std::nullopt;
  }

 private:
  bool dfs(int j) {
    if (j == pat_.length()) {
      for (auto& [c, v] : remaining_)
        if (v != 0) return false;
      return true;
    }
    auto key = memo_key(j);
    if (failed_.count(key)) return false;
    const auto& layer = pat_.seq[static_cast<size_t>(j)];
    std::map<Color, long long> occ;
    if (fill_layer(j, layer, 0, m_, occ)) return true;
    failed_.insert(key);
    return false;
  }

  bool fill_layer(int j, const std::vector<Color>& layer, size_t idx, long long left,
                  std::map<Color, long long>& occ) {
    if (idx == layer.size()) {
      if (left != 0) return false;
      occ_[static_cast<size_t>(j)] = occ;
      if (dfs(j + 1)) return true;
      return false;
    }
    Color c = layer[idx];
    long long hi = std::min(left, remaining_[c]);
    if (j > 0) {
      auto it = occ_[static_cast<size_t>(j) - 1].find(c);
      if (it != occ_[static_cast<size_t>(j) - 1].end()) hi = std::min(hi, m_ - it->second);
    }
    // capacity of the remaining colors of this layer
    long long suffix = 0;
    for (size_t t = idx + 1; t < layer.size(); ++t) suffix += remaining_[layer[t]];
    long long lo = std::max<long long>(0, left - suffix);
    for (long long v = lo; v <= hi; ++v) {
      occ[c] = v;
      remaining_[c] -= v;
      if (fill_layer(j, layer, idx + 1, left - v, occ)) return true;
      remaining_[c] += v;
      occ.erase(c);
    }
    return false;
  }

  std::vector<long long> memo_key(int j) const {
    std::vector<long long> key{j};
    for (auto& [c, v] : remaining_) key.push_back(v);
    if (j > 0)
      for (auto& [c, v] : occ_[static_cast<size_t>(j) - 1]) key.push_back(v);
    return key;
  }

  const Pattern& pat_;
  std::map<Color, long long> eta_;
  long long m_;
  std::map<Color, long long> remaining_;
  std::vector<std::map<Color, long long>> occ_;
  std::set<std::vector<long long>> failed_;
};

// Builds the integral flow for fixed occupancies, then peels one unit path
// per member. Every saturated arc must lie on the peeled path; that is
// checked explicitly each round.
class PatternWitness {
 public:
  PatternWitness(const Pattern& pat, std::vector<std::map<Color, long long>> occ)
      : pat_(pat), occ_(std::move(occ)), m_(pat.multiplicity()) {}

  // color sequences, one per member, aligned with pat.members
  std::vector<std::vector<Color>> run() {
    int q = pat_.length();
    trans_.assign(q > 0 ? static_cast<size_t>(q) - 1 : 0, {});
    for (int j = 0; j + 1 < q; ++j) build_transition(j);
    std::vector<std::vector<Color>> out;
    for (long long round = m_; round >= 1; --round) out.push_back(peel(round));
    return out;
  }

 private:
  void build_transition(int j) {
    // transportation with the diagonal forbidden, solved by a tiny max-flow
    const auto& sup = occ_[static_cast<size_t>(j)];
    const auto& dem = occ_[static_cast<size_t>(j) + 1];
    FlowNetwork net;
    std::map<Color, int> snode, dnode;
    int next = 2;
    for (auto& [c, v] : sup) snode[c] = next++;
    for (auto& [c, v] : dem) dnode[c] = next++;
    net.node_count = next;
    net.source = 0;
    net.sink = 1;
    std::map<std::pair<Color, Color>, int> arc_of;
    for (auto& [c, v] : sup) net.add_arc(0, snode[c], v);
    for (auto& [c, v] : sup)
      for (auto& [d, w] : dem)
        if (c != d) arc_of[{c, d}] = net.add_arc(snode[c], dnode[d], std::min(v, w));
    for (auto& [d, w] : dem) net.add_arc(dnode[d], 1, w);
    auto res = max_flow(net);
    if (res.value != m_) throw ContractViolation("pattern transition flow infeasible");
    for (auto& [cd, id] : arc_of)
      if (res.per_arc[static_cast<size_t>(id)] > 0) trans_[static_cast<size_t>(j)][cd] = res.per_arc[static_cast<size_t>(id)];
  }

  std::vector<Color> peel(long long round) {
    int q = pat_.length();
    // forced colors: saturated unit arcs (at most one per layer and gap)
    std::vector<Color> forced(static_cast<size_t>(q), 0);
    auto force = [&](int j, Color c) {
      if (forced[static_cast<size_t>(j)] != 0 && forced[static_cast<size_t>(j)] != c)
        throw ContractViolation("conflicting saturated arcs while peeling");
      forced[static_cast<size_t>(j)] = c;
    };
    for (int j = 0; j < q; ++j)
      for (auto& [c, v] : occ_[static_cast<size_t>(j)])
        if (v == round) force(j, c);
    for (int j = 0; j + 1 < q; ++j)
      for (auto& [cd, v] : trans_[static_cast<size_t>(j)])
        if (v == round) {
          force(j, cd.first);
          force(j + 1, cd.second);
        }
    // reachability through positive arcs respecting forced choices
    std::vector<std::map<Color, char>> viable(static_cast<size_t>(q));
    for (auto& [c, v] : occ_[static_cast<size_t>(q) - 1])
      if (v > 0 && (forced[static_cast<size_t>(q) - 1] == 0 || forced[static_cast<size_t>(q) - 1] == c))
        viable[static_cast<size_t>(q) - 1][c] = 1;
    for (int j = q - 2; j >= 0; --j)
      for (auto& [c, v] : occ_[static_cast<size_t>(j)]) {
        if (v <= 0 || (forced[static_cast<size_t>(j)] != 0 && forced[static_cast<size_t>(j)] != c))
          continue;
        for (auto& [cd, w] : trans_[static_cast<size_t>(j)])
          if (cd.first == c && w > 0 && viable[static_cast<size_t>(j) + 1].count(cd.second)) {
            viable[static_cast<size_t>(j)][c] = 1;
            break;
          }
      }
    std::vector<Color> path(static_cast<size_t>(q), 0);
    Color prev = 0;
    for (int j = 0; j < q; ++j) {
      Color pick = 0;
      for (auto& [c, ok] : viable[static_cast<size_t>(j)]) {
        if (j > 0 && !(trans_[static_cast<size_t>(j) - 1].count({prev, c}) &&
                       trans_[static_cast<size_t>(j) - 1][{prev, c}] > 0))
          continue;
        pick = c;
        break;
      }
      if (pick == 0) throw ContractViolation("no peelable path covers the saturated arcs");
      path[static_cast<size_t>(j)] = pick;
      prev = pick;
    }
    // the peeled path must cover every saturated arc
    for (int j = 0; j < q; ++j)
      if (forced[static_cast<size_t>(j)] != 0 && path[static_cast<size_t>(j)] != forced[static_cast<size_t>(j)])
        throw ContractViolation("peeled path misses a saturated arc");
    // subtract one unit
    for (int j = 0; j < q; ++j) {
      --occ_[static_cast<size_t>(j)][path[static_cast<size_t>(j)]];
      if (j + 1 < q) --trans_[static_cast<size_t>(j)][{path[static_cast<size_t>(j)], path[static_cast<size_t>(j) + 1]}];
    }
    return path;
  }

  const Pattern& pat_;
  std::vector<std::map<Color, long long>> occ_;
  long long m_;
  std::vector<std::map<std::pair<Color, Color>, int>> trans_;
};

}  // namespace detail

// Exact Number List Coloring on disjoint paths.
inline std::optional<Coloring> solve_nlc_paths(const NumberListInstance& inst) {
  const Graph& g = inst.graph;
  int q = inst.color_count();
  if (inst.target_sum() != g.n()) return std::nullopt;
  auto patterns = pattern_partition(g, inst.lists);
  std::stable_sort(patterns.begin(), patterns.end(), [](const Pattern& a, const Pattern& b) {
    return a.multiplicity() > b.multiplicity();
  });
  int np = static_cast<int>(patterns.size());

  // colors occurring per pattern with their occurrence counts
  std::vector<std::map<Color, long long>> occ_count(static_cast<size_t>(np));
  for (int p = 0; p < np; ++p)
    for (const auto& lst : patterns[static_cast<size_t>(p)].seq)
      for (Color c : lst) ++occ_count[static_cast<size_t>(p)][c];

  // suffix capacity per color, over patterns p..np-1
  std::vector<std::vector<long long>> suffix_cap(static_cast<size_t>(np) + 1,
                                                 std::vector<long long>(static_cast<size_t>(q) + 1, 0));
  for (int p = np - 1; p >= 0; --p) {
    suffix_cap[static_cast<size_t>(p)] = suffix_cap[static_cast<size_t>(p) + 1];
    for (auto& [c, cnt] : occ_count[static_cast<size_t>(p)])
      suffix_cap[static_cast<size_t>(p)][static_cast<size_t>(c)] +=
          cnt * patterns[static_cast<size_t>(p)].multiplicity();
  }

  std::vector<long long> h_rem(static_cast<size_t>(q) + 1, 0);
  for (Color c = 1; c <= q; ++c) h_rem[static_cast<size_t>(c)] = inst.targets[static_cast<size_t>(c)];

  std::vector<std::map<Color, long long>> eta(static_cast<size_t>(np));
  std::vector<std::vector<std::map<Color, long long>>> occupancies(static_cast<size_t>(np));

  auto pattern_colors = [&](int p) {
    std::vector<Color> cs;
    for (auto& [c, cnt] : occ_count[static_cast<size_t>(p)]) cs.push_back(c);
    return cs;
  };

  std::function<bool(int)> advance;

  auto solve_pattern = [&](auto&& self, int p, const std::vector<Color>& cs, size_t ci,
                           long long need) -> bool {
    if (ci == cs.size()) {
      if (need != 0) return false;
      detail::PatternFeasibility feas(patterns[static_cast<size_t>(p)], eta[static_cast<size_t>(p)]);
      auto occ = feas.run();
      if (!occ) return false;
      occupancies[static_cast<size_t>(p)] = *occ;
      return advance(p + 1);
    }
    Color c = cs[ci];
    long long mult = patterns[static_cast<size_t>(p)].multiplicity();
    long long ub = std::min({h_rem[static_cast<size_t>(c)],
                             occ_count[static_cast<size_t>(p)][c] * mult, need});
    long long suffix = 0;
    for (size_t t = ci + 1; t < cs.size(); ++t)
      suffix += std::min(h_rem[static_cast<size_t>(cs[t])],
                         occ_count[static_cast<size_t>(p)][cs[t]] * mult);
    long long lb = std::max<long long>(0, need - suffix);
    for (long long v = lb; v <= ub; ++v) {
      eta[static_cast<size_t>(p)][c] = v;
      h_rem[static_cast<size_t>(c)] -= v;
      if (self(self, p, cs, ci + 1, need - v)) return true;
      h_rem[static_cast<size_t>(c)] += v;
    }
    eta[static_cast<size_t>(p)].erase(c);
    return false;
  };

  advance = [&](int p) -> bool {
    for (Color c = 1; c <= q; ++c)
      if (h_rem[static_cast<size_t>(c)] > suffix_cap[static_cast<size_t>(p)][static_cast<size_t>(c)])
        return false;
    if (p == np) {
      for (Color c = 1; c <= q; ++c)
        if (h_rem[static_cast<size_t>(c)] != 0) return false;
      return true;
    }
    auto cs = pattern_colors(p);
    long long need = static_cast<long long>(patterns[static_cast<size_t>(p)].multiplicity()) *
                     patterns[static_cast<size_t>(p)].length();
    return solve_pattern(solve_pattern, p, cs, 0, need);
  };

  if (!advance(0)) return std::nullopt;

  Coloring phi(g.n());
  for (int p = 0; p < np; ++p) {
    const Pattern& pat = patterns[static_cast<size_t>(p)];
    if (pat.length() == 0) continue;
    detail::PatternWitness wit(pat, occupancies[static_cast<size_t>(p)]);
    auto seqs = wit.run();
    for (size_t mem = 0; mem < pat.members.size(); ++mem)
      for (size_t j = 0; j < pat.members[mem].size(); ++j)
        phi.set(pat.members[mem][j], seqs[mem][j]);
  }
  auto rep = verify_coloring(inst, phi);
  if (!rep.ok()) throw ContractViolation("nlc paths solver emitted an invalid coloring");
  return phi;
}

// Proper coloring of disjoint paths with class-size spread <= 1: cyclic
// assignment over the concatenation of the paths in ascending component
// order.
inline Coloring equitable_paths(const Graph& g, int k) {
  if (k < 2) throw ContractViolation("equitable_paths needs k >= 2");
  Coloring phi(g.n());
  long long idx = 0;
  for (const auto& comp : connected_components(g)) {
    auto seq = detail::order_path(g, comp);
    for (Vertex v : seq) {
      phi.set(v, static_cast<Color>(idx % k) + 1);
      ++idx;
    }
  }
  return phi;
}

struct GammaGuess {
  std::vector<char> ceil_class;  // per psi class: targeted at ceil?
  int fresh_ceil = 0;            // ceil colors outside psi(U)
};

inline Modulator find_path_modulator(const Graph& g, int ell) {
  for (int budget = 0; budget <= g.n(); ++budget)
    if (auto mod = path_modulator(g, ell, budget)) return *mod;
  throw ContractViolation("path modulator search failed");  // unreachable
}

// Distance-to-short-paths solver (parameterized by the path bound ell).
inline std::optional<Coloring> solve_path_modulator(const Graph& g, int k, int ell,
                                                    std::optional<Modulator> modulator = std::nullopt) {
  if (k < 1) return std::nullopt;
  Modulator mod = modulator ? *modulator : find_path_modulator(g, ell);
  int n = g.n();
  long long floor_size = n / k;
  int n_mod_k = n % k;
  long long ceil_size = (n + k - 1) / k;

  std::vector<Vertex> rest_old;
  Graph rest = remove_vertices(g, mod.u, &rest_old);

  std::optional<Coloring> found;
  enumerate_independent_partitions(
      g, mod.u, k, ceil_size, [&](const std::vector<std::vector<Vertex>>& classes) {
        int t = static_cast<int>(classes.size());
        std::vector<int> class_of(static_cast<size_t>(n) + 1, 0);  // 1..t, 0 = not in U
        for (int c = 0; c < t; ++c)
          for (Vertex v : classes[static_cast<size_t>(c)]) class_of[static_cast<size_t>(v)] = c + 1;
        // gamma guess: which modulator classes get the ceil size
        for (unsigned cmask = 0; cmask < (1u << t); ++cmask) {
          int rho1 = __builtin_popcount(cmask);
          if (rho1 > n_mod_k) continue;
          int fresh_ceil = n_mod_k - rho1;
          if (fresh_ceil > k - t) continue;

          auto coloring = [&]() -> std::optional<Coloring> {
            if (k <= static_cast<int>(mod.u.size()) + 2) {
              // bounded colors: one full-width number-list instance
              NumberListInstance sub;
              sub.graph = rest;
              sub.lists.assign(rest_old.size() + 1, {});
              for (size_t i = 0; i < rest_old.size(); ++i) {
                Vertex v = rest_old[i];
                std::vector<char> blocked(static_cast<size_t>(k) + 1, 0);
                for (Vertex w : g.neighbors(v))
                  if (class_of[static_cast<size_t>(w)] != 0)
                    blocked[static_cast<size_t>(class_of[static_cast<size_t>(w)])] = 1;
                for (Color c = 1; c <= k; ++c)
                  if (!blocked[static_cast<size_t>(c)]) sub.lists[i + 1].push_back(c);
                if (sub.lists[i + 1].empty()) return std::nullopt;
              }
              sub.targets.assign(static_cast<size_t>(k) + 1, 0);
              int fresh_left = fresh_ceil;
              for (Color c = 1; c <= k; ++c) {
                long long target = floor_size;
                if (c <= t) {
                  if ((cmask >> (c - 1)) & 1u) target = ceil_size;
                  target -= static_cast<long long>(classes[static_cast<size_t>(c) - 1].size());
                  if (target < 0) return std::nullopt;
                } else if (fresh_left > 0) {
                  target = ceil_size;
                  --fresh_left;
                }
                sub.targets[static_cast<size_t>(c)] = target;
              }
              auto sol = solve_nlc_paths(sub);
              if (!sol) return std::nullopt;
              Coloring phi(n);
              for (int c = 0; c < t; ++c)
                for (Vertex v : classes[static_cast<size_t>(c)]) phi.set(v, c + 1);
              for (size_t i = 0; i < rest_old.size(); ++i)
                phi.set(rest_old[i], sol->at(static_cast<int>(i) + 1));
              return phi;
            }

            // unbounded colors: two pseudo-colors stand in for all fresh ones
            int rho = t;
            NumberListInstance sub;
            sub.graph = rest;
            sub.lists.assign(rest_old.size() + 1, {});
            for (size_t i = 0; i < rest_old.size(); ++i) {
              Vertex v = rest_old[i];
              std::vector<char> blocked(static_cast<size_t>(rho) + 3, 0);
              for (Vertex w : g.neighbors(v))
                if (class_of[static_cast<size_t>(w)] != 0)
                  blocked[static_cast<size_t>(class_of[static_cast<size_t>(w)])] = 1;
              for (Color c = 1; c <= rho + 2; ++c)
                if (!blocked[static_cast<size_t>(c)]) sub.lists[i + 1].push_back(c);
            }
            sub.targets.assign(static_cast<size_t>(rho) + 3, 0);
            long long gamma_sum = 0;
            for (int c = 0; c < t; ++c) {
              long long gamma = ((cmask >> c) & 1u) ? ceil_size : floor_size;
              gamma_sum += gamma;
              long long target = gamma - static_cast<long long>(classes[static_cast<size_t>(c)].size());
              if (target < 0) return std::nullopt;
              sub.targets[static_cast<size_t>(c) + 1] = target;
            }
            long long leftover = n - gamma_sum;
            if (leftover < 0) return std::nullopt;
            sub.targets[static_cast<size_t>(rho) + 1] = leftover / 2;
            sub.targets[static_cast<size_t>(rho) + 2] = (leftover + 1) / 2;
            auto sol = solve_nlc_paths(sub);
            if (!sol) return std::nullopt;

            // recolor the pseudo-colored vertices equitably with the unused colors
            std::vector<Vertex> x_old;
            for (size_t i = 0; i < rest_old.size(); ++i)
              if (sol->at(static_cast<int>(i) + 1) > rho) x_old.push_back(rest_old[i]);
            Coloring phi(n);
            for (int c = 0; c < t; ++c)
              for (Vertex v : classes[static_cast<size_t>(c)]) phi.set(v, c + 1);
            for (size_t i = 0; i < rest_old.size(); ++i)
              if (sol->at(static_cast<int>(i) + 1) <= rho)
                phi.set(rest_old[i], sol->at(static_cast<int>(i) + 1));
            if (!x_old.empty()) {
              std::vector<Vertex> x_of_new;
              Graph xg = induced_subgraph(g, x_old, &x_of_new);
              Coloring xphi = equitable_paths(xg, k - rho);
              for (Vertex v = 1; v <= xg.n(); ++v)
                phi.set(x_of_new[static_cast<size_t>(v) - 1], rho + xphi.at(v));
            }
            // outside the recolored set, every modulator color must land
            // exactly on its guessed size
            auto final_sizes = phi.class_sizes(k);
            for (int c = 0; c < t; ++c) {
              long long gamma = ((cmask >> c) & 1u) ? ceil_size : floor_size;
              if (final_sizes[static_cast<size_t>(c) + 1] != gamma)
                throw ContractViolation("modulator color missed its guessed size");
            }
            return phi;
          }();

          if (coloring) {
            auto rep = verify_coloring(EquitableInstance{g, k}, *coloring);
            if (!rep.ok())
              throw ContractViolation("path modulator solver emitted an invalid coloring");
            found = coloring;
            return true;
          }
        }
        return false;
      });
  return found;
}

}  // namespace equicolor
