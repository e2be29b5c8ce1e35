#pragma once

// Materializes the two hardness constructions as concrete instances: the
// multicolored-clique reduction to Number List Coloring on paths, and the
// OR-composition of many clique instances with instance-selector gadgets.
// Both come with constructive witness colorings so the verifier alone can
// accept them, plus the padding chain from number-list to plain equitable
// instances, and seeded random instance models.
//
// Identification numbers tie gadget choices together: each vertex gets
// up = n^2 + v, each edge up = 2n^2 + rank, and the down numbers complement
// them to Z = n^3, so two counts meet a target exactly when the underlying
// choices agree.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "equicolor/graph.hpp"
#include "equicolor/io.hpp"

namespace equicolor {

// ---- color palette for the reductions ----

struct ColorPalette {
  int k = 0;
  std::map<std::pair<int, int>, Color> sigma, sigma_p, helper_y, helper_x;  // ordered pairs
  std::map<std::pair<int, int>, Color> eps, eps_p;                          // unordered, i < j
  std::map<std::pair<int, std::pair<int, int>>, Color> tau, tau_p;          // identity, pair r < s
  int base_count = 0;  // colors before shading/propagation

  // cross-composition extras
  Color alpha = 0, gamma = 0, rho = 0, lambda = 0;
  int shading_offset = 0;  // shade(c) = shading_offset + c
  Color beta = 0;

  Color shade(Color c) const { return shading_offset + c; }
};

inline ColorPalette build_palette(int k, bool cross) {
  ColorPalette pal;
  pal.k = k;
  Color next = 1;
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j)
      if (i != j) pal.sigma[{i, j}] = next++;
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j)
      if (i != j) pal.sigma_p[{i, j}] = next++;
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j)
      if (i != j) pal.helper_y[{i, j}] = next++;
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j)
      if (i != j) pal.helper_x[{i, j}] = next++;
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) pal.eps[{i, j}] = next++;
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) pal.eps_p[{i, j}] = next++;
  for (int i = 1; i <= k; ++i)
    for (int r = 1; r <= k; ++r)
      for (int s = r + 1; s <= k; ++s)
        if (r != i && s != i) pal.tau[{i, {r, s}}] = next++;
  for (int i = 1; i <= k; ++i)
    for (int r = 1; r <= k; ++r)
      for (int s = r + 1; s <= k; ++s)
        if (r != i && s != i) pal.tau_p[{i, {r, s}}] = next++;
  if (cross) {
    pal.alpha = next++;
    pal.gamma = next++;
    pal.rho = next++;
    pal.lambda = next++;
    pal.base_count = next - 1;
    pal.shading_offset = pal.base_count;
    next += pal.base_count;  // one shading color per base color
    pal.beta = next++;
  } else {
    pal.base_count = next - 1;
  }
  return pal;
}

// ---- multicolored clique instances ----

inline bool mc_regular(const MCInstance& inst, long long* n_out = nullptr, long long* m_out = nullptr) {
  auto parts = inst.parts();
  long long nsize = -1;
  for (int i = 1; i <= inst.k; ++i) {
    long long sz = static_cast<long long>(parts[static_cast<size_t>(i)].size());
    if (nsize < 0) nsize = sz;
    if (sz != nsize) return false;
  }
  std::map<std::pair<int, int>, long long> cnt;
  for (auto [u, v] : inst.graph.edges()) {
    int a = inst.part_of[static_cast<size_t>(u)], b = inst.part_of[static_cast<size_t>(v)];
    if (a == b) return false;  // intra-part edges are dropped by regularization
    cnt[{std::min(a, b), std::max(a, b)}] += 1;
  }
  long long msize = -1;
  for (int i = 1; i <= inst.k; ++i)
    for (int j = i + 1; j <= inst.k; ++j) {
      long long c = cnt.count({i, j}) ? cnt[{i, j}] : 0;
      if (msize < 0) msize = c;
      if (c != msize) return false;
    }
  if (n_out) *n_out = nsize;
  if (m_out) *m_out = msize;
  return true;
}

// Equalizes part sizes and pair edge counts by taking one disjoint copy per
// permutation of the classes and joining copies of adjacent vertices.
// Intra-part edges carry no clique and are dropped.
inline MCInstance regularize_mc(const MCInstance& inst) {
  if (inst.k < 2) throw ContractViolation("regularize_mc needs k >= 2");
  {
    MCInstance clean = inst;  // regularity is checked without intra-part edges
    Graph g2(inst.graph.n());
    for (auto [u, v] : inst.graph.edges())
      if (inst.part_of[static_cast<size_t>(u)] != inst.part_of[static_cast<size_t>(v)])
        g2.add_edge(u, v);
    clean.graph = std::move(g2);
    if (mc_regular(clean)) return clean;
  }
  std::vector<std::vector<int>> perms;
  std::vector<int> perm(static_cast<size_t>(inst.k));
  for (int i = 0; i < inst.k; ++i) perm[static_cast<size_t>(i)] = i + 1;
  do {
    perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  int n = inst.graph.n();
  long long copies = static_cast<long long>(perms.size());
  long long n2 = checked_mul(copies, n);
  MCInstance out;
  out.k = inst.k;
  out.graph = Graph(static_cast<int>(n2));
  out.part_of.assign(static_cast<size_t>(n2) + 1, 0);
  auto vid = [&](size_t copy, Vertex v) {
    return static_cast<Vertex>(static_cast<long long>(copy) * n + v);
  };
  for (size_t c = 0; c < perms.size(); ++c)
    for (Vertex v = 1; v <= n; ++v)
      out.part_of[static_cast<size_t>(vid(c, v))] =
          perms[c][static_cast<size_t>(inst.part_of[static_cast<size_t>(v)]) - 1];
  for (auto [u, v] : inst.graph.edges()) {
    int pu = inst.part_of[static_cast<size_t>(u)], pv = inst.part_of[static_cast<size_t>(v)];
    if (pu == pv) continue;
    for (size_t c1 = 0; c1 < perms.size(); ++c1)
      for (size_t c2 = 0; c2 < perms.size(); ++c2) {
        // copies whose permuted parts collide carry no multicolored clique
        if (perms[c1][static_cast<size_t>(pu) - 1] == perms[c2][static_cast<size_t>(pv) - 1])
          continue;
        out.graph.add_edge(vid(c1, u), vid(c2, v));
      }
  }
  if (!mc_regular(out)) throw ContractViolation("regularization failed to equalize the instance");
  return out;
}

// ---- the path-gadget construction ----

struct EdgeGadget {
  int c = 0, d = 0;        // gadget group: root colors sigma(c,d); identity lives in V_c
  Vertex ident = 0, other = 0;  // the oriented edge this gadget represents
  Vertex root = 0, a = 0, b = 0;
  std::vector<Vertex> a_path, b_path;  // ordered outward from a / b
  std::vector<char> in_instance;        // cross-composition only: tuple membership per p
};

struct HardnessInstance {
  NumberListInstance nlc;
  ColorPalette palette;
  std::vector<EdgeGadget> gadgets;
  long long z = 0;
  long long n_mc = 0, m_mc = 0, big_n = 0, big_m = 0;
  int k = 0;
};

namespace detail {

struct IdNumbers {
  long long z = 0;
  std::map<Vertex, long long> v_up;
  std::map<std::pair<Vertex, Vertex>, long long> e_up;

  long long v_down(Vertex v) const { return z - v_up.at(v); }
  long long e_down(std::pair<Vertex, Vertex> e) const { return z - e_up.at(e); }
};

inline IdNumbers assign_ids(long long n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  IdNumbers ids;
  ids.z = checked_mul(checked_mul(n, n), n);
  long long m = static_cast<long long>(edges.size());
  if (checked_add(checked_mul(2, checked_mul(n, n)), m) >= ids.z)
    throw GuardError("instance too small for identification numbers (need 2n^2 + m < n^3)");
  for (Vertex v = 1; v <= n; ++v) ids.v_up[static_cast<Vertex>(v)] = n * n + v;
  long long rank = 1;
  for (auto e : edges) ids.e_up[e] = 2 * n * n + rank++;
  return ids;
}

// The per-side even blocks of one gadget: the symmetry block scaled by the
// edge number, then one consistency block per third class, scaled by the
// identity vertex number. Down-side blocks carry the primed color exactly
// when the third class exceeds the partner.
struct GadgetBlocks {
  std::vector<std::pair<long long, Color>> down_evens, up_evens;  // (count, color)
  long long down_len = 0, up_len = 0;                             // path lengths (2 * evens)
};

inline GadgetBlocks gadget_blocks(const ColorPalette& pal, const IdNumbers& ids, int c, int d,
                                  Vertex ident, std::pair<Vertex, Vertex> edge) {
  GadgetBlocks gb;
  int k = pal.k;
  long long ed = ids.e_down(edge), eu = ids.e_up.at(edge);
  long long vd = ids.v_down(ident), vu = ids.v_up.at(ident);
  auto epair = std::pair(std::min(c, d), std::max(c, d));
  gb.down_evens.emplace_back(ed, c < d ? pal.eps_p.at(epair) : pal.eps.at(epair));
  gb.up_evens.emplace_back(eu, c < d ? pal.eps.at(epair) : pal.eps_p.at(epair));
  for (int x = 1; x <= k; ++x) {
    if (x == c || x == d) continue;
    auto tpair = std::pair(std::min(d, x), std::max(d, x));
    if (x > d) {
      gb.down_evens.emplace_back(vd, pal.tau_p.at({c, tpair}));
      gb.up_evens.emplace_back(vu, pal.tau.at({c, tpair}));
    } else {
      gb.down_evens.emplace_back(vd, pal.tau.at({c, tpair}));
      gb.up_evens.emplace_back(vu, pal.tau_p.at({c, tpair}));
    }
  }
  for (auto& [cnt, col] : gb.down_evens) gb.down_len += 2 * cnt;
  for (auto& [cnt, col] : gb.up_evens) gb.up_len += 2 * cnt;
  return gb;
}

}  // namespace detail

// gadget vertex count: 3 + 2(k-1)Z   (root, a, b plus both even/odd arms)
inline long long gadget_size(int k, long long z) { return 3 + 2 * (k - 1) * z; }

inline std::vector<Color> sorted_list(std::initializer_list<Color> cs) {
  std::vector<Color> v(cs);
  std::sort(v.begin(), v.end());
  return v;
}

// Builds the number-list instance whose target-meeting list colorings
// correspond to multicolored k-cliques of the input.
inline HardnessInstance gen_nlc_hardness(const MCInstance& mc_in) {
  MCInstance mc = regularize_mc(mc_in);
  long long bigN = 0, bigM = 0;
  if (!mc_regular(mc, &bigN, &bigM)) throw ContractViolation("regularization postcondition failed");
  if (bigM < 1) throw GuardError("every class pair needs at least one edge");
  int k = mc.k;
  long long n = mc.graph.n();
  auto mc_edges = mc.graph.edges();
  auto ids = detail::assign_ids(n, mc_edges);

  HardnessInstance out;
  out.palette = build_palette(k, false);
  out.k = k;
  out.z = ids.z;
  out.n_mc = n;
  out.m_mc = static_cast<long long>(mc_edges.size());
  out.big_n = bigN;
  out.big_m = bigM;
  const ColorPalette& pal = out.palette;

  long long gadget_count = checked_mul(checked_mul(k, k - 1), bigM);
  long long total_vertices = checked_mul(gadget_count, gadget_size(k, ids.z));
  Graph g(static_cast<int>(total_vertices));
  std::vector<std::vector<Color>> lists(static_cast<size_t>(total_vertices) + 1);
  const std::vector<int>& part_of = mc.part_of;

  Vertex next_vertex = 1;
  auto lay_gadget = [&](int c, int d, Vertex ident, Vertex other) {
    EdgeGadget eg;
    eg.c = c;
    eg.d = d;
    eg.ident = ident;
    eg.other = other;
    auto edge = std::pair(std::min(ident, other), std::max(ident, other));
    auto gb = detail::gadget_blocks(pal, ids, c, d, ident, edge);
    Color y = pal.helper_y.at({c, d});
    Color x = pal.helper_x.at({c, d});
    Color sig = pal.sigma.at({c, d});
    Color sig_p = pal.sigma_p.at({c, d});

    std::vector<Color> down_seq, up_seq;  // even-vertex colors, outward order
    for (auto [cnt, col] : gb.down_evens)
      for (long long i = 0; i < cnt; ++i) down_seq.push_back(col);
    for (auto [cnt, col] : gb.up_evens)
      for (long long i = 0; i < cnt; ++i) up_seq.push_back(col);

    auto emit = [&](std::vector<Color> lst) {
      Vertex v = next_vertex++;
      lists[static_cast<size_t>(v)] = std::move(lst);
      return v;
    };
    // arm position t has distance t+1 to the root, so odd t are the evens;
    // the whole gadget is laid out as one path: reversed a-arm, a, root, b, b-arm
    eg.a_path.resize(static_cast<size_t>(gb.down_len));
    eg.b_path.resize(static_cast<size_t>(gb.up_len));
    std::vector<Vertex> chain;
    for (long long t = gb.down_len; t >= 1; --t) {
      Color other_col = (t % 2) == 1 ? down_seq[static_cast<size_t>((t - 1) / 2)] : x;
      Vertex v = emit(sorted_list({y, other_col}));
      eg.a_path[static_cast<size_t>(t - 1)] = v;
      chain.push_back(v);
    }
    eg.a = emit(sorted_list({sig, y}));
    chain.push_back(eg.a);
    eg.root = emit(sorted_list({sig, sig_p}));
    chain.push_back(eg.root);
    eg.b = emit(sorted_list({sig, y}));
    chain.push_back(eg.b);
    for (long long t = 1; t <= gb.up_len; ++t) {
      Color other_col = (t % 2) == 1 ? up_seq[static_cast<size_t>((t - 1) / 2)] : x;
      Vertex v = emit(sorted_list({y, other_col}));
      eg.b_path[static_cast<size_t>(t - 1)] = v;
      chain.push_back(v);
    }
    for (size_t i = 0; i + 1 < chain.size(); ++i) g.add_edge(chain[i], chain[i + 1]);
    out.gadgets.push_back(std::move(eg));
  };

  for (int c = 1; c <= k; ++c)
    for (int d = 1; d <= k; ++d) {
      if (c == d) continue;
      for (auto [u, v] : mc_edges) {
        int pu = part_of[static_cast<size_t>(u)], pv = part_of[static_cast<size_t>(v)];
        if (!((pu == c && pv == d) || (pu == d && pv == c))) continue;
        Vertex ident = pu == c ? u : v;
        Vertex other = pu == c ? v : u;
        lay_gadget(c, d, ident, other);
      }
    }
  if (next_vertex - 1 != total_vertices)
    throw ContractViolation("gadget layout did not cover the expected vertex count");

  // numerical targets
  std::vector<long long> h(static_cast<size_t>(pal.base_count) + 1, 0);
  long long Z = ids.z;
  for (int c = 1; c <= k; ++c)
    for (int d = 1; d <= k; ++d) {
      if (c == d) continue;
      h[static_cast<size_t>(pal.sigma.at({c, d}))] = 1 + 2 * (bigM - 1);
      h[static_cast<size_t>(pal.sigma_p.at({c, d}))] = bigM - 1;
      h[static_cast<size_t>(pal.helper_y.at({c, d}))] =
          checked_add(2, checked_mul(k - 1, checked_mul(bigM, Z)));
      h[static_cast<size_t>(pal.helper_x.at({c, d}))] =
          checked_mul(k - 1, checked_mul(bigM - 1, Z));
    }
  for (auto& [key, col] : pal.eps) h[static_cast<size_t>(col)] = Z;
  for (auto& [key, col] : pal.eps_p) h[static_cast<size_t>(col)] = Z;
  for (auto& [key, col] : pal.tau) h[static_cast<size_t>(col)] = Z;
  for (auto& [key, col] : pal.tau_p) h[static_cast<size_t>(col)] = Z;

  out.nlc.graph = std::move(g);
  out.nlc.lists = std::move(lists);
  out.nlc.targets = std::move(h);
  if (out.nlc.target_sum() != out.nlc.graph.n())
    throw ContractViolation("target sum does not match the vertex count");
  return out;
}

namespace detail {

// Colors one gadget according to its role; the unique non-helper entry of
// each list drives the even side, so no search is involved.
inline void color_gadget(const HardnessInstance& hi, const EdgeGadget& eg, bool selected,
                         Coloring& phi) {
  const ColorPalette& pal = hi.palette;
  Color y = pal.helper_y.at({eg.c, eg.d});
  Color sig = pal.sigma.at({eg.c, eg.d});
  Color sig_p = pal.sigma_p.at({eg.c, eg.d});
  auto other_color = [&](Vertex v) {
    for (Color c : hi.nlc.list_of(v))
      if (c != y) return c;
    throw ContractViolation("gadget vertex list lacks a non-helper color");
  };
  if (selected) {
    phi.set(eg.root, sig);
    phi.set(eg.a, y);
    phi.set(eg.b, y);
    for (auto* arm : {&eg.a_path, &eg.b_path})
      for (size_t t = 1; t <= arm->size(); ++t) {
        Vertex v = (*arm)[t - 1];
        phi.set(v, t % 2 == 1 ? other_color(v) : y);  // odd positions are even vertices
      }
  } else {
    phi.set(eg.root, sig_p);
    phi.set(eg.a, sig);
    phi.set(eg.b, sig);
    for (auto* arm : {&eg.a_path, &eg.b_path})
      for (size_t t = 1; t <= arm->size(); ++t) {
        Vertex v = (*arm)[t - 1];
        phi.set(v, t % 2 == 1 ? y : other_color(v));
      }
  }
}

inline void check_clique(const MCInstance& mc, const std::vector<Vertex>& clique) {
  if (static_cast<int>(clique.size()) != mc.k)
    throw ContractViolation("clique must have exactly k vertices");
  std::vector<char> part_seen(static_cast<size_t>(mc.k) + 1, 0);
  for (Vertex v : clique) {
    if (!mc.graph.valid_vertex(v)) throw ContractViolation("clique vertex out of range");
    int p = mc.part_of[static_cast<size_t>(v)];
    if (part_seen[static_cast<size_t>(p)]) throw ContractViolation("clique repeats a class");
    part_seen[static_cast<size_t>(p)] = 1;
  }
  for (size_t i = 0; i < clique.size(); ++i)
    for (size_t j = i + 1; j < clique.size(); ++j)
      if (!mc.graph.has_edge(clique[i], clique[j]))
        throw ContractViolation("clique misses an edge");
}

}  // namespace detail

// Constructive witness from a multicolored clique of the (regularized)
// source instance. The caller verifies the result against the targets.
inline Coloring witness_nlc(const HardnessInstance& hi, const MCInstance& regular_mc,
                            const std::vector<Vertex>& clique) {
  detail::check_clique(regular_mc, clique);
  std::vector<Vertex> by_part(static_cast<size_t>(regular_mc.k) + 1, 0);
  for (Vertex v : clique) by_part[static_cast<size_t>(regular_mc.part_of[static_cast<size_t>(v)])] = v;
  Coloring phi(hi.nlc.graph.n());
  for (const auto& eg : hi.gadgets) {
    bool selected = eg.ident == by_part[static_cast<size_t>(eg.c)] &&
                    eg.other == by_part[static_cast<size_t>(eg.d)];
    detail::color_gadget(hi, eg, selected, phi);
  }
  return phi;
}

// ---- number-list -> equitable padding chain ----

struct ListLift {
  EquitableInstance inst;
  int orig_n = 0;
  int colors = 0;
  long long hmax = 0;
  std::vector<std::pair<Vertex, Vertex>> pad_range;  // per color: [first, last] pad ids, or {0,0}
  Vertex clique_start = 0;

  // forward: a target-meeting list coloring becomes an equitable coloring
  Coloring to_equitable(const Coloring& list_phi) const {
    Coloring phi(inst.graph.n());
    for (Vertex v = 1; v <= orig_n; ++v) phi.set(v, list_phi.at(v));
    for (Color c = 1; c <= colors; ++c) {
      auto [lo, hi] = pad_range[static_cast<size_t>(c)];
      for (Vertex v = lo; v != 0 && v <= hi; ++v) phi.set(v, c);
      phi.set(clique_start + c - 1, c);
    }
    return phi;
  }

  // backward: any equitable coloring of the padded instance induces a
  // target-meeting list coloring of the original
  Coloring from_equitable(const Coloring& eq_phi) const {
    std::vector<Color> relabel(static_cast<size_t>(colors) + 1, 0);
    for (Color c = 1; c <= colors; ++c) {
      Color img = eq_phi.at(clique_start + c - 1);
      if (img < 1 || img > colors || relabel[static_cast<size_t>(img)] != 0)
        throw ContractViolation("clique vertices do not carry distinct colors");
      relabel[static_cast<size_t>(img)] = c;
    }
    Coloring phi(orig_n);
    for (Vertex v = 1; v <= orig_n; ++v)
      phi.set(v, relabel[static_cast<size_t>(eq_phi.at(v))]);
    return phi;
  }
};

// Pads with singleton-list isolated vertices until all targets agree, then
// adds one clique vertex per color wired to every vertex lacking that color.
inline ListLift lift_lists_to_equitable(const NumberListInstance& in) {
  ListLift out;
  int n = in.graph.n();
  int q = in.color_count();
  out.orig_n = n;
  out.colors = q;
  long long hmax = 0;
  for (Color c = 1; c <= q; ++c) hmax = std::max(hmax, in.targets[static_cast<size_t>(c)]);
  out.hmax = hmax;
  long long pads = 0;
  for (Color c = 1; c <= q; ++c)
    pads = checked_add(pads, hmax - in.targets[static_cast<size_t>(c)]);
  long long total = checked_add(checked_add(n, pads), q);
  Graph g(static_cast<int>(total));
  std::vector<std::vector<Color>> list_of(static_cast<size_t>(n) + static_cast<size_t>(pads) + 1);
  for (Vertex v = 1; v <= n; ++v) list_of[static_cast<size_t>(v)] = in.list_of(v);
  out.pad_range.assign(static_cast<size_t>(q) + 1, {0, 0});
  Vertex next = n + 1;
  for (Color c = 1; c <= q; ++c) {
    long long cnt = hmax - in.targets[static_cast<size_t>(c)];
    if (cnt == 0) continue;
    out.pad_range[static_cast<size_t>(c)] = {next, static_cast<Vertex>(next + cnt - 1)};
    for (long long i = 0; i < cnt; ++i) list_of[static_cast<size_t>(next++)] = {c};
  }
  out.clique_start = next;
  for (auto [u, v] : in.graph.edges()) g.add_edge(u, v);
  for (Color c = 1; c <= q; ++c)
    for (Color d = c + 1; d <= q; ++d)
      g.add_edge(out.clique_start + c - 1, out.clique_start + d - 1);
  for (Vertex v = 1; v < out.clique_start; ++v) {
    const auto& lst = list_of[static_cast<size_t>(v)];
    for (Color c = 1; c <= q; ++c)
      if (!std::binary_search(lst.begin(), lst.end(), c)) g.add_edge(out.clique_start + c - 1, v);
  }
  out.inst = EquitableInstance{std::move(g), q};
  return out;
}

// ---- cross-composition ----

struct ChoiceGadget {
  Color color = 0;
  std::vector<std::pair<Vertex, Vertex>> bits;  // ((c,i)_0, (c,i)_1), i ascending
  std::vector<Vertex> selectors;                // z_0 .. z_t
};

struct CrossInstance {
  NumberListInstance nlc;
  ColorPalette palette;
  std::vector<EdgeGadget> gadgets;
  std::vector<ChoiceGadget> choices;
  std::vector<MCInstance> instances;  // after padding to a power of two
  long long z = 0;
  int k = 0, w_bits = 0;
  long long big_m = 0;
};

inline CrossInstance gen_cross_composition(std::vector<MCInstance> instances) {
  if (instances.empty()) throw ContractViolation("cross composition needs at least one instance");
  // pad with copies of the first instance to a power of two
  while ((instances.size() & (instances.size() - 1)) != 0) instances.push_back(instances.front());
  if (instances.size() == 1) instances.push_back(instances.front());

  long long bigN = -1, bigM = -1;
  int k = instances.front().k;
  long long n = instances.front().graph.n();
  for (auto& inst : instances) {
    long long nn = 0, mm = 0;
    if (inst.k != k || inst.graph.n() != n || !mc_regular(inst, &nn, &mm))
      throw ContractViolation("cross composition needs regular instances with equal k, n, N, M");
    if (bigN < 0) bigN = nn, bigM = mm;
    if (nn != bigN || mm != bigM)
      throw ContractViolation("cross composition needs equal class and edge counts");
  }
  if (bigM < 1) throw GuardError("every class pair needs at least one edge");

  CrossInstance out;
  out.instances = instances;
  out.k = k;
  out.big_m = bigM;
  int t_plus_1 = static_cast<int>(instances.size());
  int W = 0;
  while ((1 << (W + 1)) <= t_plus_1) ++W;
  out.w_bits = W;
  out.palette = build_palette(k, true);
  const ColorPalette& pal = out.palette;

  // union of edge sets for the identification numbers
  std::set<std::pair<Vertex, Vertex>> edge_union;
  for (auto& inst : instances)
    for (auto e : inst.graph.edges()) edge_union.insert(e);
  std::vector<std::pair<Vertex, Vertex>> edges(edge_union.begin(), edge_union.end());
  auto ids = detail::assign_ids(n, edges);
  out.z = ids.z;

  // distinct tuples (c, d, ident, other) over all instances
  std::map<std::tuple<int, int, Vertex, Vertex>, std::vector<char>> tuples;
  for (size_t p = 0; p < instances.size(); ++p) {
    const auto& inst = instances[p];
    for (auto [u, v] : inst.graph.edges()) {
      int pu = inst.part_of[static_cast<size_t>(u)], pv = inst.part_of[static_cast<size_t>(v)];
      if (pu == pv) continue;
      for (auto [c, d, ident, other] :
           {std::tuple(pu, pv, u, v), std::tuple(pv, pu, v, u)}) {
        auto key = std::tuple(c, d, ident, other);
        auto it = tuples.find(key);
        if (it == tuples.end())
          it = tuples.emplace(key, std::vector<char>(instances.size(), 0)).first;
        it->second[p] = 1;
      }
    }
  }
  long long Q = static_cast<long long>(tuples.size());
  long long gsize = gadget_size(k, ids.z);
  long long choice_size = 2LL * W + t_plus_1;
  long long total_vertices =
      checked_add(checked_mul(Q, gsize), checked_mul(pal.base_count, choice_size));
  Graph g(static_cast<int>(total_vertices));
  int q_colors = 2 * pal.base_count + 1;
  std::vector<std::vector<Color>> lists(static_cast<size_t>(total_vertices) + 1);

  Vertex next_vertex = 1;
  auto emit = [&](std::vector<Color> lst) {
    Vertex v = next_vertex++;
    lists[static_cast<size_t>(v)] = std::move(lst);
    return v;
  };

  for (auto& [key, membership] : tuples) {
    auto [c, d, ident, other] = key;
    EdgeGadget eg;
    eg.c = c;
    eg.d = d;
    eg.ident = ident;
    eg.other = other;
    eg.in_instance = membership;
    auto edge = std::pair(std::min(ident, other), std::max(ident, other));
    auto gb = detail::gadget_blocks(pal, ids, c, d, ident, edge);
    Color y = pal.helper_y.at({c, d});
    Color x = pal.helper_x.at({c, d});
    Color sig = pal.sigma.at({c, d});
    Color sig_p = pal.sigma_p.at({c, d});
    std::vector<Color> down_seq, up_seq;
    for (auto [cnt, col] : gb.down_evens)
      for (long long i = 0; i < cnt; ++i) down_seq.push_back(col);
    for (auto [cnt, col] : gb.up_evens)
      for (long long i = 0; i < cnt; ++i) up_seq.push_back(col);

    eg.a_path.resize(static_cast<size_t>(gb.down_len));
    eg.b_path.resize(static_cast<size_t>(gb.up_len));
    std::vector<Vertex> chain;
    for (long long t2 = gb.down_len; t2 >= 1; --t2) {
      bool even_vertex = (t2 % 2) == 1;
      Vertex v = even_vertex
                     ? emit(sorted_list({y, down_seq[static_cast<size_t>((t2 - 1) / 2)], pal.lambda}))
                     : emit(sorted_list({y, x, pal.gamma}));
      eg.a_path[static_cast<size_t>(t2 - 1)] = v;
      chain.push_back(v);
    }
    eg.a = emit(sorted_list({sig, y, pal.rho}));
    chain.push_back(eg.a);
    eg.root = emit(sorted_list({sig, sig_p, pal.alpha}));
    chain.push_back(eg.root);
    eg.b = emit(sorted_list({sig, y, pal.rho}));
    chain.push_back(eg.b);
    for (long long t2 = 1; t2 <= gb.up_len; ++t2) {
      bool even_vertex = (t2 % 2) == 1;
      Vertex v = even_vertex
                     ? emit(sorted_list({y, up_seq[static_cast<size_t>((t2 - 1) / 2)], pal.lambda}))
                     : emit(sorted_list({y, x, pal.gamma}));
      eg.b_path[static_cast<size_t>(t2 - 1)] = v;
      chain.push_back(v);
    }
    for (size_t i = 0; i + 1 < chain.size(); ++i) g.add_edge(chain[i], chain[i + 1]);
    out.gadgets.push_back(std::move(eg));
  }

  // choice gadgets, one per base color, in palette order
  for (Color c = 1; c <= pal.base_count; ++c) {
    ChoiceGadget cg;
    cg.color = c;
    for (int i = 0; i < W; ++i) {
      Vertex b0 = emit(sorted_list({c, pal.beta}));
      Vertex b1 = emit(sorted_list({c, pal.beta}));
      g.add_edge(b0, b1);
      cg.bits.emplace_back(b0, b1);
    }
    for (int p = 0; p < t_plus_1; ++p) {
      Vertex z = emit(sorted_list({c, pal.shade(c)}));
      cg.selectors.push_back(z);
      for (int i = 0; i < W; ++i)
        g.add_edge(z, ((p >> i) & 1) == 0 ? cg.bits[static_cast<size_t>(i)].first
                                          : cg.bits[static_cast<size_t>(i)].second);
    }
    out.choices.push_back(std::move(cg));
  }
  if (next_vertex - 1 != total_vertices)
    throw ContractViolation("cross layout did not cover the expected vertex count");

  // primary coupling: the first choice gadget pins the bit pattern of all
  for (size_t ci = 1; ci < out.choices.size(); ++ci)
    for (int i = 0; i < W; ++i) {
      auto [c0, c1] = out.choices[0].bits[static_cast<size_t>(i)];
      auto [d0, d1] = out.choices[ci].bits[static_cast<size_t>(i)];
      g.add_edge(c0, d1);
      g.add_edge(c1, d0);
    }

  // suppression / selection wiring between selectors and edge gadgets
  for (const auto& cg : out.choices) {
    Color c = cg.color;
    bool suppression = c == pal.alpha || c == pal.gamma || c == pal.rho || c == pal.lambda;
    for (int p = 0; p < t_plus_1; ++p) {
      Vertex z = cg.selectors[static_cast<size_t>(p)];
      for (const auto& eg : out.gadgets) {
        bool members = eg.in_instance[static_cast<size_t>(p)] != 0;
        if (suppression && members) {
          auto touch = [&](Vertex v) {
            const auto& lst = lists[static_cast<size_t>(v)];
            if (std::binary_search(lst.begin(), lst.end(), c)) g.add_edge(z, v);
          };
          touch(eg.root);
          touch(eg.a);
          touch(eg.b);
          for (Vertex v : eg.a_path) touch(v);
          for (Vertex v : eg.b_path) touch(v);
        } else if (!suppression && !members) {
          g.add_edge(z, eg.root);
          g.add_edge(z, eg.a);
          g.add_edge(z, eg.b);
          for (Vertex v : eg.a_path) g.add_edge(z, v);
          for (Vertex v : eg.b_path) g.add_edge(z, v);
        }
      }
    }
  }

  // targets
  std::vector<long long> h(static_cast<size_t>(q_colors) + 1, 0);
  long long Z = ids.z;
  long long wp1 = W + 1;
  long long D = Q - checked_mul(checked_mul(k, k - 1), bigM);
  if (D < 0) throw ContractViolation("tuple count below one instance's gadget count");
  for (int c = 1; c <= k; ++c)
    for (int d = 1; d <= k; ++d) {
      if (c == d) continue;
      h[static_cast<size_t>(pal.sigma.at({c, d}))] = 1 + 2 * (bigM - 1) + wp1;
      h[static_cast<size_t>(pal.sigma_p.at({c, d}))] = bigM - 1 + wp1;
      h[static_cast<size_t>(pal.helper_y.at({c, d}))] =
          checked_add(2 + wp1, checked_mul(k - 1, checked_mul(bigM, Z)));
      h[static_cast<size_t>(pal.helper_x.at({c, d}))] =
          checked_add(wp1, checked_mul(k - 1, checked_mul(bigM - 1, Z)));
    }
  for (auto& [key, col] : pal.eps) h[static_cast<size_t>(col)] = Z + wp1;
  for (auto& [key, col] : pal.eps_p) h[static_cast<size_t>(col)] = Z + wp1;
  for (auto& [key, col] : pal.tau) h[static_cast<size_t>(col)] = Z + wp1;
  for (auto& [key, col] : pal.tau_p) h[static_cast<size_t>(col)] = Z + wp1;
  h[static_cast<size_t>(pal.alpha)] = D + wp1;
  h[static_cast<size_t>(pal.rho)] = 2 * D + wp1;
  h[static_cast<size_t>(pal.lambda)] = checked_add(checked_mul(D, (k - 1) * Z), wp1);
  h[static_cast<size_t>(pal.gamma)] = h[static_cast<size_t>(pal.lambda)];
  for (Color c = 1; c <= pal.base_count; ++c)
    h[static_cast<size_t>(pal.shade(c))] = t_plus_1 - 1;
  h[static_cast<size_t>(pal.beta)] = checked_mul(pal.base_count, W);

  out.nlc.graph = std::move(g);
  out.nlc.lists = std::move(lists);
  out.nlc.targets = std::move(h);
  if (out.nlc.target_sum() != out.nlc.graph.n())
    throw ContractViolation("cross-composition target sum does not match the vertex count");
  return out;
}

// Witness for the composed instance: instance p holds the clique; all other
// tuples are suppressed, the selector gadgets binary-encode p.
inline Coloring witness_cross(const CrossInstance& cx, int p, const std::vector<Vertex>& clique) {
  if (p < 0 || p >= static_cast<int>(cx.instances.size()))
    throw ContractViolation("instance index out of range");
  const MCInstance& mc = cx.instances[static_cast<size_t>(p)];
  detail::check_clique(mc, clique);
  std::vector<Vertex> by_part(static_cast<size_t>(mc.k) + 1, 0);
  for (Vertex v : clique) by_part[static_cast<size_t>(mc.part_of[static_cast<size_t>(v)])] = v;
  const ColorPalette& pal = cx.palette;
  Coloring phi(cx.nlc.graph.n());

  auto other_core = [&](Vertex v, Color y) {
    for (Color c : cx.nlc.list_of(v))
      if (c != y && c != pal.alpha && c != pal.gamma && c != pal.rho && c != pal.lambda) return c;
    throw ContractViolation("gadget vertex lacks a core color");
  };
  auto suppression_of = [&](Vertex v) {
    for (Color c : cx.nlc.list_of(v))
      if (c == pal.alpha || c == pal.gamma || c == pal.rho || c == pal.lambda) return c;
    throw ContractViolation("gadget vertex lacks a suppression color");
  };

  for (const auto& eg : cx.gadgets) {
    bool members = eg.in_instance[static_cast<size_t>(p)] != 0;
    Color y = pal.helper_y.at({eg.c, eg.d});
    Color sig = pal.sigma.at({eg.c, eg.d});
    Color sig_p = pal.sigma_p.at({eg.c, eg.d});
    if (!members) {
      phi.set(eg.root, suppression_of(eg.root));
      phi.set(eg.a, suppression_of(eg.a));
      phi.set(eg.b, suppression_of(eg.b));
      for (auto* arm : {&eg.a_path, &eg.b_path})
        for (Vertex v : *arm) phi.set(v, suppression_of(v));
      continue;
    }
    bool selected = eg.ident == by_part[static_cast<size_t>(eg.c)] &&
                    eg.other == by_part[static_cast<size_t>(eg.d)];
    if (selected) {
      phi.set(eg.root, sig);
      phi.set(eg.a, y);
      phi.set(eg.b, y);
      for (auto* arm : {&eg.a_path, &eg.b_path})
        for (size_t t = 1; t <= arm->size(); ++t) {
          Vertex v = (*arm)[t - 1];
          phi.set(v, t % 2 == 1 ? other_core(v, y) : y);
        }
    } else {
      phi.set(eg.root, sig_p);
      phi.set(eg.a, sig);
      phi.set(eg.b, sig);
      for (auto* arm : {&eg.a_path, &eg.b_path})
        for (size_t t = 1; t <= arm->size(); ++t) {
          Vertex v = (*arm)[t - 1];
          phi.set(v, t % 2 == 1 ? y : other_core(v, y));
        }
    }
  }

  for (const auto& cg : cx.choices) {
    for (int i = 0; i < cx.w_bits; ++i) {
      auto [b0, b1] = cg.bits[static_cast<size_t>(i)];
      if (((p >> i) & 1) == 0) {
        phi.set(b0, pal.beta);
        phi.set(b1, cg.color);
      } else {
        phi.set(b0, cg.color);
        phi.set(b1, pal.beta);
      }
    }
    for (size_t s = 0; s < cg.selectors.size(); ++s)
      phi.set(cg.selectors[s],
              static_cast<int>(s) == p ? cg.color : pal.shade(cg.color));
  }
  return phi;
}

// ---- random instance models ----

namespace detail {

inline uint64_t rng_next(uint64_t& state) {
  // splitmix64; fixed across platforms
  state += 0x9e3779b97f4a7c15ULL;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline uint64_t rng_below(uint64_t& state, uint64_t n) { return rng_next(state) % n; }

inline bool rng_chance(uint64_t& state, double p) {
  return static_cast<double>(rng_next(state) >> 11) * (1.0 / 9007199254740992.0) < p;
}

}  // namespace detail

inline Graph gen_gnp(int n, double p, uint64_t seed) {
  uint64_t st = seed;
  Graph g(n);
  for (Vertex u = 1; u <= n; ++u)
    for (Vertex v = u + 1; v <= n; ++v)
      if (detail::rng_chance(st, p)) g.add_edge(u, v);
  return g;
}

// A cluster graph plus d extra vertices wired to random vertices: graphs
// whose distance to cluster is at most d.
inline Graph gen_cluster_plus(int n, int d, uint64_t seed) {
  if (d > n) throw std::invalid_argument("modulator larger than the graph");
  uint64_t st = seed;
  Graph g(n);
  int base = n - d;
  Vertex v = 1;
  while (v <= base) {
    int size = 1 + static_cast<int>(detail::rng_below(st, 4));
    size = std::min(size, base - v + 1);
    for (int i = 0; i < size; ++i)
      for (int j = i + 1; j < size; ++j) g.add_edge(v + i, v + j);
    v += size;
  }
  for (Vertex u = base + 1; u <= n; ++u)
    for (Vertex w = 1; w <= n; ++w)
      if (w != u && detail::rng_chance(st, 0.4)) g.add_edge(std::min(u, w), std::max(u, w));
  return g;
}

// Subdivides each host edge with the given number of internal vertices.
inline Graph gen_subdivision(const Graph& host, const std::vector<int>& lengths) {
  auto edges = host.edges();
  if (edges.size() != lengths.size())
    throw std::invalid_argument("need one length per host edge");
  long long total = host.n();
  for (int len : lengths) {
    if (len < 0) throw std::invalid_argument("negative subdivision length");
    total = checked_add(total, len);
  }
  Graph g(static_cast<int>(total));
  Vertex next = host.n() + 1;
  for (size_t i = 0; i < edges.size(); ++i) {
    Vertex prev = edges[i].first;
    for (int t = 0; t < lengths[i]; ++t) {
      g.add_edge(prev, next);
      prev = next++;
    }
    g.add_edge(prev, edges[i].second);
  }
  return g;
}

// Regular multicolored-clique instance with a planted clique: every class
// pair carries exactly m edges, one of them joining the planted vertices.
inline std::pair<MCInstance, std::vector<Vertex>> gen_mc_planted(int k, int class_size,
                                                                 long long m, uint64_t seed) {
  if (k < 2 || class_size < 1) throw std::invalid_argument("need k >= 2, class size >= 1");
  if (m < 1 || m > static_cast<long long>(class_size) * class_size)
    throw std::invalid_argument("edge count per pair out of range");
  uint64_t st = seed;
  MCInstance mc;
  mc.k = k;
  int n = k * class_size;
  mc.graph = Graph(n);
  mc.part_of.assign(static_cast<size_t>(n) + 1, 0);
  auto vertex_of = [&](int part, int idx) { return (part - 1) * class_size + idx + 1; };
  for (int part = 1; part <= k; ++part)
    for (int i = 0; i < class_size; ++i) mc.part_of[static_cast<size_t>(vertex_of(part, i))] = part;
  std::vector<Vertex> clique;
  std::vector<int> planted(static_cast<size_t>(k) + 1, 0);
  for (int part = 1; part <= k; ++part) {
    planted[static_cast<size_t>(part)] = static_cast<int>(detail::rng_below(st, class_size));
    clique.push_back(vertex_of(part, planted[static_cast<size_t>(part)]));
  }
  for (int a = 1; a <= k; ++a)
    for (int b = a + 1; b <= k; ++b) {
      std::set<std::pair<int, int>> chosen;
      chosen.insert({planted[static_cast<size_t>(a)], planted[static_cast<size_t>(b)]});
      while (static_cast<long long>(chosen.size()) < m)
        chosen.insert({static_cast<int>(detail::rng_below(st, class_size)),
                       static_cast<int>(detail::rng_below(st, class_size))});
      for (auto [ia, ib] : chosen) mc.graph.add_edge(vertex_of(a, ia), vertex_of(b, ib));
    }
  return {mc, clique};
}

}  // namespace equicolor
