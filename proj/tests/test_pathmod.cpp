#include <catch2/catch_amalgamated.hpp>

#include "equicolor/generators.hpp"
#include "equicolor/oracle.hpp"
#include "equicolor/pathmod_solver.hpp"
#include "support.hpp"

using namespace equicolor;
using test_support::graph_from_edges;

namespace {

NumberListInstance paths_instance(const std::vector<std::vector<std::vector<Color>>>& paths,
                                  std::vector<long long> targets) {
  int n = 0;
  for (auto& p : paths) n += static_cast<int>(p.size());
  NumberListInstance inst;
  inst.graph = Graph(n);
  inst.lists.assign(static_cast<size_t>(n) + 1, {});
  Vertex v = 1;
  for (auto& p : paths) {
    for (size_t i = 0; i < p.size(); ++i) {
      inst.lists[static_cast<size_t>(v + static_cast<int>(i))] = p[i];
      if (i + 1 < p.size()) inst.graph.add_edge(v + static_cast<int>(i), v + static_cast<int>(i) + 1);
    }
    v += static_cast<int>(p.size());
  }
  targets.insert(targets.begin(), 0);
  inst.targets = std::move(targets);
  return inst;
}

}  // namespace

TEST_CASE("patterns merge equal and mirrored list sequences") {
  SECTION("two copies of one sequence") {
    auto inst = paths_instance({{{1, 2}, {1, 3}}, {{1, 2}, {1, 3}}}, {2, 1, 1});
    auto pats = pattern_partition(inst.graph, inst.lists);
    REQUIRE(pats.size() == 1);
    REQUIRE(pats[0].multiplicity() == 2);
  }
  SECTION("a sequence and its mirror") {
    auto inst = paths_instance({{{1, 2}, {1, 3}}, {{1, 3}, {1, 2}}}, {2, 1, 1});
    auto pats = pattern_partition(inst.graph, inst.lists);
    REQUIRE(pats.size() == 1);
    REQUIRE(pats[0].multiplicity() == 2);
    // members are stored in the canonical orientation
    for (auto& mem : pats[0].members)
      for (size_t j = 0; j < mem.size(); ++j)
        REQUIRE(inst.lists[static_cast<size_t>(mem[j])] == pats[0].seq[j]);
  }
  SECTION("different singleton lists stay apart") {
    auto inst = paths_instance({{{1}}, {{2}}}, {1, 1});
    REQUIRE(pattern_partition(inst.graph, inst.lists).size() == 2);
  }
  SECTION("non-path components are rejected") {
    Graph tri = graph_from_edges(3, {{1, 2}, {2, 3}, {1, 3}});
    std::vector<std::vector<Color>> lists{{}, {1}, {1}, {1}};
    REQUIRE_THROWS_AS(pattern_partition(tri, lists), ContractViolation);
  }
}

TEST_CASE("the layered pattern network has the right shape") {
  auto inst = paths_instance({{{1, 2}, {1, 3}, {2, 3}}}, {1, 1, 1});
  auto pats = pattern_partition(inst.graph, inst.lists);
  REQUIRE(pats.size() == 1);
  auto pn = build_pattern_network(pats[0]);
  // 2 + 2 per (position, color): positions carry 2, 2, 2 colors
  REQUIRE(pn.net.node_count == 2 + 2 * 6);
  // source 2, sink 2, color arcs 6, transitions: layer1->2: (1,2):(1,3),(2,1),(2,3) minus equal
  REQUIRE(pn.color_arc.size() == 3);
  REQUIRE(pn.trans_arc.size() == 2);
  REQUIRE(pn.trans_arc[0].size() == 3);  // 1->3, 2->1, 2->3
  REQUIRE(pn.trans_arc[1].size() == 3);  // 1->2, 1->3(no: equal colors skipped), 3->2 ...
}

TEST_CASE("number list coloring on paths: worked three-vertex pattern") {
  auto inst = paths_instance({{{1, 2}, {1, 3}, {2, 3}}}, {1, 1, 1});
  auto phi = solve_nlc_paths(inst);
  REQUIRE(phi.has_value());
  REQUIRE(verify_coloring(inst, *phi).ok());

  auto bad = paths_instance({{{1, 2}, {1, 3}, {2, 3}}}, {2, 1, 0});
  REQUIRE_FALSE(solve_nlc_paths(bad).has_value());
  REQUIRE_FALSE(brute_force_nlc(bad).has_value());

  auto single = paths_instance({{{1}}}, {1});
  REQUIRE(solve_nlc_paths(single).has_value());
}

TEST_CASE("target sums that disagree with n are immediately negative") {
  auto inst = paths_instance({{{1}, {1, 2}}}, {3, 1});
  REQUIRE_FALSE(solve_nlc_paths(inst).has_value());
}

TEST_CASE("equitable coloring of disjoint paths by cyclic assignment") {
  Graph p4 = graph_from_edges(4, {{1, 2}, {2, 3}, {3, 4}});
  auto phi = equitable_paths(p4, 2);
  REQUIRE(phi.at(1) == 1);
  REQUIRE(phi.at(2) == 2);
  REQUIRE(phi.at(3) == 1);
  REQUIRE(phi.at(4) == 2);

  Graph p3p2 = graph_from_edges(5, {{1, 2}, {2, 3}, {4, 5}});
  auto phi2 = equitable_paths(p3p2, 3);
  auto sizes = phi2.class_sizes(3);
  std::sort(sizes.begin() + 1, sizes.end());
  REQUIRE(sizes == std::vector<long long>{0, 1, 2, 2});
  REQUIRE(verify_coloring(EquitableInstance{p3p2, 3}, phi2).proper);

  Graph p5 = graph_from_edges(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}});
  auto phi3 = equitable_paths(p5, 3);
  auto s3 = phi3.class_sizes(3);
  std::sort(s3.begin() + 1, s3.end());
  REQUIRE(s3 == std::vector<long long>{0, 1, 2, 2});
}

TEST_CASE("path-modulator solver on the stock examples") {
  Graph p4 = graph_from_edges(4, {{1, 2}, {2, 3}, {3, 4}});
  REQUIRE(solve_path_modulator(p4, 2, 4).has_value());

  Graph k14 = graph_from_edges(5, {{1, 2}, {1, 3}, {1, 4}, {1, 5}});
  REQUIRE_FALSE(solve_path_modulator(k14, 2, 1).has_value());
  REQUIRE_FALSE(brute_force_equitable(k14, 2).has_value());

  auto phi = solve_path_modulator(k14, 3, 1);
  REQUIRE(phi.has_value());
  auto sizes = phi->class_sizes(3);
  std::sort(sizes.begin() + 1, sizes.end());
  REQUIRE(sizes == std::vector<long long>{0, 1, 2, 2});
}

TEST_CASE("solver agrees with the list brute force on structured instances") {
  uint64_t seed = 717171;
  int done = 0;
  for (int round = 0; round < 400; ++round) {
    int parts = 1 + static_cast<int>(detail::rng_below(seed, 3));
    std::vector<std::vector<std::vector<Color>>> paths;
    int n = 0;
    int q = 1 + static_cast<int>(detail::rng_below(seed, 4));
    for (int i = 0; i < parts; ++i) {
      int len = 1 + static_cast<int>(detail::rng_below(seed, 4));
      n += len;
      std::vector<std::vector<Color>> lists;
      for (int j = 0; j < len; ++j) {
        std::vector<Color> lst;
        for (Color c = 1; c <= q; ++c)
          if (detail::rng_chance(seed, 0.65)) lst.push_back(c);
        if (lst.empty()) lst.push_back(1 + static_cast<Color>(detail::rng_below(seed, static_cast<uint64_t>(q))));
        if (lst.size() > 3) lst.resize(3);
        lists.push_back(lst);
      }
      paths.push_back(lists);
    }
    std::vector<long long> targets(static_cast<size_t>(q), 0);
    int left = n;
    for (int c = 0; c + 1 < q; ++c) {
      targets[static_cast<size_t>(c)] =
          static_cast<long long>(detail::rng_below(seed, static_cast<uint64_t>(left + 1)));
      left -= static_cast<int>(targets[static_cast<size_t>(c)]);
    }
    targets[static_cast<size_t>(q) - 1] = left;
    auto inst = paths_instance(paths, targets);
    auto fast = solve_nlc_paths(inst);
    auto slow = brute_force_nlc(inst);
    REQUIRE(fast.has_value() == slow.has_value());
    if (fast) REQUIRE(verify_coloring(inst, *fast).ok());
    ++done;
  }
  REQUIRE(done == 400);
}

TEST_CASE("path-modulator solver equals the oracle on small graphs") {
  uint64_t seed = 818181;
  for (int round = 0; round < 60; ++round) {
    int n = 4 + static_cast<int>(detail::rng_below(seed, 3));
    Graph g = gen_gnp(n, 0.1 + 0.1 * static_cast<double>(detail::rng_below(seed, 5)),
                      detail::rng_next(seed));
    if (!path_modulator(g, 3, 2).has_value()) continue;
    for (int k = 1; k <= n; ++k) {
      bool oracle = brute_force_equitable(g, k).has_value();
      auto got = solve_path_modulator(g, k, 3, path_modulator(g, 3, 2));
      REQUIRE(got.has_value() == oracle);
    }
  }
}
