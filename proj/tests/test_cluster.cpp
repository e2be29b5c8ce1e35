#include <catch2/catch_amalgamated.hpp>

#include "equicolor/cluster_solver.hpp"
#include "equicolor/generators.hpp"
#include "equicolor/oracle.hpp"
#include "support.hpp"

using namespace equicolor;
using test_support::for_all_graphs;
using test_support::graph_from_edges;

TEST_CASE("distance-to-cluster solver on the stock examples") {
  Graph two_k3 = graph_from_edges(6, {{1, 2}, {2, 3}, {1, 3}, {4, 5}, {5, 6}, {4, 6}});
  auto phi = solve_distance_to_cluster(two_k3, 3);
  REQUIRE(phi.has_value());
  auto sizes = phi->class_sizes(3);
  REQUIRE(sizes[1] == 2);
  REQUIRE(sizes[2] == 2);
  REQUIRE(sizes[3] == 2);

  Graph k3_k1 = graph_from_edges(4, {{1, 2}, {2, 3}, {1, 3}});
  REQUIRE_FALSE(solve_distance_to_cluster(k3_k1, 2).has_value());

  REQUIRE(solve_distance_to_cluster(test_support::worked_extension_graph(), 2).has_value());
}

TEST_CASE("partition enumeration covers exactly the independent bounded partitions") {
  // on K2 union K1 with cap 2: partitions of {1,2,3} with {1,2} never together
  Graph g = graph_from_edges(3, {{1, 2}});
  std::vector<std::vector<std::vector<Vertex>>> seen;
  enumerate_independent_partitions(g, {1, 2, 3}, 3, 2,
                                   [&](const std::vector<std::vector<Vertex>>& cls) {
                                     seen.push_back(cls);
                                     return false;
                                   });
  // {1}{2}{3}, {1,3}{2}, {1}{2,3}  -- {1,2} blocked by the edge
  REQUIRE(seen.size() == 3);
  for (auto& cls : seen)
    for (auto& c : cls)
      for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = i + 1; j < c.size(); ++j) REQUIRE_FALSE(g.has_edge(c[i], c[j]));
}

TEST_CASE("pruned-out partitions can never extend") {
  // partitions dropped by the enumerator (dependent classes or oversized
  // classes) must fail the flow extension outright
  uint64_t seed = 99221;
  for (int round = 0; round < 80; ++round) {
    int n = 4 + static_cast<int>(detail::rng_below(seed, 3));
    Graph g = gen_gnp(n, 0.35, detail::rng_next(seed));
    auto mod = cluster_modulator(g, 4);
    if (!mod || mod->u.size() < 2 || mod->u.size() > 4) continue;
    int k = 2 + static_cast<int>(detail::rng_below(seed, 2));
    long long ceil_size = (n + k - 1) / k;
    size_t u = mod->u.size();
    std::vector<int> rgs(u, 0);
    std::function<void(size_t, int)> enumerate = [&](size_t idx, int maxc) {
      if (idx == u) {
        std::vector<std::vector<Vertex>> classes(static_cast<size_t>(maxc) + 1);
        for (size_t i = 0; i < u; ++i) classes[static_cast<size_t>(rgs[i])].push_back(mod->u[i]);
        bool improper = false, oversized = false;
        for (auto& cls : classes) {
          if (static_cast<long long>(cls.size()) > ceil_size) oversized = true;
          for (size_t a = 0; a < cls.size(); ++a)
            for (size_t b = a + 1; b < cls.size(); ++b)
              if (g.has_edge(cls[a], cls[b])) improper = true;
        }
        if ((improper || oversized) && static_cast<int>(classes.size()) <= k) {
          Coloring pre(n);
          for (size_t ci = 0; ci < classes.size(); ++ci)
            for (Vertex v : classes[ci]) pre.set(v, static_cast<Color>(ci) + 1);
          if (improper) {
            REQUIRE_THROWS_AS(extend_precoloring(g, *mod, pre, k), ContractViolation);
          } else {
            REQUIRE_FALSE(extend_precoloring(g, *mod, pre, k).has_value());
          }
        }
        return;
      }
      for (int c = 0; c <= maxc + 1 && c < static_cast<int>(u); ++c) {
        rgs[idx] = c;
        enumerate(idx + 1, std::max(maxc, c));
      }
    };
    enumerate(0, -1);
  }
}

TEST_CASE("solver equals oracle on all graphs with n <= 5") {
  for (int n = 1; n <= 5; ++n) {
    for_all_graphs(n, [&](const Graph& g) {
      for (int k = 1; k <= n; ++k) {
        bool oracle = brute_force_equitable(g, k).has_value();
        auto got = solve_distance_to_cluster(g, k);
        REQUIRE(got.has_value() == oracle);
      }
    });
  }
}

TEST_CASE("solver equals oracle on seeded graphs with n in {6, 7}") {
  uint64_t seed = 424242;
  for (int round = 0; round < 120; ++round) {
    int n = 6 + static_cast<int>(detail::rng_below(seed, 2));
    Graph g = gen_gnp(n, 0.1 + 0.12 * static_cast<double>(detail::rng_below(seed, 7)),
                      detail::rng_next(seed));
    int k = 1 + static_cast<int>(detail::rng_below(seed, static_cast<uint64_t>(n)));
    bool oracle = brute_force_equitable(g, k).has_value();
    REQUIRE(solve_distance_to_cluster(g, k).has_value() == oracle);
  }
}
