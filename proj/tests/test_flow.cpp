#include <catch2/catch_amalgamated.hpp>

#include "equicolor/flow.hpp"
#include "equicolor/generators.hpp"
#include "equicolor/oracle.hpp"
#include "support.hpp"

using namespace equicolor;
using test_support::worked_extension_graph;
using test_support::graph_from_edges;

TEST_CASE("max flow on the stock networks") {
  SECTION("single arc") {
    FlowNetwork net;
    net.node_count = 2;
    net.source = 0;
    net.sink = 1;
    net.add_arc(0, 1, 5);
    REQUIRE(max_flow(net).value == 5);
  }
  SECTION("unit diamond") {
    FlowNetwork net;
    net.node_count = 4;
    net.source = 0;
    net.sink = 3;
    net.add_arc(0, 1, 1);
    net.add_arc(0, 2, 1);
    net.add_arc(1, 3, 1);
    net.add_arc(2, 3, 1);
    REQUIRE(max_flow(net).value == 2);
  }
  SECTION("flow respects conservation and capacities") {
    FlowNetwork net;
    net.node_count = 5;
    net.source = 0;
    net.sink = 4;
    net.add_arc(0, 1, 3);
    net.add_arc(0, 2, 2);
    net.add_arc(1, 2, 1);
    net.add_arc(1, 3, 2);
    net.add_arc(2, 3, 2);
    net.add_arc(3, 4, 5);
    net.add_arc(2, 4, 1);
    auto res = max_flow(net);
    REQUIRE(res.value == 5);
    std::vector<long long> net_out(5, 0);
    for (size_t i = 0; i < net.arcs.size(); ++i) {
      REQUIRE(res.per_arc[i] >= 0);
      REQUIRE(res.per_arc[i] <= net.arcs[i].cap);
      net_out[static_cast<size_t>(net.arcs[i].from)] += res.per_arc[i];
      net_out[static_cast<size_t>(net.arcs[i].to)] -= res.per_arc[i];
    }
    REQUIRE(net_out[1] == 0);
    REQUIRE(net_out[2] == 0);
    REQUIRE(net_out[3] == 0);
    REQUIRE(net_out[0] == res.value);
  }
}

TEST_CASE("the extension network of the worked 6-vertex instance") {
  Graph g = worked_extension_graph();
  auto mod_opt = cluster_modulator(g, 2);
  REQUIRE(mod_opt.has_value());
  // force the modulator {1, 2} from the figure
  Modulator mod;
  mod.kind = ModulatorKind::cluster;
  mod.u = {1, 2};
  mod.parts = {{3, 4}, {5, 6}};
  REQUIRE(verify_modulator(g, mod));

  Coloring pre(6);
  pre.set(1, 1);
  pre.set(2, 2);
  auto cn = build_cluster_network(g, mod, pre, 2, 3);
  REQUIRE(cn.net.node_count == 12);  // s, t, a1, a2, w11..w22, v3..v6

  auto res = max_flow(cn.net);
  // phase 1 at floor capacity saturates at 2 * floor = 6... but the full
  // two-phase value equals |V| = 6
  auto phi = extend_precoloring(g, mod, pre, 2);
  REQUIRE(phi.has_value());
  REQUIRE(verify_coloring(EquitableInstance{g, 2}, *phi).ok());
  REQUIRE(phi->at(1) == 1);
  REQUIRE(phi->at(2) == 2);
  auto sizes = phi->class_sizes(2);
  REQUIRE(sizes[1] == 3);
  REQUIRE(sizes[2] == 3);
  REQUIRE(res.value == 6);
}

TEST_CASE("no R-arcs leave a color adjacent to the whole cluster") {
  // center 1 adjacent to both cluster vertices; precolor it 1
  Graph g = graph_from_edges(3, {{1, 2}, {1, 3}, {2, 3}});
  Modulator mod;
  mod.kind = ModulatorKind::cluster;
  mod.u = {1};
  mod.parts = {{2, 3}};
  Coloring pre(3);
  pre.set(1, 1);
  auto cn = build_cluster_network(g, mod, pre, 3, 1);
  for (size_t i = 0; i < cn.net.arcs.size(); ++i)
    if (cn.net.arcs[i].tag == ArcTag::R) REQUIRE(cn.arc_color[i] != 1);
}

TEST_CASE("extension fails when a color is over-used on the modulator") {
  // three isolated modulator vertices all precolored 1 while floor = 1
  Graph g(4);
  Modulator mod;
  mod.kind = ModulatorKind::cluster;
  mod.u = {1, 2, 3};
  mod.parts = {{4}};
  Coloring pre(4);
  pre.set(1, 1);
  pre.set(2, 1);
  pre.set(3, 1);
  REQUIRE_FALSE(extend_precoloring(g, mod, pre, 2).has_value());
}

TEST_CASE("cluster graph with empty modulator extends directly") {
  Graph g = graph_from_edges(4, {{1, 2}, {3, 4}});
  Modulator mod;
  mod.kind = ModulatorKind::cluster;
  mod.parts = {{1, 2}, {3, 4}};
  Coloring pre(4);
  auto phi = extend_precoloring(g, mod, pre, 2);
  REQUIRE(phi.has_value());
  auto sizes = phi->class_sizes(2);
  REQUIRE(sizes[1] == 2);
  REQUIRE(sizes[2] == 2);
}

TEST_CASE("improper precolorings are rejected loudly") {
  Graph g = graph_from_edges(3, {{1, 2}});
  Modulator mod;
  mod.kind = ModulatorKind::cluster;
  mod.u = {1, 2};
  mod.parts = {{3}};
  Coloring pre(3);
  pre.set(1, 1);
  pre.set(2, 1);
  REQUIRE_THROWS_AS(extend_precoloring(g, mod, pre, 2), ContractViolation);
}

TEST_CASE("two-phase extension agrees with the oracle over small cluster instances") {
  uint64_t seed = 31337;
  int tried = 0;
  for (int round = 0; round < 400 && tried < 250; ++round) {
    int n = 3 + static_cast<int>(detail::rng_below(seed, 4));
    Graph g = gen_gnp(n, 0.25 + 0.1 * static_cast<double>(detail::rng_below(seed, 5)),
                      detail::rng_next(seed));
    auto mod = cluster_modulator(g, 3);
    if (!mod || mod->u.empty()) continue;
    int k = 1 + static_cast<int>(detail::rng_below(seed, static_cast<uint64_t>(n)));
    // try every proper precoloring of U with colors 1..k (labeled, exhaustive)
    int u = static_cast<int>(mod->u.size());
    std::vector<int> assign(static_cast<size_t>(u), 1);
    bool any_ext = false;
    for (;;) {
      Coloring pre(n);
      bool proper = true;
      for (int i = 0; i < u && proper; ++i) {
        Vertex v = mod->u[static_cast<size_t>(i)];
        pre.set(v, assign[static_cast<size_t>(i)]);
        for (int j = 0; j < i; ++j)
          if (g.has_edge(v, mod->u[static_cast<size_t>(j)]) &&
              assign[static_cast<size_t>(j)] == assign[static_cast<size_t>(i)])
            proper = false;
      }
      if (proper) {
        auto phi = extend_precoloring(g, *mod, pre, k);
        if (phi) {
          any_ext = true;
          REQUIRE(verify_coloring(EquitableInstance{g, k}, *phi).ok());
          for (Vertex v : mod->u) REQUIRE(phi->at(v) == pre.at(v));
        }
      }
      int i = 0;
      while (i < u && assign[static_cast<size_t>(i)] == k) assign[static_cast<size_t>(i++)] = 1;
      if (i == u) break;
      ++assign[static_cast<size_t>(i)];
    }
    bool oracle = brute_force_equitable(g, k).has_value();
    REQUIRE(any_ext == oracle);
    ++tried;
  }
  REQUIRE(tried >= 100);
}
