#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "equicolor/graph.hpp"
#include "equicolor/io.hpp"
#include "support.hpp"

using namespace equicolor;
using test_support::for_all_graphs;
using test_support::graph_from_edges;

TEST_CASE("verify_coloring matches the definitions on the stock examples") {
  SECTION("alternating 2-coloring of C4 is proper and equitable") {
    Graph c4 = graph_from_edges(4, {{1, 2}, {2, 3}, {3, 4}, {4, 1}});
    Coloring phi(4);
    phi.set(1, 1);
    phi.set(2, 2);
    phi.set(3, 1);
    phi.set(4, 2);
    auto rep = verify_coloring(EquitableInstance{c4, 2}, phi);
    REQUIRE(rep.ok());
  }
  SECTION("triangle with two colors reports the violating edge") {
    Graph k3 = graph_from_edges(3, {{1, 2}, {2, 3}, {1, 3}});
    Coloring phi(3);
    phi.set(1, 1);
    phi.set(2, 2);
    phi.set(3, 1);
    auto rep = verify_coloring(EquitableInstance{k3, 2}, phi);
    REQUIRE_FALSE(rep.proper);
    REQUIRE(rep.violating_edge == std::pair{1, 3});
  }
  SECTION("P3 sizes (2,1) are equitable for k=2") {
    Graph p3 = graph_from_edges(3, {{1, 2}, {2, 3}});
    Coloring phi(3);
    phi.set(1, 1);
    phi.set(2, 2);
    phi.set(3, 1);
    REQUIRE(verify_coloring(EquitableInstance{p3, 2}, phi).ok());
  }
  SECTION("partial colorings are rejected as incomplete") {
    Graph p2 = graph_from_edges(2, {{1, 2}});
    Coloring phi(2);
    phi.set(1, 1);
    auto rep = verify_coloring(EquitableInstance{p2, 2}, phi);
    REQUIRE_FALSE(rep.complete);
    REQUIRE_FALSE(rep.ok());
  }
}

TEST_CASE("number-list verification checks lists and exact targets") {
  NumberListInstance inst;
  inst.graph = graph_from_edges(3, {{1, 2}, {2, 3}});
  inst.lists = {{}, {1, 2}, {1, 2}, {1, 2}};
  inst.targets = {0, 2, 1};
  Coloring phi(3);
  phi.set(1, 1);
  phi.set(2, 2);
  phi.set(3, 1);
  REQUIRE(verify_coloring(inst, phi).ok());

  phi.set(3, 2);
  auto rep = verify_coloring(inst, phi);
  REQUIRE_FALSE(rep.ok());
  REQUIRE_FALSE(rep.sizes_ok);

  inst.lists[3] = {2};
  phi.set(3, 1);
  rep = verify_coloring(inst, phi);
  REQUIRE_FALSE(rep.lists_ok);
  REQUIRE(rep.violating_list_vertex == 3);
}

TEST_CASE("complement on the stock examples") {
  Graph c4 = graph_from_edges(4, {{1, 2}, {2, 3}, {3, 4}, {4, 1}});
  Graph cc = complement(c4);
  REQUIRE(cc.m() == 2);
  REQUIRE(cc.has_edge(1, 3));
  REQUIRE(cc.has_edge(2, 4));

  Graph k3 = graph_from_edges(3, {{1, 2}, {2, 3}, {1, 3}});
  REQUIRE(complement(k3).m() == 0);

  Graph p3 = graph_from_edges(3, {{1, 2}, {2, 3}});
  Graph cp3 = complement(p3);
  REQUIRE(cp3.m() == 1);
  REQUIRE(cp3.has_edge(1, 3));
  REQUIRE(cp3.degree(2) == 0);
}

TEST_CASE("complement is an involution on all graphs up to n = 5") {
  for (int n = 0; n <= 5; ++n)
    for_all_graphs(n, [](const Graph& g) { REQUIRE(complement(complement(g)) == g); });
}

TEST_CASE("instance files round-trip and report parse errors with line numbers") {
  SECTION("equitable round trip") {
    EquitableInstance inst{graph_from_edges(4, {{1, 2}, {3, 4}}), 2};
    std::stringstream ss;
    write_instance(ss, inst);
    auto back = parse_instance(ss);
    auto& parsed = std::get<EquitableInstance>(back);
    REQUIRE(parsed.k == 2);
    REQUIRE(parsed.graph == inst.graph);
  }
  SECTION("number-list round trip") {
    NumberListInstance inst;
    inst.graph = graph_from_edges(2, {{1, 2}});
    inst.lists = {{}, {1}, {1, 2}};
    inst.targets = {0, 1, 1};
    std::stringstream ss;
    write_instance(ss, inst);
    auto back = parse_instance(ss);
    auto& parsed = std::get<NumberListInstance>(back);
    REQUIRE(parsed.lists == inst.lists);
    REQUIRE(parsed.targets == inst.targets);
    REQUIRE(parsed.graph == inst.graph);
  }
  SECTION("comments and blank lines are skipped") {
    std::stringstream ss("# header comment\n\np ec 2 1\n# edge next\ne 1 2\n");
    auto back = parse_instance(ss);
    auto& parsed = std::get<EquitableInstance>(back);
    REQUIRE(parsed.graph.m() == 1);
  }
  SECTION("errors carry line numbers") {
    std::stringstream ss("p ec 3 2\ne 1 9\n");
    try {
      parse_instance(ss);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      REQUIRE(e.line == 2);
    }
  }
  SECTION("coloring files") {
    std::stringstream ss("c 1 2\nc 2 1\n");
    auto phi = parse_coloring(ss, 2);
    REQUIRE(phi.at(1) == 2);
    REQUIRE(phi.at(2) == 1);
  }
}

TEST_CASE("checked arithmetic rejects overflow") {
  REQUIRE_THROWS_AS(checked_mul(1LL << 40, 1LL << 40), std::overflow_error);
  REQUIRE(checked_mul(1LL << 20, 1LL << 20) == (1LL << 40));
}
