#include <catch2/catch_amalgamated.hpp>

#include "equicolor/generators.hpp"
#include "equicolor/matching.hpp"
#include "support.hpp"

using namespace equicolor;
using test_support::brute_matching_size;
using test_support::graph_from_edges;

namespace {

bool is_matching(const Graph& g, const std::vector<std::pair<Vertex, Vertex>>& m) {
  std::vector<char> used(static_cast<size_t>(g.n()) + 1, 0);
  for (auto [u, v] : m) {
    if (!g.has_edge(u, v)) return false;
    if (used[static_cast<size_t>(u)] || used[static_cast<size_t>(v)]) return false;
    used[static_cast<size_t>(u)] = used[static_cast<size_t>(v)] = 1;
  }
  return true;
}

}  // namespace

TEST_CASE("maximum matching on the stock examples") {
  Graph c4 = graph_from_edges(4, {{1, 2}, {2, 3}, {3, 4}, {4, 1}});
  REQUIRE(maximum_matching(c4).size() == 2);

  Graph k4 = graph_from_edges(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
  REQUIRE(maximum_matching(k4).size() == 2);
}

TEST_CASE("Petersen graph has a perfect matching") {
  Graph g = test_support::petersen();
  REQUIRE(brute_matching_size(g) == 5);  // independent enumeration over all matchings
  auto m = maximum_matching(g);
  REQUIRE(m.size() == 5);
  REQUIRE(is_matching(g, m));
}

TEST_CASE("blossom matching equals brute force on odd structures") {
  // odd cycles and their gluings are where bipartite-style augmenting fails
  Graph c5 = graph_from_edges(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}});
  REQUIRE(maximum_matching(c5).size() == 2);

  // two triangles sharing nothing, joined by a bridge
  Graph bowties =
      graph_from_edges(7, {{1, 2}, {2, 3}, {1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {5, 7}});
  REQUIRE(maximum_matching(bowties).size() == static_cast<size_t>(brute_matching_size(bowties)));
}

TEST_CASE("blossom matching equals brute force on random graphs up to n = 8") {
  uint64_t seed = 20260809;
  for (int round = 0; round < 300; ++round) {
    int n = 2 + static_cast<int>(detail::rng_below(seed, 7));
    double p = 0.15 + 0.1 * static_cast<double>(detail::rng_below(seed, 8));
    Graph g = gen_gnp(n, p, detail::rng_next(seed));
    auto m = maximum_matching(g);
    REQUIRE(is_matching(g, m));
    REQUIRE(m.size() == static_cast<size_t>(brute_matching_size(g)));
  }
}
