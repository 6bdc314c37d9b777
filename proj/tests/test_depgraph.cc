#include <doctest.h>

#include "atrig/depgraph.h"
#include "test_util.h"

using namespace atrig;
using testutil::graph;

TEST_SUITE("depgraph") {

TEST_CASE("question of the carradine example has a compound edge") {
  auto g = graph({{"how", "how", "ADV", 5, "advmod"},
                  {"did", "do", "AUX", 5, "aux"},
                  {"david", "david", "PROPN", 4, "compound"},
                  {"carradine", "carradine", "PROPN", 5, "nsubj"},
                  {"die", "die", "VERB", 0, "root"}});
  CHECK(g.edges.size() == 4);
  bool found = false;
  for (const auto& e : g.edges)
    if (e.relation == "compound" && e.head == 3 && e.dependent == 2) found = true;
  CHECK(found);
  auto sigs = edge_signatures(g);
  CHECK(sigs.count({"carradine", "david", "compound"}) == 1);
}

TEST_CASE("single token gives one node and no edges") {
  auto g = graph({{"yes", "yes", "INTJ", 0, "root"}});
  CHECK(g.size() == 1);
  CHECK(g.edges.empty());
  auto adj = undirected_adjacency(g);
  REQUIRE(adj.size() == 1);
  CHECK(adj[0].empty());
  CHECK(edge_signatures(g).empty());
}

TEST_CASE("five-token parse has one edge per non-root token") {
  auto g = graph({{"the", "the", "DET", 2, "det"},
                  {"cat", "cat", "NOUN", 3, "nsubj"},
                  {"chased", "chase", "VERB", 0, "root"},
                  {"the", "the", "DET", 5, "det"},
                  {"mouse", "mouse", "NOUN", 3, "obj"}});
  REQUIRE(g.edges.size() == 4);
  CHECK(g.edges[0].head == 1);
  CHECK(g.edges[0].dependent == 0);
  CHECK(g.edges[1].head == 2);
  CHECK(g.edges[3].relation == "obj");
  auto adj = undirected_adjacency(g);
  std::size_t pairs = 0;
  for (std::size_t u = 0; u < adj.size(); ++u)
    for (std::size_t v : adj[u]) {
      CHECK(std::find(adj[v].begin(), adj[v].end(), u) != adj[v].end());
      ++pairs;
    }
  CHECK(pairs / 2 == g.edges.size());
}

TEST_CASE("chain adjacency degrees") {
  auto g = graph({{"a", "a", "X", 2, "dep"}, {"b", "b", "X", 3, "dep"}, {"c", "c", "X", 0, "root"}});
  auto adj = undirected_adjacency(g);
  CHECK(adj[0].size() == 1);
  CHECK(adj[1].size() == 2);
  CHECK(adj[2].size() == 1);
  CHECK(degrees(g) == std::vector<std::size_t>{1, 2, 1});
}

TEST_CASE("repeated signatures are counted") {
  auto g = graph({{"the", "the", "DET", 2, "det"},
                  {"cat", "cat", "NOUN", 0, "root"},
                  {"the", "the", "DET", 2, "det"}});
  CHECK(edge_signatures(g).at({"cat", "the", "det"}) == 2);
  CHECK(incident_relations(g, 1).at("det") == 2);
}

TEST_CASE("tree property on random trees") {
  std::mt19937_64 rng(7);
  for (std::size_t n = 1; n <= 12; ++n) {
    auto g = testutil::random_tree(rng, n);
    CHECK(g.edges.size() == n - 1);
    for (const auto& e : g.edges) CHECK(e.head != e.dependent);
  }
}

}  // TEST_SUITE
