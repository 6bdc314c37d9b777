#include "atrig/depgraph.h"

#include <algorithm>

namespace atrig {

DependencyGraph build_graph(const Sentence& sentence) {
  DependencyGraph g;
  g.nodes = sentence.tokens;
  g.edges.reserve(g.nodes.empty() ? 0 : g.nodes.size() - 1);
  for (const auto& t : g.nodes) {
    if (t.head == 0) continue;
    g.edges.push_back({t.head - 1, t.index - 1, t.deprel});
  }
  return g;
}

Adjacency undirected_adjacency(const DependencyGraph& g) {
  Adjacency adj(g.size());
  for (const auto& e : g.edges) {
    adj[e.head].push_back(e.dependent);
    adj[e.dependent].push_back(e.head);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

std::map<EdgeSignature, std::size_t> edge_signatures(const DependencyGraph& g) {
  std::map<EdgeSignature, std::size_t> sigs;
  for (const auto& e : g.edges) {
    ++sigs[{g.nodes[e.head].lemma, g.nodes[e.dependent].lemma, e.relation}];
  }
  return sigs;
}

std::map<std::string, std::size_t> incident_relations(const DependencyGraph& g,
                                                      std::size_t node) {
  std::map<std::string, std::size_t> rels;
  for (const auto& e : g.edges) {
    if (e.head == node || e.dependent == node) ++rels[e.relation];
  }
  return rels;
}

std::vector<std::size_t> degrees(const DependencyGraph& g) {
  std::vector<std::size_t> deg(g.size(), 0);
  for (const auto& e : g.edges) {
    ++deg[e.head];
    ++deg[e.dependent];
  }
  return deg;
}

}  // namespace atrig
