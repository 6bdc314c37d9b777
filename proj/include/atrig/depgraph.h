#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "atrig/corpus.h"

namespace atrig {

// Node ids inside a graph are 0-based positions into `nodes`
// (token index - 1).
struct DependencyEdge {
  std::size_t head;
  std::size_t dependent;
  std::string relation;
};

struct DependencyGraph {
  std::vector<Token> nodes;
  std::vector<DependencyEdge> edges;  // one per non-root token, in token order

  std::size_t size() const { return nodes.size(); }
  bool empty() const { return nodes.empty(); }
};

// Requires a sentence that passed validate_tokens (single root, valid heads).
DependencyGraph build_graph(const Sentence& sentence);

// Edge directions dropped; neighbour lists are sorted ascending.
using Adjacency = std::vector<std::vector<std::size_t>>;
Adjacency undirected_adjacency(const DependencyGraph& g);

// (head lemma, dependent lemma, relation)
using EdgeSignature = std::tuple<std::string, std::string, std::string>;
std::map<EdgeSignature, std::size_t> edge_signatures(const DependencyGraph& g);

// Relations of all edges touching `node`, as a multiset.
std::map<std::string, std::size_t> incident_relations(const DependencyGraph& g,
                                                      std::size_t node);

std::vector<std::size_t> degrees(const DependencyGraph& g);

}  // namespace atrig
