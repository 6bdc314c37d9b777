#pragma once

#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include "atrig/depgraph.h"

namespace atrig {

// Part of the answer graph; edges are unordered node pairs stored (low, high).
struct SubGraph {
  std::set<std::size_t> nodes;
  std::set<std::pair<std::size_t, std::size_t>> edges;

  bool empty() const { return nodes.empty(); }
};

// One-to-one matched (head lemma, dependent lemma, relation) edges divided by
// the number of question edges; 0 when the question has no edges.
double relation_coverage(const DependencyGraph& question, const DependencyGraph& answer);

// One-to-one matched lemmas divided by the number of question nodes.
double vocabulary_coverage(const DependencyGraph& question, const DependencyGraph& answer);

// Unit-weight shortest path on an undirected adjacency, computed with a
// priority queue that re-inserts a vertex whenever its distance drops, then
// read back through parent links. Returns the node sequence source..dest, or
// an empty vector when dest is unreachable.
std::vector<std::size_t> find_path(const Adjacency& adjacency, std::size_t source,
                                   std::size_t dest);

// Union of the answer-graph paths with at most `max_path_edges` edges that
// connect pairs of answer nodes whose lemma also occurs in the question.
SubGraph align_subgraph(const DependencyGraph& question, const DependencyGraph& answer,
                        std::size_t max_path_edges);

struct GraphCoverage {
  double answer = 0.0;    // |E_sub| / |E_answer|
  double question = 0.0;  // min(1, |E_sub| / |E_question|)
};

GraphCoverage graph_coverage_features(const DependencyGraph& question,
                                      const DependencyGraph& answer,
                                      std::size_t max_path_edges);

}  // namespace atrig
