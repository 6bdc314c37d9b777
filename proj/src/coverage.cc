#include "atrig/coverage.h"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <string>

namespace atrig {

namespace {

template <typename Key>
std::size_t matched(const std::map<Key, std::size_t>& a, const std::map<Key, std::size_t>& b) {
  std::size_t total = 0;
  for (const auto& [key, count] : a) {
    auto it = b.find(key);
    if (it != b.end()) total += std::min(count, it->second);
  }
  return total;
}

std::map<std::string, std::size_t> lemma_counts(const DependencyGraph& g) {
  std::map<std::string, std::size_t> counts;
  for (const auto& t : g.nodes) ++counts[t.lemma];
  return counts;
}

}  // namespace

double relation_coverage(const DependencyGraph& question, const DependencyGraph& answer) {
  if (question.edges.empty()) return 0.0;
  return static_cast<double>(matched(edge_signatures(question), edge_signatures(answer))) /
         static_cast<double>(question.edges.size());
}

double vocabulary_coverage(const DependencyGraph& question, const DependencyGraph& answer) {
  if (question.empty()) return 0.0;
  return static_cast<double>(matched(lemma_counts(question), lemma_counts(answer))) /
         static_cast<double>(question.size());
}

std::vector<std::size_t> find_path(const Adjacency& adjacency, std::size_t source,
                                   std::size_t dest) {
  const std::size_t n = adjacency.size();
  if (source >= n || dest >= n) return {};
  constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> distance(n, kUnreached);
  std::vector<std::size_t> parent(n, kUnreached);

  // Ordered by (distance, node) so equal distances pop the smaller node first.
  std::set<std::pair<std::size_t, std::size_t>> queue;
  distance[source] = 0;
  queue.emplace(0, source);
  while (!queue.empty()) {
    const std::size_t u = queue.begin()->second;
    queue.erase(queue.begin());
    for (std::size_t v : adjacency[u]) {
      const std::size_t candidate = distance[u] + 1;
      if (candidate < distance[v]) {
        queue.erase({distance[v], v});
        distance[v] = candidate;
        parent[v] = u;
        queue.emplace(candidate, v);
      }
    }
  }

  if (distance[dest] == kUnreached) return {};
  std::vector<std::size_t> path;
  for (std::size_t v = dest; v != kUnreached; v = parent[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

SubGraph align_subgraph(const DependencyGraph& question, const DependencyGraph& answer,
                        std::size_t max_path_edges) {
  SubGraph sub;
  const auto question_lemmas = lemma_counts(question);
  std::vector<std::size_t> common;
  for (std::size_t i = 0; i < answer.size(); ++i)
    if (question_lemmas.count(answer.nodes[i].lemma)) common.push_back(i);
  if (common.size() < 2 || max_path_edges == 0) return sub;

  const auto adjacency = undirected_adjacency(answer);
  for (std::size_t a = 0; a + 1 < common.size(); ++a) {
    for (std::size_t b = a + 1; b < common.size(); ++b) {
      const auto path = find_path(adjacency, common[a], common[b]);
      if (path.empty() || path.size() - 1 > max_path_edges) continue;
      sub.nodes.insert(path.begin(), path.end());
      for (std::size_t k = 0; k + 1 < path.size(); ++k)
        sub.edges.emplace(std::min(path[k], path[k + 1]), std::max(path[k], path[k + 1]));
    }
  }
  return sub;
}

GraphCoverage graph_coverage_features(const DependencyGraph& question,
                                      const DependencyGraph& answer,
                                      std::size_t max_path_edges) {
  const auto sub = align_subgraph(question, answer, max_path_edges);
  const double sub_edges = static_cast<double>(sub.edges.size());
  GraphCoverage cov;
  if (!answer.edges.empty()) cov.answer = sub_edges / static_cast<double>(answer.edges.size());
  if (!question.edges.empty())
    cov.question = std::min(1.0, sub_edges / static_cast<double>(question.edges.size()));
  return cov;
}

}  // namespace atrig
