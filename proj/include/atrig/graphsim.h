#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "atrig/depgraph.h"

namespace atrig {

enum class KeyLevel { kWord, kPair, kTriplet };

std::string_view level_name(KeyLevel level);

// Document frequencies for one key level; each sentence is one document.
struct DfTable {
  KeyLevel level = KeyLevel::kWord;
  std::size_t n_docs = 0;
  std::map<std::string, std::size_t> df;

  std::size_t frequency(const std::string& key) const;
  double idf(const std::string& key) const;  // ln((N+1)/(df+1)) + 1

  // First line `N<TAB><n_docs>`, then `key<TAB>df` sorted by key.
  void save(const std::filesystem::path& path) const;
  static DfTable load(const std::filesystem::path& path, KeyLevel level);
};

using WeightedVector = std::map<std::string, double>;

// Word: node lemmas. Pair: "head|dependent" lemmas per edge. Triplet:
// "head|dependent|relation" per edge. Returned as key -> count.
std::map<std::string, std::size_t> extract_keys(const DependencyGraph& g, KeyLevel level);

DfTable build_df(const std::vector<DependencyGraph>& documents, KeyLevel level);

// tf * idf per key, keeping only weights strictly above `alpha`.
WeightedVector tfidf_vector(const DependencyGraph& g, const DfTable& table, double alpha);

double cosine(const WeightedVector& a, const WeightedVector& b);

struct DfTables {
  DfTable word{KeyLevel::kWord, 0, {}};
  DfTable pair{KeyLevel::kPair, 0, {}};
  DfTable triplet{KeyLevel::kTriplet, 0, {}};
};

struct TfidfThresholds {
  double word = 7.0;
  double pair = 5.0;
  double triplet = 2.0;
};

struct GraphSimilarity {
  double word = 0.0;
  double pair = 0.0;
  double triplet = 0.0;
};

GraphSimilarity graph_similarity_features(const DependencyGraph& question,
                                          const DependencyGraph& answer,
                                          const DfTables& tables,
                                          const TfidfThresholds& alphas);

}  // namespace atrig
