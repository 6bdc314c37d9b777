#include "atrig/graphsim.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "atrig/error.h"

namespace atrig {

std::string_view level_name(KeyLevel level) {
  switch (level) {
    case KeyLevel::kWord: return "word";
    case KeyLevel::kPair: return "pair";
    case KeyLevel::kTriplet: return "triplet";
  }
  return "?";
}

std::size_t DfTable::frequency(const std::string& key) const {
  auto it = df.find(key);
  return it == df.end() ? 0 : it->second;
}

double DfTable::idf(const std::string& key) const {
  return std::log((static_cast<double>(n_docs) + 1.0) /
                  (static_cast<double>(frequency(key)) + 1.0)) +
         1.0;
}

void DfTable::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
  out << "N\t" << n_docs << '\n';
  for (const auto& [key, count] : df) out << key << '\t' << count << '\n';
}

DfTable DfTable::load(const std::filesystem::path& path, KeyLevel level) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  DfTable table{level, 0, {}};
  std::string line;
  std::size_t line_no = 0;
  auto parse_count = [&](const std::string& s) -> std::size_t {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != s.size())
      throw IngestError(fmt::format("{}:{}: bad count '{}'", path.string(), line_no, s));
    return static_cast<std::size_t>(v);
  };
  while (std::getline(in, line)) {
    ++line_no;
    auto cols = split_tsv_line(line);
    if (cols.size() == 1 && cols[0].empty()) continue;
    if (cols.size() != 2)
      throw IngestError(fmt::format("{}:{}: expected 'key<TAB>count'", path.string(), line_no));
    if (line_no == 1) {
      if (cols[0] != "N")
        throw IngestError(fmt::format("{}:1: first line must be 'N<TAB><n_docs>'", path.string()));
      table.n_docs = parse_count(cols[1]);
      if (table.n_docs == 0)
        throw IngestError(fmt::format("{}:1: document count must be positive", path.string()));
      continue;
    }
    const auto count = parse_count(cols[1]);
    if (count == 0 || count > table.n_docs)
      throw IngestError(fmt::format("{}:{}: df {} outside 1..{}", path.string(), line_no, count,
                                    table.n_docs));
    table.df[cols[0]] = count;
  }
  if (table.n_docs == 0) throw IngestError(fmt::format("{}: empty DF table", path.string()));
  return table;
}

std::map<std::string, std::size_t> extract_keys(const DependencyGraph& g, KeyLevel level) {
  std::map<std::string, std::size_t> keys;
  if (level == KeyLevel::kWord) {
    for (const auto& t : g.nodes) ++keys[t.lemma];
    return keys;
  }
  for (const auto& e : g.edges) {
    std::string key = g.nodes[e.head].lemma + "|" + g.nodes[e.dependent].lemma;
    if (level == KeyLevel::kTriplet) key += "|" + e.relation;
    ++keys[key];
  }
  return keys;
}

DfTable build_df(const std::vector<DependencyGraph>& documents, KeyLevel level) {
  if (documents.empty()) throw DataError("cannot build a DF table from zero sentences");
  DfTable table{level, documents.size(), {}};
  for (const auto& g : documents)
    for (const auto& entry : extract_keys(g, level)) ++table.df[entry.first];
  return table;
}

WeightedVector tfidf_vector(const DependencyGraph& g, const DfTable& table, double alpha) {
  WeightedVector v;
  for (const auto& [key, tf] : extract_keys(g, table.level)) {
    const double w = static_cast<double>(tf) * table.idf(key);
    if (w > alpha) v.emplace(key, w);
  }
  return v;
}

double cosine(const WeightedVector& a, const WeightedVector& b) {
  if (a.empty() || b.empty()) return 0.0;
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [key, w] : a) {
    na += w * w;
    auto it = b.find(key);
    if (it != b.end()) dot += w * it->second;
  }
  for (const auto& entry : b) nb += entry.second * entry.second;
  if (na <= 0.0 || nb <= 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

GraphSimilarity graph_similarity_features(const DependencyGraph& question,
                                          const DependencyGraph& answer,
                                          const DfTables& tables,
                                          const TfidfThresholds& alphas) {
  auto level_cosine = [&](const DfTable& table, double alpha) {
    return cosine(tfidf_vector(question, table, alpha), tfidf_vector(answer, table, alpha));
  };
  return {level_cosine(tables.word, alphas.word), level_cosine(tables.pair, alphas.pair),
          level_cosine(tables.triplet, alphas.triplet)};
}

}  // namespace atrig
