#include "atrig/baselines.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "atrig/corpus.h"
#include "atrig/error.h"

namespace atrig {

Tokens baseline_tokens(const std::string& text) {
  Tokens out;
  std::istringstream ss(text);
  std::string raw;
  while (ss >> raw) {
    std::size_t b = 0, e = raw.size();
    while (b < e && std::ispunct(static_cast<unsigned char>(raw[b]))) ++b;
    while (e > b && std::ispunct(static_cast<unsigned char>(raw[e - 1]))) --e;
    if (b < e) out.push_back(to_lower(raw.substr(b, e - b)));
  }
  return out;
}

AnswerPool::AnswerPool(std::vector<Tokens> candidates) : candidates_(std::move(candidates)) {
  std::size_t total = 0;
  for (const auto& c : candidates_) {
    total += c.size();
    for (const auto& term : std::set<std::string>(c.begin(), c.end())) ++df_[term];
  }
  if (!candidates_.empty())
    avgdl_ = static_cast<double>(total) / static_cast<double>(candidates_.size());
}

std::size_t AnswerPool::containing(const std::string& term) const {
  auto it = df_.find(term);
  return it == df_.end() ? 0 : it->second;
}

double bm25_idf(const AnswerPool& pool, const std::string& term) {
  const double n_docs = static_cast<double>(pool.size());
  const double n = static_cast<double>(pool.containing(term));
  return std::log((n_docs - n + 0.5) / (n + 0.5));
}

double bm25_score(const Tokens& question, const Tokens& answer, const AnswerPool& pool,
                  const Bm25Params& params) {
  if (question.empty()) return 0.0;
  std::map<std::string, std::size_t> tf;
  for (const auto& t : answer) ++tf[t];
  const double length_ratio =
      pool.avgdl() > 0.0 ? static_cast<double>(answer.size()) / pool.avgdl() : 0.0;
  const double norm = params.k1 * (1.0 - params.b + params.b * length_ratio);

  double score = 0.0;
  for (const auto& q : question) {
    auto it = tf.find(q);
    if (it == tf.end()) continue;
    const double f = static_cast<double>(it->second);
    score += bm25_idf(pool, q) * f * (params.k1 + 1.0) / (f + norm);
  }
  return score;
}

namespace {

std::map<std::vector<std::string>, std::size_t> ngrams(const Tokens& tokens, std::size_t n) {
  std::map<std::vector<std::string>, std::size_t> counts;
  if (n == 0 || tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i)
    ++counts[std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                      tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  return counts;
}

}  // namespace

double ngram_coverage(const Tokens& question, const Tokens& answer, std::size_t n) {
  if (n == 0) throw ConfigError("n-gram order must be >= 1");
  if (question.size() < n) return 0.0;
  const auto q = ngrams(question, n);
  const auto a = ngrams(answer, n);
  std::size_t common = 0;
  for (const auto& [gram, count] : q) {
    auto it = a.find(gram);
    if (it != a.end()) common += std::min(count, it->second);
  }
  return static_cast<double>(common) / static_cast<double>(question.size() - n + 1);
}

double ngram_score(const Tokens& question, const Tokens& answer, std::size_t n_max) {
  if (n_max == 0) throw ConfigError("n_max must be >= 1");
  double sum = 0.0;
  for (std::size_t n = 1; n <= n_max; ++n) sum += ngram_coverage(question, answer, n);
  return sum / static_cast<double>(n_max * (n_max + 1) / 2);
}

EmbeddingTable EmbeddingTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  EmbeddingTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ss(line);
    std::string word;
    if (!(ss >> word)) continue;
    std::vector<double> vec;
    std::string field;
    while (ss >> field) {
      std::size_t pos = 0;
      double v = 0.0;
      try {
        v = std::stod(field, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos == 0 || pos != field.size() || !std::isfinite(v))
        throw IngestError(fmt::format("{}:{}: bad vector component '{}'", path.string(),
                                      line_no, field));
      vec.push_back(v);
    }
    // word2vec-style "count dim" header
    if (line_no == 1 && vec.size() == 1 &&
        word.find_first_not_of("0123456789") == std::string::npos)
      continue;
    if (vec.empty())
      throw IngestError(fmt::format("{}:{}: word without vector", path.string(), line_no));
    if (table.dim_ == 0) table.dim_ = vec.size();
    if (vec.size() != table.dim_)
      throw IngestError(fmt::format("{}:{}: expected {} components, got {}", path.string(),
                                    line_no, table.dim_, vec.size()));
    table.vectors_.insert_or_assign(word, std::move(vec));
  }
  return table;
}

void EmbeddingTable::add(const std::string& word, std::vector<double> vec) {
  if (dim_ == 0) dim_ = vec.size();
  if (vec.size() != dim_ || dim_ == 0) throw DataError("embedding dimension mismatch");
  vectors_.insert_or_assign(word, std::move(vec));
}

const std::vector<double>* EmbeddingTable::find(const std::string& word) const {
  auto it = vectors_.find(word);
  if (it == vectors_.end()) it = vectors_.find(to_lower(word));
  return it == vectors_.end() ? nullptr : &it->second;
}

std::optional<std::vector<double>> semantic_vector(const Tokens& tokens,
                                                   const EmbeddingTable& emb) {
  std::vector<double> sum(emb.dim(), 0.0);
  std::size_t lookups = 0;
  for (const auto& t : tokens) {
    const auto* v = emb.find(t);
    if (!v) continue;
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += (*v)[k];
    ++lookups;
  }
  if (lookups == 0) return std::nullopt;
  for (auto& x : sum) x /= static_cast<double>(lookups);
  return sum;
}

double semantic_similarity(const Tokens& question, const Tokens& answer,
                           const EmbeddingTable& emb) {
  const auto q = semantic_vector(question, emb);
  const auto a = semantic_vector(answer, emb);
  if (!q || !a) return 0.0;
  const double dot = std::inner_product(q->begin(), q->end(), a->begin(), 0.0);
  const double nq = std::sqrt(std::inner_product(q->begin(), q->end(), q->begin(), 0.0));
  const double na = std::sqrt(std::inner_product(a->begin(), a->end(), a->begin(), 0.0));
  if (nq == 0.0 || na == 0.0) return 0.0;
  return std::clamp(dot / (nq * na), -1.0, 1.0);
}

}  // namespace atrig
