#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace atrig {

using Tokens = std::vector<std::string>;

// Whitespace split, lowercased, punctuation trimmed from both token edges;
// tokens that end up empty are dropped.
Tokens baseline_tokens(const std::string& text);

// Candidate answers of one question, seen as the BM25 collection.
class AnswerPool {
 public:
  explicit AnswerPool(std::vector<Tokens> candidates);

  std::size_t size() const { return candidates_.size(); }
  double avgdl() const { return avgdl_; }
  std::size_t containing(const std::string& term) const;  // n(q_i)
  const Tokens& candidate(std::size_t i) const { return candidates_.at(i); }

 private:
  std::vector<Tokens> candidates_;
  double avgdl_ = 0.0;
  std::unordered_map<std::string, std::size_t> df_;
};

struct Bm25Params {
  double k1 = 1.5;
  double b = 0.75;
};

// ln((N - n + 0.5) / (n + 0.5)); negative for terms in most candidates.
double bm25_idf(const AnswerPool& pool, const std::string& term);

// Sums over every question token occurrence.
double bm25_score(const Tokens& question, const Tokens& answer, const AnswerPool& pool,
                  const Bm25Params& params = {});

// Clipped common n-grams over the question's n-gram count.
double ngram_coverage(const Tokens& question, const Tokens& answer, std::size_t n);

// sum_{i<=n_max} coverage(i) / sum_{i<=n_max} i
double ngram_score(const Tokens& question, const Tokens& answer, std::size_t n_max = 3);

class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  explicit EmbeddingTable(std::size_t dim) : dim_(dim) {}

  // Text format: `word v1 ... vd` per line; an optional `count dim` header.
  static EmbeddingTable load(const std::filesystem::path& path);

  void add(const std::string& word, std::vector<double> vec);
  // Exact surface form first, then lowercased.
  const std::vector<double>* find(const std::string& word) const;

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return vectors_.size(); }

 private:
  std::size_t dim_ = 0;
  std::unordered_map<std::string, std::vector<double>> vectors_;
};

// Mean over the tokens that have a vector; nullopt when none do.
std::optional<std::vector<double>> semantic_vector(const Tokens& tokens,
                                                   const EmbeddingTable& emb);

double semantic_similarity(const Tokens& question, const Tokens& answer,
                           const EmbeddingTable& emb);

constexpr double kSemanticTriggerThreshold = 0.70;

}  // namespace atrig
