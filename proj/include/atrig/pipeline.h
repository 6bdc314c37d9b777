#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "atrig/combiner.h"
#include "atrig/config.h"
#include "atrig/corpus.h"
#include "atrig/eval.h"

namespace atrig {

// WikiQA rows of one split with their parses attached.
std::vector<QuestionGroup> load_split(const RunConfig& cfg, const std::string& split);

// Word/pair/triplet tables over every question and candidate sentence of the
// split, written as df_word.tsv, df_pair.tsv and df_triplet.tsv.
void build_df_tables(const RunConfig& cfg, const std::string& split,
                     const std::filesystem::path& out_dir);

// Feature TSV text: header `question_id candidate_id label <features...>`,
// the manifest's columns followed by any `extra` ones not already present,
// then one row per pair in corpus order. Values use 17 significant digits.
// Work is spread over `cfg.threads` workers; row order never depends on it.
std::string featurize(const RunConfig& cfg, const std::string& split);
std::string featurize_groups(const RunConfig& cfg, const std::vector<QuestionGroup>& groups,
                             const std::filesystem::path& scores_path);

struct FeatureRow {
  std::string question_id;
  std::string candidate_id;
  int label = 0;
  std::vector<double> values;
};

struct FeatureTable {
  std::vector<std::string> names;
  std::vector<FeatureRow> rows;

  static FeatureTable parse(const std::string& text, const std::string& source);
  static FeatureTable load(const std::filesystem::path& path);

  std::size_t column(const std::string& name) const;  // throws ConfigError
  bool has(const std::string& name) const;
  // Rows grouped by question in first-appearance order, scored by `score`.
  std::vector<ScoredGroup> groups(const std::vector<double>& scores) const;
  std::vector<double> values(const std::string& name) const;
};

// Selects the model's columns by name from each row.
std::vector<double> predict(const TriggerModel& model, const FeatureTable& table);

struct TrainSummary {
  TriggerModel model;
  double final_loss = 0.0;
  std::size_t epochs = 0;
  double train_accuracy = 0.0;  // at probability cutoff 0.5
};

// Trains on the manifest's columns of `table`.
TrainSummary train_from_table(const RunConfig& cfg, const FeatureTable& table);

inline const std::vector<std::string>& baseline_columns() {
  static const std::vector<std::string> names{"bm25", "ngram", "semvec"};
  return names;
}

// `name<TAB>threshold` lines.
std::map<std::string, double> load_thresholds(const std::filesystem::path& path);
void save_thresholds(const std::map<std::string, double>& thresholds,
                     const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace atrig
