#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "atrig/baselines.h"
#include "atrig/combiner.h"
#include "atrig/graphsim.h"

namespace atrig {

// Per-split inputs. `index` may be empty (positional CoNLL-U alignment);
// `scores` is only needed when ext_score is enabled.
struct SplitPaths {
  std::filesystem::path corpus;
  std::filesystem::path conllu;
  std::filesystem::path index;
  std::filesystem::path scores;
};

struct RunConfig {
  std::map<std::string, SplitPaths> splits;  // "train", "dev", "test"

  std::filesystem::path embeddings;
  std::filesystem::path df_word;
  std::filesystem::path df_pair;
  std::filesystem::path df_triplet;
  std::filesystem::path pos_table;  // empty: built-in table

  Manifest manifest = graph_manifest();
  // Columns written to feature files for baseline reports but not trained on.
  Manifest extra;
  TfidfThresholds alphas;
  std::size_t subgraph_max_edges = 3;
  Bm25Params bm25;
  std::size_t ngram_max = 3;
  double edge_weight = 0.5;
  double deletion_cost = 1.0;

  TrainParams train;
  double threshold = 0.14;
  std::size_t threads = 1;

  // Range checks only; resource presence is checked per command.
  void validate() const;
  const SplitPaths& split(const std::string& name) const;
};

// Environment overrides use this prefix: ATRIG_<SECTION>_<KEY>, e.g.
// ATRIG_GRAPHSIM_ALPHA_WORD=0.
inline constexpr const char* kEnvPrefix = "ATRIG_";

// Every accepted `section.key`, for help output and validation.
const std::vector<std::string>& config_keys();

// `key = value` lines under `[section]` headers; '#' and ';' start comments.
// Returns flattened "section.key" -> value.
std::map<std::string, std::string> parse_config_text(const std::string& text,
                                                     const std::string& source);

// Layers: file (optional), then environment, then explicit overrides.
// Relative paths in the file resolve against the file's directory.
RunConfig load_config(const std::filesystem::path& file,
                      const std::vector<std::pair<std::string, std::string>>& overrides = {},
                      bool read_environment = true);

}  // namespace atrig
