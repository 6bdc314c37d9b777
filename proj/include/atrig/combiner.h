#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "atrig/baselines.h"
#include "atrig/corpus.h"
#include "atrig/ged.h"
#include "atrig/graphsim.h"

namespace atrig {

enum class Feature {
  kExtScore,
  kGed,
  kSimWord,
  kSimPair,
  kSimTriplet,
  kRelCov,
  kGraphCovAns,
  kGraphCovQues,
  kVocabCov,
  kBm25,
  kNgram,
  kSemvec,
};

std::string_view feature_name(Feature f);
std::optional<Feature> parse_feature(std::string_view name);

using Manifest = std::vector<Feature>;

// Comma-separated feature names. Throws ConfigError on an empty list
// ("no features enabled"), unknown names or repeats.
Manifest parse_manifest(std::string_view list);
std::string manifest_string(const Manifest& m);

// The eight dependency-graph features.
Manifest graph_manifest();

// Everything extract_features may need; pointers are non-owning and only
// required for the features that use them.
struct FeatureResources {
  GedConfig ged;
  const DfTables* df = nullptr;
  TfidfThresholds alphas;
  std::size_t subgraph_max_edges = 3;
  const ScoreTable* scores = nullptr;
  const EmbeddingTable* embeddings = nullptr;
  Bm25Params bm25;
  std::size_t ngram_max = 3;
};

// Throws ConfigError naming the first enabled feature whose resource is absent.
void check_resources(const Manifest& manifest, const FeatureResources& res);

using FeatureVector = std::vector<double>;

// `pool` is required only when bm25 is enabled. A missing external score for
// the pair is an error; nothing is imputed.
FeatureVector extract_features(const QAPair& pair, const FeatureResources& res,
                               const Manifest& manifest, const AnswerPool* pool = nullptr);

// All candidates of one question, in candidate order.
std::vector<FeatureVector> featurize_group(const QuestionGroup& group,
                                           const FeatureResources& res,
                                           const Manifest& manifest);

double sigmoid(double z);

struct TriggerModel {
  std::vector<std::string> feature_names;
  std::vector<double> weights;
  std::vector<double> means;
  std::vector<double> stds;
  double bias = 0.0;
  double threshold = 0.14;

  std::size_t dim() const { return feature_names.size(); }
  void check() const;  // size and std invariants

  std::string serialize() const;
  static TriggerModel parse(const std::string& text, const std::string& source = "<model>");
  void save(const std::filesystem::path& path) const;
  static TriggerModel load(const std::filesystem::path& path);
};

// Standardised value of raw feature `k` (0 when its std is 0).
double standardize(const TriggerModel& model, std::size_t k, double raw);

double sigmoid_prob(const TriggerModel& model, std::span<const double> x);

struct TrainingSet {
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
};

struct TrainParams {
  double lr = 0.1;
  std::size_t epochs = 200;
  double l2 = 1e-4;
  std::uint64_t seed = 0;  // training itself is deterministic
  bool standardize = true;
};

struct TrainResult {
  TriggerModel model;
  std::vector<double> loss_history;  // loss before each epoch, then the final loss
};

// Full-batch gradient descent on mean log loss + l2/2 |w|^2 (bias not
// penalised), starting from zero. Throws DataError unless both classes occur.
TrainResult train(const TrainingSet& data, const std::vector<std::string>& feature_names,
                  const TrainParams& params);

struct LossGradient {
  double loss = 0.0;
  std::vector<double> weights;
  double bias = 0.0;
};

// Objective and gradient on already standardised rows.
LossGradient loss_and_gradient(const std::vector<std::vector<double>>& z,
                               const std::vector<int>& labels, std::span<const double> weights,
                               double bias, double l2);

}  // namespace atrig
