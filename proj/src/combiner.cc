#include "atrig/combiner.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include <fmt/format.h>

#include "atrig/coverage.h"
#include "atrig/depgraph.h"
#include "atrig/error.h"

namespace atrig {

namespace {

constexpr std::array<std::pair<Feature, std::string_view>, 12> kFeatureNames = {{
    {Feature::kExtScore, "ext_score"},
    {Feature::kGed, "ged"},
    {Feature::kSimWord, "sim_word"},
    {Feature::kSimPair, "sim_pair"},
    {Feature::kSimTriplet, "sim_triplet"},
    {Feature::kRelCov, "rel_cov"},
    {Feature::kGraphCovAns, "graph_cov_ans"},
    {Feature::kGraphCovQues, "graph_cov_ques"},
    {Feature::kVocabCov, "vocab_cov"},
    {Feature::kBm25, "bm25"},
    {Feature::kNgram, "ngram"},
    {Feature::kSemvec, "semvec"},
}};

bool enabled(const Manifest& m, Feature f) {
  return std::find(m.begin(), m.end(), f) != m.end();
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string fmt17(double v) { return fmt::format("{:.17g}", v); }

// Values shared by every candidate of one question.
struct QuestionSide {
  DependencyGraph graph;
  Tokens tokens;
};

FeatureVector compute(const std::string& question_id, const std::string& candidate_id,
                      const QuestionSide& q, const Sentence& answer_sentence,
                      const FeatureResources& res, const Manifest& manifest,
                      const AnswerPool* pool) {
  const bool graph_needed = std::any_of(manifest.begin(), manifest.end(), [](Feature f) {
    return f != Feature::kExtScore && f != Feature::kBm25 && f != Feature::kNgram &&
           f != Feature::kSemvec;
  });
  DependencyGraph answer;
  if (graph_needed) answer = build_graph(answer_sentence);
  const Tokens answer_tokens = baseline_tokens(answer_sentence.text);

  std::optional<GraphSimilarity> sim;
  std::optional<GraphCoverage> gcov;
  FeatureVector out;
  out.reserve(manifest.size());
  for (Feature f : manifest) {
    switch (f) {
      case Feature::kExtScore: {
        auto s = res.scores->find(question_id, candidate_id);
        if (!s) {
          throw DataError(fmt::format("ext_score: no external score for ({}, {})", question_id,
                                      candidate_id));
        }
        out.push_back(*s);
        break;
      }
      case Feature::kGed:
        out.push_back(graph_edit_distance(q.graph, answer, res.ged));
        break;
      case Feature::kSimWord:
      case Feature::kSimPair:
      case Feature::kSimTriplet:
        if (!sim) sim = graph_similarity_features(q.graph, answer, *res.df, res.alphas);
        out.push_back(f == Feature::kSimWord   ? sim->word
                      : f == Feature::kSimPair ? sim->pair
                                               : sim->triplet);
        break;
      case Feature::kRelCov:
        out.push_back(relation_coverage(q.graph, answer));
        break;
      case Feature::kGraphCovAns:
      case Feature::kGraphCovQues:
        if (!gcov) gcov = graph_coverage_features(q.graph, answer, res.subgraph_max_edges);
        out.push_back(f == Feature::kGraphCovAns ? gcov->answer : gcov->question);
        break;
      case Feature::kVocabCov:
        out.push_back(vocabulary_coverage(q.graph, answer));
        break;
      case Feature::kBm25:
        if (!pool) throw ConfigError("bm25: feature needs the question's answer pool");
        out.push_back(bm25_score(q.tokens, answer_tokens, *pool, res.bm25));
        break;
      case Feature::kNgram:
        out.push_back(ngram_score(q.tokens, answer_tokens, res.ngram_max));
        break;
      case Feature::kSemvec:
        out.push_back(semantic_similarity(q.tokens, answer_tokens, *res.embeddings));
        break;
    }
  }
  return out;
}

QuestionSide question_side(const Sentence& question) {
  return {build_graph(question), baseline_tokens(question.text)};
}

}  // namespace

std::string_view feature_name(Feature f) {
  for (const auto& [feature, name] : kFeatureNames)
    if (feature == f) return name;
  return "?";
}

std::optional<Feature> parse_feature(std::string_view name) {
  for (const auto& [feature, n] : kFeatureNames)
    if (n == name) return feature;
  return std::nullopt;
}

Manifest parse_manifest(std::string_view list) {
  Manifest m;
  std::set<Feature> seen;
  std::size_t start = 0;
  while (start <= list.size()) {
    auto comma = list.find(',', start);
    if (comma == std::string_view::npos) comma = list.size();
    const auto item = trim(list.substr(start, comma - start));
    start = comma + 1;
    if (item.empty()) continue;
    auto f = parse_feature(item);
    if (!f) throw ConfigError(fmt::format("unknown feature '{}'", item));
    if (!seen.insert(*f).second) throw ConfigError(fmt::format("feature '{}' listed twice", item));
    m.push_back(*f);
  }
  if (m.empty()) throw ConfigError("no features enabled");
  return m;
}

std::string manifest_string(const Manifest& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out += ',';
    out += feature_name(m[i]);
  }
  return out;
}

Manifest graph_manifest() {
  return {Feature::kGed,    Feature::kSimWord,     Feature::kSimPair,      Feature::kSimTriplet,
          Feature::kRelCov, Feature::kGraphCovAns, Feature::kGraphCovQues, Feature::kVocabCov};
}

void check_resources(const Manifest& manifest, const FeatureResources& res) {
  if (manifest.empty()) throw ConfigError("no features enabled");
  for (Feature f : manifest) {
    const bool missing = ((f == Feature::kSimWord || f == Feature::kSimPair ||
                           f == Feature::kSimTriplet) && !res.df) ||
                         (f == Feature::kExtScore && !res.scores) ||
                         (f == Feature::kSemvec && !res.embeddings);
    if (missing)
      throw ConfigError(fmt::format("feature '{}' is enabled but its resource is missing",
                                    feature_name(f)));
  }
  if (res.alphas.word < 0 || res.alphas.pair < 0 || res.alphas.triplet < 0)
    throw ConfigError("TF-IDF thresholds must be >= 0");
  if (res.bm25.b < 0 || res.bm25.b > 1) throw ConfigError("bm25 b must lie in [0,1]");
  if (res.ngram_max == 0) throw ConfigError("ngram n_max must be >= 1");
}

FeatureVector extract_features(const QAPair& pair, const FeatureResources& res,
                               const Manifest& manifest, const AnswerPool* pool) {
  check_resources(manifest, res);
  return compute(pair.question_id, pair.candidate_id, question_side(pair.question),
                 pair.answer, res, manifest, pool);
}

std::vector<FeatureVector> featurize_group(const QuestionGroup& group,
                                           const FeatureResources& res,
                                           const Manifest& manifest) {
  check_resources(manifest, res);
  const auto q = question_side(group.question);
  std::optional<AnswerPool> pool;
  if (enabled(manifest, Feature::kBm25)) {
    std::vector<Tokens> docs;
    for (const auto& c : group.candidates) docs.push_back(baseline_tokens(c.sentence.text));
    pool.emplace(std::move(docs));
  }
  std::vector<FeatureVector> rows;
  rows.reserve(group.candidates.size());
  for (const auto& c : group.candidates) {
    rows.push_back(compute(group.question_id, c.candidate_id, q, c.sentence, res, manifest,
                           pool ? &*pool : nullptr));
  }
  return rows;
}

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

void TriggerModel::check() const {
  const auto n = feature_names.size();
  if (weights.size() != n || means.size() != n || stds.size() != n)
    throw DataError("model: weight/mean/std counts differ from the feature count");
  for (double s : stds)
    if (!(s >= 0.0)) throw DataError("model: negative standard deviation");
}

std::string TriggerModel::serialize() const {
  check();
  std::string out = "version 1\n";
  out += "threshold\t" + fmt17(threshold) + "\n";
  for (std::size_t k = 0; k < dim(); ++k) {
    out += fmt::format("{}\t{}\t{}\t{}\n", feature_names[k], fmt17(weights[k]), fmt17(means[k]),
                       fmt17(stds[k]));
  }
  out += "BIAS\t" + fmt17(bias) + "\n";
  return out;
}

TriggerModel TriggerModel::parse(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& why) {
    return IngestError(fmt::format("{}:{}: {}", source, line_no, why));
  };
  auto number = [&](const std::string& s) {
    std::size_t pos = 0;
    double v = 0;
    try {
      v = std::stod(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != s.size() || !std::isfinite(v)) throw fail("bad number '" + s + "'");
    return v;
  };

  TriggerModel model;
  bool have_bias = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != "version 1") throw fail("expected 'version 1'");
      continue;
    }
    if (line.empty()) continue;
    if (have_bias) throw fail("content after BIAS row");
    auto cols = split_tsv_line(line);
    if (line_no == 2) {
      if (cols.size() != 2 || cols[0] != "threshold") throw fail("expected 'threshold<TAB>value'");
      model.threshold = number(cols[1]);
      continue;
    }
    if (cols.size() == 2 && cols[0] == "BIAS") {
      model.bias = number(cols[1]);
      have_bias = true;
      continue;
    }
    if (cols.size() != 4) throw fail("expected 'feature<TAB>weight<TAB>mean<TAB>std'");
    model.feature_names.push_back(cols[0]);
    model.weights.push_back(number(cols[1]));
    model.means.push_back(number(cols[2]));
    model.stds.push_back(number(cols[3]));
  }
  if (line_no < 2) throw IngestError(source + ": truncated model file");
  if (!have_bias) throw IngestError(source + ": missing BIAS row");
  try {
    model.check();
  } catch (const DataError& e) {
    throw IngestError(source + ": " + e.what());
  }
  return model;
}

void TriggerModel::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
  out << serialize();
}

TriggerModel TriggerModel::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open model '{}'", path.string()));
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

double standardize(const TriggerModel& model, std::size_t k, double raw) {
  return model.stds[k] > 0.0 ? (raw - model.means[k]) / model.stds[k] : 0.0;
}

double sigmoid_prob(const TriggerModel& model, std::span<const double> x) {
  if (x.size() != model.dim())
    throw DataError(fmt::format("feature vector has {} values, model expects {}", x.size(),
                                model.dim()));
  double logit = model.bias;
  for (std::size_t k = 0; k < x.size(); ++k) logit += model.weights[k] * standardize(model, k, x[k]);
  return sigmoid(logit);
}

LossGradient loss_and_gradient(const std::vector<std::vector<double>>& z,
                               const std::vector<int>& labels, std::span<const double> weights,
                               double bias, double l2) {
  const std::size_t n = z.size(), d = weights.size();
  LossGradient out;
  out.weights.assign(d, 0.0);
  if (n == 0) return out;
  for (std::size_t i = 0; i < n; ++i) {
    double logit = bias;
    for (std::size_t k = 0; k < d; ++k) logit += weights[k] * z[i][k];
    // -log sigma(s * logit) with s = +1 for positives, -1 for negatives
    const double margin = labels[i] == 1 ? logit : -logit;
    out.loss += std::log1p(std::exp(-std::abs(margin))) + std::max(-margin, 0.0);
    const double residual = sigmoid(logit) - static_cast<double>(labels[i]);
    for (std::size_t k = 0; k < d; ++k) out.weights[k] += residual * z[i][k];
    out.bias += residual;
  }
  const double inv = 1.0 / static_cast<double>(n);
  out.loss *= inv;
  out.bias *= inv;
  double norm2 = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    out.weights[k] = out.weights[k] * inv + l2 * weights[k];
    norm2 += weights[k] * weights[k];
  }
  out.loss += 0.5 * l2 * norm2;
  return out;
}

TrainResult train(const TrainingSet& data, const std::vector<std::string>& feature_names,
                  const TrainParams& params) {
  const std::size_t n = data.rows.size(), d = feature_names.size();
  if (data.labels.size() != n) throw DataError("training rows and labels differ in count");
  std::size_t positives = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (data.rows[i].size() != d)
      throw DataError(fmt::format("training row {} has {} values, expected {}", i,
                                  data.rows[i].size(), d));
    if (data.labels[i] != 0 && data.labels[i] != 1) throw DataError("labels must be 0 or 1");
    positives += static_cast<std::size_t>(data.labels[i]);
  }
  if (positives == 0 || positives == n)
    throw DataError("training data needs at least one positive and one negative example");
  if (!(params.lr > 0) || !(params.l2 >= 0)) throw ConfigError("lr must be > 0 and l2 >= 0");

  TrainResult result;
  auto& model = result.model;
  model.feature_names = feature_names;
  model.weights.assign(d, 0.0);
  model.means.assign(d, 0.0);
  model.stds.assign(d, 1.0);
  if (params.standardize) {
    for (std::size_t k = 0; k < d; ++k) {
      double sum = 0.0;
      for (const auto& row : data.rows) sum += row[k];
      const double mean = sum / static_cast<double>(n);
      double var = 0.0;
      for (const auto& row : data.rows) var += (row[k] - mean) * (row[k] - mean);
      model.means[k] = mean;
      model.stds[k] = std::sqrt(var / static_cast<double>(n));
    }
  }

  std::vector<std::vector<double>> z(n, std::vector<double>(d));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < d; ++k) z[i][k] = standardize(model, k, data.rows[i][k]);

  for (std::size_t epoch = 0; epoch < params.epochs; ++epoch) {
    const auto g = loss_and_gradient(z, data.labels, model.weights, model.bias, params.l2);
    result.loss_history.push_back(g.loss);
    for (std::size_t k = 0; k < d; ++k) model.weights[k] -= params.lr * g.weights[k];
    model.bias -= params.lr * g.bias;
  }
  result.loss_history.push_back(
      loss_and_gradient(z, data.labels, model.weights, model.bias, params.l2).loss);
  return result;
}

}  // namespace atrig
