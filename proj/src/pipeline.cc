#include "atrig/pipeline.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <unordered_map>

#include <fmt/format.h>

#include "atrig/depgraph.h"
#include "atrig/error.h"
#include "atrig/graphsim.h"

namespace atrig {

namespace {

bool needs(const Manifest& m, std::initializer_list<Feature> any) {
  return std::any_of(m.begin(), m.end(), [&](Feature f) {
    return std::find(any.begin(), any.end(), f) != any.end();
  });
}

std::vector<DependencyGraph> all_graphs(const std::vector<QuestionGroup>& groups) {
  std::vector<DependencyGraph> docs;
  for (const auto& g : groups) {
    docs.push_back(build_graph(g.question));
    for (const auto& c : g.candidates) docs.push_back(build_graph(c.sentence));
  }
  return docs;
}

}  // namespace

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
  out << text;
  if (!out) throw IoError(fmt::format("write to '{}' failed", path.string()));
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<QuestionGroup> load_split(const RunConfig& cfg, const std::string& split) {
  const auto& paths = cfg.split(split);
  auto groups = load_wikiqa(paths.corpus);
  if (paths.conllu.empty())
    throw ConfigError(fmt::format("{}.conllu is required (dependency parses)", split));
  return attach_parses(std::move(groups), paths.conllu, paths.index);
}

void build_df_tables(const RunConfig& cfg, const std::string& split,
                     const std::filesystem::path& out_dir) {
  const auto docs = all_graphs(load_split(cfg, split));
  std::filesystem::create_directories(out_dir);
  build_df(docs, KeyLevel::kWord).save(out_dir / "df_word.tsv");
  build_df(docs, KeyLevel::kPair).save(out_dir / "df_pair.tsv");
  build_df(docs, KeyLevel::kTriplet).save(out_dir / "df_triplet.tsv");
}

std::string featurize(const RunConfig& cfg, const std::string& split) {
  const auto groups = load_split(cfg, split);
  return featurize_groups(cfg, groups, cfg.split(split).scores);
}

std::string featurize_groups(const RunConfig& cfg, const std::vector<QuestionGroup>& groups,
                             const std::filesystem::path& scores_path) {
  Manifest manifest = cfg.manifest;
  for (Feature f : cfg.extra)
    if (std::find(manifest.begin(), manifest.end(), f) == manifest.end()) manifest.push_back(f);
  FeatureResources res;
  res.alphas = cfg.alphas;
  res.subgraph_max_edges = cfg.subgraph_max_edges;
  res.bm25 = cfg.bm25;
  res.ngram_max = cfg.ngram_max;
  res.ged.edge_weight = cfg.edge_weight;
  res.ged.deletion_cost = cfg.deletion_cost;
  if (!cfg.pos_table.empty()) res.ged.pos_costs = PosCostTable::load(cfg.pos_table);

  std::optional<DfTables> df;
  if (needs(manifest, {Feature::kSimWord, Feature::kSimPair, Feature::kSimTriplet})) {
    if (cfg.df_word.empty() || cfg.df_pair.empty() || cfg.df_triplet.empty())
      throw ConfigError(
          "sim_* features need resources.df_word, resources.df_pair and resources.df_triplet");
    df = DfTables{DfTable::load(cfg.df_word, KeyLevel::kWord),
                  DfTable::load(cfg.df_pair, KeyLevel::kPair),
                  DfTable::load(cfg.df_triplet, KeyLevel::kTriplet)};
    res.df = &*df;
  }
  std::optional<ScoreTable> scores;
  if (needs(manifest, {Feature::kExtScore})) {
    if (scores_path.empty()) throw ConfigError("ext_score needs <split>.scores");
    scores = load_scores(scores_path);
    res.scores = &*scores;
  }
  std::optional<EmbeddingTable> emb;
  if (needs(manifest, {Feature::kSemvec})) {
    if (cfg.embeddings.empty()) throw ConfigError("semvec needs resources.embeddings");
    emb = EmbeddingTable::load(cfg.embeddings);
    res.embeddings = &*emb;
  }
  check_resources(manifest, res);

  std::vector<std::vector<FeatureVector>> per_group(groups.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (std::size_t i = next++; i < groups.size(); i = next++) {
      try {
        per_group[i] = featurize_group(groups[i], res, manifest);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = groups.size();
      }
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(cfg.threads, 1, std::max<std::size_t>(1, groups.size()));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::string out = "question_id\tcandidate_id\tlabel";
  for (Feature f : manifest) out += fmt::format("\t{}", feature_name(f));
  out += '\n';
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const auto& g = groups[i];
    for (std::size_t c = 0; c < g.candidates.size(); ++c) {
      out += fmt::format("{}\t{}\t{}", g.question_id, g.candidates[c].candidate_id,
                         g.candidates[c].gold_label);
      for (double v : per_group[i][c]) out += fmt::format("\t{:.17g}", v);
      out += '\n';
    }
  }
  return out;
}

FeatureTable FeatureTable::parse(const std::string& text, const std::string& source) {
  FeatureTable table;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto cols = split_tsv_line(line);
    if (cols.size() == 1 && cols[0].empty()) continue;
    if (line_no == 1) {
      if (cols.size() < 4 || cols[0] != "question_id" || cols[1] != "candidate_id" ||
          cols[2] != "label")
        throw IngestError(fmt::format(
            "{}:1: expected header 'question_id<TAB>candidate_id<TAB>label<TAB>features...'",
            source));
      table.names.assign(cols.begin() + 3, cols.end());
      continue;
    }
    if (cols.size() != table.names.size() + 3)
      throw IngestError(fmt::format("{}:{}: expected {} columns, got {}", source, line_no,
                                    table.names.size() + 3, cols.size()));
    FeatureRow row;
    row.question_id = cols[0];
    row.candidate_id = cols[1];
    if (cols[2] != "0" && cols[2] != "1")
      throw IngestError(fmt::format("{}:{}: label must be 0 or 1", source, line_no));
    row.label = cols[2] == "1" ? 1 : 0;
    for (std::size_t k = 3; k < cols.size(); ++k) {
      std::size_t pos = 0;
      double v = 0;
      try {
        v = std::stod(cols[k], &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos == 0 || pos != cols[k].size() || !std::isfinite(v))
        throw IngestError(fmt::format("{}:{}: bad value '{}'", source, line_no, cols[k]));
      row.values.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  if (line_no == 0) throw IngestError(source + ": empty feature file");
  return table;
}

FeatureTable FeatureTable::load(const std::filesystem::path& path) {
  return parse(read_text(path), path.string());
}

bool FeatureTable::has(const std::string& name) const {
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::size_t FeatureTable::column(const std::string& name) const {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw ConfigError(fmt::format("feature file has no '{}' column", name));
  return static_cast<std::size_t>(it - names.begin());
}

std::vector<double> FeatureTable::values(const std::string& name) const {
  const auto k = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.values[k]);
  return out;
}

std::vector<ScoredGroup> FeatureTable::groups(const std::vector<double>& scores) const {
  if (scores.size() != rows.size()) throw DataError("one score per feature row is required");
  std::vector<ScoredGroup> out;
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto [it, inserted] = index.try_emplace(rows[i].question_id, out.size());
    if (inserted) out.push_back(ScoredGroup{rows[i].question_id, {}});
    out[it->second].candidates.push_back({rows[i].candidate_id, scores[i], rows[i].label});
  }
  return out;
}

std::vector<double> predict(const TriggerModel& model, const FeatureTable& table) {
  std::vector<std::size_t> cols;
  for (const auto& name : model.feature_names) cols.push_back(table.column(name));
  std::vector<double> out;
  out.reserve(table.rows.size());
  std::vector<double> x(cols.size());
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < cols.size(); ++k) x[k] = row.values[cols[k]];
    out.push_back(sigmoid_prob(model, x));
  }
  return out;
}

TrainSummary train_from_table(const RunConfig& cfg, const FeatureTable& table) {
  std::vector<std::string> names;
  std::vector<std::size_t> cols;
  for (Feature f : cfg.manifest) {
    names.emplace_back(feature_name(f));
    cols.push_back(table.column(names.back()));
  }
  TrainingSet data;
  for (const auto& row : table.rows) {
    std::vector<double> x;
    for (auto k : cols) x.push_back(row.values[k]);
    data.rows.push_back(std::move(x));
    data.labels.push_back(row.label);
  }
  auto result = train(data, names, cfg.train);
  result.model.threshold = cfg.threshold;

  TrainSummary summary;
  summary.final_loss = result.loss_history.back();
  summary.epochs = cfg.train.epochs;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.rows.size(); ++i) {
    const int predicted = sigmoid_prob(result.model, data.rows[i]) > 0.5 ? 1 : 0;
    if (predicted == data.labels[i]) ++correct;
  }
  summary.train_accuracy =
      static_cast<double>(correct) / static_cast<double>(std::max<std::size_t>(1, data.rows.size()));
  summary.model = std::move(result.model);
  return summary;
}

std::map<std::string, double> load_thresholds(const std::filesystem::path& path) {
  std::map<std::string, double> out;
  std::istringstream in(read_text(path));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto cols = split_tsv_line(line);
    if (cols.size() == 1 && cols[0].empty()) continue;
    std::size_t pos = 0;
    double v = 0;
    try {
      if (cols.size() == 2) v = std::stod(cols[1], &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (cols.size() != 2 || pos == 0 || pos != cols[1].size())
      throw IngestError(fmt::format("{}:{}: expected 'name<TAB>threshold'", path.string(), line_no));
    out[cols[0]] = v;
  }
  return out;
}

void save_thresholds(const std::map<std::string, double>& thresholds,
                     const std::filesystem::path& path) {
  std::string text;
  for (const auto& [name, t] : thresholds) text += fmt::format("{}\t{:.17g}\n", name, t);
  write_text(path, text);
}

}  // namespace atrig
