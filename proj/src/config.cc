#include "atrig/config.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "atrig/error.h"

namespace atrig {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double to_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != value.size() || !std::isfinite(v))
    throw ConfigError(fmt::format("{}: '{}' is not a number", key, value));
  return v;
}

std::size_t to_size(const std::string& key, const std::string& value) {
  if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos)
    throw ConfigError(fmt::format("{}: '{}' is not a non-negative integer", key, value));
  return static_cast<std::size_t>(std::stoull(value));
}

bool to_bool(const std::string& key, const std::string& value) {
  const auto v = to_lower(value);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(fmt::format("{}: '{}' is not a boolean", key, value));
}

std::string env_name(const std::string& key) {
  std::string name = kEnvPrefix;
  for (char c : key) name += c == '.' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return name;
}

void apply(RunConfig& cfg, const std::string& key, const std::string& value,
           const std::filesystem::path& base) {
  auto path = [&]() -> std::filesystem::path {
    if (value.empty()) return {};
    std::filesystem::path p(value);
    return p.is_relative() && !base.empty() ? base / p : p;
  };
  const auto dot = key.find('.');
  const std::string section = key.substr(0, dot);
  const std::string name = dot == std::string::npos ? "" : key.substr(dot + 1);

  if (section == "train" || section == "dev" || section == "test") {
    auto& split = cfg.splits[section];
    if (name == "corpus") split.corpus = path();
    else if (name == "conllu") split.conllu = path();
    else if (name == "index") split.index = path();
    else if (name == "scores") split.scores = path();
    else throw ConfigError(fmt::format("unknown config key '{}'", key));
  } else if (key == "resources.embeddings") cfg.embeddings = path();
  else if (key == "resources.df_word") cfg.df_word = path();
  else if (key == "resources.df_pair") cfg.df_pair = path();
  else if (key == "resources.df_triplet") cfg.df_triplet = path();
  else if (key == "resources.pos_table") cfg.pos_table = path();
  else if (key == "features.manifest") cfg.manifest = parse_manifest(value);
  else if (key == "features.extra") cfg.extra = value.empty() ? Manifest{} : parse_manifest(value);
  else if (key == "graphsim.alpha_word") cfg.alphas.word = to_double(key, value);
  else if (key == "graphsim.alpha_pair") cfg.alphas.pair = to_double(key, value);
  else if (key == "graphsim.alpha_triplet") cfg.alphas.triplet = to_double(key, value);
  else if (key == "coverage.m") cfg.subgraph_max_edges = to_size(key, value);
  else if (key == "bm25.k1") cfg.bm25.k1 = to_double(key, value);
  else if (key == "bm25.b") cfg.bm25.b = to_double(key, value);
  else if (key == "ngram.n_max") cfg.ngram_max = to_size(key, value);
  else if (key == "ged.edge_weight") cfg.edge_weight = to_double(key, value);
  else if (key == "ged.deletion_cost") cfg.deletion_cost = to_double(key, value);
  else if (key == "combiner.lr") cfg.train.lr = to_double(key, value);
  else if (key == "combiner.epochs") cfg.train.epochs = to_size(key, value);
  else if (key == "combiner.l2") cfg.train.l2 = to_double(key, value);
  else if (key == "combiner.seed") cfg.train.seed = to_size(key, value);
  else if (key == "combiner.standardize") cfg.train.standardize = to_bool(key, value);
  else if (key == "eval.threshold") cfg.threshold = to_double(key, value);
  else if (key == "run.threads") cfg.threads = to_size(key, value);
  else throw ConfigError(fmt::format("unknown config key '{}'", key));
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const char* split : {"train", "dev", "test"})
      for (const char* name : {"corpus", "conllu", "index", "scores"})
        k.push_back(fmt::format("{}.{}", split, name));
    for (const char* name : {"resources.embeddings", "resources.df_word", "resources.df_pair",
                             "resources.df_triplet", "resources.pos_table", "features.manifest", "features.extra",
                             "graphsim.alpha_word", "graphsim.alpha_pair",
                             "graphsim.alpha_triplet", "coverage.m", "bm25.k1", "bm25.b",
                             "ngram.n_max", "ged.edge_weight", "ged.deletion_cost",
                             "combiner.lr", "combiner.epochs", "combiner.l2", "combiner.seed",
                             "combiner.standardize", "eval.threshold", "run.threads"})
      k.emplace_back(name);
    return k;
  }();
  return keys;
}

std::map<std::string, std::string> parse_config_text(const std::string& text,
                                                     const std::string& source) {
  std::map<std::string, std::string> values;
  std::istringstream in(text);
  std::string line, section;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(fmt::format("{}:{}: unterminated section header", source, line_no));
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(fmt::format("{}:{}: expected 'key = value'", source, line_no));
    const auto key = trim(line.substr(0, eq));
    if (section.empty())
      throw ConfigError(fmt::format("{}:{}: key '{}' outside any [section]", source, line_no, key));
    values[section + "." + key] = trim(line.substr(eq + 1));
  }
  return values;
}

RunConfig load_config(const std::filesystem::path& file,
                      const std::vector<std::pair<std::string, std::string>>& overrides,
                      bool read_environment) {
  RunConfig cfg;
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw IoError(fmt::format("cannot open config '{}'", file.string()));
    std::stringstream buf;
    buf << in.rdbuf();
    const auto base = file.parent_path();
    for (const auto& [key, value] : parse_config_text(buf.str(), file.string()))
      apply(cfg, key, value, base);
  }
  if (read_environment) {
    for (const auto& key : config_keys())
      if (const char* v = std::getenv(env_name(key).c_str())) apply(cfg, key, v, {});
  }
  for (const auto& [key, value] : overrides) apply(cfg, key, value, {});
  cfg.validate();
  return cfg;
}

void RunConfig::validate() const {
  if (alphas.word < 0 || alphas.pair < 0 || alphas.triplet < 0)
    throw ConfigError("graphsim alphas must be >= 0");
  if (bm25.b < 0 || bm25.b > 1) throw ConfigError("bm25.b must lie in [0,1]");
  if (bm25.k1 < 0) throw ConfigError("bm25.k1 must be >= 0");
  if (ngram_max == 0) throw ConfigError("ngram.n_max must be >= 1");
  if (edge_weight < 0 || deletion_cost < 0) throw ConfigError("ged costs must be >= 0");
  if (!(train.lr > 0)) throw ConfigError("combiner.lr must be > 0");
  if (train.l2 < 0) throw ConfigError("combiner.l2 must be >= 0");
  if (manifest.empty()) throw ConfigError("no features enabled");
}

const SplitPaths& RunConfig::split(const std::string& name) const {
  auto it = splits.find(name);
  if (it == splits.end() || it->second.corpus.empty())
    throw ConfigError(fmt::format("no corpus configured for split '{}' ({}.corpus)", name, name));
  return it->second;
}

}  // namespace atrig
