// atrig: answer-triggering pipeline driver.

#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "atrig/config.h"
#include "atrig/error.h"
#include "atrig/eval.h"
#include "atrig/pipeline.h"

namespace {

using namespace atrig;

// Baselines without a tuned threshold file fall back to these.
const std::map<std::string, double>& default_baseline_thresholds() {
  static const std::map<std::string, double> t{{"semvec", kSemanticTriggerThreshold}};
  return t;
}

std::string help_footer() {
  std::string s =
      "Configuration: --config FILE holds `key = value` lines under [section]\n"
      "headers. Environment variables ATRIG_<SECTION>_<KEY> (e.g.\n"
      "ATRIG_GRAPHSIM_ALPHA_WORD=0) override the file; --set section.key=value\n"
      "overrides both.\n\n"
      "Parse alignment: when <split>.index is not set, CoNLL-U sentences are\n"
      "matched by position: every question of the split in corpus order first,\n"
      "then every candidate sentence in corpus order. With an index file, each\n"
      "line is `conllu_sent_id<TAB>wikiqa_id` (a QuestionID or SentenceID).\n\n"
      "Keys:";
  for (const auto& k : config_keys()) s += "\n  " + k;
  return s;
}

struct Globals {
  std::string config;
  std::vector<std::string> sets;
};

RunConfig make_config(const Globals& g) {
  std::vector<std::pair<std::string, std::string>> overrides;
  for (const auto& s : g.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ConfigError(fmt::format("--set expects section.key=value, got '{}'", s));
    overrides.emplace_back(s.substr(0, eq), s.substr(eq + 1));
  }
  return load_config(g.config, overrides);
}

std::vector<ScoredGroup> column_groups(const FeatureTable& table, const std::string& name) {
  return table.groups(table.values(name));
}

int run(int argc, char** argv) {
  CLI::App app{"Answer triggering with dependency-graph alignment features"};
  app.footer(help_footer());
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "Config file");
  app.add_option("--set", g.sets, "Override one key: section.key=value (repeatable)");

  std::string split = "train", out, model_path, features_path, report_path, baselines_path,
              baselines_out;
  double threshold_override = 0.0;
  bool write_model = false;

  auto* build_df = app.add_subcommand("build-df", "Write word/pair/triplet DF tables for a split");
  build_df->add_option("--split", split, "Split name (train, dev, test)")->capture_default_str();
  build_df->add_option("--out-dir", out, "Output directory")->required();

  auto* featurize = app.add_subcommand("featurize", "Write the feature TSV of a split");
  featurize->add_option("--split", split, "Split name (train, dev, test)")->capture_default_str();
  featurize->add_option("--out", out, "Output feature file")->required();

  auto* train = app.add_subcommand("train", "Fit the logistic-regression combiner");
  train->add_option("--features", features_path, "Training feature file")->required();
  train->add_option("--model", model_path, "Output model file")->required();

  auto* tune = app.add_subcommand("tune", "Pick the triggering threshold on dev features");
  tune->add_option("--model", model_path, "Model file")->required();
  tune->add_option("--features", features_path, "Dev feature file")->required();
  tune->add_flag("--write", write_model, "Store the tuned threshold in the model file");
  tune->add_option("--baselines-out", baselines_out,
                   "Also tune bm25/ngram/semvec columns and write their thresholds here");

  auto* predict = app.add_subcommand("predict", "Score every row of a feature file");
  predict->add_option("--model", model_path, "Model file")->required();
  predict->add_option("--features", features_path, "Feature file")->required();
  predict->add_option("--out", out, "Output TSV (question_id, candidate_id, score)")->required();

  auto* evaluate = app.add_subcommand("evaluate", "MAP, MRR and triggering P/R/F");
  evaluate->add_option("--model", model_path, "Model file")->required();
  evaluate->add_option("--features", features_path, "Feature file")->required();
  auto* thr = evaluate->add_option("--threshold", threshold_override,
                                   "Use this threshold instead of the model's");
  evaluate->add_option("--report", report_path, "Also write the key=value block here");
  evaluate->add_option("--baselines", baselines_path,
                       "Thresholds for baseline columns (from tune --baselines-out)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Error& e) {
    std::cerr << "error[usage] " << e.what() << "\n";
    return 2;
  }

  if (*build_df) {
    const auto cfg = make_config(g);
    build_df_tables(cfg, split, out);
    fmt::print("wrote df_word.tsv, df_pair.tsv, df_triplet.tsv to {}\n", out);
  } else if (*featurize) {
    const auto cfg = make_config(g);
    write_text(out, atrig::featurize(cfg, split));
  } else if (*train) {
    const auto cfg = make_config(g);
    const auto table = FeatureTable::load(features_path);
    const auto summary = train_from_table(cfg, table);
    summary.model.save(model_path);
    fmt::print("final_loss={:.17g}\nepochs={}\ntrain_accuracy={:.17g}\n", summary.final_loss,
               summary.epochs, summary.train_accuracy);
  } else if (*tune) {
    auto model = TriggerModel::load(model_path);
    const auto table = FeatureTable::load(features_path);
    const auto choice = tune_threshold(table.groups(atrig::predict(model, table)));
    fmt::print("threshold={:.17g}\ndev_f1={:.17g}\n", choice.threshold, choice.f1);
    if (write_model) {
      model.threshold = choice.threshold;
      model.save(model_path);
    }
    if (!baselines_out.empty()) {
      std::map<std::string, double> thresholds;
      for (const auto& name : baseline_columns()) {
        if (!table.has(name)) continue;
        const auto c = tune_threshold(column_groups(table, name));
        thresholds[name] = c.threshold;
        fmt::print("{}.threshold={:.17g}\n{}.dev_f1={:.17g}\n", name, c.threshold, name, c.f1);
      }
      save_thresholds(thresholds, baselines_out);
    }
  } else if (*predict) {
    const auto model = TriggerModel::load(model_path);
    const auto table = FeatureTable::load(features_path);
    const auto scores = atrig::predict(model, table);
    std::string text = "question_id\tcandidate_id\tscore\n";
    for (std::size_t i = 0; i < scores.size(); ++i)
      text += fmt::format("{}\t{}\t{:.17g}\n", table.rows[i].question_id,
                          table.rows[i].candidate_id, scores[i]);
    write_text(out, text);
  } else if (*evaluate) {
    const auto model = TriggerModel::load(model_path);
    const auto table = FeatureTable::load(features_path);
    const double threshold = *thr ? threshold_override : model.threshold;
    const auto report = triggering_report(table.groups(atrig::predict(model, table)), threshold);
    std::string text = report.text("model");
    std::string kv = report.key_values("model");

    auto thresholds = default_baseline_thresholds();
    if (!baselines_path.empty())
      for (const auto& [name, t] : load_thresholds(baselines_path)) thresholds[name] = t;
    for (const auto& name : baseline_columns()) {
      if (!table.has(name)) continue;
      auto it = thresholds.find(name);
      if (it == thresholds.end()) {
        text += fmt::format("{}: skipped (no threshold; run tune --baselines-out)\n", name);
        continue;
      }
      const auto r = triggering_report(column_groups(table, name), it->second);
      text += r.text(name);
      kv += r.key_values(name);
    }
    fmt::print("{}\n{}", text, kv);
    if (!report_path.empty()) write_text(report_path, kv);
  }
  return 0;
}

int exit_code(const std::string& category) {
  if (category == "config") return 2;
  if (category == "io" || category == "ingest") return 3;
  if (category == "data") return 4;
  return 1;
}

std::string one_line(std::string s) {
  for (char& c : s)
    if (c == '\n' || c == '\r') c = ' ';
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const atrig::Error& e) {
    std::cerr << "error[" << e.category() << "] " << one_line(e.what()) << "\n";
    return exit_code(e.category());
  } catch (const std::exception& e) {
    std::cerr << "error[internal] " << one_line(e.what()) << "\n";
    return 1;
  }
}
