#include "atrig/eval.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "atrig/error.h"

namespace atrig {

namespace {

// Candidate indices by descending score; stable, so corpus order breaks ties.
std::vector<std::size_t> ranking(const ScoredGroup& group) {
  std::vector<std::size_t> order(group.candidates.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return group.candidates[a].score > group.candidates[b].score;
  });
  return order;
}

}  // namespace

bool ScoredGroup::answerable() const {
  return std::any_of(candidates.begin(), candidates.end(),
                     [](const ScoredCandidate& c) { return c.gold_label == 1; });
}

std::optional<std::size_t> ScoredGroup::top() const {
  if (candidates.empty()) return std::nullopt;
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i)
    if (candidates[i].score > candidates[best].score) best = i;
  return best;
}

std::optional<double> average_precision(const ScoredGroup& group) {
  if (!group.answerable()) return std::nullopt;
  const auto order = ranking(group);
  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    if (group.candidates[order[rank]].gold_label != 1) continue;
    ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(rank + 1);
  }
  return sum / static_cast<double>(hits);
}

std::optional<double> reciprocal_rank(const ScoredGroup& group) {
  const auto order = ranking(group);
  for (std::size_t rank = 0; rank < order.size(); ++rank)
    if (group.candidates[order[rank]].gold_label == 1) return 1.0 / static_cast<double>(rank + 1);
  return std::nullopt;
}

double harmonic_mean(double a, double b) { return a + b > 0.0 ? 2.0 * a * b / (a + b) : 0.0; }

EvalReport triggering_report(const std::vector<ScoredGroup>& groups, double threshold) {
  EvalReport r;
  r.threshold = threshold;
  r.questions_total = groups.size();
  double ap_sum = 0.0, rr_sum = 0.0;
  for (const auto& g : groups) {
    if (auto ap = average_precision(g)) {
      ++r.questions_answerable;
      ap_sum += *ap;
      rr_sum += reciprocal_rank(g).value_or(0.0);
    }
    const auto top = g.top();
    if (!top || !(g.candidates[*top].score > threshold)) continue;
    ++r.questions_triggered;
    if (g.candidates[*top].gold_label == 1) ++r.triggers_correct;
  }
  if (r.questions_answerable > 0) {
    r.map_value = ap_sum / static_cast<double>(r.questions_answerable);
    r.mrr_value = rr_sum / static_cast<double>(r.questions_answerable);
    r.recall = 100.0 * static_cast<double>(r.triggers_correct) /
               static_cast<double>(r.questions_answerable);
  }
  if (r.questions_triggered > 0) {
    r.precision = 100.0 * static_cast<double>(r.triggers_correct) /
                  static_cast<double>(r.questions_triggered);
  }
  r.f1 = harmonic_mean(r.precision, r.recall);
  return r;
}

ThresholdChoice tune_threshold(const std::vector<ScoredGroup>& dev) {
  if (std::none_of(dev.begin(), dev.end(), [](const ScoredGroup& g) { return g.answerable(); }))
    throw DataError("threshold tuning needs at least one answerable question");

  std::vector<double> tops;
  for (const auto& g : dev)
    if (auto t = g.top()) tops.push_back(g.candidates[*t].score);
  std::sort(tops.begin(), tops.end());
  tops.erase(std::unique(tops.begin(), tops.end()), tops.end());

  std::vector<double> thresholds;
  if (tops.empty()) {
    thresholds.push_back(0.0);
  } else {
    thresholds.push_back(tops.front() - (1.0 + std::abs(tops.front())));
    for (std::size_t i = 0; i + 1 < tops.size(); ++i)
      thresholds.push_back(tops[i] + (tops[i + 1] - tops[i]) / 2.0);
    thresholds.push_back(tops.back() + (1.0 + std::abs(tops.back())));
  }

  ThresholdChoice best{thresholds.back(), 0.0};
  for (double t : thresholds) {
    const double f1 = triggering_report(dev, t).f1;
    if (f1 > best.f1) best = {t, f1};
  }
  return best;
}

std::string EvalReport::text(const std::string& title) const {
  std::string out;
  if (!title.empty()) out += title + "\n";
  out += fmt::format("  MAP        {:.4f}\n", map_value);
  out += fmt::format("  MRR        {:.4f}\n", mrr_value);
  out += fmt::format("  Precision  {:.2f}%\n", precision);
  out += fmt::format("  Recall     {:.2f}%\n", recall);
  out += fmt::format("  F-score    {:.2f}%\n", f1);
  out += fmt::format("  questions {} (answerable {}, triggered {}, correct {}) at threshold {:.6g}\n",
                     questions_total, questions_answerable, questions_triggered,
                     triggers_correct, threshold);
  return out;
}

std::string EvalReport::key_values(const std::string& prefix) const {
  auto key = [&](const char* k) { return prefix.empty() ? std::string(k) : prefix + "." + k; };
  std::string out;
  out += fmt::format("{}={:.17g}\n", key("map"), map_value);
  out += fmt::format("{}={:.17g}\n", key("mrr"), mrr_value);
  out += fmt::format("{}={:.17g}\n", key("precision"), precision);
  out += fmt::format("{}={:.17g}\n", key("recall"), recall);
  out += fmt::format("{}={:.17g}\n", key("f1"), f1);
  out += fmt::format("{}={}\n", key("questions_total"), questions_total);
  out += fmt::format("{}={}\n", key("questions_answerable"), questions_answerable);
  out += fmt::format("{}={}\n", key("questions_triggered"), questions_triggered);
  out += fmt::format("{}={}\n", key("triggers_correct"), triggers_correct);
  out += fmt::format("{}={:.17g}\n", key("threshold"), threshold);
  return out;
}

}  // namespace atrig
