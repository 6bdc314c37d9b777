#pragma once

#include <vector>

#include "atrig/eval.h"
#include "rational.h"

namespace testutil {

inline atrig::ScoredGroup scored(const char* id, std::vector<std::pair<double, int>> c) {
  atrig::ScoredGroup g;
  g.question_id = id;
  for (std::size_t i = 0; i < c.size(); ++i)
    g.candidates.push_back({std::string(id) + "-" + std::to_string(i), c[i].first, c[i].second});
  return g;
}

// Ten groups: three unanswerable, two with tied top scores, one with three
// positives. Hand values at threshold 0.5 are listed in kTen* below.
inline std::vector<atrig::ScoredGroup> ten_groups() {
  return {
      scored("G1", {{0.9, 1}, {0.5, 0}, {0.1, 0}}),
      scored("G2", {{0.2, 0}, {0.8, 0}, {0.6, 1}}),
      scored("G3", {{0.3, 1}, {0.7, 0}, {0.5, 1}}),
      scored("G4", {{0.4, 0}, {0.95, 0}}),
      scored("G5", {{0.05, 0}}),
      scored("G6", {{0.6, 0}, {0.6, 1}}),
      scored("G7", {{0.6, 1}, {0.6, 0}}),
      scored("G8", {{0.1, 0}, {0.2, 0}, {0.3, 0}, {0.4, 1}}),
      scored("G9", {{0.5, 1}, {0.4, 0}, {0.3, 1}, {0.2, 0}, {0.1, 1}}),
      scored("G10", {{0.7, 0}, {0.65, 0}}),
  };
}

// AP per answerable group: 1, 1/2, 7/12, 1/2, 1, 1, 34/45.
inline const Rational kTenMap{961, 1260};
// RR: 1, 1/2, 1/2, 1/2, 1, 1, 1.
inline const Rational kTenMrr{11, 14};
// Triggered above 0.5: G1 G2 G3 G4 G6 G7 G10; correct: G1 G7. Answerable: 7.
inline const Rational kTenPrecision{200, 7};
inline const Rational kTenRecall{200, 7};
inline const Rational kTenF1{200, 7};
constexpr double kTenThreshold = 0.5;

// Best F1 by trying a threshold just below every distinct top score and one
// above them all.
inline double exhaustive_best_f1(const std::vector<atrig::ScoredGroup>& groups) {
  std::vector<double> tops;
  for (const auto& g : groups)
    if (auto t = g.top()) tops.push_back(g.candidates[*t].score);
  double best = 0.0;
  auto consider = [&](double t) { best = std::max(best, atrig::triggering_report(groups, t).f1); };
  for (double s : tops) consider(std::nextafter(s, -1e300));
  for (double s : tops) consider(s);
  return best;
}

}  // namespace testutil
