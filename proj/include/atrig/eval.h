#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace atrig {

struct ScoredCandidate {
  std::string candidate_id;
  double score = 0.0;
  int gold_label = 0;
};

// Candidates in corpus order; that order breaks score ties.
struct ScoredGroup {
  std::string question_id;
  std::vector<ScoredCandidate> candidates;

  bool answerable() const;
  // Index of the highest-scoring candidate (earliest on ties); nullopt if empty.
  std::optional<std::size_t> top() const;
};

struct EvalReport {
  double map_value = 0.0;
  double mrr_value = 0.0;
  double precision = 0.0;  // percent
  double recall = 0.0;     // percent
  double f1 = 0.0;         // percent
  std::size_t questions_total = 0;
  std::size_t questions_answerable = 0;
  std::size_t questions_triggered = 0;
  std::size_t triggers_correct = 0;
  double threshold = 0.0;

  std::string text(const std::string& title = "") const;
  std::string key_values(const std::string& prefix = "") const;
};

// nullopt for groups without a positive candidate.
std::optional<double> average_precision(const ScoredGroup& group);
std::optional<double> reciprocal_rank(const ScoredGroup& group);

// A question is triggered when its top candidate scores strictly above
// `threshold`; the trigger is correct when that candidate is gold-positive.
// MAP and MRR average over answerable questions only.
EvalReport triggering_report(const std::vector<ScoredGroup>& groups, double threshold);

struct ThresholdChoice {
  double threshold = 0.0;
  double f1 = 0.0;  // percent
};

// Sweeps a sentinel below the lowest top score, the midpoints between
// consecutive distinct top scores, and a sentinel above the highest. Returns
// the best F1, smallest threshold on ties; when no threshold gives a positive
// F1 the above-max sentinel (trigger nothing) is returned. Throws DataError
// without an answerable group.
ThresholdChoice tune_threshold(const std::vector<ScoredGroup>& dev);

double harmonic_mean(double a, double b);

}  // namespace atrig
