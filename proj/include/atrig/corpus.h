#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace atrig {

struct Token {
  std::size_t index = 0;  // 1-based position in the sentence
  std::string form;
  std::string lemma;  // lowercase; falls back to the lowercased form
  std::string upos;
  std::string xpos;
  std::size_t head = 0;  // 0 = root
  std::string deprel;
};

struct Sentence {
  std::string sentence_id;
  std::string text;
  std::vector<Token> tokens;
};

struct QAPair {
  std::string question_id;
  std::string candidate_id;
  Sentence question;
  Sentence answer;
  int gold_label = 0;
};

struct Candidate {
  std::string candidate_id;  // WikiQA SentenceID
  std::string document_id;
  std::string document_title;
  Sentence sentence;
  int gold_label = 0;
};

// One question with its candidates in file order. Candidate order is
// significant: every tie in scoring breaks towards the earlier candidate.
struct QuestionGroup {
  std::string question_id;
  Sentence question;
  std::vector<Candidate> candidates;

  std::size_t positives() const;
  QAPair pair(std::size_t candidate) const;
};

// Reads the 7-column WikiQA TSV (QuestionID, Question, DocumentID,
// DocumentTitle, SentenceID, Sentence, Label). A header row is recognised by a
// non-numeric Label column. Groups keep first-appearance order.
std::vector<QuestionGroup> load_wikiqa(const std::filesystem::path& tsv_path);

// Inverse of load_wikiqa (writes a header row).
void write_wikiqa(const std::vector<QuestionGroup>& groups,
                  const std::filesystem::path& tsv_path);

// One parsed CoNLL-U block. `key` is the `# sent_id` value when present,
// otherwise the 1-based block ordinal.
struct ConlluBlock {
  std::string key;
  std::vector<Token> tokens;
  std::size_t line = 0;  // first line of the block
};

std::vector<ConlluBlock> read_conllu(const std::filesystem::path& conllu_path);

// Throws IngestError unless the tokens form a single-rooted tree with valid
// head indices.
void validate_tokens(const std::vector<Token>& tokens, const std::string& where);

// Populates every question and candidate sentence with tokens from a CoNLL-U
// file. With an index file (`conllu_sent_id<TAB>wikiqa_id` lines) blocks are
// matched by id; with an empty `index_path` blocks are consumed positionally:
// all questions in group order first, then all candidates in file order.
std::vector<QuestionGroup> attach_parses(std::vector<QuestionGroup> groups,
                                         const std::filesystem::path& conllu_path,
                                         const std::filesystem::path& index_path = {});

struct ScoreTable {
  std::map<std::pair<std::string, std::string>, double> scores;
  std::size_t duplicate_warnings = 0;

  std::optional<double> find(const std::string& question_id,
                             const std::string& candidate_id) const;
};

// `question_id<TAB>candidate_id<TAB>score` rows; duplicates keep the last
// value and are counted.
ScoreTable load_scores(const std::filesystem::path& tsv_path);

// Strips a trailing '\r' and splits on tabs.
std::vector<std::string> split_tsv_line(std::string line);

std::string to_lower(std::string s);

}  // namespace atrig
