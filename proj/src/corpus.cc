#include "atrig/corpus.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>

#include "atrig/error.h"

namespace atrig {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  return in;
}

bool parse_size(const std::string& s, std::size_t& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool is_blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string join_ids(const std::vector<std::string>& ids) {
  constexpr std::size_t kShown = 10;
  std::string out;
  for (std::size_t i = 0; i < ids.size() && i < kShown; ++i) {
    if (i) out += ", ";
    out += ids[i];
  }
  if (ids.size() > kShown) out += fmt::format(" (+{} more)", ids.size() - kShown);
  return out;
}

}  // namespace

std::string to_lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::vector<std::string> split_tsv_line(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> cols;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    if (tab == std::string::npos) {
      cols.push_back(line.substr(start));
      break;
    }
    cols.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return cols;
}

std::size_t QuestionGroup::positives() const {
  return static_cast<std::size_t>(
      std::count_if(candidates.begin(), candidates.end(),
                    [](const Candidate& c) { return c.gold_label == 1; }));
}

QAPair QuestionGroup::pair(std::size_t candidate) const {
  const auto& c = candidates.at(candidate);
  return QAPair{question_id, c.candidate_id, question, c.sentence, c.gold_label};
}

std::vector<QuestionGroup> load_wikiqa(const std::filesystem::path& tsv_path) {
  auto in = open_input(tsv_path);
  std::vector<QuestionGroup> groups;
  std::unordered_map<std::string, std::size_t> group_of;
  std::vector<std::set<std::string>> seen_candidates;

  std::string line;
  std::size_t line_no = 0;
  bool first_data_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    auto cols = split_tsv_line(line);
    if (cols.size() < 7) {
      throw IngestError(fmt::format("{}:{}: expected 7 tab-separated columns, got {}",
                                    tsv_path.string(), line_no, cols.size()));
    }
    const std::string& label = cols[6];
    if (first_data_line) {
      first_data_line = false;
      bool numeric = !label.empty() &&
                     std::all_of(label.begin(), label.end(), [](unsigned char c) {
                       return std::isdigit(c) || c == '-' || c == '+' || c == '.';
                     });
      if (!numeric) continue;  // header row
    }
    if (label != "0" && label != "1") {
      throw IngestError(fmt::format("{}:{}: label must be 0 or 1, got '{}'",
                                    tsv_path.string(), line_no, label));
    }

    const std::string& qid = cols[0];
    auto [it, inserted] = group_of.try_emplace(qid, groups.size());
    if (inserted) {
      QuestionGroup g;
      g.question_id = qid;
      g.question.sentence_id = qid;
      g.question.text = cols[1];
      groups.push_back(std::move(g));
      seen_candidates.emplace_back();
    }
    auto& group = groups[it->second];
    if (!seen_candidates[it->second].insert(cols[4]).second) {
      throw IngestError(fmt::format("{}:{}: duplicate candidate '{}' in question '{}'",
                                    tsv_path.string(), line_no, cols[4], qid));
    }
    Candidate c;
    c.candidate_id = cols[4];
    c.document_id = cols[2];
    c.document_title = cols[3];
    c.sentence.sentence_id = cols[4];
    c.sentence.text = cols[5];
    c.gold_label = label == "1" ? 1 : 0;
    group.candidates.push_back(std::move(c));
  }
  return groups;
}

void write_wikiqa(const std::vector<QuestionGroup>& groups,
                  const std::filesystem::path& tsv_path) {
  std::ofstream out(tsv_path, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot write '{}'", tsv_path.string()));
  out << "QuestionID\tQuestion\tDocumentID\tDocumentTitle\tSentenceID\tSentence\tLabel\n";
  for (const auto& g : groups) {
    for (const auto& c : g.candidates) {
      out << g.question_id << '\t' << g.question.text << '\t' << c.document_id << '\t'
          << c.document_title << '\t' << c.candidate_id << '\t' << c.sentence.text
          << '\t' << c.gold_label << '\n';
    }
  }
}

void validate_tokens(const std::vector<Token>& tokens, const std::string& where) {
  std::size_t roots = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto& t = tokens[i];
    if (t.index != i + 1) {
      throw IngestError(fmt::format("{}: token ids must be 1..n in order (found {} at position {})",
                                    where, t.index, i + 1));
    }
    if (t.head == t.index) {
      throw IngestError(fmt::format("{}: token {} is its own head", where, t.index));
    }
    if (t.head > tokens.size()) {
      throw IngestError(fmt::format("{}: token {} has head {} outside 0..{}", where,
                                    t.index, t.head, tokens.size()));
    }
    if (t.lemma.empty()) {
      throw IngestError(fmt::format("{}: token {} has an empty lemma", where, t.index));
    }
    if (t.head == 0) ++roots;
  }
  if (roots != 1) {
    throw IngestError(fmt::format("{}: single-root violation ({} roots)", where, roots));
  }
  // Walking up from every token must reach the root without revisiting.
  for (const auto& t : tokens) {
    std::size_t cur = t.index, steps = 0;
    while (cur != 0) {
      cur = tokens[cur - 1].head;
      if (++steps > tokens.size()) {
        throw IngestError(fmt::format("{}: heads form a cycle through token {}", where, t.index));
      }
    }
  }
}

std::vector<ConlluBlock> read_conllu(const std::filesystem::path& conllu_path) {
  auto in = open_input(conllu_path);
  std::vector<ConlluBlock> blocks;
  ConlluBlock current;
  bool open = false;
  std::size_t ordinal = 0;
  std::string sent_id;

  auto flush = [&]() {
    if (!open) return;
    ++ordinal;
    current.key = sent_id.empty() ? std::to_string(ordinal) : sent_id;
    blocks.push_back(std::move(current));
    current = ConlluBlock{};
    sent_id.clear();
    open = false;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line)) {
      flush();
      continue;
    }
    if (!open) {
      open = true;
      current.line = line_no;
    }
    if (line[0] == '#') {
      auto body = trim(line.substr(1));
      if (body.rfind("sent_id", 0) == 0) {
        auto eq = body.find('=');
        if (eq != std::string::npos) sent_id = trim(body.substr(eq + 1));
      }
      continue;
    }
    auto cols = split_tsv_line(line);
    if (cols.size() != 10) {
      throw IngestError(fmt::format("{}:{}: expected 10 CoNLL-U columns, got {}",
                                    conllu_path.string(), line_no, cols.size()));
    }
    // Multi-word tokens ("1-2") and empty nodes ("3.1") are not tree nodes.
    if (cols[0].find_first_of("-.") != std::string::npos) continue;
    Token t;
    if (!parse_size(cols[0], t.index) || !parse_size(cols[6], t.head)) {
      throw IngestError(fmt::format("{}:{}: non-numeric ID or HEAD", conllu_path.string(),
                                    line_no));
    }
    t.form = cols[1];
    t.lemma = (cols[2].empty() || cols[2] == "_") ? to_lower(cols[1]) : to_lower(cols[2]);
    if (t.lemma.empty()) t.lemma = to_lower(cols[1]);
    t.upos = cols[3];
    t.xpos = cols[4];
    t.deprel = cols[7];
    current.tokens.push_back(std::move(t));
  }
  flush();
  return blocks;
}

std::vector<QuestionGroup> attach_parses(std::vector<QuestionGroup> groups,
                                         const std::filesystem::path& conllu_path,
                                         const std::filesystem::path& index_path) {
  auto blocks = read_conllu(conllu_path);
  auto where = [&](const ConlluBlock& b) {
    return fmt::format("{}:{} (block '{}')", conllu_path.string(), b.line, b.key);
  };

  if (index_path.empty()) {
    std::vector<Sentence*> targets;
    for (auto& g : groups) targets.push_back(&g.question);
    for (auto& g : groups)
      for (auto& c : g.candidates) targets.push_back(&c.sentence);
    if (blocks.size() < targets.size()) {
      std::vector<std::string> missing;
      for (std::size_t i = blocks.size(); i < targets.size(); ++i)
        missing.push_back(targets[i]->sentence_id);
      throw IngestError(fmt::format("{}: no parse for {} sentence(s): {}",
                                    conllu_path.string(), missing.size(), join_ids(missing)));
    }
    if (blocks.size() > targets.size()) {
      throw IngestError(fmt::format("{}: {} parse blocks but only {} sentences",
                                    conllu_path.string(), blocks.size(), targets.size()));
    }
    for (std::size_t i = 0; i < targets.size(); ++i) {
      validate_tokens(blocks[i].tokens, where(blocks[i]));
      targets[i]->tokens = std::move(blocks[i].tokens);
    }
    return groups;
  }

  std::unordered_map<std::string, std::size_t> block_of_key;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (!block_of_key.emplace(blocks[i].key, i).second) {
      throw IngestError(fmt::format("{}: duplicate sent_id '{}'", conllu_path.string(),
                                    blocks[i].key));
    }
  }

  auto in = open_input(index_path);
  std::unordered_map<std::string, std::size_t> block_of_id;
  std::set<std::string> mapped_blocks;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    auto cols = split_tsv_line(line);
    if (cols.size() != 2) {
      throw IngestError(fmt::format("{}:{}: expected 2 columns", index_path.string(), line_no));
    }
    auto b = block_of_key.find(cols[0]);
    if (b == block_of_key.end()) {
      throw IngestError(fmt::format("{}:{}: unknown CoNLL-U sentence '{}'",
                                    index_path.string(), line_no, cols[0]));
    }
    if (!mapped_blocks.insert(cols[0]).second || !block_of_id.emplace(cols[1], b->second).second) {
      throw IngestError(fmt::format("{}:{}: duplicate mapping for '{}' -> '{}'",
                                    index_path.string(), line_no, cols[0], cols[1]));
    }
  }

  std::vector<std::string> missing;
  std::vector<char> validated(blocks.size(), 0);
  auto assign = [&](Sentence& s) {
    auto it = block_of_id.find(s.sentence_id);
    if (it == block_of_id.end()) {
      missing.push_back(s.sentence_id);
      return;
    }
    const auto& block = blocks[it->second];
    if (!validated[it->second]) {
      validate_tokens(block.tokens, where(block));
      validated[it->second] = 1;
    }
    s.tokens = block.tokens;
  };
  for (auto& g : groups) {
    assign(g.question);
    for (auto& c : g.candidates) assign(c.sentence);
  }
  if (!missing.empty()) {
    throw IngestError(fmt::format("{}: no parse for {} sentence(s): {}", index_path.string(),
                                  missing.size(), join_ids(missing)));
  }
  return groups;
}

std::optional<double> ScoreTable::find(const std::string& question_id,
                                       const std::string& candidate_id) const {
  auto it = scores.find({question_id, candidate_id});
  if (it == scores.end()) return std::nullopt;
  return it->second;
}

ScoreTable load_scores(const std::filesystem::path& tsv_path) {
  auto in = open_input(tsv_path);
  ScoreTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    auto cols = split_tsv_line(line);
    if (cols.size() != 3) {
      throw IngestError(fmt::format("{}:{}: expected 3 columns, got {}", tsv_path.string(),
                                    line_no, cols.size()));
    }
    double value = 0.0;
    std::istringstream ss(cols[2]);
    ss >> value;
    if (ss.fail() || !ss.eof() || !std::isfinite(value)) {
      throw IngestError(fmt::format("{}:{}: score '{}' is not a finite number",
                                    tsv_path.string(), line_no, cols[2]));
    }
    auto [it, inserted] = table.scores.insert_or_assign({cols[0], cols[1]}, value);
    if (!inserted) ++table.duplicate_warnings;
  }
  return table;
}

}  // namespace atrig
