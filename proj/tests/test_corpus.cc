#include <doctest.h>

#include <fstream>

#include "atrig/corpus.h"
#include "atrig/error.h"
#include "test_util.h"

using namespace atrig;
using testutil::TempDir;

namespace {

void write(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

const char* kHeader = "QuestionID\tQuestion\tDocumentID\tDocumentTitle\tSentenceID\tSentence\tLabel\n";

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("three rows of one question form one group with one positive") {
  TempDir dir("corpus");
  write(dir / "q.tsv", std::string(kHeader) +
                           "Q1\twho?\tD1\tT\tD1-0\tfirst\t0\n"
                           "Q1\twho?\tD1\tT\tD1-1\tsecond\t1\n"
                           "Q1\twho?\tD1\tT\tD1-2\tthird\t0\n");
  auto groups = load_wikiqa(dir / "q.tsv");
  REQUIRE(groups.size() == 1);
  CHECK(groups[0].candidates.size() == 3);
  CHECK(groups[0].positives() == 1);
  CHECK(groups[0].candidates[1].candidate_id == "D1-1");
  CHECK(groups[0].question.text == "who?");
}

TEST_CASE("empty file gives no groups") {
  TempDir dir("corpus");
  write(dir / "e.tsv", "");
  CHECK(load_wikiqa(dir / "e.tsv").empty());
}

TEST_CASE("groups keep first appearance order, headerless and CRLF input") {
  TempDir dir("corpus");
  write(dir / "q.tsv",
        "Q2\tb\tD\tT\tS1\tx\t0\r\n"
        "Q1\ta\tD\tT\tS2\ty\t1\r\n"
        "\r\n"
        "Q2\tb\tD\tT\tS3\tz\t1\r\n");
  auto groups = load_wikiqa(dir / "q.tsv");
  REQUIRE(groups.size() == 2);
  CHECK(groups[0].question_id == "Q2");
  CHECK(groups[0].candidates.size() == 2);
  CHECK(groups[0].candidates[1].sentence.text == "z");
  CHECK(groups[0].candidates[1].gold_label == 1);
  CHECK(groups[1].question_id == "Q1");
}

TEST_CASE("malformed rows name the line") {
  TempDir dir("corpus");
  write(dir / "short.tsv", std::string(kHeader) + "Q1\ta\tD\tT\tS\tx\n");
  CHECK_THROWS_WITH_AS(load_wikiqa(dir / "short.tsv"), doctest::Contains("short.tsv:2"),
                       IngestError);
  write(dir / "label.tsv", std::string(kHeader) + "Q1\ta\tD\tT\tS\tx\t0\nQ1\ta\tD\tT\tS2\tx\t2\n");
  CHECK_THROWS_WITH_AS(load_wikiqa(dir / "label.tsv"), doctest::Contains("label.tsv:3"),
                       IngestError);
  write(dir / "dup.tsv", std::string(kHeader) + "Q1\ta\tD\tT\tS\tx\t0\nQ1\ta\tD\tT\tS\ty\t1\n");
  CHECK_THROWS_AS(load_wikiqa(dir / "dup.tsv"), IngestError);
  CHECK_THROWS_AS(load_wikiqa(dir / "missing.tsv"), IoError);
}

TEST_CASE("write then load round-trips groups, labels and text") {
  TempDir dir("corpus");
  auto groups = load_wikiqa(testutil::mini_dir() / "train.tsv");
  write_wikiqa(groups, dir / "out.tsv");
  auto again = load_wikiqa(dir / "out.tsv");
  REQUIRE(again.size() == groups.size());
  std::size_t rows = 0;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    CHECK(again[i].question_id == groups[i].question_id);
    CHECK(again[i].question.text == groups[i].question.text);
    REQUIRE(again[i].candidates.size() == groups[i].candidates.size());
    for (std::size_t c = 0; c < groups[i].candidates.size(); ++c) {
      CHECK(again[i].candidates[c].candidate_id == groups[i].candidates[c].candidate_id);
      CHECK(again[i].candidates[c].sentence.text == groups[i].candidates[c].sentence.text);
      CHECK(again[i].candidates[c].gold_label == groups[i].candidates[c].gold_label);
      CHECK(again[i].candidates[c].document_title == groups[i].candidates[c].document_title);
    }
    rows += groups[i].candidates.size();
  }
  CHECK(rows == 36);
}

TEST_CASE("CoNLL-U reader skips multiword and empty nodes and falls back to the form") {
  TempDir dir("corpus");
  write(dir / "p.conllu",
        "# sent_id = a\n"
        "1-2\tdon't\t_\t_\t_\t_\t_\t_\t_\t_\n"
        "1\tDo\tdo\tAUX\t_\t_\t3\taux\t_\t_\n"
        "2\tn't\tnot\tPART\t_\t_\t3\tadvmod\t_\t_\n"
        "3\tGo\t_\tVERB\t_\t_\t0\troot\t_\t_\n"
        "3.1\tgo\tgo\tVERB\t_\t_\t_\t_\t_\t_\n"
        "\n"
        "1\tYes\tyes\tINTJ\t_\t_\t0\troot\t_\t_\n");
  auto blocks = read_conllu(dir / "p.conllu");
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0].key == "a");
  CHECK(blocks[1].key == "2");
  REQUIRE(blocks[0].tokens.size() == 3);
  CHECK(blocks[0].tokens[2].lemma == "go");
  CHECK(blocks[0].tokens[2].form == "Go");
  CHECK(blocks[0].tokens[0].head == 3);
}

TEST_CASE("two roots are rejected as a single-root violation") {
  std::vector<Token> toks(2);
  toks[0] = {1, "a", "a", "X", "_", 0, "root"};
  toks[1] = {2, "b", "b", "X", "_", 0, "root"};
  CHECK_THROWS_WITH_AS(validate_tokens(toks, "t"), doctest::Contains("single-root"), IngestError);
  toks[1].head = 2;
  CHECK_THROWS_AS(validate_tokens(toks, "t"), IngestError);
  toks[1].head = 5;
  CHECK_THROWS_AS(validate_tokens(toks, "t"), IngestError);
  toks[1].head = 1;
  CHECK_NOTHROW(validate_tokens(toks, "t"));
}

TEST_CASE("heads forming a cycle are rejected") {
  std::vector<Token> toks(3);
  toks[0] = {1, "a", "a", "X", "_", 0, "root"};
  toks[1] = {2, "b", "b", "X", "_", 3, "dep"};
  toks[2] = {3, "c", "c", "X", "_", 2, "dep"};
  CHECK_THROWS_WITH_AS(validate_tokens(toks, "t"), doctest::Contains("cycle"), IngestError);
}

TEST_CASE("two sentences aligned by order") {
  TempDir dir("corpus");
  write(dir / "q.tsv", std::string(kHeader) + "Q1\thow did david carradine die\tD\tT\tS1\tdavid carradine died\t1\n");
  write(dir / "p.conllu",
        "1\thow\thow\tADV\t_\t_\t5\tadvmod\t_\t_\n"
        "2\tdid\tdo\tAUX\t_\t_\t5\taux\t_\t_\n"
        "3\tdavid\tdavid\tPROPN\t_\t_\t4\tcompound\t_\t_\n"
        "4\tcarradine\tcarradine\tPROPN\t_\t_\t5\tnsubj\t_\t_\n"
        "5\tdie\tdie\tVERB\t_\t_\t0\troot\t_\t_\n"
        "\n"
        "1\tdavid\tdavid\tPROPN\t_\t_\t2\tcompound\t_\t_\n"
        "2\tcarradine\tcarradine\tPROPN\t_\t_\t3\tnsubj\t_\t_\n"
        "3\tdied\tdie\tVERB\t_\t_\t0\troot\t_\t_\n");
  auto groups = attach_parses(load_wikiqa(dir / "q.tsv"), dir / "p.conllu");
  REQUIRE(groups[0].question.tokens.size() == 5);
  REQUIRE(groups[0].candidates[0].sentence.tokens.size() == 3);
  const auto& died = groups[0].candidates[0].sentence.tokens[2];
  CHECK(died.lemma == "die");
  CHECK(died.head == 0);
  CHECK(groups[0].candidates[0].sentence.tokens[0].head == 2);
  CHECK(groups[0].candidates[0].sentence.tokens[0].deprel == "compound");
}

TEST_CASE("positional alignment reports missing and surplus blocks") {
  TempDir dir("corpus");
  write(dir / "q.tsv", std::string(kHeader) + "Q1\ta\tD\tT\tS1\tb\t1\nQ1\ta\tD\tT\tS2\tc\t0\n");
  const char* block = "1\tx\tx\tX\t_\t_\t0\troot\t_\t_\n\n";
  write(dir / "two.conllu", std::string(block) + block);
  CHECK_THROWS_WITH_AS(attach_parses(load_wikiqa(dir / "q.tsv"), dir / "two.conllu"),
                       doctest::Contains("S2"), IngestError);
  write(dir / "four.conllu", std::string(block) + block + block + block);
  CHECK_THROWS_AS(attach_parses(load_wikiqa(dir / "q.tsv"), dir / "four.conllu"), IngestError);
}

TEST_CASE("index file alignment and its errors") {
  TempDir dir("corpus");
  write(dir / "q.tsv", std::string(kHeader) + "Q1\ta\tD\tT\tS1\tb\t1\n");
  write(dir / "p.conllu",
        "# sent_id = x\n1\tb\tb\tX\t_\t_\t0\troot\t_\t_\n\n"
        "# sent_id = y\n1\ta\ta\tX\t_\t_\t0\troot\t_\t_\n\n");
  write(dir / "ok.idx", "x\tS1\ny\tQ1\n");
  auto groups = attach_parses(load_wikiqa(dir / "q.tsv"), dir / "p.conllu", dir / "ok.idx");
  CHECK(groups[0].question.tokens[0].lemma == "a");
  CHECK(groups[0].candidates[0].sentence.tokens[0].lemma == "b");

  write(dir / "missing.idx", "y\tQ1\n");
  CHECK_THROWS_WITH_AS(attach_parses(load_wikiqa(dir / "q.tsv"), dir / "p.conllu", dir / "missing.idx"),
                       doctest::Contains("S1"), IngestError);
  write(dir / "dup.idx", "x\tS1\nx\tQ1\n");
  CHECK_THROWS_WITH_AS(attach_parses(load_wikiqa(dir / "q.tsv"), dir / "p.conllu", dir / "dup.idx"),
                       doctest::Contains("duplicate"), IngestError);
  write(dir / "dup2.idx", "x\tS1\ny\tS1\n");
  CHECK_THROWS_AS(attach_parses(load_wikiqa(dir / "q.tsv"), dir / "p.conllu", dir / "dup2.idx"),
                  IngestError);
  write(dir / "unknown.idx", "z\tS1\n");
  CHECK_THROWS_AS(attach_parses(load_wikiqa(dir / "q.tsv"), dir / "p.conllu", dir / "unknown.idx"),
                  IngestError);
}

TEST_CASE("score files") {
  TempDir dir("corpus");
  write(dir / "one.tsv", "Q1\tA1\t0.73\n");
  auto one = load_scores(dir / "one.tsv");
  CHECK(one.find("Q1", "A1").value() == 0.73);
  CHECK_FALSE(one.find("Q1", "A2").has_value());

  write(dir / "dup.tsv", "Q1\tA1\t0.2\nQ1\tA1\t0.9\n");
  auto dup = load_scores(dir / "dup.tsv");
  CHECK(dup.find("Q1", "A1").value() == 0.9);
  CHECK(dup.duplicate_warnings == 1);

  write(dir / "five.tsv", "Q1\tA1\t0.1\nQ1\tA2\t0.2\nQ1\tA3\t0.3\nQ2\tA1\t0.4\nQ2\tB\t-1e-3\n");
  CHECK(load_scores(dir / "five.tsv").scores.size() == 5);

  write(dir / "bad.tsv", "Q1\tA1\t0.1\nQ1\tA2\tabc\n");
  CHECK_THROWS_WITH_AS(load_scores(dir / "bad.tsv"), doctest::Contains("bad.tsv:2"), IngestError);
  write(dir / "nan.tsv", "Q1\tA1\tnan\n");
  CHECK_THROWS_AS(load_scores(dir / "nan.tsv"), IngestError);
}

}  // TEST_SUITE
