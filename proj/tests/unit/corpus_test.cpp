#include <algorithm>
#include <cctype>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "nfrlens/corpus.hpp"
#include "nfrlens/error.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

namespace nfrlens {
namespace {

ErrorKind kind_of(std::string_view jsonl) {
  try {
    parse_corpus(jsonl);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for " << jsonl;
  return ErrorKind::kIo;
}

constexpr std::string_view kMinimal =
    R"({"id":"d1","app_name":"Ride","domain_category":"Transportation","source_url":"",)"
    R"("raw_text":"We store your name.","statements":[{"id":"s1","start":0,"end":19,"gold":["Usability"]}]})";

TEST(LoadCorpus, EmptyInputGivesEmptyCorpus) {
  EXPECT_TRUE(parse_corpus("").documents.empty());
  EXPECT_TRUE(parse_corpus("\n\n").documents.empty());
}

TEST(LoadCorpus, MinimalRecord) {
  const Corpus c = parse_corpus(kMinimal);
  ASSERT_EQ(c.documents.size(), 1u);
  const auto& s = c.documents[0].statements.at(0);
  EXPECT_EQ(s.text, "We store your name.");
  EXPECT_EQ(s.doc_id, "d1");
  EXPECT_EQ(*s.gold, LabelSet{NfrLabel::Usability});
  const auto st = corpus_stats(c);
  EXPECT_EQ(st.label_histogram[label_index(NfrLabel::Usability)], 1u);
  EXPECT_EQ(st.n_statements, 1u);
}

TEST(LoadCorpus, UnknownLabelIsNamed) {
  std::string bad(kMinimal);
  bad.replace(bad.find("Usability"), 9, "Speed");
  try {
    parse_corpus(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUnknownLabel);
    EXPECT_NE(std::string(e.what()).find("Speed"), std::string::npos);
  }
}

TEST(LoadCorpus, ValidationErrors) {
  EXPECT_EQ(kind_of("{not json"), ErrorKind::kMalformedRecord);
  EXPECT_EQ(kind_of(R"({"id":"d","raw_text":"abc"})"), ErrorKind::kMalformedRecord);
  EXPECT_EQ(kind_of(R"({"id":"d","raw_text":"abc","statements":[{"id":"s","start":0,"end":9}]})"),
            ErrorKind::kSpanOutOfBounds);
  EXPECT_EQ(kind_of(R"({"id":"d","raw_text":"abc","statements":[{"id":"s","start":2,"end":2}]})"),
            ErrorKind::kSpanOutOfBounds);
  EXPECT_EQ(kind_of(R"({"id":"d","raw_text":"abcdef","statements":[{"id":"s","start":0,"end":4},)"
                    R"({"id":"t","start":2,"end":6}]})"),
            ErrorKind::kMalformedRecord);
  EXPECT_EQ(kind_of(R"({"id":"d","raw_text":"abc","statements":[{"id":"s","start":0,"end":3,"gold":[]}]})"),
            ErrorKind::kMalformedRecord);
  EXPECT_EQ(kind_of(R"({"id":"d","raw_text":"abc","statements":[]})"
                    "\n"
                    R"({"id":"d","raw_text":"xyz","statements":[]})"),
            ErrorKind::kDuplicateId);
  EXPECT_EQ(kind_of(R"({"id":"d","raw_text":"abcdef","statements":[{"id":"s","start":0,"end":2},)"
                    R"({"id":"s","start":3,"end":6}]})"),
            ErrorKind::kDuplicateId);
}

TEST(LoadCorpus, MalformedRecordCarriesLineNumber) {
  const std::string text = std::string(kMinimal) + "\n\n{broken";
  try {
    parse_corpus(text);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kMalformedRecord);
    EXPECT_NE(std::string(e.what()).find("3"), std::string::npos) << e.what();
  }
}

TEST(LoadCorpus, MissingFileIsIoError) {
  try {
    load_corpus("/nonexistent/corpus.jsonl");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIo);
  }
}

TEST(LoadCorpus, UnlabeledStatementsAllowed) {
  const Corpus c = parse_corpus(
      R"({"id":"d","raw_text":"abc","statements":[{"id":"s","start":0,"end":3,"gold":null}]})");
  EXPECT_FALSE(c.documents[0].statements[0].gold.has_value());
}

TEST(LoadCorpus, SerializeRoundTrip) {
  testing::SyntheticOptions opt;
  opt.per_label = 5;
  opt.documents = 4;
  Corpus c = testing::synthetic_corpus(opt);
  c.documents[1].statements[0].gold.reset();
  c.documents[2].raw_text += " Tr\xc3\xa8s \"quoted\" \\ text.";
  EXPECT_EQ(parse_corpus(serialize_corpus(c)), c);
}

TEST(Segment, TerminalPeriodSplit) {
  const std::string text = "We collect your location. We share it with partners.";
  const auto spans = segment(text);
  ASSERT_EQ(spans.size(), 2u);
  EXPECT_EQ(text.substr(spans[0].start, spans[0].length()), "We collect your location.");
  EXPECT_EQ(text.substr(spans[1].start, spans[1].length()), "We share it with partners.");
}

TEST(Segment, EmptyText) {
  EXPECT_TRUE(segment("").empty());
  EXPECT_TRUE(segment("   \n\t ").empty());
}

TEST(Segment, AbbreviationDoesNotSplit) {
  const std::string text = "We use data (e.g. name) to verify you. We log visits.";
  const auto spans = segment(text);
  ASSERT_EQ(spans.size(), 2u);
  EXPECT_EQ(text.substr(spans[0].start, spans[0].length()),
            "We use data (e.g. name) to verify you.");
}

TEST(Segment, OtherTerminatorsAndBullets) {
  const std::string text =
      "Do we sell data? Never; Partners may see it!\n- Location history\n* Payment details\n"
      "1. Device identifiers";
  const auto spans = segment(text);
  std::vector<std::string> got;
  for (auto s : spans) got.push_back(text.substr(s.start, s.length()));
  const std::vector<std::string> want = {"Do we sell data?", "Never;", "Partners may see it!",
                                         "Location history", "Payment details",
                                         "Device identifiers"};
  EXPECT_EQ(got, want);
}

TEST(Segment, LowercaseContinuationStaysTogether) {
  const std::string text = "We keep logs. and we delete them\nafter a year.";
  EXPECT_EQ(segment(text).size(), 1u);
  EXPECT_EQ(segment("Acme Inc. provides rides. Ask U.S. support.").size(), 2u);
}

TEST(Segment, PropertySpansOrderedInBoundsAndCoverContent) {
  std::mt19937_64 rng(11);
  const std::string alphabet = "abcXYZ .!?;\n\t-*e.g,";
  for (int iter = 0; iter < 500; ++iter) {
    std::string text;
    const std::size_t len = rng() % 120;
    for (std::size_t i = 0; i < len; ++i) text += alphabet[rng() % alphabet.size()];
    const auto spans = segment(text);
    std::size_t cursor = 0;
    std::vector<bool> inside(text.size(), false);
    for (auto s : spans) {
      ASSERT_LT(s.start, s.end);
      ASSERT_LE(s.end, text.size());
      ASSERT_GE(s.start, cursor);
      cursor = s.end;
      const std::string piece = text.substr(s.start, s.length());
      ASSERT_TRUE(std::any_of(piece.begin(), piece.end(),
                              [](unsigned char c) { return !std::isspace(c); }));
      for (std::size_t i = s.start; i < s.end; ++i) inside[i] = true;
    }
    // Letters are content; the only ones a span may leave out are list
    // markers like "c. " opening a line.
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (inside[i] || !std::isalpha(static_cast<unsigned char>(text[i]))) continue;
      std::size_t j = i;
      while (j > 0 && (text[j - 1] == ' ' || text[j - 1] == '\t')) --j;
      const bool line_start = j == 0 || text[j - 1] == '\n';
      const bool marker = std::islower(static_cast<unsigned char>(text[i])) &&
                          i + 2 < text.size() && (text[i + 1] == '.' || text[i + 1] == ')') &&
                          (text[i + 2] == ' ' || text[i + 2] == '\t');
      ASSERT_TRUE(line_start && marker) << "letter at " << i << " dropped from: " << text;
    }
  }
}

TEST(DocumentFromText, BuildsStatementsWithIds) {
  const PolicyDocument d = document_from_text("ride", "We collect data. We share it.");
  ASSERT_EQ(d.statements.size(), 2u);
  EXPECT_EQ(d.statements[0].id, "ride-1");
  EXPECT_EQ(d.statements[1].id, "ride-2");
  EXPECT_EQ(d.statements[1].text, "We share it.");
  EXPECT_FALSE(d.statements[0].gold.has_value());
}

TEST(Readability, SyllableHeuristic) {
  EXPECT_EQ(count_syllables("cat"), 1u);
  EXPECT_EQ(count_syllables("the"), 1u);
  EXPECT_EQ(count_syllables("make"), 1u);
  EXPECT_EQ(count_syllables("table"), 2u);
  EXPECT_EQ(count_syllables("privacy"), 3u);
  EXPECT_EQ(count_syllables("rhythm"), 1u);
  EXPECT_EQ(count_syllables("information"), 4u);
}

TEST(Readability, CatSatOnTheMat) {
  const double frozen = 116.145;
  EXPECT_NEAR(oracle::flesch(6, 1, 6), frozen, 1e-9);
  const TextCounts c = count_text("The cat sat on the mat.");
  EXPECT_EQ(c.sentences, 1u);
  EXPECT_EQ(c.words, 6u);
  EXPECT_EQ(c.syllables, 6u);
  EXPECT_NEAR(flesch_reading_ease("The cat sat on the mat."), frozen, 1e-3);
}

TEST(Readability, Errors) {
  try {
    flesch_reading_ease("");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNoWords);
  }
  EXPECT_THROW(flesch_reading_ease("... !!! 42"), Error);
}

TEST(Readability, UnterminatedTextIsOneSentence) {
  EXPECT_EQ(count_text("we collect data").sentences, 1u);
  EXPECT_EQ(count_text("One. Two! Three? e.g. four").sentences, 4u);
}

TEST(Readability, DecreasingInSentenceLengthAndSyllables) {
  const double base = flesch_reading_ease("The cat sat on the mat.");
  const double longer = flesch_reading_ease("The cat sat on the mat all day.");
  const double heavier = flesch_reading_ease("The cat sat on the carpet.");
  EXPECT_LT(longer, base);
  EXPECT_LT(heavier, base);
  EXPECT_NEAR(heavier, oracle::flesch(6, 1, 7), 1e-9);
}

TEST(CorpusStats, MultiLabelFractionAndHistogram) {
  const Corpus c = parse_corpus(
      R"({"id":"d","raw_text":"A b. C d.","statements":[)"
      R"({"id":"s1","start":0,"end":4,"gold":["Security"]},)"
      R"({"id":"s2","start":5,"end":9,"gold":["Security","Legal"]}]})");
  const CorpusStats st = corpus_stats(c);
  EXPECT_DOUBLE_EQ(st.multi_label_fraction, 0.5);
  EXPECT_EQ(st.label_histogram[label_index(NfrLabel::Security)], 2u);
  EXPECT_EQ(st.label_histogram[label_index(NfrLabel::Legal)], 1u);
  EXPECT_EQ(st.n_multi_label_statements, 1u);
  EXPECT_FALSE(st.undefined);
}

TEST(CorpusStats, EmptyCorpusIsUndefinedNotAnError) {
  const CorpusStats st = corpus_stats(Corpus{});
  EXPECT_TRUE(st.undefined);
  EXPECT_EQ(st.n_documents, 0u);
  EXPECT_EQ(st.avg_fre, 0.0);
  EXPECT_EQ(st.multi_label_fraction, 0.0);
  EXPECT_NE(corpus_stats_json(st).find("\"undefined\": true"), std::string::npos);
}

TEST(CorpusStats, HistogramTotalEqualsGoldSizes) {
  const Corpus c = testing::synthetic_corpus();
  const CorpusStats st = corpus_stats(c);
  std::size_t total = 0, gold = 0;
  for (auto h : st.label_histogram) total += h;
  for (const auto& d : c.documents) {
    for (const auto& s : d.statements) gold += s.gold->size();
  }
  EXPECT_EQ(total, gold);
  EXPECT_GE(total, st.n_labeled_statements);
}

}  // namespace
}  // namespace nfrlens
