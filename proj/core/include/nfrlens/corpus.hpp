#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nfrlens/taxonomy.hpp"

namespace nfrlens {

// Half-open byte range [start, end) into a document's UTF-8 raw text.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - start; }
  friend bool operator==(const Span&, const Span&) = default;
};

struct Statement {
  std::string id;
  std::string doc_id;
  std::string text;  // always raw_text.substr(span)
  Span span;
  std::optional<LabelSet> gold;  // absent for unlabeled annotation targets

  friend bool operator==(const Statement&, const Statement&) = default;
};

struct PolicyDocument {
  std::string id;
  std::string app_name;
  std::string domain_category;
  std::string source_url;
  std::string raw_text;
  std::vector<Statement> statements;  // sorted by span.start, non-overlapping

  friend bool operator==(const PolicyDocument&, const PolicyDocument&) = default;
};

struct Corpus {
  std::vector<PolicyDocument> documents;

  std::size_t statement_count() const;
  friend bool operator==(const Corpus&, const Corpus&) = default;
};

// JSONL corpus I/O. One document per line; blank lines are skipped.
// Throws Error with kMalformedRecord, kUnknownLabel, kDuplicateId,
// kSpanOutOfBounds (or kIo when the file cannot be opened).
Corpus load_corpus(const std::filesystem::path& path);
Corpus parse_corpus(std::istream& in);
Corpus parse_corpus(std::string_view jsonl);
std::string serialize_corpus(const Corpus& corpus);

// Builds a document from plain text, using segment() for statement spans.
// Statement ids are "<doc_id>-<n>" with n starting at 1.
PolicyDocument document_from_text(std::string id, std::string raw_text);

// Splits policy text into statement spans.
//
// A statement ends at '.', '!', '?' or ';' when followed by whitespace and a
// capital letter, or by end of text. A line break also ends a statement when
// the next line (after an optional bullet marker such as "-", "*", "•" or
// "1.") starts with a capital letter. Periods closing one of the known
// abbreviations (e.g. "e.g.", "i.e.", "etc.", "Inc.", "U.S.") never split.
// Returned spans are trimmed of surrounding whitespace and bullet markers,
// sorted and non-overlapping; whitespace-only pieces are dropped.
std::vector<Span> segment(std::string_view raw_text);

// Abbreviations that never terminate a statement.
const std::vector<std::string_view>& segment_abbreviations();

// Readability.
struct TextCounts {
  std::size_t sentences = 0;
  std::size_t words = 0;
  std::size_t syllables = 0;
};

// Vowel-group syllable heuristic: count runs of a/e/i/o/u/y, drop one for a
// silent terminal 'e' (but not "-le"), never below one.
std::size_t count_syllables(std::string_view word);

// Words are maximal runs of letters (with inner apostrophes) containing at
// least one ASCII letter. Sentences end at '.', '!' or '?' runs that are not
// abbreviations; trailing text without a terminator counts as a sentence.
TextCounts count_text(std::string_view text);

// 206.835 - 1.015 (words/sentences) - 84.6 (syllables/words), unclamped.
// Throws kNoWords / kNoSentences.
double flesch_reading_ease(std::string_view text);

struct CorpusStats {
  std::size_t n_documents = 0;
  std::size_t n_statements = 0;
  std::size_t n_labeled_statements = 0;
  std::size_t n_multi_label_statements = 0;
  double avg_words_per_policy = 0.0;
  std::array<std::size_t, kNumLabels> label_histogram{};
  double multi_label_fraction = 0.0;
  double avg_fre = 0.0;
  // Set when averages have no defined value (no documents, no labeled
  // statements or no readable document); the corresponding fields are 0.
  bool undefined = false;
};

CorpusStats corpus_stats(const Corpus& corpus);
std::string corpus_stats_json(const CorpusStats& stats);
std::string corpus_stats_table(const CorpusStats& stats);

}  // namespace nfrlens
