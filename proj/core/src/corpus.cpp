#include "nfrlens/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "nfrlens/error.hpp"

namespace nfrlens {
namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_terminator(char c) { return c == '.' || c == '!' || c == '?' || c == ';'; }
bool is_closer(char c) {
  return c == '"' || c == '\'' || c == ')' || c == ']';
}

const std::string& require_string(const json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    fail_at_line(ErrorKind::kMalformedRecord, line,
                 std::string("missing or non-string field \"") + key + "\"");
  }
  return it->get_ref<const std::string&>();
}

std::string optional_string(const json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return {};
  if (!it->is_string()) {
    fail_at_line(ErrorKind::kMalformedRecord, line,
                 std::string("field \"") + key + "\" must be a string");
  }
  return it->get<std::string>();
}

std::size_t require_offset(const json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_number_integer()) {
    fail_at_line(ErrorKind::kMalformedRecord, line,
                 std::string("missing or non-integer field \"") + key + "\"");
  }
  if (it->is_number_unsigned()) return it->get<std::size_t>();
  auto v = it->get<long long>();
  if (v < 0) {
    fail_at_line(ErrorKind::kMalformedRecord, line,
                 std::string("negative offset \"") + key + "\"");
  }
  return static_cast<std::size_t>(v);
}

std::optional<LabelSet> parse_gold(const json& stmt, std::size_t line) {
  auto it = stmt.find("gold");
  if (it == stmt.end() || it->is_null()) return std::nullopt;
  if (!it->is_array()) {
    fail_at_line(ErrorKind::kMalformedRecord, line, "\"gold\" must be an array or null");
  }
  if (it->empty()) {
    fail_at_line(ErrorKind::kMalformedRecord, line,
                 "empty \"gold\" array; use null for unlabeled statements");
  }
  LabelSet gold;
  for (const json& name : *it) {
    if (!name.is_string()) {
      fail_at_line(ErrorKind::kMalformedRecord, line, "gold labels must be strings");
    }
    NfrLabel l = parse_label_or_throw(name.get_ref<const std::string&>());
    if (gold.contains(l)) {
      fail_at_line(ErrorKind::kMalformedRecord, line,
                   "duplicate gold label " + name.get<std::string>());
    }
    gold.insert(l);
  }
  return gold;
}

PolicyDocument parse_document(const json& obj, std::size_t line) {
  if (!obj.is_object()) {
    fail_at_line(ErrorKind::kMalformedRecord, line, "record is not a JSON object");
  }
  PolicyDocument doc;
  doc.id = require_string(obj, "id", line);
  doc.app_name = optional_string(obj, "app_name", line);
  doc.domain_category = optional_string(obj, "domain_category", line);
  doc.source_url = optional_string(obj, "source_url", line);
  doc.raw_text = require_string(obj, "raw_text", line);

  auto stmts = obj.find("statements");
  if (stmts == obj.end() || !stmts->is_array()) {
    fail_at_line(ErrorKind::kMalformedRecord, line, "missing \"statements\" array");
  }
  std::size_t prev_end = 0;
  for (const json& s : *stmts) {
    if (!s.is_object()) {
      fail_at_line(ErrorKind::kMalformedRecord, line, "statement is not an object");
    }
    Statement st;
    st.id = require_string(s, "id", line);
    st.doc_id = doc.id;
    st.span.start = require_offset(s, "start", line);
    st.span.end = require_offset(s, "end", line);
    if (st.span.start >= st.span.end || st.span.end > doc.raw_text.size()) {
      fail(ErrorKind::kSpanOutOfBounds,
           st.id + " [" + std::to_string(st.span.start) + ", " +
               std::to_string(st.span.end) + ") in text of length " +
               std::to_string(doc.raw_text.size()));
    }
    if (!doc.statements.empty() && st.span.start < prev_end) {
      fail_at_line(ErrorKind::kMalformedRecord, line,
                   "statement " + st.id + " overlaps or precedes the previous statement");
    }
    prev_end = st.span.end;
    st.text = doc.raw_text.substr(st.span.start, st.span.length());
    st.gold = parse_gold(s, line);
    doc.statements.push_back(std::move(st));
  }
  return doc;
}

// Bullet marker at `p` followed by horizontal whitespace; returns the marker
// length or 0.
std::size_t bullet_length(std::string_view t, std::size_t p) {
  std::size_t len = 0;
  if (p >= t.size()) return 0;
  char c = t[p];
  if (c == '-' || c == '*' || c == '+') {
    len = 1;
  } else if (t.substr(p, 3) == "\xE2\x80\xA2" || t.substr(p, 3) == "\xE2\x96\xAA" ||
             t.substr(p, 3) == "\xE2\x80\x93") {
    len = 3;  // bullet, small square, en dash
  } else if (t.substr(p, 2) == "\xC2\xB7") {
    len = 2;  // middle dot
  } else if (is_digit(c) || (c >= 'a' && c <= 'z')) {
    std::size_t q = p;
    if (is_digit(c)) {
      while (q < t.size() && q - p < 3 && is_digit(t[q])) ++q;
    } else {
      ++q;
    }
    if (q < t.size() && (t[q] == '.' || t[q] == ')')) len = q + 1 - p;
  }
  if (len == 0 || p + len >= t.size()) return 0;
  if (t[p + len] != ' ' && t[p + len] != '\t') return 0;
  return len;
}

bool at_line_start(std::string_view t, std::size_t p) {
  while (p > 0 && (t[p - 1] == ' ' || t[p - 1] == '\t')) --p;
  return p == 0 || t[p - 1] == '\n' || t[p - 1] == '\r';
}

// Position of the first content byte at or after p: skips whitespace and,
// at line starts, bullet markers.
std::size_t skip_to_content(std::string_view t, std::size_t p) {
  for (;;) {
    while (p < t.size() && is_space(t[p])) ++p;
    if (p >= t.size()) return p;
    if (!at_line_start(t, p)) return p;
    std::size_t b = bullet_length(t, p);
    if (b == 0) return p;
    p += b;
  }
}

bool is_abbreviation_at(std::string_view t, std::size_t begin, std::size_t period) {
  std::size_t b = period;
  while (b > begin && !is_space(t[b - 1]) && t[b - 1] != '(' && t[b - 1] != '"' &&
         t[b - 1] != '[') {
    --b;
  }
  std::string_view word = t.substr(b, period + 1 - b);
  const auto& abbrevs = segment_abbreviations();
  return std::find(abbrevs.begin(), abbrevs.end(), word) != abbrevs.end();
}

}  // namespace

std::size_t Corpus::statement_count() const {
  std::size_t n = 0;
  for (const auto& d : documents) n += d.statements.size();
  return n;
}

Corpus parse_corpus(std::istream& in) {
  Corpus corpus;
  std::unordered_set<std::string> doc_ids;
  std::unordered_set<std::string> stmt_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (std::all_of(line.begin(), line.end(), is_space)) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      fail_at_line(ErrorKind::kMalformedRecord, line_no, e.what());
    }
    PolicyDocument doc = parse_document(obj, line_no);
    if (!doc_ids.insert(doc.id).second) fail(ErrorKind::kDuplicateId, doc.id);
    for (const auto& s : doc.statements) {
      if (!stmt_ids.insert(s.id).second) fail(ErrorKind::kDuplicateId, s.id);
    }
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

Corpus parse_corpus(std::string_view jsonl) {
  std::istringstream in{std::string(jsonl)};
  return parse_corpus(in);
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open corpus " + path.string());
  return parse_corpus(in);
}

std::string serialize_corpus(const Corpus& corpus) {
  std::string out;
  for (const auto& doc : corpus.documents) {
    ordered_json j;
    j["id"] = doc.id;
    j["app_name"] = doc.app_name;
    j["domain_category"] = doc.domain_category;
    j["source_url"] = doc.source_url;
    j["raw_text"] = doc.raw_text;
    ordered_json stmts = ordered_json::array();
    for (const auto& s : doc.statements) {
      ordered_json js;
      js["id"] = s.id;
      js["start"] = s.span.start;
      js["end"] = s.span.end;
      if (s.gold) {
        ordered_json g = ordered_json::array();
        for (NfrLabel l : s.gold->labels()) g.push_back(label_name(l));
        js["gold"] = std::move(g);
      } else {
        js["gold"] = nullptr;
      }
      stmts.push_back(std::move(js));
    }
    j["statements"] = std::move(stmts);
    out += j.dump(-1, ' ', false, ordered_json::error_handler_t::strict);
    out += '\n';
  }
  return out;
}

const std::vector<std::string_view>& segment_abbreviations() {
  static const std::vector<std::string_view> kAbbrevs = {
      "e.g.", "i.e.", "etc.", "Inc.", "U.S.", "vs.", "Ltd.", "Co.", "Corp.", "No.",
  };
  return kAbbrevs;
}

std::vector<Span> segment(std::string_view t) {
  std::vector<Span> spans;
  const std::size_t n = t.size();
  std::size_t pos = 0;
  while (pos < n) {
    const std::size_t start = skip_to_content(t, pos);
    if (start >= n) break;
    std::size_t end = n;
    std::size_t next = n;
    std::size_t i = start;
    while (i < n) {
      const char c = t[i];
      if (is_terminator(c)) {
        std::size_t e = i + 1;
        while (e < n && (is_terminator(t[e]) || is_closer(t[e]))) ++e;
        if (c == '.' && e == i + 1 && is_abbreviation_at(t, start, i)) {
          i = e;
          continue;
        }
        if (e == n) {
          end = next = n;
          break;
        }
        if (is_space(t[e])) {
          std::size_t k = skip_to_content(t, e);
          if (k >= n || is_upper(t[k])) {
            end = next = e;
            break;
          }
        }
        i = e;
        continue;
      }
      if (c == '\n') {
        std::size_t k = skip_to_content(t, i + 1);
        if (k < n && is_upper(t[k])) {
          end = next = i;
          break;
        }
      }
      ++i;
    }
    while (end > start && is_space(t[end - 1])) --end;
    if (end > start) spans.push_back({start, end});
    pos = next;
  }
  return spans;
}

PolicyDocument document_from_text(std::string id, std::string raw_text) {
  PolicyDocument doc;
  doc.id = std::move(id);
  doc.app_name = doc.id;
  doc.raw_text = std::move(raw_text);
  std::size_t n = 0;
  for (const Span& sp : segment(doc.raw_text)) {
    Statement s;
    s.id = doc.id + "-" + std::to_string(++n);
    s.doc_id = doc.id;
    s.span = sp;
    s.text = doc.raw_text.substr(sp.start, sp.length());
    doc.statements.push_back(std::move(s));
  }
  return doc;
}

std::size_t count_syllables(std::string_view word) {
  std::string w;
  for (char c : word) {
    if (is_alpha(c)) w.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (w.empty()) return 0;
  auto is_vowel = [](char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
  };
  std::size_t groups = 0;
  bool in_group = false;
  for (char c : w) {
    bool v = is_vowel(c);
    if (v && !in_group) ++groups;
    in_group = v;
  }
  const bool ends_le = w.size() >= 2 && w.compare(w.size() - 2, 2, "le") == 0;
  if (w.back() == 'e' && !ends_le && groups > 0) --groups;
  return std::max<std::size_t>(groups, 1);
}

TextCounts count_text(std::string_view t) {
  TextCounts counts;
  std::size_t words_in_sentence = 0;
  std::size_t sentence_begin = 0;
  std::size_t i = 0;
  const std::size_t n = t.size();
  auto word_char = [](char c) {
    return is_alpha(c) || is_digit(c) || static_cast<unsigned char>(c) >= 0x80;
  };
  while (i < n) {
    const char c = t[i];
    if (word_char(c)) {
      std::size_t j = i;
      bool has_letter = false;
      while (j < n && (word_char(t[j]) ||
                       (t[j] == '\'' && j + 1 < n && is_alpha(t[j + 1]) && j > i))) {
        has_letter |= is_alpha(t[j]);
        ++j;
      }
      if (has_letter) {
        ++counts.words;
        ++words_in_sentence;
        counts.syllables += count_syllables(t.substr(i, j - i));
      }
      i = j;
      continue;
    }
    if (c == '.' || c == '!' || c == '?') {
      std::size_t e = i + 1;
      while (e < n && (t[e] == '.' || t[e] == '!' || t[e] == '?' || is_closer(t[e]))) ++e;
      const bool boundary = e == n || is_space(t[e]);
      const bool abbrev = c == '.' && e == i + 1 && is_abbreviation_at(t, sentence_begin, i);
      if (boundary && !abbrev && words_in_sentence > 0) {
        ++counts.sentences;
        words_in_sentence = 0;
        sentence_begin = e;
      }
      i = e;
      continue;
    }
    ++i;
  }
  if (words_in_sentence > 0) ++counts.sentences;
  return counts;
}

double flesch_reading_ease(std::string_view text) {
  const TextCounts c = count_text(text);
  if (c.words == 0) fail(ErrorKind::kNoWords, "text has no words");
  if (c.sentences == 0) fail(ErrorKind::kNoSentences, "text has no sentences");
  const double words = static_cast<double>(c.words);
  return 206.835 - 1.015 * (words / static_cast<double>(c.sentences)) -
         84.6 * (static_cast<double>(c.syllables) / words);
}

CorpusStats corpus_stats(const Corpus& corpus) {
  CorpusStats st;
  st.n_documents = corpus.documents.size();
  std::size_t total_words = 0;
  double fre_sum = 0.0;
  std::size_t fre_docs = 0;
  for (const auto& doc : corpus.documents) {
    st.n_statements += doc.statements.size();
    const TextCounts c = count_text(doc.raw_text);
    total_words += c.words;
    if (c.words > 0 && c.sentences > 0) {
      fre_sum += flesch_reading_ease(doc.raw_text);
      ++fre_docs;
    }
    for (const auto& s : doc.statements) {
      if (!s.gold) continue;
      ++st.n_labeled_statements;
      if (s.gold->size() > 1) ++st.n_multi_label_statements;
      for (NfrLabel l : s.gold->labels()) ++st.label_histogram[label_index(l)];
    }
  }
  if (st.n_documents > 0) {
    st.avg_words_per_policy =
        static_cast<double>(total_words) / static_cast<double>(st.n_documents);
  }
  if (st.n_labeled_statements > 0) {
    st.multi_label_fraction = static_cast<double>(st.n_multi_label_statements) /
                              static_cast<double>(st.n_labeled_statements);
  }
  if (fre_docs > 0) st.avg_fre = fre_sum / static_cast<double>(fre_docs);
  st.undefined = st.n_documents == 0 || st.n_labeled_statements == 0 || fre_docs == 0;
  return st;
}

std::string corpus_stats_json(const CorpusStats& st) {
  ordered_json j;
  j["n_documents"] = st.n_documents;
  j["n_statements"] = st.n_statements;
  j["n_labeled_statements"] = st.n_labeled_statements;
  j["n_multi_label_statements"] = st.n_multi_label_statements;
  j["avg_words_per_policy"] = st.avg_words_per_policy;
  ordered_json hist = ordered_json::object();
  for (NfrLabel l : kAllLabels) hist[std::string(label_name(l))] = st.label_histogram[label_index(l)];
  j["label_histogram"] = std::move(hist);
  j["multi_label_fraction"] = st.multi_label_fraction;
  j["avg_fre"] = st.avg_fre;
  j["undefined"] = st.undefined;
  return j.dump(2);
}

std::string corpus_stats_table(const CorpusStats& st) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2);
  out << "documents                " << st.n_documents << '\n'
      << "statements               " << st.n_statements << '\n'
      << "labeled statements       " << st.n_labeled_statements << '\n'
      << "multi-label statements   " << st.n_multi_label_statements << " ("
      << 100.0 * st.multi_label_fraction << "%)\n"
      << "avg words per policy     " << st.avg_words_per_policy << '\n'
      << "avg Flesch reading ease  " << st.avg_fre << (st.undefined ? "  (undefined)" : "")
      << '\n'
      << "label histogram\n";
  for (NfrLabel l : kAllLabels) {
    out << "  " << std::left << std::setw(17) << label_name(l) << std::right
        << st.label_histogram[label_index(l)] << '\n';
  }
  return out.str();
}

}  // namespace nfrlens
