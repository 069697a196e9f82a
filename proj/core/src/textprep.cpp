#include "nfrlens/textprep.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>

#include "nfrlens/error.hpp"
#include "nfrlens/hash.hpp"

namespace nfrlens {

// Defined in the generated stopwords_data.cpp.
extern const char* const kBundledStopwords;

namespace {

bool is_ascii_alnum(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}
bool is_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}
bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}
bool has_vowel(std::string_view s) { return std::any_of(s.begin(), s.end(), is_vowel); }
bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}
bool starts_with_ci(std::string_view s, std::size_t pos, std::string_view prefix) {
  if (pos + prefix.size() > s.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    char c = s[pos + i];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if (c != prefix[i]) return false;
  }
  return true;
}

// Irregular forms and words the suffix rules would mangle. Values are
// themselves fixed points of the rules.
const std::unordered_map<std::string_view, std::string_view>& exceptions() {
  static const std::unordered_map<std::string_view, std::string_view> kTable = {
      // fixed points
      {"data", "data"}, {"news", "news"}, {"series", "series"}, {"species", "species"},
      {"always", "always"}, {"perhaps", "perhaps"}, {"analytics", "analytics"},
      {"during", "during"}, {"morning", "morning"}, {"evening", "evening"},
      {"nothing", "nothing"}, {"something", "something"}, {"anything", "anything"},
      {"everything", "everything"}, {"thing", "thing"}, {"being", "being"},
      {"bus", "bus"}, {"gas", "gas"}, {"bias", "bias"}, {"alias", "alias"},
      {"status", "status"}, {"canvas", "canvas"}, {"atlas", "atlas"}, {"lens", "lens"},
      {"sms", "sms"}, {"ios", "ios"}, {"whereas", "whereas"}, {"hence", "hence"},
      {"need", "need"}, {"speed", "speed"}, {"feed", "feed"}, {"seed", "seed"},
      {"proceed", "proceed"}, {"exceed", "exceed"}, {"succeed", "succeed"},
      {"indeed", "indeed"}, {"bed", "bed"}, {"red", "red"}, {"embed", "embed"},
      {"hundred", "hundred"}, {"kindred", "kindred"}, {"sacred", "sacred"},
      {"naked", "naked"}, {"wicked", "wicked"}, {"ring", "ring"}, {"king", "king"},
      {"spring", "spring"}, {"string", "string"}, {"bring", "bring"}, {"ceiling", "ceiling"},
      // irregular plurals
      {"children", "child"}, {"people", "person"}, {"men", "man"}, {"women", "woman"},
      {"feet", "foot"}, {"teeth", "tooth"}, {"mice", "mouse"}, {"analyses", "analysis"},
      {"bases", "basis"}, {"criteria", "criterion"}, {"phenomena", "phenomenon"},
      {"cookies", "cookie"}, {"movies", "movie"}, {"statuses", "status"},
      {"aliases", "alias"}, {"buses", "bus"}, {"biases", "bias"}, {"lenses", "lens"},
      {"gases", "gas"}, {"indices", "index"}, {"appendices", "appendix"},
      // irregular and e-final verb forms
      {"shared", "share"}, {"sharing", "share"}, {"stored", "store"}, {"storing", "store"},
      {"created", "create"}, {"creating", "create"}, {"prepared", "prepare"},
      {"preparing", "prepare"}, {"compared", "compare"}, {"comparing", "compare"},
      {"declared", "declare"}, {"ignored", "ignore"}, {"ignoring", "ignore"},
      {"restored", "restore"}, {"explored", "explore"}, {"scored", "score"},
      {"agreed", "agree"}, {"agreeing", "agree"}, {"made", "make"}, {"making", "make"},
      {"having", "have"}, {"had", "have"}, {"giving", "give"}, {"gave", "give"},
      {"given", "give"}, {"took", "take"}, {"taken", "take"}, {"taking", "take"},
      {"kept", "keep"}, {"sent", "send"}, {"bought", "buy"}, {"paid", "pay"},
      {"told", "tell"}, {"sold", "sell"}, {"held", "hold"}, {"left", "leave"},
      {"found", "find"}, {"got", "get"}, {"gotten", "get"}, {"came", "come"},
      {"coming", "come"}, {"became", "become"}, {"becoming", "become"}, {"went", "go"},
      {"gone", "go"}, {"goes", "go"}, {"saw", "see"}, {"seen", "see"}, {"known", "know"},
      {"knew", "know"}, {"shown", "show"}, {"chosen", "choose"}, {"chose", "choose"},
      {"written", "write"}, {"wrote", "write"}, {"writing", "write"}, {"driven", "drive"},
      {"drove", "drive"}, {"driving", "drive"}, {"ran", "run"}, {"met", "meet"},
      {"built", "build"}, {"spent", "spend"}, {"lost", "lose"}, {"led", "lead"},
      {"read", "read"}, {"said", "say"}, {"brought", "bring"}, {"thought", "think"},
      {"provided", "provide"}, {"providing", "provide"}, {"included", "include"},
      {"including", "include"}, {"decided", "decide"}, {"guided", "guide"},
      {"ride", "ride"}, {"riding", "ride"}, {"rode", "ride"}, {"hosted", "host"},
      {"focused", "focus"}, {"focusing", "focus"}, {"treated", "treat"}, {"used", "use"},
      {"using", "use"}, {"going", "go"}, {"typed", "type"}, {"typing", "type"},
      {"controlled", "control"}, {"controlling", "control"}, {"cancelled", "cancel"},
      {"labelled", "label"}, {"modelled", "model"}, {"travelled", "travel"},
      {"nowadays", "nowadays"}, {"sometimes", "sometimes"}, {"oftentimes", "oftentimes"},
      {"visited", "visit"}, {"visiting", "visit"}, {"opened", "open"}, {"happened", "happen"},
  };
  return kTable;
}

bool undoubles(const std::string& stem) {
  if (stem.size() < 4) return false;
  const char a = stem[stem.size() - 1];
  const char b = stem[stem.size() - 2];
  if (a != b || is_vowel(a)) return false;
  return a != 'l' && a != 's' && a != 'z' && a != 'f';
}

bool wants_silent_e(const std::string& stem) {
  if (stem.size() < 3) return false;
  const char last = stem.back();
  const char prev = stem[stem.size() - 2];
  const char before = stem[stem.size() - 3];
  if (prev == last) return false;  // doubled consonant
  if (ends_with(stem, "at")) return before != 'e' && before != 'o';  // "treat", "float"
  if (ends_with(stem, "iz") || ends_with(stem, "ir") || ends_with(stem, "ur") ||
      ends_with(stem, "yl")) {
    return true;
  }
  // handl-e, sampl-e, bundl-e; but curl, howl, feel
  if (last == 'l') return !is_vowel(prev) && prev != 'r' && prev != 'w';
  if (last == 'g') {
    // chang-e, challeng-e, but belong, hang
    if (prev == 'n') return stem.size() > 4 && (before == 'a' || before == 'e');
    return true;
  }
  if (last == 'c' || last == 'v' || last == 'z' || last == 's') return true;
  // consonant, single vowel, then one of these: describ-e, cod-e, brak-e, consum-e
  if (!is_vowel(prev) || is_vowel(before)) return false;
  switch (last) {
    case 'b':
    case 'd':
    case 'k':
    case 'm':
      return true;
    case 'n':
      return prev == 'i' || prev == 'u';
    case 't':
      return prev == 'o' || prev == 'u' || (prev == 'e' && (before == 'l' || before == 'p'));
    default:
      return false;
  }
}

std::string strip_verb_suffix(const std::string& w, std::size_t suffix_len) {
  std::string stem = w.substr(0, w.size() - suffix_len);
  if (stem.size() < 3 || !has_vowel(stem)) return w;
  if (undoubles(stem)) {
    stem.pop_back();
    return stem;
  }
  if (wants_silent_e(stem)) stem.push_back('e');
  return stem;
}

std::string lemmatize_once(const std::string& w) {
  if (auto it = exceptions().find(w); it != exceptions().end()) {
    return std::string(it->second);
  }
  if (w.size() > 4 && ends_with(w, "ies")) return w.substr(0, w.size() - 3) + "y";
  if (w.size() > 4 && ends_with(w, "ied")) return w.substr(0, w.size() - 3) + "y";
  if (ends_with(w, "s")) {
    if (w.size() <= 3 || ends_with(w, "ss") || ends_with(w, "us") || ends_with(w, "is")) {
      return w;
    }
    if (ends_with(w, "es")) {
      std::string stem = w.substr(0, w.size() - 2);
      if (ends_with(stem, "ss") || ends_with(stem, "x") || ends_with(stem, "zz") ||
          ends_with(stem, "ch") || ends_with(stem, "sh")) {
        return stem;
      }
    }
    return w.substr(0, w.size() - 1);
  }
  if (ends_with(w, "eed")) return w;
  if (ends_with(w, "ed") && w.size() > 4) return strip_verb_suffix(w, 2);
  if (ends_with(w, "ing") && w.size() > 5) return strip_verb_suffix(w, 3);
  return w;
}

}  // namespace

std::string_view bundled_stopwords_text() { return kBundledStopwords; }

StopWordList StopWordList::parse(std::string_view contents) {
  StopWordList list;
  std::istringstream in{std::string(contents)};
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && is_space(static_cast<unsigned char>(line.back()))) line.pop_back();
    std::size_t b = 0;
    while (b < line.size() && is_space(static_cast<unsigned char>(line[b]))) ++b;
    line.erase(0, b);
    if (line.empty() || line[0] == '#') continue;
    list.words_.insert(line);
  }
  return list;
}

StopWordList StopWordList::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open stop-word list " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  StopWordList list = parse(buf.str());
  if (list.size() == 0) fail(ErrorKind::kEmptyFile, path.string());
  return list;
}

const StopWordList& StopWordList::english() {
  static const StopWordList kEnglish = parse(kBundledStopwords);
  return kEnglish;
}

bool StopWordList::contains(std::string_view word) const {
  return words_.find(std::string(word)) != words_.end();
}

std::string StopWordList::fingerprint() const {
  std::vector<std::string_view> sorted(words_.begin(), words_.end());
  std::sort(sorted.begin(), sorted.end());
  std::string joined;
  for (auto w : sorted) {
    joined += w;
    joined += '\n';
  }
  return fnv1a64_hex(joined);
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (is_ascii_alnum(c) || c >= 0x80) {
      cur.push_back(ch);
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

std::string strip_urls(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t prefix = 0;
    if (starts_with_ci(text, i, "https://")) {
      prefix = 8;
    } else if (starts_with_ci(text, i, "http://")) {
      prefix = 7;
    } else if (starts_with_ci(text, i, "www.")) {
      prefix = 4;
    }
    if (prefix > 0 && i + prefix < text.size() &&
        !is_space(static_cast<unsigned char>(text[i + prefix]))) {
      std::size_t j = i + prefix;
      while (j < text.size() && !is_space(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back(' ');
      i = j;
      continue;
    }
    out.push_back(text[i]);
    ++i;
  }
  return out;
}

TokenSequence preprocess(std::string_view text, const StopWordList& stops) {
  std::string cleaned = strip_urls(text);
  for (char& c : cleaned) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  TokenSequence out;
  for (std::string& tok : tokenize(cleaned)) {
    const bool clean = std::all_of(tok.begin(), tok.end(), [](char c) { return c >= 'a' && c <= 'z'; });
    if (!clean || stops.contains(tok)) continue;
    std::string lemma = lemmatize(tok);
    if (lemma.empty() || stops.contains(lemma)) continue;
    out.push_back(std::move(lemma));
  }
  return out;
}

std::string lemmatize(std::string_view token) {
  std::string w(token);
  for (int guard = 0; guard < 8; ++guard) {
    std::string next = lemmatize_once(w);
    if (next == w) break;
    w = std::move(next);
  }
  return w;
}

}  // namespace nfrlens
