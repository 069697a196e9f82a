#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace nfrlens {

// Lowercase, ASCII-alphabetic, stop-word free tokens ready for vectorizing.
using TokenSequence = std::vector<std::string>;

class StopWordList {
 public:
  // The English list shipped in core/data/stopwords_en.txt, compiled in.
  static const StopWordList& english();

  // One lowercase word per line; blank lines and '#' comments ignored.
  static StopWordList parse(std::string_view contents);
  static StopWordList load(const std::filesystem::path& path);

  bool contains(std::string_view word) const;
  std::size_t size() const { return words_.size(); }
  // Fingerprint of the sorted word list, recorded in model bundles.
  std::string fingerprint() const;

 private:
  std::unordered_set<std::string> words_;
};

// Raw file contents the english() list was built from.
std::string_view bundled_stopwords_text();

// Splits on every character that is not an ASCII letter, ASCII digit or a
// non-ASCII byte. Casing is preserved.
std::vector<std::string> tokenize(std::string_view text);

// Removes http(s):// and www. URLs (up to the next whitespace), replacing
// each with a single space.
std::string strip_urls(std::string_view text);

// Full pipeline: strip URLs, lowercase, tokenize, drop tokens with digits or
// non-ASCII bytes, drop stop words, lemmatize. A lemma that itself lands on
// the stop list is dropped as well.
TokenSequence preprocess(std::string_view text, const StopWordList& stops);

// Rule-based English lemmatizer.
//
// Rules, applied until the word stops changing:
//   exception table       irregular forms and fixed points ("data",
//                         "children" -> "child", "shared" -> "share")
//   -ies  -> -y           "policies" -> "policy" (word longer than 4)
//   -es   -> drop "es"    when the stem ends in ss, x, zz, ch or sh
//   -s    -> drop "s"     unless the word ends in ss, us, is or is <= 3 long
//   -ied  -> -y           "verified" -> "verify"
//   -ed   -> drop "ed"    stem must keep a vowel and >= 3 letters; "-eed"
//                         words are left alone
//   -ing  -> drop "ing"   same stem guard
// After -ed/-ing removal a doubled final consonant is undoubled
// ("shipped" -> "ship", except ll/ss/zz/ff). Otherwise a silent 'e' is
// restored after stems ending in
//   at (not eat/oat), iz, ir, ur, yl, c, s, v, z
//   consonant + l (not rl/wl)         "handled" -> "handle"
//   g, or ang/eng past 4 letters      "changed" -> "change", "belong"
//   consonant + vowel + b/d/k/m       "coded" -> "code", "consumed"
//   consonant + i/u + n               "defined" -> "define"
//   consonant + o/u + t, lete, pete   "noted" -> "note", "deleted"
// Iterating to a fixed point makes the function idempotent.
std::string lemmatize(std::string_view token);

}  // namespace nfrlens
