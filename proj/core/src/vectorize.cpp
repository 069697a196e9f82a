#include "nfrlens/vectorize.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "nfrlens/error.hpp"
#include "nfrlens/hash.hpp"

namespace nfrlens {

// ---------------------------------------------------------------------------
// FeatureVector

FeatureVector FeatureVector::zeros_sparse(std::size_t dim) {
  FeatureVector v;
  v.kind_ = Kind::kSparse;
  v.dim_ = dim;
  return v;
}

FeatureVector FeatureVector::dense(std::vector<double> values) {
  FeatureVector v;
  v.kind_ = Kind::kDense;
  v.dim_ = values.size();
  v.values_ = std::move(values);
  return v;
}

FeatureVector FeatureVector::sparse(std::size_t dim,
                                    std::vector<std::pair<std::uint32_t, double>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  FeatureVector v = zeros_sparse(dim);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto [idx, val] = entries[i];
    if (idx >= dim) fail(ErrorKind::kInvalidArgument, "sparse index out of range");
    if (i > 0 && entries[i - 1].first == idx) {
      fail(ErrorKind::kInvalidArgument, "repeated sparse index");
    }
    if (val == 0.0) continue;
    v.indices_.push_back(idx);
    v.values_.push_back(val);
  }
  return v;
}

std::size_t FeatureVector::nonzeros() const {
  if (is_sparse()) return values_.size();
  return static_cast<std::size_t>(
      std::count_if(values_.begin(), values_.end(), [](double x) { return x != 0.0; }));
}

double FeatureVector::at(std::size_t i) const {
  if (!is_sparse()) return values_.at(i);
  auto it = std::lower_bound(indices_.begin(), indices_.end(), i);
  if (it == indices_.end() || *it != i) return 0.0;
  return values_[static_cast<std::size_t>(it - indices_.begin())];
}

double FeatureVector::dot(std::span<const double> weights) const {
  if (weights.size() != dim_) {
    fail(ErrorKind::kDimensionMismatch, "weights have " + std::to_string(weights.size()) +
                                            " entries, vector has " + std::to_string(dim_));
  }
  double s = 0.0;
  if (is_sparse()) {
    for (std::size_t i = 0; i < indices_.size(); ++i) s += weights[indices_[i]] * values_[i];
  } else {
    for (std::size_t i = 0; i < values_.size(); ++i) s += weights[i] * values_[i];
  }
  return s;
}

double FeatureVector::squared_norm() const {
  double s = 0.0;
  for (double x : values_) s += x * x;
  return s;
}

std::vector<double> FeatureVector::to_dense() const {
  if (!is_sparse()) return values_;
  std::vector<double> out(dim_, 0.0);
  for (std::size_t i = 0; i < indices_.size(); ++i) out[indices_[i]] = values_[i];
  return out;
}

// ---------------------------------------------------------------------------
// TF-IDF

TfidfVectorizer TfidfVectorizer::fit(std::span<const TokenSequence> train) {
  if (train.empty()) fail(ErrorKind::kEmptyTrainingSet, "TF-IDF needs at least one sequence");
  std::map<std::string, std::size_t, std::less<>> df;
  for (const auto& seq : train) {
    std::unordered_set<std::string_view> seen;
    for (const auto& tok : seq) {
      if (seen.insert(tok).second) ++df[tok];
    }
  }
  TfidfVectorizer v;
  v.n_train_docs_ = train.size();
  v.idf_.reserve(df.size());
  const double n = static_cast<double>(train.size());
  std::uint32_t next = 0;
  for (const auto& [term, count] : df) {
    v.vocabulary_.emplace(term, next++);
    v.idf_.push_back(std::log((1.0 + n) / (1.0 + static_cast<double>(count))) + 1.0);
  }
  return v;
}

double TfidfVectorizer::idf(std::string_view term) const {
  auto it = vocabulary_.find(term);
  return it == vocabulary_.end() ? 0.0 : idf_[it->second];
}

FeatureVector TfidfVectorizer::transform(const TokenSequence& tokens) const {
  std::map<std::uint32_t, double> tf;
  for (const auto& tok : tokens) {
    auto it = vocabulary_.find(tok);
    if (it != vocabulary_.end()) tf[it->second] += 1.0;
  }
  std::vector<std::pair<std::uint32_t, double>> entries;
  entries.reserve(tf.size());
  double norm2 = 0.0;
  for (const auto& [idx, count] : tf) {
    const double w = count * idf_[idx];
    entries.emplace_back(idx, w);
    norm2 += w * w;
  }
  if (norm2 > 0.0) {
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& e : entries) e.second *= inv;
  }
  return FeatureVector::sparse(dim(), std::move(entries));
}

std::string TfidfVectorizer::to_json() const {
  nlohmann::json j;
  nlohmann::json vocab = nlohmann::json::object();
  for (const auto& [term, idx] : vocabulary_) vocab[term] = idx;
  j["vocabulary"] = std::move(vocab);
  j["idf"] = idf_;
  j["n_train_docs"] = n_train_docs_;
  return j.dump();
}

TfidfVectorizer TfidfVectorizer::from_json(std::string_view text) {
  TfidfVectorizer v;
  try {
    const auto j = nlohmann::json::parse(text);
    v.idf_ = j.at("idf").get<std::vector<double>>();
    v.n_train_docs_ = j.at("n_train_docs").get<std::size_t>();
    std::vector<bool> used(v.idf_.size(), false);
    for (const auto& [term, idx] : j.at("vocabulary").items()) {
      const auto i = idx.get<std::uint32_t>();
      if (i >= used.size() || used[i]) {
        fail(ErrorKind::kMalformedRecord, "vocabulary index " + std::to_string(i));
      }
      used[i] = true;
      v.vocabulary_.emplace(term, i);
    }
    if (v.vocabulary_.size() != v.idf_.size()) {
      fail(ErrorKind::kMalformedRecord, "vocabulary and idf sizes differ");
    }
    for (double x : v.idf_) {
      if (!(x > 0.0)) fail(ErrorKind::kMalformedRecord, "idf values must be positive");
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kMalformedRecord, std::string("TF-IDF vectorizer: ") + e.what());
  }
  return v;
}

// ---------------------------------------------------------------------------
// Embeddings

EmbeddingTable::EmbeddingTable(std::size_t dim,
                               std::unordered_map<std::string, std::vector<double>> vectors)
    : dim_(dim), vectors_(std::move(vectors)) {
  if (dim_ == 0) fail(ErrorKind::kInvalidArgument, "embedding dimension must be positive");
  for (const auto& [word, vec] : vectors_) {
    if (vec.size() != dim_) {
      fail(ErrorKind::kInvalidArgument, "vector for \"" + word + "\" has wrong dimension");
    }
  }
}

const std::vector<double>* EmbeddingTable::find(std::string_view word) const {
  auto it = vectors_.find(std::string(word));
  return it == vectors_.end() ? nullptr : &it->second;
}

std::string EmbeddingTable::serialize() const {
  std::vector<const std::string*> words;
  words.reserve(vectors_.size());
  for (const auto& kv : vectors_) words.push_back(&kv.first);
  std::sort(words.begin(), words.end(), [](auto* a, auto* b) { return *a < *b; });
  std::string out;
  char buf[32];
  for (const std::string* w : words) {
    out += *w;
    for (double x : vectors_.at(*w)) {
      auto res = std::to_chars(buf, buf + sizeof buf, x);
      out += ' ';
      out.append(buf, res.ptr);
    }
    out += '\n';
  }
  return out;
}

EmbeddingTable parse_embeddings(std::string_view text) {
  std::unordered_map<std::string, std::vector<double>> vectors;
  std::size_t dim = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  auto is_ws = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && is_ws(line[i])) ++i;
      std::size_t j = i;
      while (j < line.size() && !is_ws(line[j])) ++j;
      if (j > i) fields.push_back(line.substr(i, j - i));
      i = j;
    }
    if (fields.empty()) continue;
    const std::size_t d = fields.size() - 1;
    if (dim == 0) {
      if (d == 0) fail_at_line(ErrorKind::kInconsistentDimension, line_no, "no vector values");
      dim = d;
    } else if (d != dim) {
      fail_at_line(ErrorKind::kInconsistentDimension, line_no,
                   "expected " + std::to_string(dim) + " values, found " + std::to_string(d));
    }
    std::vector<double> vec(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      std::string_view f = fields[k + 1];
      auto res = std::from_chars(f.data(), f.data() + f.size(), vec[k]);
      if (res.ec != std::errc() || res.ptr != f.data() + f.size() || !std::isfinite(vec[k])) {
        fail_at_line(ErrorKind::kMalformedFloat, line_no, std::string(f));
      }
    }
    // First occurrence wins, as in the reference GloVe readers.
    vectors.emplace(std::string(fields[0]), std::move(vec));
  }
  if (dim == 0) fail(ErrorKind::kEmptyFile, "embedding file has no vectors");
  return EmbeddingTable(dim, std::move(vectors));
}

EmbeddingTable load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open embeddings " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_embeddings(buf.str());
}

FeatureVector embed_average(const EmbeddingTable& table, const TokenSequence& tokens) {
  std::vector<double> sum(table.dim(), 0.0);
  std::size_t hits = 0;
  for (const auto& tok : tokens) {
    const auto* vec = table.find(tok);
    if (vec == nullptr) continue;
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += (*vec)[i];
    ++hits;
  }
  if (hits > 0) {
    const double inv = 1.0 / static_cast<double>(hits);
    for (double& x : sum) x *= inv;
  }
  return FeatureVector::dense(std::move(sum));
}

double cosine_similarity(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) fail(ErrorKind::kDimensionMismatch, "cosine of unequal dims");
  double xy = 0.0, xx = 0.0, yy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xy += x[i] * y[i];
    xx += x[i] * x[i];
    yy += y[i] * y[i];
  }
  if (xx == 0.0 || yy == 0.0) fail(ErrorKind::kZeroVector, "cosine of a zero vector");
  return std::clamp(xy / (std::sqrt(xx) * std::sqrt(yy)), -1.0, 1.0);
}

// ---------------------------------------------------------------------------
// StatementEncoder

std::string_view vectorizer_kind_name(VectorizerKind kind) {
  return kind == VectorizerKind::kTfidf ? "tfidf" : "embedding";
}

VectorizerKind parse_vectorizer_kind(std::string_view name) {
  if (name == "tfidf") return VectorizerKind::kTfidf;
  if (name == "embedding") return VectorizerKind::kEmbedding;
  fail(ErrorKind::kInvalidArgument, "unknown vectorizer \"" + std::string(name) + "\"");
}

StatementEncoder StatementEncoder::fit(const VectorizerConfig& config,
                                       std::span<const TokenSequence> train) {
  if (config.kind == VectorizerKind::kTfidf) return from_tfidf(TfidfVectorizer::fit(train));
  return from_embeddings(config.embeddings);
}

StatementEncoder StatementEncoder::from_tfidf(TfidfVectorizer tfidf) {
  StatementEncoder e;
  e.kind_ = VectorizerKind::kTfidf;
  e.tfidf_ = std::move(tfidf);
  return e;
}

StatementEncoder StatementEncoder::from_embeddings(std::shared_ptr<const EmbeddingTable> table) {
  if (!table) fail(ErrorKind::kInvalidArgument, "embedding vectorizer needs an embedding table");
  StatementEncoder e;
  e.kind_ = VectorizerKind::kEmbedding;
  e.embeddings_ = std::move(table);
  return e;
}

std::size_t StatementEncoder::dim() const {
  return kind_ == VectorizerKind::kTfidf ? tfidf_.dim() : embeddings_->dim();
}

FeatureVector StatementEncoder::encode(const TokenSequence& tokens) const {
  if (kind_ == VectorizerKind::kTfidf) return tfidf_.transform(tokens);
  return embed_average(*embeddings_, tokens);
}

std::string StatementEncoder::fingerprint() const {
  if (kind_ == VectorizerKind::kTfidf) return fnv1a64_hex(tfidf_.to_json());
  // Hashing a full pretrained table is costly; its shape identifies it well
  // enough to catch mismatched bundles.
  return fnv1a64_hex("embedding:" + std::to_string(embeddings_->dim()) + ":" +
                     std::to_string(embeddings_->size()));
}

}  // namespace nfrlens
