#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nfrlens/textprep.hpp"

namespace nfrlens {

// A feature vector in either sparse (sorted index/value pairs, no explicit
// zeros) or dense form.
class FeatureVector {
 public:
  enum class Kind { kSparse, kDense };

  FeatureVector() = default;

  static FeatureVector zeros_sparse(std::size_t dim);
  static FeatureVector dense(std::vector<double> values);
  // Entries are sorted by index; zero values are dropped. Throws
  // kInvalidArgument for out-of-range or repeated indices.
  static FeatureVector sparse(std::size_t dim,
                              std::vector<std::pair<std::uint32_t, double>> entries);

  Kind kind() const { return kind_; }
  bool is_sparse() const { return kind_ == Kind::kSparse; }
  std::size_t dim() const { return dim_; }

  // Sparse: sorted indices. Dense: empty.
  std::span<const std::uint32_t> indices() const { return indices_; }
  // Sparse: values parallel to indices(). Dense: all dim() values.
  std::span<const double> values() const { return values_; }
  std::size_t nonzeros() const;

  double at(std::size_t i) const;
  double dot(std::span<const double> weights) const;
  double squared_norm() const;
  std::vector<double> to_dense() const;

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;

 private:
  Kind kind_ = Kind::kDense;
  std::size_t dim_ = 0;
  std::vector<std::uint32_t> indices_;
  std::vector<double> values_;
};

class TfidfVectorizer {
 public:
  // Vocabulary is every distinct training token, indexed in lexicographic
  // order; idf(t) = ln((1 + N) / (1 + df(t))) + 1. Throws kEmptyTrainingSet.
  static TfidfVectorizer fit(std::span<const TokenSequence> train);

  // Raw-count tf times idf over in-vocabulary tokens, L2 normalized. Inputs
  // with no in-vocabulary token map to the zero vector.
  FeatureVector transform(const TokenSequence& tokens) const;

  std::size_t dim() const { return idf_.size(); }
  std::size_t n_train_docs() const { return n_train_docs_; }
  const std::map<std::string, std::uint32_t, std::less<>>& vocabulary() const {
    return vocabulary_;
  }
  std::span<const double> idf() const { return idf_; }
  double idf(std::string_view term) const;  // 0 when out of vocabulary

  // {"vocabulary": {term: index}, "idf": [...], "n_train_docs": N}
  std::string to_json() const;
  static TfidfVectorizer from_json(std::string_view json);

  friend bool operator==(const TfidfVectorizer&, const TfidfVectorizer&) = default;

 private:
  std::map<std::string, std::uint32_t, std::less<>> vocabulary_;
  std::vector<double> idf_;
  std::size_t n_train_docs_ = 0;
};

class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  // Throws kInvalidArgument when dim is 0 or a vector has the wrong size.
  EmbeddingTable(std::size_t dim,
                 std::unordered_map<std::string, std::vector<double>> vectors);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return vectors_.size(); }
  const std::vector<double>* find(std::string_view word) const;

  // Whitespace-delimited "word v1 ... vD" lines (GloVe text layout).
  // Words are emitted in sorted order with round-trip float precision.
  std::string serialize() const;

  friend bool operator==(const EmbeddingTable&, const EmbeddingTable&) = default;

 private:
  std::size_t dim_ = 0;
  std::unordered_map<std::string, std::vector<double>> vectors_;
};

// Dimension comes from the first non-blank line. Throws kEmptyFile,
// kInconsistentDimension(line) and kMalformedFloat(line).
EmbeddingTable load_embeddings(const std::filesystem::path& path);
EmbeddingTable parse_embeddings(std::string_view text);

// Unweighted mean of in-vocabulary token vectors, duplicates counted per
// occurrence; the zero vector when nothing is in vocabulary.
FeatureVector embed_average(const EmbeddingTable& table, const TokenSequence& tokens);

// Throws kDimensionMismatch and kZeroVector.
double cosine_similarity(std::span<const double> x, std::span<const double> y);

enum class VectorizerKind { kTfidf, kEmbedding };

std::string_view vectorizer_kind_name(VectorizerKind kind);
VectorizerKind parse_vectorizer_kind(std::string_view name);

struct VectorizerConfig {
  VectorizerKind kind = VectorizerKind::kTfidf;
  // Required for kEmbedding.
  std::shared_ptr<const EmbeddingTable> embeddings;
};

// A fitted statement encoder: TF-IDF fitted on training tokens, or an
// embedding table used as-is.
class StatementEncoder {
 public:
  static StatementEncoder fit(const VectorizerConfig& config,
                              std::span<const TokenSequence> train);
  static StatementEncoder from_tfidf(TfidfVectorizer tfidf);
  static StatementEncoder from_embeddings(std::shared_ptr<const EmbeddingTable> table);

  VectorizerKind kind() const { return kind_; }
  std::size_t dim() const;
  FeatureVector encode(const TokenSequence& tokens) const;

  const TfidfVectorizer* tfidf() const {
    return kind_ == VectorizerKind::kTfidf ? &tfidf_ : nullptr;
  }
  const EmbeddingTable* embeddings() const { return embeddings_.get(); }

  // Stable fingerprint of the fitted state, stored alongside trained models.
  std::string fingerprint() const;

 private:
  VectorizerKind kind_ = VectorizerKind::kTfidf;
  TfidfVectorizer tfidf_;
  std::shared_ptr<const EmbeddingTable> embeddings_;
};

}  // namespace nfrlens
