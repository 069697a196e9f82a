#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "nfrlens/learner.hpp"
#include "nfrlens/vectorize.hpp"

namespace nfrlens {

// Everything needed to annotate new text: the fitted encoder, the trained
// Binary Relevance model and the training settings.
struct ModelBundle {
  StatementEncoder encoder;
  BrModel model;
  SvmHyperparams hyperparams;
  std::string stopwords_fingerprint;
  // Only for embedding encoders: where the table was loaded from. The table
  // itself is not embedded in the bundle.
  std::string embeddings_path;

  // "tfidf(|V|=812) + BR/linear-SVM(c=1, epochs=100, seed=42)"
  std::string descriptor() const;
};

// JSON bundle. Per-label models are stored as
// {label, weights, bias, constant_class, hyperparams, vectorizer_hash}.
// Output is byte-deterministic for equal bundles.
std::string serialize_bundle(const ModelBundle& bundle);

// `embeddings_override` replaces the stored path for embedding bundles when
// non-empty. Throws Error (kMalformedRecord for schema problems,
// kDimensionMismatch when models and encoder disagree).
ModelBundle parse_bundle(std::string_view json,
                         const std::filesystem::path& embeddings_override = {});
ModelBundle load_bundle(const std::filesystem::path& path,
                        const std::filesystem::path& embeddings_override = {});
void save_bundle(const ModelBundle& bundle, const std::filesystem::path& path);

}  // namespace nfrlens
