#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nfrlens/corpus.hpp"
#include "nfrlens/learner.hpp"
#include "nfrlens/taxonomy.hpp"
#include "nfrlens/textprep.hpp"
#include "nfrlens/vectorize.hpp"

namespace nfrlens {

struct FoldAssignment {
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> fold_of;  // instance index -> fold id

  std::vector<std::size_t> test_indices(std::size_t fold) const;
  std::vector<std::size_t> train_indices(std::size_t fold) const;
  std::vector<std::size_t> fold_sizes() const;
};

// Seeded uniform shuffle, then round-robin assignment. Throws
// kInsufficientData when n < k (or k == 0).
FoldAssignment kfold_split(std::size_t n, std::size_t k, std::uint64_t seed);

// Iterative multi-label stratification with fixed fold capacities, so fold
// sizes still differ by at most one. Rarest labels are distributed first.
FoldAssignment stratified_kfold_split(std::span<const LabelSet> gold, std::size_t k,
                                      std::uint64_t seed);

struct PrecisionRecallF2 {
  double precision = 0.0;
  double recall = 0.0;
  double f2 = 0.0;
};

// Any 0/0 evaluates to 0.
PrecisionRecallF2 precision_recall_f2(std::size_t tp, std::size_t fp, std::size_t fn);

// All three throw kLengthMismatch and kEmptyInput.
double subset_accuracy(std::span<const LabelSet> gold, std::span<const LabelSet> pred);
// Mean per-instance |G n P| / |G u P|; both empty scores 1.
double hamming_score(std::span<const LabelSet> gold, std::span<const LabelSet> pred);
// Mean per-instance |G ^ P| / n_labels.
double hamming_loss(std::span<const LabelSet> gold, std::span<const LabelSet> pred,
                    std::size_t n_labels = kNumLabels);

struct LabelMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f2 = 0.0;
  double hamming_score = 0.0;
  double subset_accuracy = 0.0;
  double hamming_loss = 0.0;
};

struct SetMetrics {
  double subset_accuracy = 0.0;
  double hamming_score = 0.0;
  double hamming_loss = 0.0;
};

struct CrossValidationConfig {
  VectorizerConfig vectorizer;
  SvmHyperparams hyperparams;
  std::size_t k = 10;
  std::uint64_t seed = 42;
  bool stratified = false;
  std::size_t threads = 0;  // 0 = hardware concurrency

  std::string descriptor() const;
};

// Handed to CrossValidationOptions::on_fold after each fold is fitted.
struct FoldContext {
  std::size_t fold = 0;
  std::span<const std::size_t> train;
  std::span<const std::size_t> test;
  const StatementEncoder& encoder;
};

struct EvalReport {
  // Per-label P/R/F2 from pooled out-of-fold confusion counts. The per-label
  // SA/HS/HL project every gold and predicted set onto the two-label space
  // {label, rest}, where "rest" is present iff any other label is, and are
  // evaluated there with n_labels = 2.
  std::array<LabelMetrics, kNumLabels> per_label{};
  // Unweighted means of the per_label fields.
  LabelMetrics average;
  // Multi-label SA/HS/HL over the full 11-label space.
  SetMetrics corpus_level;
  std::array<std::size_t, kNumLabels> support{};  // gold positives per label
  std::size_t n_instances = 0;
  std::string config;  // CrossValidationConfig::descriptor()
  std::string vectorizer;  // "tfidf" | "embedding"
  std::vector<LabelSet> gold;
  std::vector<LabelSet> predictions;  // out-of-fold, instance order

  std::string to_json() const;
};

// Per-label, average and corpus-level metrics from pooled gold/predictions.
EvalReport evaluate_predictions(std::span<const LabelSet> gold,
                                std::span<const LabelSet> pred);

// Labeled statements of a corpus in document order; statements without gold
// labels are skipped.
struct LabeledData {
  std::vector<std::string> statement_ids;
  std::vector<TokenSequence> tokens;
  std::vector<LabelSet> gold;
};
LabeledData labeled_statements(const Corpus& corpus, const StopWordList& stops);

struct CrossValidationOptions {
  std::function<void(const FoldContext&)> on_fold;
};

// k-fold cross-validation of the full pipeline. Each fold fits the
// vectorizer on its training statements only, trains Binary Relevance and
// predicts its test statements. Fold results are reduced in fold order, so
// the report is independent of threading. Throws kInsufficientData.
EvalReport cross_validate(const Corpus& corpus, const CrossValidationConfig& config,
                          const StopWordList& stops = StopWordList::english(),
                          const CrossValidationOptions& options = {});
EvalReport cross_validate(const LabeledData& data, const CrossValidationConfig& config,
                          const CrossValidationOptions& options = {});

// Table-shaped CSV: one row per label plus "Average", and for every report a
// P,R,F2,HS,SA,HL column group prefixed with its vectorizer name.
std::string eval_table_csv(std::span<const EvalReport> reports);
// Fixed-width text rendering of the same table for terminals.
std::string eval_table_text(const EvalReport& report);

}  // namespace nfrlens
