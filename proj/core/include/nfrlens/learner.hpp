#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nfrlens/taxonomy.hpp"
#include "nfrlens/vectorize.hpp"

namespace nfrlens {

struct SvmHyperparams {
  double c = 1.0;        // soft-margin weight; lambda = 1 / (c * n)
  std::uint32_t epochs = 100;
  std::uint64_t seed = 42;

  // Throws kInvalidArgument unless c > 0 and epochs >= 1.
  void validate() const;
  friend bool operator==(const SvmHyperparams&, const SvmHyperparams&) = default;
};

// Stand-in for +/- infinity in decision() of constant-class models.
inline constexpr double kConstantDecision = 1.7976931348623157e308;

struct LinearModel {
  std::vector<double> weights;
  double bias = 0.0;
  NfrLabel label = NfrLabel::Other;
  // +1 or -1 when the training labels were all equal.
  std::optional<int> constant_class;

  std::size_t dim() const { return weights.size(); }
  friend bool operator==(const LinearModel&, const LinearModel&) = default;
};

// Per-epoch record of the primal objective, for convergence checks.
struct SvmTrace {
  std::vector<double> epoch_objective;  // after each epoch, in order
};

// Primal soft-margin objective with a regularized bias
//   (lambda/2) (||w||^2 + b^2) + (1/n) sum max(0, 1 - y_i (w.x_i + b)),
// with lambda = 1 / (c n).
double svm_objective(const LinearModel& model, std::span<const FeatureVector> xs,
                     std::span<const int> ys, double c);

// Pegasos stochastic sub-gradient descent with step 1/(lambda t), one pass
// per epoch over a seeded shuffle, and projection onto the ball of radius
// 1/sqrt(lambda). The bias is trained as an extra constant feature, so it is
// shrunk and projected together with w. If every label is equal the result
// is a constant-class model. Throws kEmptyTrainingSet, kDimensionMismatch
// and kInvalidArgument (labels not +/-1, bad hyperparameters).
LinearModel train_linear_svm(std::span<const FeatureVector> xs, std::span<const int> ys,
                             const SvmHyperparams& hp, NfrLabel label = NfrLabel::Other,
                             SvmTrace* trace = nullptr);

// w.x + b, or +/-kConstantDecision for constant models.
double decision(const LinearModel& model, const FeatureVector& x);
// +1 iff decision >= 0.
int predict_binary(const LinearModel& model, const FeatureVector& x);

// Binary Relevance: one independent LinearModel per taxonomy label.
struct BrModel {
  std::array<LinearModel, kNumLabels> models;
  static constexpr std::size_t n_labels = kNumLabels;

  const LinearModel& model(NfrLabel l) const { return models[label_index(l)]; }
  std::size_t dim() const { return models[0].dim(); }
  friend bool operator==(const BrModel&, const BrModel&) = default;
};

struct LabelPrediction {
  LabelSet labels;
  std::array<double, kNumLabels> scores{};
};

// Positive targets for `label`: +1 where the label is in gold, else -1.
std::vector<int> binary_targets(std::span<const LabelSet> gold, NfrLabel label);

// Trains all eleven label models with the same hyperparameters. Each label's
// training depends only on its own targets, so retraining one label leaves
// the rest unchanged.
BrModel train_binary_relevance(std::span<const FeatureVector> xs,
                               std::span<const LabelSet> gold, const SvmHyperparams& hp);

// Union of the positive per-label predictions, with all eleven scores.
LabelPrediction predict_labels(const BrModel& model, const FeatureVector& x);

}  // namespace nfrlens
