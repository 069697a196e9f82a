#include "nfrlens/learner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "nfrlens/error.hpp"
#include "rng.hpp"

namespace nfrlens {
namespace {

void axpy(std::vector<double>& v, double a, const FeatureVector& x) {
  const auto vals = x.values();
  if (x.is_sparse()) {
    const auto idx = x.indices();
    for (std::size_t i = 0; i < idx.size(); ++i) v[idx[i]] += a * vals[i];
  } else {
    for (std::size_t i = 0; i < vals.size(); ++i) v[i] += a * vals[i];
  }
}

void check_training_set(std::span<const FeatureVector> xs, std::span<const int> ys) {
  if (xs.empty()) fail(ErrorKind::kEmptyTrainingSet, "SVM needs at least one example");
  if (xs.size() != ys.size()) {
    fail(ErrorKind::kLengthMismatch, std::to_string(xs.size()) + " vectors, " +
                                         std::to_string(ys.size()) + " labels");
  }
  const std::size_t dim = xs.front().dim();
  for (const auto& x : xs) {
    if (x.dim() != dim) fail(ErrorKind::kDimensionMismatch, "training vectors differ in dim");
  }
  for (int y : ys) {
    if (y != 1 && y != -1) fail(ErrorKind::kInvalidArgument, "SVM labels must be +1 or -1");
  }
}

}  // namespace

void SvmHyperparams::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) fail(ErrorKind::kInvalidArgument, "c must be > 0");
  if (epochs < 1) fail(ErrorKind::kInvalidArgument, "epochs must be >= 1");
}

double svm_objective(const LinearModel& model, std::span<const FeatureVector> xs,
                     std::span<const int> ys, double c) {
  check_training_set(xs, ys);
  const double n = static_cast<double>(xs.size());
  const double lambda = 1.0 / (c * n);
  double w2 = model.bias * model.bias;
  for (double w : model.weights) w2 += w * w;
  double hinge = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double m = ys[i] * (xs[i].dot(model.weights) + model.bias);
    hinge += std::max(0.0, 1.0 - m);
  }
  return 0.5 * lambda * w2 + hinge / n;
}

LinearModel train_linear_svm(std::span<const FeatureVector> xs, std::span<const int> ys,
                             const SvmHyperparams& hp, NfrLabel label, SvmTrace* trace) {
  hp.validate();
  check_training_set(xs, ys);
  const std::size_t n = xs.size();
  const std::size_t dim = xs.front().dim();

  LinearModel model;
  model.label = label;
  model.weights.assign(dim, 0.0);
  if (std::all_of(ys.begin(), ys.end(), [&](int y) { return y == ys.front(); })) {
    model.constant_class = ys.front();
    return model;
  }

  const double lambda = 1.0 / (hp.c * static_cast<double>(n));
  const double radius = 1.0 / std::sqrt(lambda);

  // (w, b) = scale * (v, vb), so the (1 - eta lambda) shrink is O(1) for
  // sparse inputs. The bias acts as a constant feature of value 1.
  std::vector<double> v(dim, 0.0);
  double vb = 0.0;
  double scale = 1.0;
  double v_norm2 = 0.0;  // ||v||^2 + vb^2

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(hp.seed);
  std::uint64_t t = 0;

  auto materialize = [&] {
    for (double& x : v) x *= scale;
    vb *= scale;
    scale = 1.0;
    v_norm2 = vb * vb;
    for (double x : v) v_norm2 += x * x;
  };

  for (std::uint32_t epoch = 0; epoch < hp.epochs; ++epoch) {
    detail::shuffle(order, rng);
    for (std::size_t i : order) {
      ++t;
      const FeatureVector& x = xs[i];
      const double y = ys[i];
      const double eta = 1.0 / (lambda * static_cast<double>(t));
      const double vx = x.dot(v) + vb;
      const double margin = y * scale * vx;

      const double shrink = 1.0 - eta * lambda;
      if (shrink <= 0.0) {
        std::fill(v.begin(), v.end(), 0.0);
        vb = 0.0;
        scale = 1.0;
        v_norm2 = 0.0;
      } else {
        scale *= shrink;
      }

      if (margin < 1.0) {
        const double a = eta * y / scale;
        const double cur_vx = shrink <= 0.0 ? 0.0 : vx;
        v_norm2 += 2.0 * a * cur_vx + a * a * (x.squared_norm() + 1.0);
        axpy(v, a, x);
        vb += a;
      }

      const double w_norm = scale * std::sqrt(std::max(v_norm2, 0.0));
      if (w_norm > radius) scale *= radius / w_norm;
      if (scale < 1e-9) materialize();
    }
    if (trace != nullptr) {
      LinearModel snapshot = model;
      snapshot.weights = v;
      for (double& w : snapshot.weights) w *= scale;
      snapshot.bias = scale * vb;
      trace->epoch_objective.push_back(svm_objective(snapshot, xs, ys, hp.c));
    }
  }

  for (std::size_t j = 0; j < dim; ++j) model.weights[j] = scale * v[j];
  model.bias = scale * vb;
  return model;
}

double decision(const LinearModel& model, const FeatureVector& x) {
  if (x.dim() != model.dim()) {
    fail(ErrorKind::kDimensionMismatch, "model dim " + std::to_string(model.dim()) +
                                            ", input dim " + std::to_string(x.dim()));
  }
  if (model.constant_class) {
    return *model.constant_class > 0 ? kConstantDecision : -kConstantDecision;
  }
  return x.dot(model.weights) + model.bias;
}

int predict_binary(const LinearModel& model, const FeatureVector& x) {
  return decision(model, x) >= 0.0 ? 1 : -1;
}

std::vector<int> binary_targets(std::span<const LabelSet> gold, NfrLabel label) {
  std::vector<int> ys;
  ys.reserve(gold.size());
  for (const auto& g : gold) ys.push_back(g.contains(label) ? 1 : -1);
  return ys;
}

BrModel train_binary_relevance(std::span<const FeatureVector> xs,
                               std::span<const LabelSet> gold, const SvmHyperparams& hp) {
  if (xs.empty()) fail(ErrorKind::kEmptyTrainingSet, "Binary Relevance needs examples");
  if (xs.size() != gold.size()) {
    fail(ErrorKind::kLengthMismatch, "feature and label lists differ in length");
  }
  BrModel br;
  for (NfrLabel l : kAllLabels) {
    const std::vector<int> ys = binary_targets(gold, l);
    br.models[label_index(l)] = train_linear_svm(xs, ys, hp, l);
  }
  return br;
}

LabelPrediction predict_labels(const BrModel& model, const FeatureVector& x) {
  LabelPrediction out;
  for (NfrLabel l : kAllLabels) {
    const double s = decision(model.model(l), x);
    out.scores[label_index(l)] = s;
    if (s >= 0.0) out.labels.insert(l);
  }
  return out;
}

}  // namespace nfrlens
