#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "nfrlens/error.hpp"
#include "nfrlens/learner.hpp"
#include "synthetic.hpp"

namespace nfrlens {
namespace {

template <typename F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error";
  return ErrorKind::kIo;
}

FeatureVector d(std::vector<double> v) { return FeatureVector::dense(std::move(v)); }

TEST(Svm, SymmetricSeparablePair) {
  const std::vector<FeatureVector> xs = {d({-1}), d({1})};
  const std::vector<int> ys = {-1, 1};
  const LinearModel m = train_linear_svm(xs, ys, {});
  EXPECT_EQ(predict_binary(m, xs[0]), -1);
  EXPECT_EQ(predict_binary(m, xs[1]), 1);
  EXPECT_FALSE(m.constant_class.has_value());
}

TEST(Svm, SingleClassGivesConstantModel) {
  const std::vector<FeatureVector> xs = {d({1, 2}), d({3, 4})};
  const LinearModel pos = train_linear_svm(xs, std::vector<int>{1, 1}, {});
  EXPECT_EQ(pos.constant_class, 1);
  EXPECT_EQ(decision(pos, d({-100, -100})), kConstantDecision);
  EXPECT_EQ(predict_binary(pos, d({-5, 0})), 1);
  const LinearModel neg = train_linear_svm(xs, std::vector<int>{-1, -1}, {});
  EXPECT_EQ(decision(neg, d({0, 0})), -kConstantDecision);
}

TEST(Svm, SeparableBlobsFitPerfectlyAndObjectiveDrops) {
  const auto blobs = testing::separable_blobs(100, 0.5, 2024);
  SvmTrace trace;
  const LinearModel m = train_linear_svm(blobs.xs, blobs.ys, {}, NfrLabel::Other, &trace);
  for (std::size_t i = 0; i < blobs.xs.size(); ++i) {
    EXPECT_EQ(predict_binary(m, blobs.xs[i]), blobs.ys[i]) << i;
  }
  ASSERT_EQ(trace.epoch_objective.size(), 100u);
  EXPECT_LT(trace.epoch_objective.back(), trace.epoch_objective.front());
  EXPECT_DOUBLE_EQ(svm_objective(m, blobs.xs, blobs.ys, 1.0), trace.epoch_objective.back());
}

TEST(Svm, DeterministicForEqualInputs) {
  const auto blobs = testing::separable_blobs(60, 0.5, 7);
  const SvmHyperparams hp{0.5, 20, 99};
  EXPECT_EQ(train_linear_svm(blobs.xs, blobs.ys, hp), train_linear_svm(blobs.xs, blobs.ys, hp));
  const SvmHyperparams other{0.5, 20, 100};
  EXPECT_NE(train_linear_svm(blobs.xs, blobs.ys, hp).weights,
            train_linear_svm(blobs.xs, blobs.ys, other).weights);
}

TEST(Svm, SparseAndDenseInputsAgree) {
  const auto blobs = testing::separable_blobs(40, 0.5, 8);
  std::vector<FeatureVector> sparse;
  for (const auto& x : blobs.xs) {
    sparse.push_back(FeatureVector::sparse(2, {{0, x.at(0)}, {1, x.at(1)}}));
  }
  const auto a = train_linear_svm(blobs.xs, blobs.ys, {});
  const auto b = train_linear_svm(sparse, blobs.ys, {});
  for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(a.weights[j], b.weights[j], 1e-9);
  EXPECT_NEAR(a.bias, b.bias, 1e-9);
}

TEST(Svm, Errors) {
  EXPECT_EQ(kind_of([] { train_linear_svm({}, {}, {}); }), ErrorKind::kEmptyTrainingSet);
  EXPECT_EQ(kind_of([] {
              train_linear_svm(std::vector<FeatureVector>{d({1}), d({1, 2})},
                               std::vector<int>{1, -1}, {});
            }),
            ErrorKind::kDimensionMismatch);
  EXPECT_EQ(kind_of([] {
              train_linear_svm(std::vector<FeatureVector>{d({1})}, std::vector<int>{0}, {});
            }),
            ErrorKind::kInvalidArgument);
  EXPECT_EQ(kind_of([] {
              train_linear_svm(std::vector<FeatureVector>{d({1})}, std::vector<int>{1},
                               SvmHyperparams{0.0, 1, 1});
            }),
            ErrorKind::kInvalidArgument);
  EXPECT_EQ(kind_of([] {
              train_linear_svm(std::vector<FeatureVector>{d({1})}, std::vector<int>{1, 1}, {});
            }),
            ErrorKind::kLengthMismatch);
}

TEST(Decision, Cases) {
  LinearModel m;
  m.weights = {1, 0};
  EXPECT_DOUBLE_EQ(decision(m, d({2, 5})), 2.0);
  m.weights = {0, 0};
  EXPECT_DOUBLE_EQ(decision(m, d({2, 5})), 0.0);
  EXPECT_EQ(predict_binary(m, d({2, 5})), 1);  // ties are positive
  m.bias = 0.3;
  EXPECT_EQ(predict_binary(m, d({0, 0})), 1);
  m.bias = -0.3;
  EXPECT_EQ(predict_binary(m, d({0, 0})), -1);
  EXPECT_EQ(kind_of([&] { decision(m, d({1})); }), ErrorKind::kDimensionMismatch);
}

TEST(BinaryRelevance, AllGoldSameLabel) {
  const std::vector<FeatureVector> xs = {d({1, 0}), d({0, 1})};
  const std::vector<LabelSet> gold(2, LabelSet{NfrLabel::Usability});
  const BrModel br = train_binary_relevance(xs, gold, {});
  for (NfrLabel l : kAllLabels) {
    EXPECT_EQ(br.model(l).constant_class, l == NfrLabel::Usability ? 1 : -1);
    EXPECT_EQ(br.model(l).label, l);
  }
  EXPECT_EQ(predict_labels(br, d({5, 5})).labels, LabelSet{NfrLabel::Usability});
}

TEST(BinaryRelevance, TwoPointsRecoverGold) {
  const std::vector<FeatureVector> xs = {d({1, 0}), d({0, 1})};
  const std::vector<LabelSet> gold = {{NfrLabel::Security}, {NfrLabel::Legal}};
  const BrModel br = train_binary_relevance(xs, gold, {});
  EXPECT_EQ(predict_labels(br, xs[0]).labels, gold[0]);
  EXPECT_EQ(predict_labels(br, xs[1]).labels, gold[1]);
  EXPECT_EQ(kind_of([] { train_binary_relevance({}, {}, {}); }), ErrorKind::kEmptyTrainingSet);
}

TEST(BinaryRelevance, ConstantNegativesAndSingleFiring) {
  BrModel br;
  for (NfrLabel l : kAllLabels) {
    br.models[label_index(l)].weights = {0.0};
    br.models[label_index(l)].label = l;
    br.models[label_index(l)].constant_class = -1;
  }
  EXPECT_TRUE(predict_labels(br, d({1})).labels.empty());
  br.models[label_index(NfrLabel::Safety)].constant_class.reset();
  br.models[label_index(NfrLabel::Safety)].weights = {1.0};
  const auto p = predict_labels(br, d({0.5}));
  EXPECT_EQ(p.labels, LabelSet{NfrLabel::Safety});
  EXPECT_DOUBLE_EQ(p.scores[label_index(NfrLabel::Safety)], 0.5);
  EXPECT_EQ(p.scores[label_index(NfrLabel::Trust)], -kConstantDecision);
}

TEST(BinaryRelevance, UnionOfIndependentPredictions) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<FeatureVector> xs;
  std::vector<LabelSet> gold;
  for (int i = 0; i < 80; ++i) {
    std::vector<double> v(6);
    for (double& x : v) x = g(rng);
    xs.push_back(d(v));
    gold.push_back(LabelSet::from_bits(static_cast<std::uint32_t>(rng() % 2048) | 1u));
  }
  const BrModel br = train_binary_relevance(xs, gold, {1.0, 5, 3});
  for (int i = 0; i < 300; ++i) {
    std::vector<double> v(6);
    for (double& x : v) x = g(rng);
    const FeatureVector x = d(v);
    LabelSet expected;
    for (NfrLabel l : kAllLabels) {
      if (predict_binary(br.model(l), x) == 1) expected.insert(l);
    }
    EXPECT_EQ(predict_labels(br, x).labels, expected);
  }
}

TEST(BinaryRelevance, RetrainingOneLabelLeavesOthersBitIdentical) {
  const auto blobs = testing::separable_blobs(50, 0.5, 3);
  std::vector<LabelSet> gold;
  for (std::size_t i = 0; i < blobs.xs.size(); ++i) {
    gold.push_back(LabelSet::from_bits(static_cast<std::uint32_t>((i * 2654435761u) % 2048)));
  }
  const BrModel a = train_binary_relevance(blobs.xs, gold, {1.0, 10, 5});
  std::vector<LabelSet> changed = gold;
  for (std::size_t i = 0; i < changed.size(); i += 3) {
    if (changed[i].contains(NfrLabel::Trust)) {
      changed[i].erase(NfrLabel::Trust);
    } else {
      changed[i].insert(NfrLabel::Trust);
    }
  }
  const BrModel b = train_binary_relevance(blobs.xs, changed, {1.0, 10, 5});
  for (NfrLabel l : kAllLabels) {
    if (l == NfrLabel::Trust) {
      EXPECT_NE(a.model(l), b.model(l));
    } else {
      EXPECT_EQ(a.model(l), b.model(l)) << label_name(l);
    }
  }
}

}  // namespace
}  // namespace nfrlens
