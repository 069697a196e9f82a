#include <benchmark/benchmark.h>

#include "nfrlens/annotate.hpp"
#include "nfrlens/eval.hpp"
#include "nfrlens/learner.hpp"
#include "nfrlens/textprep.hpp"
#include "nfrlens/vectorize.hpp"
#include "synthetic.hpp"

namespace {

using namespace nfrlens;

const LabeledData& data() {
  static const LabeledData d =
      labeled_statements(testing::synthetic_corpus(), StopWordList::english());
  return d;
}

void BM_Preprocess(benchmark::State& state) {
  const std::string text =
      "We may share your personal information with service providers who help us "
      "operate the app, as described at https://example.com/privacy.";
  for (auto _ : state) benchmark::DoNotOptimize(preprocess(text, StopWordList::english()));
}
BENCHMARK(BM_Preprocess);

void BM_TfidfFit(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(TfidfVectorizer::fit(data().tokens));
}
BENCHMARK(BM_TfidfFit);

void BM_TfidfTransform(benchmark::State& state) {
  const auto v = TfidfVectorizer::fit(data().tokens);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(v.transform(data().tokens[i++ % data().tokens.size()]));
  }
}
BENCHMARK(BM_TfidfTransform);

void BM_TrainBinaryRelevance(benchmark::State& state) {
  const auto enc = StatementEncoder::fit({}, data().tokens);
  std::vector<FeatureVector> xs;
  for (const auto& t : data().tokens) xs.push_back(enc.encode(t));
  SvmHyperparams hp;
  hp.epochs = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(train_binary_relevance(xs, data().gold, hp));
}
BENCHMARK(BM_TrainBinaryRelevance)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_CrossValidate(benchmark::State& state) {
  CrossValidationConfig cfg;
  cfg.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(cross_validate(data(), cfg));
}
BENCHMARK(BM_CrossValidate)->Unit(benchmark::kMillisecond);

void BM_RenderHtml(benchmark::State& state) {
  static const ModelBundle bundle = testing::train_bundle(testing::synthetic_corpus());
  const Corpus c = testing::synthetic_corpus();
  const auto ad = annotate_document(c.documents[0], bundle, StopWordList::english());
  for (auto _ : state) benchmark::DoNotOptimize(render_html(ad));
}
BENCHMARK(BM_RenderHtml);

}  // namespace
BENCHMARK_MAIN();
