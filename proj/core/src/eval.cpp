#include "nfrlens/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <future>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "nfrlens/error.hpp"
#include "rng.hpp"

namespace nfrlens {
namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  detail::shuffle(order, rng);
  return order;
}

void check_pair(std::span<const LabelSet> gold, std::span<const LabelSet> pred) {
  if (gold.size() != pred.size()) {
    fail(ErrorKind::kLengthMismatch, std::to_string(gold.size()) + " gold vs " +
                                         std::to_string(pred.size()) + " predicted sets");
  }
  if (gold.empty()) fail(ErrorKind::kEmptyInput, "no instances to score");
}

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

// Two-slot encoding {label, rest} of a label set.
struct Projected {
  bool self = false;
  bool rest = false;
};

Projected project(const LabelSet& s, NfrLabel label) {
  LabelSet others = s;
  others.erase(label);
  return {s.contains(label), !others.empty()};
}

LabelMetrics to_label_metrics(const PrecisionRecallF2& prf, const SetMetrics& sm) {
  return {prf.precision, prf.recall, prf.f2, sm.hamming_score, sm.subset_accuracy,
          sm.hamming_loss};
}

ordered_json metrics_json(const LabelMetrics& m) {
  ordered_json j;
  j["precision"] = m.precision;
  j["recall"] = m.recall;
  j["f2"] = m.f2;
  j["hamming_score"] = m.hamming_score;
  j["subset_accuracy"] = m.subset_accuracy;
  j["hamming_loss"] = m.hamming_loss;
  return j;
}

std::string fixed4(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

}  // namespace

std::vector<std::size_t> FoldAssignment::test_indices(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold_of.size(); ++i) {
    if (fold_of[i] == fold) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> FoldAssignment::train_indices(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold_of.size(); ++i) {
    if (fold_of[i] != fold) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> FoldAssignment::fold_sizes() const {
  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t f : fold_of) ++sizes[f];
  return sizes;
}

FoldAssignment kfold_split(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k == 0 || n < k) {
    fail(ErrorKind::kInsufficientData,
         "n=" + std::to_string(n) + " instances cannot fill k=" + std::to_string(k) + " folds");
  }
  FoldAssignment fa;
  fa.k = k;
  fa.seed = seed;
  fa.fold_of.assign(n, 0);
  const auto order = shuffled_indices(n, seed);
  for (std::size_t pos = 0; pos < n; ++pos) fa.fold_of[order[pos]] = pos % k;
  return fa;
}

FoldAssignment stratified_kfold_split(std::span<const LabelSet> gold, std::size_t k,
                                      std::uint64_t seed) {
  const std::size_t n = gold.size();
  if (k == 0 || n < k) {
    fail(ErrorKind::kInsufficientData,
         "n=" + std::to_string(n) + " instances cannot fill k=" + std::to_string(k) + " folds");
  }
  FoldAssignment fa;
  fa.k = k;
  fa.seed = seed;
  fa.fold_of.assign(n, k);

  std::vector<std::size_t> capacity(k);
  for (std::size_t f = 0; f < k; ++f) capacity[f] = n / k + (f < n % k ? 1 : 0);

  std::array<std::size_t, kNumLabels> remaining{};
  for (const auto& g : gold) {
    for (NfrLabel l : g.labels()) ++remaining[label_index(l)];
  }
  std::vector<std::array<double, kNumLabels>> desired(k);
  for (std::size_t f = 0; f < k; ++f) {
    for (std::size_t l = 0; l < kNumLabels; ++l) {
      desired[f][l] = static_cast<double>(remaining[l]) * static_cast<double>(capacity[f]) /
                      static_cast<double>(n);
    }
  }

  std::mt19937_64 rng(seed);
  const auto order = shuffled_indices(n, seed);
  auto assign = [&](std::size_t i, std::size_t f) {
    fa.fold_of[i] = f;
    --capacity[f];
    for (NfrLabel l : gold[i].labels()) {
      desired[f][label_index(l)] -= 1.0;
      --remaining[label_index(l)];
    }
  };
  auto pick_fold = [&](std::optional<std::size_t> label) {
    std::vector<std::size_t> best;
    for (std::size_t f = 0; f < k; ++f) {
      if (capacity[f] == 0) continue;
      if (best.empty()) {
        best.push_back(f);
        continue;
      }
      const std::size_t b = best.front();
      const double df = label ? desired[f][*label] : 0.0;
      const double db = label ? desired[b][*label] : 0.0;
      if (df > db || (df == db && capacity[f] > capacity[b])) {
        best.assign(1, f);
      } else if (df == db && capacity[f] == capacity[b]) {
        best.push_back(f);
      }
    }
    return best[detail::bounded(rng, best.size())];
  };

  for (;;) {
    std::optional<std::size_t> rarest;
    for (std::size_t l = 0; l < kNumLabels; ++l) {
      if (remaining[l] > 0 && (!rarest || remaining[l] < remaining[*rarest])) rarest = l;
    }
    if (!rarest) break;
    const NfrLabel label = kAllLabels[*rarest];
    for (std::size_t i : order) {
      if (fa.fold_of[i] == k && gold[i].contains(label)) assign(i, pick_fold(*rarest));
    }
  }
  for (std::size_t i : order) {
    if (fa.fold_of[i] == k) assign(i, pick_fold(std::nullopt));
  }
  return fa;
}

PrecisionRecallF2 precision_recall_f2(std::size_t tp, std::size_t fp, std::size_t fn) {
  PrecisionRecallF2 r;
  r.precision = ratio(tp, tp + fp);
  r.recall = ratio(tp, tp + fn);
  const double den = 4.0 * r.precision + r.recall;
  r.f2 = den == 0.0 ? 0.0 : 5.0 * r.precision * r.recall / den;
  return r;
}

double subset_accuracy(std::span<const LabelSet> gold, std::span<const LabelSet> pred) {
  check_pair(gold, pred);
  std::size_t exact = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) exact += gold[i] == pred[i] ? 1 : 0;
  return ratio(exact, gold.size());
}

double hamming_score(std::span<const LabelSet> gold, std::span<const LabelSet> pred) {
  check_pair(gold, pred);
  double sum = 0.0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const std::size_t uni = (gold[i] | pred[i]).size();
    sum += uni == 0 ? 1.0 : ratio((gold[i] & pred[i]).size(), uni);
  }
  return sum / static_cast<double>(gold.size());
}

double hamming_loss(std::span<const LabelSet> gold, std::span<const LabelSet> pred,
                    std::size_t n_labels) {
  check_pair(gold, pred);
  if (n_labels == 0) fail(ErrorKind::kInvalidArgument, "n_labels must be positive");
  double sum = 0.0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    sum += static_cast<double>((gold[i] ^ pred[i]).size()) / static_cast<double>(n_labels);
  }
  return sum / static_cast<double>(gold.size());
}

EvalReport evaluate_predictions(std::span<const LabelSet> gold,
                                std::span<const LabelSet> pred) {
  check_pair(gold, pred);
  EvalReport report;
  report.n_instances = gold.size();
  report.gold.assign(gold.begin(), gold.end());
  report.predictions.assign(pred.begin(), pred.end());
  const double n = static_cast<double>(gold.size());

  for (NfrLabel l : kAllLabels) {
    std::size_t tp = 0, fp = 0, fn = 0, exact = 0;
    double hs = 0.0, hl = 0.0;
    for (std::size_t i = 0; i < gold.size(); ++i) {
      const bool g = gold[i].contains(l);
      const bool p = pred[i].contains(l);
      tp += g && p;
      fp += !g && p;
      fn += g && !p;

      const Projected pg = project(gold[i], l);
      const Projected pp = project(pred[i], l);
      const int inter = (pg.self && pp.self) + (pg.rest && pp.rest);
      const int uni = (pg.self || pp.self) + (pg.rest || pp.rest);
      const int diff = (pg.self != pp.self) + (pg.rest != pp.rest);
      exact += diff == 0;
      hs += uni == 0 ? 1.0 : static_cast<double>(inter) / uni;
      hl += diff / 2.0;
    }
    report.support[label_index(l)] = tp + fn;
    const SetMetrics sm{static_cast<double>(exact) / n, hs / n, hl / n};
    report.per_label[label_index(l)] = to_label_metrics(precision_recall_f2(tp, fp, fn), sm);
  }

  LabelMetrics& avg = report.average;
  for (const LabelMetrics& m : report.per_label) {
    avg.precision += m.precision;
    avg.recall += m.recall;
    avg.f2 += m.f2;
    avg.hamming_score += m.hamming_score;
    avg.subset_accuracy += m.subset_accuracy;
    avg.hamming_loss += m.hamming_loss;
  }
  const double labels = static_cast<double>(kNumLabels);
  avg.precision /= labels;
  avg.recall /= labels;
  avg.f2 /= labels;
  avg.hamming_score /= labels;
  avg.subset_accuracy /= labels;
  avg.hamming_loss /= labels;

  report.corpus_level.subset_accuracy = subset_accuracy(gold, pred);
  report.corpus_level.hamming_score = hamming_score(gold, pred);
  report.corpus_level.hamming_loss = hamming_loss(gold, pred, kNumLabels);
  return report;
}

LabeledData labeled_statements(const Corpus& corpus, const StopWordList& stops) {
  LabeledData data;
  for (const auto& doc : corpus.documents) {
    for (const auto& s : doc.statements) {
      if (!s.gold) continue;
      data.statement_ids.push_back(s.id);
      data.tokens.push_back(preprocess(s.text, stops));
      data.gold.push_back(*s.gold);
    }
  }
  return data;
}

std::string CrossValidationConfig::descriptor() const {
  std::ostringstream out;
  out << vectorizer_kind_name(vectorizer.kind) << " + BR/linear-SVM(c=" << hyperparams.c
      << ", epochs=" << hyperparams.epochs << ", seed=" << hyperparams.seed << "), k=" << k
      << ", split-seed=" << seed << (stratified ? ", stratified" : "");
  return out.str();
}

EvalReport cross_validate(const Corpus& corpus, const CrossValidationConfig& config,
                          const StopWordList& stops, const CrossValidationOptions& options) {
  return cross_validate(labeled_statements(corpus, stops), config, options);
}

EvalReport cross_validate(const LabeledData& data, const CrossValidationConfig& config,
                          const CrossValidationOptions& options) {
  config.hyperparams.validate();
  if (config.vectorizer.kind == VectorizerKind::kEmbedding && !config.vectorizer.embeddings) {
    fail(ErrorKind::kInvalidArgument, "embedding vectorizer needs an embedding table");
  }
  const std::size_t n = data.gold.size();
  const FoldAssignment folds = config.stratified
                                   ? stratified_kfold_split(data.gold, config.k, config.seed)
                                   : kfold_split(n, config.k, config.seed);

  struct FoldResult {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
    StatementEncoder encoder;
    std::vector<LabelSet> predictions;
  };

  auto run_fold = [&](std::size_t f) {
    FoldResult r;
    r.train = folds.train_indices(f);
    r.test = folds.test_indices(f);
    std::vector<TokenSequence> train_tokens;
    std::vector<LabelSet> train_gold;
    train_tokens.reserve(r.train.size());
    for (std::size_t i : r.train) {
      train_tokens.push_back(data.tokens[i]);
      train_gold.push_back(data.gold[i]);
    }
    r.encoder = StatementEncoder::fit(config.vectorizer, train_tokens);
    std::vector<FeatureVector> xs;
    xs.reserve(train_tokens.size());
    for (const auto& toks : train_tokens) xs.push_back(r.encoder.encode(toks));
    const BrModel model = train_binary_relevance(xs, train_gold, config.hyperparams);
    for (std::size_t i : r.test) {
      r.predictions.push_back(predict_labels(model, r.encoder.encode(data.tokens[i])).labels);
    }
    return r;
  };

  std::size_t threads = config.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, config.k);

  std::vector<FoldResult> results;
  results.reserve(config.k);
  for (std::size_t first = 0; first < config.k; first += threads) {
    const std::size_t last = std::min(config.k, first + threads);
    if (last - first == 1) {
      results.push_back(run_fold(first));
      continue;
    }
    std::vector<std::future<FoldResult>> pending;
    for (std::size_t f = first; f < last; ++f) {
      pending.push_back(std::async(std::launch::async, run_fold, f));
    }
    for (auto& p : pending) results.push_back(p.get());
  }

  std::vector<LabelSet> predictions(n);
  for (std::size_t f = 0; f < results.size(); ++f) {
    const FoldResult& r = results[f];
    for (std::size_t j = 0; j < r.test.size(); ++j) predictions[r.test[j]] = r.predictions[j];
    if (options.on_fold) options.on_fold(FoldContext{f, r.train, r.test, r.encoder});
  }

  EvalReport report = evaluate_predictions(data.gold, predictions);
  report.config = config.descriptor();
  report.vectorizer = std::string(vectorizer_kind_name(config.vectorizer.kind));
  return report;
}

std::string EvalReport::to_json() const {
  ordered_json j;
  j["config"] = config;
  j["vectorizer"] = vectorizer;
  j["n_instances"] = n_instances;
  ordered_json labels = ordered_json::object();
  for (NfrLabel l : kAllLabels) {
    ordered_json m = metrics_json(per_label[label_index(l)]);
    m["support"] = support[label_index(l)];
    labels[std::string(label_name(l))] = std::move(m);
  }
  j["per_label"] = std::move(labels);
  j["per_label_set_metrics"] = "one-vs-rest projection onto {label, rest}, n_labels=2";
  j["average"] = metrics_json(average);
  ordered_json corpus;
  corpus["subset_accuracy"] = corpus_level.subset_accuracy;
  corpus["hamming_score"] = corpus_level.hamming_score;
  corpus["hamming_loss"] = corpus_level.hamming_loss;
  corpus["n_labels"] = kNumLabels;
  j["corpus_level"] = std::move(corpus);
  return j.dump(2);
}

std::string eval_table_csv(std::span<const EvalReport> reports) {
  static constexpr const char* kColumns[] = {"P", "R", "F2", "HS", "SA", "HL"};
  std::string out = "label";
  for (const auto& r : reports) {
    for (const char* c : kColumns) out += "," + r.vectorizer + "_" + c;
  }
  out += '\n';
  auto row = [&](std::string_view name, auto metrics_of) {
    out += name;
    for (const auto& r : reports) {
      const LabelMetrics& m = metrics_of(r);
      for (double v : {m.precision, m.recall, m.f2, m.hamming_score, m.subset_accuracy,
                       m.hamming_loss}) {
        out += "," + fixed4(v);
      }
    }
    out += '\n';
  };
  for (NfrLabel l : kAllLabels) {
    row(label_name(l), [&](const EvalReport& r) -> const LabelMetrics& {
      return r.per_label[label_index(l)];
    });
  }
  row("Average", [](const EvalReport& r) -> const LabelMetrics& { return r.average; });
  return out;
}

std::string eval_table_text(const EvalReport& r) {
  std::ostringstream out;
  out << r.config << "  (n=" << r.n_instances << ")\n";
  out << std::left << std::setw(17) << "label" << std::right;
  for (const char* c : {"P", "R", "F2", "HS", "SA", "HL"}) out << std::setw(8) << c;
  out << '\n';
  auto line = [&](std::string_view name, const LabelMetrics& m) {
    out << std::left << std::setw(17) << name << std::right;
    for (double v : {m.precision, m.recall, m.f2, m.hamming_score, m.subset_accuracy,
                     m.hamming_loss}) {
      out << std::setw(8) << fixed4(v);
    }
    out << '\n';
  };
  for (NfrLabel l : kAllLabels) line(label_name(l), r.per_label[label_index(l)]);
  line("Average", r.average);
  out << "corpus-level (11 labels): SA=" << fixed4(r.corpus_level.subset_accuracy)
      << " HS=" << fixed4(r.corpus_level.hamming_score)
      << " HL=" << fixed4(r.corpus_level.hamming_loss) << '\n';
  return out.str();
}

}  // namespace nfrlens
