#include "nfrlens/bundle.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nfrlens/error.hpp"

namespace nfrlens {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::string_view kFormat = "nfrlens-bundle/1";

std::string format_double(double x) {
  std::ostringstream out;
  out.precision(6);
  out << x;
  return out.str();
}

ordered_json hyperparams_json(const SvmHyperparams& hp) {
  ordered_json j;
  j["c"] = hp.c;
  j["epochs"] = hp.epochs;
  j["seed"] = hp.seed;
  return j;
}

SvmHyperparams hyperparams_from(const nlohmann::json& j) {
  SvmHyperparams hp;
  hp.c = j.at("c").get<double>();
  hp.epochs = j.at("epochs").get<std::uint32_t>();
  hp.seed = j.at("seed").get<std::uint64_t>();
  hp.validate();
  return hp;
}

}  // namespace

std::string ModelBundle::descriptor() const {
  std::string enc = std::string(vectorizer_kind_name(encoder.kind()));
  enc += encoder.kind() == VectorizerKind::kTfidf ? "(|V|=" : "(dim=";
  enc += std::to_string(encoder.dim()) + ")";
  return enc + " + BR/linear-SVM(c=" + format_double(hyperparams.c) +
         ", epochs=" + std::to_string(hyperparams.epochs) +
         ", seed=" + std::to_string(hyperparams.seed) + ")";
}

std::string serialize_bundle(const ModelBundle& bundle) {
  const std::string vec_hash = bundle.encoder.fingerprint();
  ordered_json j;
  j["format"] = kFormat;
  j["descriptor"] = bundle.descriptor();
  j["stopwords_fingerprint"] = bundle.stopwords_fingerprint;

  ordered_json vec;
  vec["kind"] = vectorizer_kind_name(bundle.encoder.kind());
  vec["hash"] = vec_hash;
  if (const auto* tfidf = bundle.encoder.tfidf()) {
    vec["tfidf"] = ordered_json::parse(tfidf->to_json());
  } else {
    vec["embeddings_path"] = bundle.embeddings_path;
    vec["dim"] = bundle.encoder.dim();
  }
  j["vectorizer"] = std::move(vec);

  ordered_json models = ordered_json::array();
  for (const LinearModel& m : bundle.model.models) {
    ordered_json jm;
    jm["label"] = label_name(m.label);
    jm["weights"] = m.weights;
    jm["bias"] = m.bias;
    jm["constant_class"] = m.constant_class ? ordered_json(*m.constant_class) : ordered_json();
    jm["hyperparams"] = hyperparams_json(bundle.hyperparams);
    jm["vectorizer_hash"] = vec_hash;
    models.push_back(std::move(jm));
  }
  j["models"] = std::move(models);
  return j.dump(1) + "\n";
}

ModelBundle parse_bundle(std::string_view text,
                         const std::filesystem::path& embeddings_override) {
  ModelBundle bundle;
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("format").get<std::string>() != kFormat) {
      fail(ErrorKind::kMalformedRecord, "unsupported bundle format");
    }
    bundle.stopwords_fingerprint = j.value("stopwords_fingerprint", "");
    const auto& vec = j.at("vectorizer");
    const VectorizerKind kind = parse_vectorizer_kind(vec.at("kind").get<std::string>());
    if (kind == VectorizerKind::kTfidf) {
      bundle.encoder = StatementEncoder::from_tfidf(TfidfVectorizer::from_json(vec.at("tfidf").dump()));
    } else {
      bundle.embeddings_path = vec.at("embeddings_path").get<std::string>();
      const std::filesystem::path path =
          embeddings_override.empty() ? std::filesystem::path(bundle.embeddings_path)
                                      : embeddings_override;
      auto table = std::make_shared<const EmbeddingTable>(load_embeddings(path));
      if (table->dim() != vec.at("dim").get<std::size_t>()) {
        fail(ErrorKind::kDimensionMismatch, "embedding table dim differs from the bundle's");
      }
      bundle.encoder = StatementEncoder::from_embeddings(std::move(table));
    }
    const std::string vec_hash = vec.at("hash").get<std::string>();
    if (kind == VectorizerKind::kTfidf && vec_hash != bundle.encoder.fingerprint()) {
      fail(ErrorKind::kMalformedRecord, "vectorizer hash does not match its contents");
    }

    const auto& models = j.at("models");
    if (!models.is_array() || models.size() != kNumLabels) {
      fail(ErrorKind::kMalformedRecord, "bundle must hold one model per label");
    }
    std::array<bool, kNumLabels> seen{};
    for (const auto& jm : models) {
      LinearModel m;
      m.label = parse_label_or_throw(jm.at("label").get<std::string>());
      if (seen[label_index(m.label)]) {
        fail(ErrorKind::kMalformedRecord, "duplicate model for label " +
                                              std::string(label_name(m.label)));
      }
      seen[label_index(m.label)] = true;
      m.weights = jm.at("weights").get<std::vector<double>>();
      m.bias = jm.at("bias").get<double>();
      if (!jm.at("constant_class").is_null()) {
        const int cc = jm.at("constant_class").get<int>();
        if (cc != 1 && cc != -1) fail(ErrorKind::kMalformedRecord, "constant_class must be +/-1");
        m.constant_class = cc;
      }
      if (m.weights.size() != bundle.encoder.dim()) {
        fail(ErrorKind::kDimensionMismatch,
             "model for " + std::string(label_name(m.label)) + " has " +
                 std::to_string(m.weights.size()) + " weights, vectorizer dim is " +
                 std::to_string(bundle.encoder.dim()));
      }
      if (jm.at("vectorizer_hash").get<std::string>() != vec_hash) {
        fail(ErrorKind::kMalformedRecord, "model trained against a different vectorizer");
      }
      bundle.hyperparams = hyperparams_from(jm.at("hyperparams"));
      bundle.model.models[label_index(m.label)] = std::move(m);
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kMalformedRecord, std::string("model bundle: ") + e.what());
  }
  return bundle;
}

ModelBundle load_bundle(const std::filesystem::path& path,
                        const std::filesystem::path& embeddings_override) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open model bundle " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_bundle(buf.str(), embeddings_override);
}

void save_bundle(const ModelBundle& bundle, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::kIo, "cannot write model bundle " + path.string());
  out << serialize_bundle(bundle);
  if (!out) fail(ErrorKind::kIo, "failed writing " + path.string());
}

}  // namespace nfrlens
