#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "nfrlens/annotate.hpp"
#include "nfrlens/bundle.hpp"
#include "nfrlens/corpus.hpp"
#include "nfrlens/error.hpp"
#include "nfrlens/eval.hpp"
#include "nfrlens/learner.hpp"
#include "nfrlens/textprep.hpp"
#include "nfrlens/vectorize.hpp"

namespace nfrlens::cli {
namespace {

namespace fs = std::filesystem;

constexpr const char* kBundleName = "model.bundle.json";

struct RunConfig {
  std::string corpus;
  std::string embeddings;
  std::string vectorizer = "tfidf";
  std::string stopwords;
  std::string out = ".";
  double c = 1.0;
  std::uint32_t epochs = 100;
  std::uint64_t seed = 42;
  std::size_t k = 10;
  std::size_t threads = 0;
  bool stratify = false;
  // annotate
  std::string model;
  std::string policy;
  std::string palette;
};

// Raised for misuse that CLI11 cannot see, such as flag combinations.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::kIo, "cannot write " + path.string());
  out << contents;
  if (!out) fail(ErrorKind::kIo, "failed writing " + path.string());
}

fs::path output_dir(const RunConfig& cfg) {
  const fs::path dir(cfg.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorKind::kIo, "cannot create output directory " + dir.string());
  return dir;
}

StopWordList stop_words(const RunConfig& cfg) {
  if (cfg.stopwords.empty()) return StopWordList::english();
  return StopWordList::load(cfg.stopwords);
}

SvmHyperparams hyperparams(const RunConfig& cfg) {
  SvmHyperparams hp;
  hp.c = cfg.c;
  hp.epochs = cfg.epochs;
  hp.seed = cfg.seed;
  hp.validate();
  return hp;
}

VectorizerConfig vectorizer(const RunConfig& cfg) {
  VectorizerConfig vc;
  vc.kind = parse_vectorizer_kind(cfg.vectorizer);
  if (vc.kind == VectorizerKind::kEmbedding) {
    if (cfg.embeddings.empty()) {
      throw UsageError("--vectorizer embedding requires --embeddings <file>");
    }
    vc.embeddings = std::make_shared<const EmbeddingTable>(load_embeddings(cfg.embeddings));
  }
  return vc;
}

void add_model_flags(CLI::App& cmd, RunConfig& cfg) {
  cmd.add_option("--corpus", cfg.corpus, "Labeled corpus (JSONL)")->required();
  cmd.add_option("--vectorizer", cfg.vectorizer, "Statement representation")
      ->check(CLI::IsMember({"tfidf", "embedding"}))
      ->capture_default_str();
  cmd.add_option("--embeddings", cfg.embeddings, "Word vectors in GloVe text format");
  cmd.add_option("--c", cfg.c, "SVM soft-margin weight")->capture_default_str();
  cmd.add_option("--epochs", cfg.epochs, "SVM training epochs")->capture_default_str();
  cmd.add_option("--seed", cfg.seed, "Seed for shuffles and fold splits")->capture_default_str();
  cmd.add_option("--stopwords", cfg.stopwords, "Stop-word list replacing the bundled one");
  cmd.add_option("--out", cfg.out, "Output directory")->capture_default_str();
}

int cmd_stats(const RunConfig& cfg, std::ostream& out) {
  const CorpusStats stats = corpus_stats(load_corpus(cfg.corpus));
  out << corpus_stats_json(stats) << "\n\n" << corpus_stats_table(stats);
  return kOk;
}

int cmd_crossval(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  CrossValidationConfig cv;
  cv.vectorizer = vectorizer(cfg);
  cv.hyperparams = hyperparams(cfg);
  cv.k = cfg.k;
  cv.seed = cfg.seed;
  cv.stratified = cfg.stratify;
  cv.threads = cfg.threads;
  const Corpus corpus = load_corpus(cfg.corpus);
  const EvalReport report = cross_validate(corpus, cv, stop_words(cfg));

  const fs::path dir = output_dir(cfg);
  write_file(dir / "eval_report.json", report.to_json());
  write_file(dir / "table.csv", eval_table_csv(std::span<const EvalReport>(&report, 1)));
  out << eval_table_text(report);
  err << "wrote " << (dir / "eval_report.json").string() << " and "
      << (dir / "table.csv").string() << "\n";
  return kOk;
}

int cmd_train(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const VectorizerConfig vc = vectorizer(cfg);
  const SvmHyperparams hp = hyperparams(cfg);
  const StopWordList stops = stop_words(cfg);
  const LabeledData data = labeled_statements(load_corpus(cfg.corpus), stops);
  if (data.tokens.empty()) fail(ErrorKind::kEmptyTrainingSet, "corpus has no labeled statements");

  ModelBundle bundle;
  bundle.encoder = StatementEncoder::fit(vc, data.tokens);
  std::vector<FeatureVector> xs;
  xs.reserve(data.tokens.size());
  for (const auto& t : data.tokens) xs.push_back(bundle.encoder.encode(t));
  bundle.model = train_binary_relevance(xs, data.gold, hp);
  bundle.hyperparams = hp;
  bundle.stopwords_fingerprint = stops.fingerprint();
  if (vc.kind == VectorizerKind::kEmbedding) bundle.embeddings_path = cfg.embeddings;

  const fs::path path = output_dir(cfg) / kBundleName;
  save_bundle(bundle, path);
  out << bundle.descriptor() << "\n";
  err << "wrote " << path.string() << "\n";
  return kOk;
}

std::vector<PolicyDocument> policy_documents(const fs::path& path) {
  if (path.extension() == ".jsonl") return load_corpus(path).documents;
  std::string id = path.stem().string();
  PolicyDocument doc = document_from_text(id, read_file(path));
  doc.app_name = id;
  return {std::move(doc)};
}

void check_file_stem(const std::string& id) {
  if (id.empty() || id == "." || id == ".." ||
      id.find_first_of("/\\") != std::string::npos) {
    fail(ErrorKind::kMalformedRecord, "document id '" + id + "' is not usable as a file name");
  }
}

int cmd_annotate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ModelBundle bundle = load_bundle(cfg.model, cfg.embeddings);
  const StopWordList stops = stop_words(cfg);
  if (!bundle.stopwords_fingerprint.empty() &&
      bundle.stopwords_fingerprint != stops.fingerprint()) {
    err << "warning: stop-word list differs from the one the model was trained with\n";
  }
  const Palette palette = cfg.palette.empty() ? default_palette() : load_palette(cfg.palette);
  const std::vector<PolicyDocument> docs = policy_documents(cfg.policy);
  for (const auto& doc : docs) check_file_stem(doc.id);

  const fs::path dir = output_dir(cfg);
  for (const auto& doc : docs) {
    const AnnotatedDocument ad = annotate_document(doc, bundle, stops, palette);
    write_file(dir / (doc.id + ".html"), render_html(ad));
    write_file(dir / (doc.id + ".annotations.json"), render_json(ad));
    std::size_t highlighted = 0;
    for (const auto& a : ad.annotated) highlighted += a.predicted.empty() ? 0 : 1;
    out << doc.id << "\t" << doc.statements.size() << " statements\t" << highlighted
        << " annotated\n";
  }
  return kOk;
}

// Config files hold "key = value" lines, either at top level or under a
// [command] section. Each entry becomes a flag unless that flag was also
// given on the command line, so flags win.
std::vector<std::string> merge_config(const std::vector<std::string>& args) {
  if (args.empty()) return args;
  const std::string& command = args.front();
  std::vector<std::string> rest;
  std::string config_path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  std::vector<std::string> merged{command};
  merged.insert(merged.end(), rest.begin(), rest.end());
  if (config_path.empty()) return merged;

  auto given = [&](const std::string& flag) {
    for (const auto& a : rest) {
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    }
    return false;
  };
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    s = b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
      s = s.substr(1, s.size() - 2);
    }
    return s;
  };

  std::istringstream in(read_file(config_path));
  std::string line;
  std::string section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      fail_at_line(ErrorKind::kMalformedRecord, lineno, "expected key = value in " + config_path);
    }
    if (!section.empty() && section != command) continue;
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string flag = "--" + key;
    if (given(flag)) continue;
    if (value == "true") {
      merged.push_back(flag);
    } else if (value != "false") {
      merged.push_back(flag);
      merged.push_back(value);
    }
  }
  return merged;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Annotate privacy policies with the non-functional requirements their data "
               "collection serves.",
               "nfrlens"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every command");

  RunConfig cfg;

  auto* stats = app.add_subcommand("stats", "Corpus statistics and readability");
  stats->add_option("--corpus", cfg.corpus, "Corpus (JSONL)")->required();

  auto* crossval = app.add_subcommand("crossval", "k-fold cross-validation report");
  add_model_flags(*crossval, cfg);
  crossval->add_option("--k", cfg.k, "Number of folds")->capture_default_str();
  crossval->add_flag("--stratify", cfg.stratify, "Label-stratified folds");
  crossval->add_option("--threads", cfg.threads, "Worker threads, 0 = all cores");

  auto* train = app.add_subcommand("train", "Train and save a model bundle");
  add_model_flags(*train, cfg);

  auto* annotate = app.add_subcommand("annotate", "Render annotated HTML and JSON");
  annotate->add_option("--model", cfg.model, "Model bundle from `train`")->required();
  annotate->add_option("--policy", cfg.policy, "Plain-text policy or JSONL corpus")
      ->required();
  annotate->add_option("--embeddings", cfg.embeddings,
                       "Override the bundle's embedding file location");
  annotate->add_option("--palette", cfg.palette, "JSON map of label to #RRGGBB");
  annotate->add_option("--stopwords", cfg.stopwords, "Stop-word list replacing the bundled one");
  annotate->add_option("--out", cfg.out, "Output directory")->capture_default_str();

  app.footer(
      "Every command also accepts --config <file> with \"key = value\" lines (top level "
      "or under a [command] section). Flags given on the command line win.");

  std::vector<std::string> argv_storage{"nfrlens"};
  try {
    const auto merged = merge_config(args);
    argv_storage.insert(argv_storage.end(), merged.begin(), merged.end());
  } catch (const Error& e) {
    err << "nfrlens: " << e.what() << "\n";
    return kUserError;
  }
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUserError;
  }

  try {
    if (*stats) return cmd_stats(cfg, out);
    if (*crossval) return cmd_crossval(cfg, out, err);
    if (*train) return cmd_train(cfg, out, err);
    if (*annotate) return cmd_annotate(cfg, out, err);
  } catch (const UsageError& e) {
    err << "nfrlens: usage error: " << e.what() << "\n";
    return kUserError;
  } catch (const Error& e) {
    err << "nfrlens: " << e.what() << "\n";
    return kUserError;
  } catch (const std::exception& e) {
    err << "nfrlens: internal error: " << e.what() << "\n";
    return kInternalFailure;
  }
  return kInternalFailure;
}

}  // namespace nfrlens::cli
