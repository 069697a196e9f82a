#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nfrlens/bundle.hpp"
#include "nfrlens/corpus.hpp"
#include "nfrlens/learner.hpp"
#include "nfrlens/taxonomy.hpp"
#include "nfrlens/textprep.hpp"
#include "nfrlens/vectorize.hpp"

namespace nfrlens {

// "#RRGGBB" per label, indexed by label_index().
using Palette = std::array<std::string, kNumLabels>;

// Eleven light, colorblind-distinguishable highlight colors; mirrors
// core/data/palette.json.
const Palette& default_palette();
// {"Usability": "#77AADD", ...}. Labels missing from the JSON keep their
// default color. Throws kMalformedRecord for bad colors or a palette whose
// colors are not pairwise distinct, kUnknownLabel for unknown keys.
Palette parse_palette(std::string_view json, const Palette& base = default_palette());
Palette load_palette(const std::filesystem::path& path);
std::string palette_json(const Palette& palette);

struct AnnotatedStatement {
  Statement statement;
  LabelSet predicted;
  std::array<double, kNumLabels> scores{};
  std::optional<NfrLabel> primary_label;
  std::string comment;  // empty when nothing was predicted
};

struct AnnotatedDocument {
  PolicyDocument doc;
  std::vector<AnnotatedStatement> annotated;  // document statement order
  Palette palette = default_palette();
  std::string model_descriptor;
};

// Highest-scoring predicted label; ties go to the earlier taxonomy label.
std::optional<NfrLabel> primary_label(const LabelSet& predicted,
                                      const std::array<double, kNumLabels>& scores);

// "<Label>: <description>" for each predicted label, one per line.
std::string annotation_comment(const LabelSet& predicted);

AnnotatedStatement annotate_statement(const Statement& statement,
                                      const LabelPrediction& prediction);

// Runs preprocess -> encode -> predict_labels on every statement. Throws
// kDimensionMismatch when encoder and model dimensions differ.
AnnotatedDocument annotate_document(const PolicyDocument& doc, const BrModel& model,
                                    const StatementEncoder& encoder,
                                    const StopWordList& stops,
                                    const Palette& palette = default_palette(),
                                    std::string model_descriptor = {});
AnnotatedDocument annotate_document(const PolicyDocument& doc, const ModelBundle& bundle,
                                    const StopWordList& stops,
                                    const Palette& palette = default_palette());

// File name of the optional browser script the HTML refers to.
inline constexpr std::string_view kViewerScript = "nfr-viewer.js";

std::string html_escape(std::string_view text);

// Standalone HTML page. Each statement with a prediction becomes one
// <span class="nfr-<label>"> colored by its primary label, with the comment
// in its title attribute and in a CSS-toggleable note. The key panel is a
// collapsed <details> listing all eleven labels. Byte-deterministic.
std::string render_html(const AnnotatedDocument& ad);

// Wire form of the annotation JSON consumed by the viewer.
struct AnnotationRecord {
  std::string statement_id;
  std::size_t start = 0;
  std::size_t end = 0;
  LabelSet labels;
  NfrLabel primary = NfrLabel::Other;
  std::array<double, kNumLabels> scores{};
  std::string comment;

  friend bool operator==(const AnnotationRecord&, const AnnotationRecord&) = default;
};

struct AnnotationFile {
  std::string doc_id;
  std::string app_name;
  std::string model_descriptor;
  Palette palette{};
  std::vector<AnnotationRecord> annotations;  // predicted statements only

  friend bool operator==(const AnnotationFile&, const AnnotationFile&) = default;
};

AnnotationFile annotation_file(const AnnotatedDocument& ad);
// Scores are rounded to 6 decimals.
std::string render_json(const AnnotationFile& file);
std::string render_json(const AnnotatedDocument& ad);
// Throws kMalformedRecord / kUnknownLabel.
AnnotationFile parse_annotation_json(std::string_view json);

}  // namespace nfrlens
