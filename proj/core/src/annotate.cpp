#include "nfrlens/annotate.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nfrlens/error.hpp"

namespace nfrlens {
namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

bool is_hex_color(std::string_view s) {
  if (s.size() != 7 || s[0] != '#') return false;
  return std::all_of(s.begin() + 1, s.end(),
                     [](char c) { return std::isxdigit(static_cast<unsigned char>(c)) != 0; });
}

std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

void check_palette(const Palette& p) {
  std::set<std::string> seen;
  for (NfrLabel l : kAllLabels) {
    const std::string& c = p[label_index(l)];
    if (!is_hex_color(c)) {
      fail(ErrorKind::kMalformedRecord,
           "palette color for " + std::string(label_name(l)) + " is not #RRGGBB: " + c);
    }
    if (!seen.insert(upper(c)).second) {
      fail(ErrorKind::kMalformedRecord, "palette colors must be distinct: " + c);
    }
  }
}

double round6(double x) {
  if (!std::isfinite(x) || std::fabs(x) >= 1e300) return x;
  return std::round(x * 1e6) / 1e6;
}

// JSON embedded in a <script> element must not contain markup characters.
std::string script_safe(std::string_view json_text) {
  std::string out;
  out.reserve(json_text.size());
  for (char c : json_text) {
    switch (c) {
      case '<': out += "\\u003c"; break;
      case '>': out += "\\u003e"; break;
      case '&': out += "\\u0026"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr std::string_view kStyle =
    "body{font-family:Georgia,'Times New Roman',serif;max-width:52em;margin:2em auto;"
    "padding:0 1em;line-height:1.6;color:#222;background:#fff}\n"
    "h1{font-size:1.4em;margin-bottom:.2em}\n"
    ".nfr-model{color:#666;font:.8em sans-serif;margin-top:0}\n"
    ".nfr-policy{white-space:pre-wrap}\n"
    ".nfr-meta{white-space:normal}\n"
    ".nfr-chip{display:inline-block;font:600 .7em sans-serif;padding:0 .45em;"
    "margin-left:.25em;border:1px solid #666;border-radius:.7em;vertical-align:middle}\n"
    ".nfr-note-toggle{position:absolute;opacity:0;width:1px;height:1px}\n"
    ".nfr-note-button{cursor:pointer;font:.75em sans-serif;margin-left:.3em;color:#345}\n"
    ".nfr-note{display:none;margin:.3em 0 .6em 1.5em;padding:.3em .6em;white-space:pre-wrap;"
    "font:.85em sans-serif;border-left:3px solid #999;background:#f6f6f6}\n"
    ".nfr-note-toggle:checked ~ .nfr-note{display:block}\n"
    ".nfr-key-panel{margin-top:2em;border-top:1px solid #ccc;padding-top:.5em;"
    "font:.9em sans-serif}\n"
    ".nfr-key-panel summary{cursor:pointer;font-weight:600}\n"
    ".nfr-key{list-style:none;padding-left:0}\n"
    ".nfr-key li{margin:.4em 0}\n"
    ".nfr-swatch{display:inline-block;width:1em;height:1em;margin-right:.5em;"
    "vertical-align:middle;border:1px solid #666}\n";

}  // namespace

const Palette& default_palette() {
  static const Palette kPalette = {
      "#77AADD",  // Usability
      "#EE8866",  // Performance
      "#EEDD88",  // Security
      "#FFAABB",  // Legal
      "#99DDFF",  // Safety
      "#44BB99",  // Customizability
      "#BBCC33",  // Accuracy
      "#AAAA00",  // Maintainability
      "#DDDDDD",  // Trust
      "#CC99EE",  // Accessibility
      "#D9B38C",  // Other
  };
  return kPalette;
}

Palette parse_palette(std::string_view text, const Palette& base) {
  Palette p = base;
  try {
    const auto j = json::parse(text);
    if (!j.is_object()) fail(ErrorKind::kMalformedRecord, "palette must be a JSON object");
    for (const auto& [name, color] : j.items()) {
      const NfrLabel l = parse_label_or_throw(name);
      if (!color.is_string()) fail(ErrorKind::kMalformedRecord, "palette colors are strings");
      p[label_index(l)] = color.get<std::string>();
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::kMalformedRecord, std::string("palette: ") + e.what());
  }
  check_palette(p);
  return p;
}

Palette load_palette(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open palette " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_palette(buf.str());
}

std::string palette_json(const Palette& palette) {
  ordered_json j = ordered_json::object();
  for (NfrLabel l : kAllLabels) j[std::string(label_name(l))] = palette[label_index(l)];
  return j.dump(2);
}

std::optional<NfrLabel> primary_label(const LabelSet& predicted,
                                      const std::array<double, kNumLabels>& scores) {
  std::optional<NfrLabel> best;
  for (NfrLabel l : predicted.labels()) {
    if (!best || scores[label_index(l)] > scores[label_index(*best)]) best = l;
  }
  return best;
}

std::string annotation_comment(const LabelSet& predicted) {
  std::string out;
  for (NfrLabel l : predicted.labels()) {
    if (!out.empty()) out += '\n';
    out += label_name(l);
    out += ": ";
    out += label_description(l);
  }
  return out;
}

AnnotatedStatement annotate_statement(const Statement& statement,
                                      const LabelPrediction& prediction) {
  AnnotatedStatement a;
  a.statement = statement;
  a.predicted = prediction.labels;
  a.scores = prediction.scores;
  a.primary_label = primary_label(a.predicted, a.scores);
  a.comment = annotation_comment(a.predicted);
  return a;
}

AnnotatedDocument annotate_document(const PolicyDocument& doc, const BrModel& model,
                                    const StatementEncoder& encoder,
                                    const StopWordList& stops, const Palette& palette,
                                    std::string model_descriptor) {
  if (encoder.dim() != model.dim()) {
    fail(ErrorKind::kDimensionMismatch, "vectorizer dim " + std::to_string(encoder.dim()) +
                                            " but model dim " + std::to_string(model.dim()));
  }
  check_palette(palette);
  AnnotatedDocument ad;
  ad.doc = doc;
  ad.palette = palette;
  ad.model_descriptor = std::move(model_descriptor);
  ad.annotated.reserve(doc.statements.size());
  for (const Statement& s : doc.statements) {
    const FeatureVector x = encoder.encode(preprocess(s.text, stops));
    ad.annotated.push_back(annotate_statement(s, predict_labels(model, x)));
  }
  return ad;
}

AnnotatedDocument annotate_document(const PolicyDocument& doc, const ModelBundle& bundle,
                                    const StopWordList& stops, const Palette& palette) {
  return annotate_document(doc, bundle.model, bundle.encoder, stops, palette,
                           bundle.descriptor());
}

std::string html_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size() + text.size() / 8);
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string render_html(const AnnotatedDocument& ad) {
  const std::string& text = ad.doc.raw_text;
  const std::string title =
      ad.doc.app_name.empty() ? ad.doc.id : ad.doc.app_name;
  std::string out;
  out.reserve(text.size() * 2 + 8192);
  out += "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n";
  out += "<meta name=\"viewport\" content=\"width=device-width, initial-scale=1\">\n";
  out += "<title>" + html_escape(title) + " privacy policy (annotated)</title>\n";
  out += "<style>\n";
  out += kStyle;
  out += "</style>\n</head>\n<body>\n";
  out += "<header>\n<h1>" + html_escape(title) + " privacy policy</h1>\n";
  if (!ad.model_descriptor.empty()) {
    out += "<p class=\"nfr-model\">Annotations by " + html_escape(ad.model_descriptor) +
           "</p>\n";
  }
  out += "</header>\n";
  out += "<main id=\"nfr-policy\" class=\"nfr-policy\" data-doc=\"" + html_escape(ad.doc.id) +
         "\">";

  std::size_t cursor = 0;
  std::size_t note_id = 0;
  for (const AnnotatedStatement& a : ad.annotated) {
    const Span sp = a.statement.span;
    if (a.predicted.empty() || !a.primary_label || sp.start < cursor || sp.end > text.size() ||
        sp.start >= sp.end) {
      continue;
    }
    out += html_escape(std::string_view(text).substr(cursor, sp.start - cursor));
    const NfrLabel primary = *a.primary_label;
    const std::string& color = ad.palette[label_index(primary)];
    std::string labels_attr;
    for (NfrLabel l : a.predicted.labels()) {
      if (!labels_attr.empty()) labels_attr += ' ';
      labels_attr += label_name(l);
    }
    const std::string comment = html_escape(a.comment);
    out += "<span class=\"nfr-" + label_slug(primary) + "\" data-statement=\"" +
           html_escape(a.statement.id) + "\" data-labels=\"" + labels_attr +
           "\" style=\"background-color:" + color + "\" title=\"" + comment + "\">";
    out += html_escape(std::string_view(text).substr(sp.start, sp.length()));
    out += "</span>";

    ++note_id;
    const std::string nid = "nfr-note-" + std::to_string(note_id);
    out += "<span class=\"nfr-meta\" data-statement=\"" + html_escape(a.statement.id) + "\">";
    for (NfrLabel l : a.predicted.labels()) {
      out += "<span class=\"nfr-chip\" data-label=\"" + std::string(label_name(l)) +
             "\" style=\"background-color:" + ad.palette[label_index(l)] + "\">" +
             std::string(label_name(l)) + "</span>";
    }
    out += "<input type=\"checkbox\" class=\"nfr-note-toggle\" id=\"" + nid + "\">";
    out += "<label class=\"nfr-note-button\" for=\"" + nid +
           "\" title=\"Show or hide the comment\">[?]</label>";
    out += "<span class=\"nfr-note\">" + comment + "</span>";
    out += "</span>";
    cursor = sp.end;
  }
  out += html_escape(std::string_view(text).substr(std::min(cursor, text.size())));
  out += "</main>\n";

  out += "<details id=\"nfr-key-panel\" class=\"nfr-key-panel\">\n";
  out += "<summary>Key: what the highlight colors mean</summary>\n<ul class=\"nfr-key\">\n";
  for (NfrLabel l : kAllLabels) {
    out += "<li data-label=\"" + std::string(label_name(l)) +
           "\"><span class=\"nfr-swatch\" style=\"background-color:" +
           ad.palette[label_index(l)] + "\"></span><strong>" + std::string(label_name(l)) +
           "</strong>: " + html_escape(label_description(l)) + "</li>\n";
  }
  out += "</ul>\n</details>\n";
  out += "<script type=\"application/json\" id=\"nfr-annotations\">";
  out += script_safe(render_json(ad));
  out += "</script>\n";
  out += "<script src=\"" + std::string(kViewerScript) + "\" defer></script>\n";
  out += "</body>\n</html>\n";
  return out;
}

AnnotationFile annotation_file(const AnnotatedDocument& ad) {
  AnnotationFile f;
  f.doc_id = ad.doc.id;
  f.app_name = ad.doc.app_name;
  f.model_descriptor = ad.model_descriptor;
  f.palette = ad.palette;
  for (const AnnotatedStatement& a : ad.annotated) {
    if (a.predicted.empty() || !a.primary_label) continue;
    AnnotationRecord r;
    r.statement_id = a.statement.id;
    r.start = a.statement.span.start;
    r.end = a.statement.span.end;
    r.labels = a.predicted;
    r.primary = *a.primary_label;
    for (std::size_t i = 0; i < kNumLabels; ++i) r.scores[i] = round6(a.scores[i]);
    r.comment = a.comment;
    f.annotations.push_back(std::move(r));
  }
  return f;
}

std::string render_json(const AnnotationFile& f) {
  ordered_json j;
  j["doc_id"] = f.doc_id;
  j["app_name"] = f.app_name;
  j["model_descriptor"] = f.model_descriptor;
  ordered_json palette = ordered_json::object();
  for (NfrLabel l : kAllLabels) palette[std::string(label_name(l))] = f.palette[label_index(l)];
  j["palette"] = std::move(palette);
  ordered_json anns = ordered_json::array();
  for (const AnnotationRecord& r : f.annotations) {
    ordered_json a;
    a["statement_id"] = r.statement_id;
    a["start"] = r.start;
    a["end"] = r.end;
    ordered_json labels = ordered_json::array();
    for (NfrLabel l : r.labels.labels()) labels.push_back(label_name(l));
    a["labels"] = std::move(labels);
    a["primary"] = label_name(r.primary);
    ordered_json scores = ordered_json::object();
    for (NfrLabel l : kAllLabels) {
      scores[std::string(label_name(l))] = round6(r.scores[label_index(l)]);
    }
    a["scores"] = std::move(scores);
    a["comment"] = r.comment;
    anns.push_back(std::move(a));
  }
  j["annotations"] = std::move(anns);
  return j.dump(2) + "\n";
}

std::string render_json(const AnnotatedDocument& ad) {
  return render_json(annotation_file(ad));
}

AnnotationFile parse_annotation_json(std::string_view text) {
  AnnotationFile f;
  try {
    const auto j = json::parse(text);
    f.doc_id = j.at("doc_id").get<std::string>();
    f.app_name = j.at("app_name").get<std::string>();
    f.model_descriptor = j.at("model_descriptor").get<std::string>();
    const auto& palette = j.at("palette");
    if (!palette.is_object() || palette.size() != kNumLabels) {
      fail(ErrorKind::kMalformedRecord, "palette must list all eleven labels");
    }
    for (const auto& [name, color] : palette.items()) {
      f.palette[label_index(parse_label_or_throw(name))] = color.get<std::string>();
    }
    check_palette(f.palette);
    for (const auto& a : j.at("annotations")) {
      AnnotationRecord r;
      r.statement_id = a.at("statement_id").get<std::string>();
      r.start = a.at("start").get<std::size_t>();
      r.end = a.at("end").get<std::size_t>();
      for (const auto& name : a.at("labels")) {
        r.labels.insert(parse_label_or_throw(name.get<std::string>()));
      }
      r.primary = parse_label_or_throw(a.at("primary").get<std::string>());
      if (!r.labels.contains(r.primary)) {
        fail(ErrorKind::kMalformedRecord, "primary label missing from labels of " +
                                              r.statement_id);
      }
      const auto& scores = a.at("scores");
      for (const auto& [name, value] : scores.items()) {
        r.scores[label_index(parse_label_or_throw(name))] = value.get<double>();
      }
      r.comment = a.at("comment").get<std::string>();
      f.annotations.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::kMalformedRecord, std::string("annotation JSON: ") + e.what());
  }
  return f;
}

}  // namespace nfrlens
