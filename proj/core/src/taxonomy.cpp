#include "nfrlens/taxonomy.hpp"

#include <cctype>

#include "nfrlens/error.hpp"

namespace nfrlens {
namespace {

struct LabelInfo {
  std::string_view name;
  std::string_view description;
};

constexpr std::array<LabelInfo, kNumLabels> kLabelInfo = {{
    {"Usability",
     "Any requirement that specify the end-user-interactions with the system and the "
     "effort required to learn, operate, prepare input, and interpret any system outputs"},
    {"Performance",
     "Any requirement that specifies the capability of a software product to provide "
     "appropriate performance relative to the number of resources needed to perform "
     "effectively under stated conditions"},
    {"Security",
     "Any requirement which prevents unauthorized access to the system, programs, and data"},
    {"Legal",
     "Any requirement that specifies the software capability to guarantee users rights to "
     "access/delete their personal data, and resolve their legal complaints against the "
     "platform"},
    {"Safety",
     "Any requirement that specifies the software capability to ensure the state of being "
     "\"safe\", the condition of being protected from harm or other non-desirable outcomes"},
    {"Customizability",
     "Any requirement that specifies the capability of a software product to personalize "
     "and customize services according to its users' preferences"},
    {"Accuracy",
     "Any requirement that is concerned with defining the precision which the system "
     "records or produces data."},
    {"Maintainability",
     "Any requirement that specifies the capability of a software product to operate "
     "without failure and maintain a certain level of performance when used under normal "
     "conditions during a given time period"},
    {"Trust",
     "Any requirement that is used to enhance users' confidence, faith, or hope in the "
     "software system"},
    {"Accessibility",
     "Any requirement that specifies the capability of a software product to be accessible "
     "and usable by all users, including people with disabilities"},
    {"Other",
     "Statements that specify the capability of the software to provide services, enable "
     "users to refer friends, or the system to conduct research, are included in this "
     "category"},
}};

}  // namespace

std::string_view label_name(NfrLabel label) noexcept {
  return kLabelInfo[label_index(label)].name;
}

std::string label_slug(NfrLabel label) {
  std::string s(label_name(label));
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string_view label_description(NfrLabel label) noexcept {
  return kLabelInfo[label_index(label)].description;
}

std::optional<NfrLabel> parse_label(std::string_view name) noexcept {
  for (NfrLabel l : kAllLabels) {
    if (label_name(l) == name) return l;
  }
  return std::nullopt;
}

NfrLabel parse_label_or_throw(std::string_view name) {
  if (auto l = parse_label(name)) return *l;
  fail(ErrorKind::kUnknownLabel, std::string(name));
}

std::vector<NfrLabel> LabelSet::labels() const {
  std::vector<NfrLabel> out;
  for (NfrLabel l : kAllLabels) {
    if (contains(l)) out.push_back(l);
  }
  return out;
}

std::string to_string(const LabelSet& set) {
  std::string out = "{";
  bool first = true;
  for (NfrLabel l : set.labels()) {
    if (!first) out += ", ";
    out += label_name(l);
    first = false;
  }
  return out + "}";
}

}  // namespace nfrlens
