#pragma once

#include <array>
#include <bitset>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nfrlens {

// The closed taxonomy of non-functional requirement categories used to
// justify data collection. Declaration order is significant: it is the
// serialization order, the column order of metric tables and the tie-break
// order when picking a statement's primary label.
enum class NfrLabel : std::uint8_t {
  Usability,
  Performance,
  Security,
  Legal,
  Safety,
  Customizability,
  Accuracy,
  Maintainability,
  Trust,
  Accessibility,
  Other,
};

inline constexpr std::size_t kNumLabels = 11;

inline constexpr std::array<NfrLabel, kNumLabels> kAllLabels = {
    NfrLabel::Usability,     NfrLabel::Performance,     NfrLabel::Security,
    NfrLabel::Legal,         NfrLabel::Safety,          NfrLabel::Customizability,
    NfrLabel::Accuracy,      NfrLabel::Maintainability, NfrLabel::Trust,
    NfrLabel::Accessibility, NfrLabel::Other,
};

constexpr std::size_t label_index(NfrLabel label) noexcept {
  return static_cast<std::size_t>(label);
}

// Canonical id, e.g. "Customizability". Case-sensitive on the wire.
std::string_view label_name(NfrLabel label) noexcept;

// Lowercased id used in CSS class names ("nfr-customizability").
std::string label_slug(NfrLabel label);

// One-sentence definition shown to readers as the annotation comment.
std::string_view label_description(NfrLabel label) noexcept;

std::optional<NfrLabel> parse_label(std::string_view name) noexcept;

// Like parse_label but throws Error{kUnknownLabel}.
NfrLabel parse_label_or_throw(std::string_view name);

// A set of taxonomy labels. Iteration is always in declaration order.
class LabelSet {
 public:
  LabelSet() = default;
  LabelSet(std::initializer_list<NfrLabel> labels) {
    for (NfrLabel l : labels) insert(l);
  }

  static LabelSet all() {
    LabelSet s;
    s.bits_.set();
    return s;
  }
  static LabelSet from_bits(std::uint32_t mask) {
    LabelSet s;
    s.bits_ = std::bitset<kNumLabels>(mask);
    return s;
  }

  void insert(NfrLabel l) { bits_.set(label_index(l)); }
  void erase(NfrLabel l) { bits_.reset(label_index(l)); }
  bool contains(NfrLabel l) const { return bits_.test(label_index(l)); }
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }
  std::uint32_t bits() const { return static_cast<std::uint32_t>(bits_.to_ulong()); }

  std::vector<NfrLabel> labels() const;

  LabelSet operator&(const LabelSet& o) const { return from_raw(bits_ & o.bits_); }
  LabelSet operator|(const LabelSet& o) const { return from_raw(bits_ | o.bits_); }
  LabelSet operator^(const LabelSet& o) const { return from_raw(bits_ ^ o.bits_); }
  LabelSet complement() const { return from_raw(~bits_); }

  friend bool operator==(const LabelSet&, const LabelSet&) = default;

 private:
  static LabelSet from_raw(std::bitset<kNumLabels> b) {
    LabelSet s;
    s.bits_ = b;
    return s;
  }
  std::bitset<kNumLabels> bits_;
};

// "{Security, Legal}" style rendering for logs and test failure messages.
std::string to_string(const LabelSet& set);

}  // namespace nfrlens
