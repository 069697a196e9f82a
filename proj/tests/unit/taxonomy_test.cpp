#include <set>
#include <string>

#include <gtest/gtest.h>

#include "nfrlens/error.hpp"
#include "nfrlens/taxonomy.hpp"

namespace nfrlens {
namespace {

TEST(Taxonomy, ElevenUniqueLabelsWithDescriptions) {
  std::set<std::string> names;
  for (NfrLabel l : kAllLabels) {
    names.insert(std::string(label_name(l)));
    EXPECT_FALSE(label_description(l).empty()) << label_name(l);
  }
  EXPECT_EQ(names.size(), 11u);
  EXPECT_EQ(kNumLabels, 11u);
}

TEST(Taxonomy, NamesRoundTripCaseSensitive) {
  for (NfrLabel l : kAllLabels) EXPECT_EQ(parse_label(label_name(l)), l);
  EXPECT_EQ(parse_label("Customizability"), NfrLabel::Customizability);
  EXPECT_FALSE(parse_label("security").has_value());
  EXPECT_FALSE(parse_label("Speed").has_value());
}

TEST(Taxonomy, ParseOrThrowReportsUnknownLabel) {
  try {
    parse_label_or_throw("Speed");
    FAIL() << "expected throw";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUnknownLabel);
    EXPECT_NE(std::string(e.what()).find("Speed"), std::string::npos);
  }
}

TEST(Taxonomy, SlugIsLowercaseName) {
  EXPECT_EQ(label_slug(NfrLabel::Customizability), "customizability");
  EXPECT_EQ(label_slug(NfrLabel::Security), "security");
}

TEST(LabelSet, SetAlgebra) {
  LabelSet a{NfrLabel::Security, NfrLabel::Legal};
  LabelSet b{NfrLabel::Legal, NfrLabel::Trust};
  EXPECT_EQ((a & b), (LabelSet{NfrLabel::Legal}));
  EXPECT_EQ((a | b).size(), 3u);
  EXPECT_EQ((a ^ b), (LabelSet{NfrLabel::Security, NfrLabel::Trust}));
  EXPECT_EQ(a.complement().size(), 9u);
  EXPECT_EQ(LabelSet::all().size(), 11u);
  EXPECT_TRUE(LabelSet{}.empty());
}

TEST(LabelSet, IterationFollowsDeclarationOrder) {
  LabelSet s{NfrLabel::Other, NfrLabel::Usability, NfrLabel::Safety};
  const auto v = s.labels();
  ASSERT_EQ(v.size(), 3u);
  EXPECT_EQ(v[0], NfrLabel::Usability);
  EXPECT_EQ(v[1], NfrLabel::Safety);
  EXPECT_EQ(v[2], NfrLabel::Other);
  EXPECT_EQ(to_string(s), "{Usability, Safety, Other}");
}

}  // namespace
}  // namespace nfrlens
