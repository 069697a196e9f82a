#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "nfrlens/bundle.hpp"
#include "nfrlens/error.hpp"
#include "synthetic.hpp"

namespace nfrlens {
namespace {

using nlohmann::json;

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

const ModelBundle& bundle() {
  static const ModelBundle b = [] {
    testing::SyntheticOptions opt;
    opt.per_label = 8;
    return testing::train_bundle(testing::synthetic_corpus(opt), {.c = 2.0, .epochs = 20, .seed = 5});
  }();
  return b;
}

TEST(Bundle, RoundTripPreservesModelsBitForBit) {
  const std::string text = serialize_bundle(bundle());
  const ModelBundle back = parse_bundle(text);
  EXPECT_EQ(back.model, bundle().model);
  EXPECT_EQ(back.hyperparams, bundle().hyperparams);
  EXPECT_EQ(back.encoder.fingerprint(), bundle().encoder.fingerprint());
  EXPECT_EQ(back.stopwords_fingerprint, bundle().stopwords_fingerprint);
  EXPECT_EQ(serialize_bundle(back), text);
}

TEST(Bundle, SerializationIsByteDeterministic) {
  testing::SyntheticOptions opt;
  opt.per_label = 8;
  const ModelBundle again =
      testing::train_bundle(testing::synthetic_corpus(opt), {.c = 2.0, .epochs = 20, .seed = 5});
  EXPECT_EQ(serialize_bundle(again), serialize_bundle(bundle()));
}

TEST(Bundle, DescriptorNamesVectorizerAndHyperparams) {
  const std::string d = bundle().descriptor();
  EXPECT_EQ(d.rfind("tfidf(|V|=", 0), 0u) << d;
  EXPECT_NE(d.find("BR/linear-SVM(c=2, epochs=20, seed=5)"), std::string::npos) << d;
}

TEST(Bundle, FileRoundTrip) {
  testing::TempDir dir;
  save_bundle(bundle(), dir / "m.json");
  EXPECT_EQ(load_bundle(dir / "m.json").model, bundle().model);
  EXPECT_EQ(kind_of([&] { load_bundle(dir / "missing.json"); }), ErrorKind::kIo);
}

TEST(Bundle, RejectsTamperedVectorizer) {
  json j = json::parse(serialize_bundle(bundle()));
  j["vectorizer"]["hash"] = "0000000000000000";
  EXPECT_EQ(kind_of([&] { parse_bundle(j.dump()); }), ErrorKind::kMalformedRecord);

  j = json::parse(serialize_bundle(bundle()));
  j["models"][3]["vectorizer_hash"] = "0000000000000000";
  EXPECT_EQ(kind_of([&] { parse_bundle(j.dump()); }), ErrorKind::kMalformedRecord);
}

TEST(Bundle, RejectsWrongShape) {
  json j = json::parse(serialize_bundle(bundle()));
  j["models"].erase(j["models"].begin());
  EXPECT_EQ(kind_of([&] { parse_bundle(j.dump()); }), ErrorKind::kMalformedRecord);

  j = json::parse(serialize_bundle(bundle()));
  j["models"][0]["weights"].push_back(0.5);
  EXPECT_EQ(kind_of([&] { parse_bundle(j.dump()); }), ErrorKind::kDimensionMismatch);

  j = json::parse(serialize_bundle(bundle()));
  j["models"][1]["label"] = j["models"][0]["label"];
  EXPECT_EQ(kind_of([&] { parse_bundle(j.dump()); }), ErrorKind::kMalformedRecord);

  j = json::parse(serialize_bundle(bundle()));
  j["models"][2]["constant_class"] = 3;
  EXPECT_EQ(kind_of([&] { parse_bundle(j.dump()); }), ErrorKind::kMalformedRecord);

  j = json::parse(serialize_bundle(bundle()));
  j["format"] = "something-else";
  EXPECT_EQ(kind_of([&] { parse_bundle(j.dump()); }), ErrorKind::kMalformedRecord);

  EXPECT_EQ(kind_of([] { parse_bundle("not json"); }), ErrorKind::kMalformedRecord);
  EXPECT_EQ(kind_of([] { parse_bundle("{}"); }), ErrorKind::kMalformedRecord);
}

}  // namespace
}  // namespace nfrlens
