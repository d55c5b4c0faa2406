#include "peckit/document.hpp"
#include "peckit/random_config.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace peckit;
using nlohmann::json;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_document_text(text);
  } catch (const DocumentError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Document, ParsesBlocksAndTails) {
  const Configuration c = parse_document_text(R"({"type": "A", "blocks": [
    {"level": "0", "finite": ["-5"], "tails": [{"shape": "geometric", "limit": "1", "coefficient": "-1", "ratio": "1/2"}]},
    {"level": 1, "finite": [7], "tails": [{"shape": "constant", "limit": "0"}]}]})");
  EXPECT_EQ(c, fixtures::threshold_a());
}

TEST(Document, AllShapesAndClips) {
  const Configuration c = parse_document_text(R"({"type": "BC", "blocks": [
    {"level": "-3/2", "tails": [
      {"shape": "harmonic", "limit": "1", "coefficient": "-1"},
      {"shape": "power", "limit": "0", "coefficient": "2", "power": 3},
      {"shape": "divergent", "coefficient": "1/4"},
      {"shape": "harmonic", "limit": "0", "coefficient": "1", "clip_lower": "1/5", "clip_upper": "inf"}]}]})");
  EXPECT_EQ(c.type(), RootSystemType::BC);
  const auto& tails = c.block(0).tails;
  ASSERT_EQ(tails.size(), 4u);
  EXPECT_EQ(tails[0], Tail::harmonic(1, -1));
  EXPECT_EQ(tails[1], Tail::power(0, 2, 3));
  EXPECT_EQ(tails[2], Tail::divergent(Rational(1, 4)));
  EXPECT_EQ(tails[3], Tail::harmonic(0, 1).clipped(Rational(1, 5), Extended::pos_inf()));
}

TEST(Document, RoundTrip) {
  Random rng(51);
  for (RootSystemType type : {RootSystemType::A, RootSystemType::B, RootSystemType::C, RootSystemType::BC,
                              RootSystemType::D}) {
    for (int i = 0; i < 40; ++i) {
      const Configuration c = random_symbolic(rng, type);
      EXPECT_EQ(parse_document(to_document(c)), c);
      EXPECT_EQ(parse_document_text(to_document(c).dump()), c);
    }
  }
  const Configuration clipped(RootSystemType::A,
                              {Block{0, {}, {Tail::geometric(0, 1, Rational(1, 3)).clipped(Extended::neg_inf(), 0)}}});
  EXPECT_EQ(parse_document(to_document(clipped)), clipped);
}

TEST(Document, Diagnostics) {
  const std::string head = R"({"type": "A", "blocks": [{"level": "0", )";
  EXPECT_EQ(error_of(head + R"("tails": [{"shape": "geometric", "limit": "0", "coefficient": "1", "ratio": "3/2"}]}]})"),
            "blocks[0].tails[0].ratio: ratio must lie in (0, 1)");
  EXPECT_EQ(error_of(head + R"("finite": ["1"], "extra": 1}]})"), "blocks[0]: unknown field 'extra'");
  EXPECT_EQ(error_of(head + R"("finite": ["1.5"]}]})").rfind("blocks[0].finite[0]: ", 0), 0u);
  EXPECT_EQ(error_of(head + R"("finite": []}]})"), "blocks[0]: block has no entries");
  EXPECT_EQ(error_of(head + R"("tails": [{"shape": "harmonic", "limit": "0", "coefficient": "0"}]}]})"),
            "blocks[0].tails[0].coefficient: coefficient must be nonzero");
  EXPECT_EQ(error_of(head + R"("tails": [{"shape": "power", "limit": "0", "coefficient": "1", "power": 1}]}]})"),
            "blocks[0].tails[0].power: power must lie in 2..64");
  EXPECT_EQ(error_of(head + R"("tails": [{"shape": "divergent", "limit": "0", "coefficient": "1"}]}]})"),
            "blocks[0].tails[0].limit: not allowed for shape divergent");
  EXPECT_EQ(error_of(head + R"("tails": [{"shape": "spiral", "limit": "0"}]}]})").rfind("blocks[0].tails[0].shape", 0),
            0u);
  EXPECT_EQ(error_of(R"({"type": "A", "blocks": [{"level": "0", "finite": ["1"]}, {"level": "0", "finite": ["2"]}]})"),
            "blocks[1].level: duplicate level 0");
  EXPECT_EQ(error_of(R"({"type": "E8", "blocks": [{"level": "0", "finite": ["1"]}]})").rfind("type: ", 0), 0u);
  EXPECT_EQ(error_of(R"({"type": "A", "blocks": []})"), "blocks: expected a non-empty array");
  EXPECT_EQ(error_of(R"({"blocks": []})"), "missing field 'type'");
  EXPECT_EQ(error_of("{\n\"type\": \"A\",\n oops}").rfind("line 3: ", 0), 0u);
  // Signed types need one-signed tails.
  EXPECT_EQ(error_of(R"({"type": "B", "blocks": [{"level": "1", "tails": [
    {"shape": "harmonic", "limit": "1/2", "coefficient": "-1"}]}]})")
                .rfind("blocks: ", 0),
            0u);
}

TEST(Document, MissingFile) {
  EXPECT_THROW(load_document("/nonexistent/peckit.json"), DocumentError);
  EXPECT_EQ(load_document(PECKIT_DATA_DIR "/threshold_a.json"), fixtures::threshold_a());
}
