#include <gtest/gtest.h>

#include <sstream>

#include "fuzzyk/dataset.hpp"
#include "fuzzyk/error.hpp"
#include "test_support.hpp"

namespace fuzzyk {
namespace {

using nlohmann::json;

json minimal() {
  return json::parse(R"({
    "ground_space": {"points": [[0.0], [1.0], [2.0], [3.0]],
                     "partition": {"cells": [[0, 1], [2, 3]]}},
    "records": [{"id": "first", "attributes": [{"type": "discrete", "degrees": {"0": 0.5, "1": 1.0}}]}],
    "labels": [1]
  })");
}

template <class E>
std::string error_of(const json& doc) {
  try {
    (void)parse_dataset(doc);
  } catch (const E& e) {
    return e.what();
  }
  return "<no error>";
}

TEST(ParseDataset, MinimalFile) {
  const Dataset d = parse_dataset(minimal());
  ASSERT_EQ(d.records.size(), 1u);
  EXPECT_EQ(d.ids[0], "first");
  ASSERT_TRUE(d.labels.has_value());
  EXPECT_EQ(*d.labels, std::vector<int>{1});
  const auto& fs = std::get<DiscreteFuzzySet>(d.records[0][0]);
  EXPECT_EQ(membership(fs, 0), 0.5);
  ASSERT_TRUE(d.ground->partition().has_value());
  EXPECT_EQ(d.ground->partition()->measure(1), 2.0);
}

TEST(ParseDataset, BareAttributeArrayAndGaussianOnly) {
  const auto doc = json::parse(R"({"records": [[{"type": "gaussian", "m": [1, 2], "sigma": [0.5, 0.5]}]]})");
  const Dataset d = parse_dataset(doc);
  EXPECT_EQ(d.ids[0], "0");
  EXPECT_EQ(std::get<GaussianFuzzySet>(d.records[0][0]).means(), (std::vector<double>{1, 2}));
  EXPECT_FALSE(d.labels.has_value());
  EXPECT_EQ(d.ground, nullptr);
}

TEST(ParseDataset, DegreeAboveOneNamesTheRecord) {
  auto doc = minimal();
  doc["records"].push_back({{"attributes", {{{"type", "discrete"}, {"degrees", {{"2", 1.5}}}}}}});
  doc["labels"].push_back(-1);
  const auto msg = error_of<ValidationError>(doc);
  EXPECT_NE(msg.find("records[1]"), std::string::npos) << msg;
}

TEST(ParseDataset, PartitionWithUnknownIndex) {
  auto doc = minimal();
  doc["ground_space"]["partition"]["cells"] = json::parse("[[0, 1], [2, 3, 9]]");
  const auto msg = error_of<ValidationError>(doc);
  EXPECT_NE(msg.find("partition"), std::string::npos) << msg;
}

TEST(ParseDataset, PartitionOverlapAndGap) {
  auto doc = minimal();
  doc["ground_space"]["partition"]["cells"] = json::parse("[[0, 1], [1, 2, 3]]");
  EXPECT_NE(error_of<ValidationError>(doc), "<no error>");
  doc["ground_space"]["partition"]["cells"] = json::parse("[[0, 1], [2]]");
  EXPECT_NE(error_of<ValidationError>(doc), "<no error>");
}

TEST(ParseDataset, StructuralAndInvariantErrors) {
  EXPECT_THROW((void)parse_dataset(json::parse("[]")), ParseError);
  EXPECT_THROW((void)parse_dataset(json::parse(R"({"records": 3})")), ParseError);

  auto unknown_type = minimal();
  unknown_type["records"][0]["attributes"][0]["type"] = "triangle";
  EXPECT_THROW((void)parse_dataset(unknown_type), ParseError);

  auto bad_key = minimal();
  bad_key["records"][0]["attributes"][0]["degrees"] = {{"x", 0.3}};
  EXPECT_THROW((void)parse_dataset(bad_key), ParseError);

  auto label_count = minimal();
  label_count["labels"] = {1, -1};
  EXPECT_THROW((void)parse_dataset(label_count), ValidationError);

  auto label_value = minimal();
  label_value["labels"] = {2};
  EXPECT_THROW((void)parse_dataset(label_value), ValidationError);

  auto arity = minimal();
  arity["records"].push_back(json::parse(R"([{"type": "discrete", "degrees": {}}, {"type": "discrete", "degrees": {}}])"));
  arity["labels"].push_back(1);
  EXPECT_THROW((void)parse_dataset(arity), ValidationError);

  auto kind = minimal();
  kind["records"].push_back(json::parse(R"([{"type": "gaussian", "m": [0], "sigma": [1]}])"));
  kind["labels"].push_back(1);
  EXPECT_THROW((void)parse_dataset(kind), ValidationError);

  auto width = json::parse(R"({"records": [[{"type": "gaussian", "m": [0], "sigma": [0]}]]})");
  EXPECT_THROW((void)parse_dataset(width), ValidationError);

  auto no_ground = json::parse(R"({"records": [[{"type": "discrete", "degrees": {"0": 1}}]]})");
  EXPECT_THROW((void)parse_dataset(no_ground), ValidationError);

  std::istringstream broken("{\"records\": [");
  EXPECT_THROW((void)parse_dataset(broken), ParseError);
}

TEST(Dataset, SerializeThenParseIsIdentity) {
  testing::Rng rng(51);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = testing::uniform_index(rng, 1, 12);
    const auto base = testing::random_ground(rng, n, testing::uniform_index(rng, 1, 3));
    std::vector<double> coords;
    for (PointIndex i = 0; i < n; ++i) coords.insert(coords.end(), base->point(i).begin(), base->point(i).end());
    std::optional<Partition> partition;
    if (trial % 2 == 0) partition = testing::random_partition(rng, n, testing::uniform_index(rng, 1, n), true);
    Dataset d;
    d.ground = std::make_shared<const GroundSpace>(base->dim(), coords, partition);
    const std::size_t records = testing::uniform_index(rng, 1, 6);
    std::vector<int> labels;
    for (std::size_t r = 0; r < records; ++r) {
      d.records.push_back({testing::random_fuzzy_set(rng, d.ground),
                           GaussianFuzzySet({testing::uniform(rng, -5, 5)}, {testing::uniform(rng, 0.1, 2)})});
      d.ids.push_back("rec" + std::to_string(r));
      labels.push_back(r % 2 == 0 ? 1 : -1);
    }
    if (trial % 3 != 0) d.labels = labels;

    std::istringstream text(to_json(d).dump());
    const Dataset back = parse_dataset(text);
    EXPECT_EQ(*back.ground, *d.ground);
    EXPECT_EQ(back.records, d.records);
    EXPECT_EQ(back.ids, d.ids);
    EXPECT_EQ(back.labels, d.labels);
  }
}

TEST(KernelSpecConfig, AllFamiliesRoundTrip) {
  const auto ground = GroundSpace::line({0, 1, 2});
  const std::vector<std::string> configs{
      R"({"family": "cross_product", "k1": {"kind": "rbf", "gamma": 0.5}, "k2": {"kind": "linear"}})",
      R"({"family": "weighted_cross_product", "k1": {"kind": "linear"},
          "k2": {"kind": "polynomial", "alpha": 1, "gamma": 2, "beta": 3}, "weights": [0.2, 0.3, 0.5]})",
      R"({"family": "intersection", "tnorm": "MIN"})",
      R"({"family": "nonsingleton", "tnorm": "drastic"})",
      R"({"family": "nonsingleton_gaussian"})",
      R"({"family": "distance_inner", "metric": "ratio", "reference": {"degrees": {"0": 0.5, "2": 1}}})",
      R"({"family": "distance_poly", "reference": {"degrees": {"1": 1}}, "alpha": 1, "gamma": 0.5, "beta": 2})",
      R"({"family": "distance_gaussian", "lambda": 2})",
  };
  for (const auto& text : configs) {
    const auto spec = parse_kernel_spec(json::parse(text), ground);
    EXPECT_EQ(parse_kernel_spec(to_json(spec), ground), spec) << text;
  }
  EXPECT_EQ(parse_kernel_spec(json::parse(configs[2]), ground).name(), "intersection");
}

TEST(KernelSpecConfig, Errors) {
  const auto ground = GroundSpace::line({0, 1});
  const std::vector<std::string> bad{
      R"({"family": "bogus"})",
      R"({"family": "cross_product", "k1": {"kind": "linear"}})",
      R"({"family": "cross_product", "k1": {"kind": "rbf", "gamma": -1}, "k2": {"kind": "linear"}})",
      R"({"family": "intersection", "tnorm": "frank"})",
      R"({"family": "distance_inner"})",
      R"({"family": "distance_inner", "reference": {"degrees": {"5": 1}}})",
      R"({"family": "distance_poly", "reference": {"degrees": {"0": 1}}, "beta": 0})",
      R"({"family": "distance_poly", "reference": {"degrees": {"0": 1}}, "beta": 1.5})",
      R"({"family": "distance_gaussian", "lambda": 0})",
      R"({"family": "distance_gaussian", "metric": "hausdorff", "lambda": 1})",
      R"({"family": "weighted_cross_product", "k1": {"kind": "linear"}, "k2": {"kind": "linear"}, "weights": [1]})",
      R"({"family": "weighted_cross_product", "k1": {"kind": "linear"}, "k2": {"kind": "linear"}, "weights": [1, -1]})",
  };
  for (const auto& text : bad) EXPECT_THROW((void)parse_kernel_spec(json::parse(text), ground), ConfigError) << text;
}

}  // namespace
}  // namespace fuzzyk
