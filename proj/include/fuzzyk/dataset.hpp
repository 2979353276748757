#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fuzzyk/kernels.hpp"

namespace fuzzyk {

/// Ground space, records (tuples of fuzzy attributes) and optional +1/-1 labels.
///
/// JSON layout:
///   {
///     "ground_space": {"points": [[x..], ..],
///                      "partition": {"cells": [[i..], ..], "measures": [..]}},
///     "records": [{"id": "r0", "attributes": [
///         {"type": "discrete", "degrees": {"3": 0.7}},
///         {"type": "gaussian", "m": [..], "sigma": [..]}]}, ..],
///     "labels": [1, -1, ..]
///   }
/// `ground_space` may be omitted when no attribute is discrete, `measures`
/// defaults to the counting measure, `id` defaults to the record index and a
/// record may also be written as a bare attribute array.
struct Dataset {
  GroundPtr ground;
  std::vector<Record> records;
  std::vector<std::string> ids;
  std::optional<std::vector<int>> labels;
};

/// Throws ParseError for malformed JSON or wrong shapes, ValidationError for
/// invariant violations; messages carry the record index and field path.
[[nodiscard]] Dataset parse_dataset(const nlohmann::json& doc);
[[nodiscard]] Dataset parse_dataset(std::istream& in);
[[nodiscard]] Dataset load_dataset(const std::filesystem::path& path);

[[nodiscard]] nlohmann::json to_json(const Dataset& data);

/// Kernel config: {"family": "...", ...parameters}. Discrete references are
/// resolved against `ground`.
[[nodiscard]] FuzzyKernelSpec parse_kernel_spec(const nlohmann::json& doc, const GroundPtr& ground);
[[nodiscard]] FuzzyKernelSpec load_kernel_spec(const std::filesystem::path& path, const GroundPtr& ground);

[[nodiscard]] nlohmann::json to_json(const FuzzyKernelSpec& spec);

}  // namespace fuzzyk
