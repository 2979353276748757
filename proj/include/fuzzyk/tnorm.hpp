#pragma once

#include <string>
#include <string_view>

#include "fuzzyk/fuzzy_set.hpp"

namespace fuzzyk {

enum class TNorm { minimum, product, lukasiewicz, drastic };

/// T(a, b) for a, b in [0,1]. Throws DomainError outside the unit interval.
[[nodiscard]] double apply(TNorm t, double a, double b);

/// Pointwise T-norm intersection; zero results are dropped from the support.
[[nodiscard]] DiscreteFuzzySet intersect(const DiscreteFuzzySet& x, const DiscreteFuzzySet& y, TNorm t);

/// Config name: "min", "product", "lukasiewicz", "drastic".
[[nodiscard]] std::string_view to_string(TNorm t) noexcept;
/// Case-insensitive inverse of to_string; throws ConfigError on unknown names.
[[nodiscard]] TNorm parse_tnorm(std::string_view name);

}  // namespace fuzzyk
