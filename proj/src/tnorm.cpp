#include "fuzzyk/tnorm.hpp"

#include <algorithm>
#include <cctype>

#include "fuzzyk/error.hpp"

namespace fuzzyk {

namespace {

// Unchecked form; callers guarantee a, b in [0,1].
double apply_unchecked(TNorm t, double a, double b) {
  switch (t) {
    case TNorm::minimum:
      return std::min(a, b);
    case TNorm::product:
      return a * b;
    case TNorm::lukasiewicz:
      // a + 1 - 1 can round away from a
      if (a == 1.0) return b;
      if (b == 1.0) return a;
      return std::max(a + b - 1.0, 0.0);
    case TNorm::drastic:
      if (b == 1.0) return a;
      if (a == 1.0) return b;
      return 0.0;
  }
  return 0.0;
}

}  // namespace

double apply(TNorm t, double a, double b) {
  if (!(a >= 0.0 && a <= 1.0) || !(b >= 0.0 && b <= 1.0)) {
    throw DomainError("T-norm arguments must lie in [0,1]");
  }
  return apply_unchecked(t, a, b);
}

DiscreteFuzzySet intersect(const DiscreteFuzzySet& x, const DiscreteFuzzySet& y, TNorm t) {
  if (!same_ground(x.ground(), y.ground())) {
    throw DomainError("cannot intersect fuzzy sets over different ground spaces");
  }
  // T(a, 0) = 0, so only the overlap of the supports can survive.
  std::vector<DiscreteFuzzySet::Entry> out;
  auto xi = x.entries().begin();
  auto yi = y.entries().begin();
  while (xi != x.entries().end() && yi != y.entries().end()) {
    if (xi->first < yi->first) {
      ++xi;
    } else if (yi->first < xi->first) {
      ++yi;
    } else {
      const double d = apply_unchecked(t, xi->second, yi->second);
      if (d > 0.0) out.emplace_back(xi->first, d);
      ++xi;
      ++yi;
    }
  }
  return DiscreteFuzzySet(x.ground(), std::move(out));
}

std::string_view to_string(TNorm t) noexcept {
  switch (t) {
    case TNorm::minimum:
      return "min";
    case TNorm::product:
      return "product";
    case TNorm::lukasiewicz:
      return "lukasiewicz";
    case TNorm::drastic:
      return "drastic";
  }
  return "?";
}

TNorm parse_tnorm(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (TNorm t : {TNorm::minimum, TNorm::product, TNorm::lukasiewicz, TNorm::drastic}) {
    if (lower == to_string(t)) return t;
  }
  throw ConfigError("unknown T-norm '" + std::string(name) + "'");
}

}  // namespace fuzzyk
