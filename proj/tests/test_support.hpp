#pragma once

// Hand-rolled generators for property tests.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "fuzzyk/fuzzy_set.hpp"

namespace fuzzyk::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// A degree in [0,1] that hits the exact values 0 and 1 now and then.
inline double random_degree(Rng& rng) {
  const double u = uniform(rng, 0.0, 1.0);
  if (u < 0.1) return 0.0;
  if (u < 0.2) return 1.0;
  return uniform(rng, 0.0, 1.0);
}

inline GroundPtr random_ground(Rng& rng, std::size_t count, std::size_t dim) {
  std::vector<double> coords(count * dim);
  for (auto& c : coords) c = uniform(rng, -3.0, 3.0);
  return std::make_shared<const GroundSpace>(dim, std::move(coords));
}

/// Each point enters the support with probability `density`, degree in (0,1].
inline DiscreteFuzzySet random_fuzzy_set(Rng& rng, const GroundPtr& ground, double density = 0.5) {
  std::vector<DiscreteFuzzySet::Entry> entries;
  for (PointIndex i = 0; i < ground->count(); ++i) {
    if (uniform(rng, 0.0, 1.0) < density) {
      const double d = uniform(rng, 0.0, 1.0) < 0.15 ? 1.0 : uniform(rng, 1e-3, 1.0);
      entries.emplace_back(i, d);
    }
  }
  return DiscreteFuzzySet(ground, std::move(entries));
}

/// Random partition of `count` indices into `cells` non-empty cells.
inline Partition random_partition(Rng& rng, std::size_t count, std::size_t cells, bool random_measures) {
  std::vector<PointIndex> order(count);
  for (std::size_t i = 0; i < count; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::vector<PointIndex>> parts(cells);
  for (std::size_t i = 0; i < count; ++i) parts[i < cells ? i : uniform_index(rng, 0, cells - 1)].push_back(order[i]);
  if (!random_measures) return Partition(std::move(parts), count);
  std::vector<double> measures(cells);
  for (auto& m : measures) m = uniform(rng, 0.1, 3.0);
  return Partition(std::move(parts), std::move(measures), count);
}

}  // namespace fuzzyk::testing
