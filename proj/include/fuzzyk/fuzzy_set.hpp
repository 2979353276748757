#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace fuzzyk {

using PointIndex = std::size_t;

/// Finite decomposition of the ground-space index set into pairwise disjoint,
/// non-empty cells, each carrying a measure weight.
///
/// Without explicit measures the counting measure (cell size) is used.
class Partition {
 public:
  Partition(std::vector<std::vector<PointIndex>> cells, std::size_t point_count);
  Partition(std::vector<std::vector<PointIndex>> cells, std::vector<double> measures,
            std::size_t point_count);

  [[nodiscard]] std::size_t size() const noexcept { return cells_.size(); }
  [[nodiscard]] std::size_t point_count() const noexcept { return cell_of_.size(); }
  [[nodiscard]] std::span<const PointIndex> cell(std::size_t c) const { return cells_.at(c); }
  [[nodiscard]] double measure(std::size_t c) const { return measures_.at(c); }
  [[nodiscard]] const std::vector<std::vector<PointIndex>>& cells() const noexcept { return cells_; }
  [[nodiscard]] const std::vector<double>& measures() const noexcept { return measures_; }
  [[nodiscard]] std::size_t cell_of(PointIndex idx) const { return cell_of_.at(idx); }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<std::vector<PointIndex>> cells_;  // each sorted ascending
  std::vector<double> measures_;
  std::vector<std::size_t> cell_of_;
};

/// Finite, explicitly enumerated ground space: `count()` points of equal
/// dimension stored row-major, plus an optional partition of the indices.
class GroundSpace {
 public:
  GroundSpace(std::vector<std::vector<double>> points, std::optional<Partition> partition = {});
  GroundSpace(std::size_t dim, std::vector<double> flat_coords, std::optional<Partition> partition = {});

  /// One-dimensional ground space over the given coordinates.
  static std::shared_ptr<const GroundSpace> line(std::vector<double> coords,
                                                 std::optional<Partition> partition = {});

  [[nodiscard]] std::size_t count() const noexcept { return coords_.size() / dim_; }
  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] std::span<const double> point(PointIndex idx) const;
  [[nodiscard]] const std::optional<Partition>& partition() const noexcept { return partition_; }

  friend bool operator==(const GroundSpace&, const GroundSpace&) = default;

 private:
  std::size_t dim_;
  std::vector<double> coords_;
  std::optional<Partition> partition_;
};

using GroundPtr = std::shared_ptr<const GroundSpace>;

/// True when both pointers denote the same ground space (by identity or content).
[[nodiscard]] bool same_ground(const GroundPtr& a, const GroundPtr& b);

/// Fuzzy set over a finite ground space, stored sparsely: only indices with a
/// strictly positive degree are kept, in ascending index order.
class DiscreteFuzzySet {
 public:
  using Entry = std::pair<PointIndex, double>;

  explicit DiscreteFuzzySet(GroundPtr ground);
  /// Zero degrees are dropped; degrees outside [0,1] or invalid indices throw DomainError.
  DiscreteFuzzySet(GroundPtr ground, const std::map<PointIndex, double>& degrees);
  DiscreteFuzzySet(GroundPtr ground, std::vector<Entry> degrees);

  /// Builds from one degree per ground point.
  static DiscreteFuzzySet from_dense(GroundPtr ground, std::span<const double> degrees);

  [[nodiscard]] const GroundPtr& ground() const noexcept { return ground_; }
  [[nodiscard]] std::span<const Entry> entries() const noexcept { return entries_; }
  [[nodiscard]] std::size_t support_size() const noexcept { return entries_.size(); }
  [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }
  [[nodiscard]] bool in_support(PointIndex idx) const;
  [[nodiscard]] double height() const noexcept;

  friend bool operator==(const DiscreteFuzzySet& a, const DiscreteFuzzySet& b);

 private:
  GroundPtr ground_;
  std::vector<Entry> entries_;
};

/// Degree of `idx` in `fs`; 0 outside the support.
[[nodiscard]] double membership(const DiscreteFuzzySet& fs, PointIndex idx);

/// Tuple of Gaussian membership functions exp(-(x-m)^2 / (2 sigma^2)), one per dimension.
class GaussianFuzzySet {
 public:
  GaussianFuzzySet(std::vector<double> means, std::vector<double> widths);

  [[nodiscard]] std::size_t dim() const noexcept { return means_.size(); }
  [[nodiscard]] const std::vector<double>& means() const noexcept { return means_; }
  [[nodiscard]] const std::vector<double>& widths() const noexcept { return widths_; }

  friend bool operator==(const GaussianFuzzySet&, const GaussianFuzzySet&) = default;

 private:
  std::vector<double> means_;
  std::vector<double> widths_;
};

[[nodiscard]] double gaussian_membership(const GaussianFuzzySet& fs, std::span<const double> x);

[[nodiscard]] GaussianFuzzySet fuzzify_gaussian(std::vector<double> value, std::vector<double> widths);

/// Bins samples to the nearest center of a 1-d ground space (ties go to the
/// lower index) and scales counts so the tallest bin has degree 1.
[[nodiscard]] DiscreteFuzzySet fuzzify_from_histogram(std::span<const double> samples, GroundPtr ground);

/// Evaluates a Gaussian fuzzy set at every ground point, dropping degrees
/// below `min_degree`. Ground dimension must equal the set's dimension.
[[nodiscard]] DiscreteFuzzySet sample_onto(const GaussianFuzzySet& fs, GroundPtr ground,
                                           double min_degree = 0.0);

/// Indices of the cells A with A contained in supp(fs), ascending.
[[nodiscard]] std::vector<std::size_t> support_cells(const DiscreteFuzzySet& fs,
                                                     const Partition& partition);

}  // namespace fuzzyk
