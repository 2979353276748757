#include "fuzzyk/fuzzy_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fuzzyk/error.hpp"

namespace fuzzyk {

namespace {

constexpr std::size_t kUnassigned = std::numeric_limits<std::size_t>::max();

std::vector<double> counting_measures(const std::vector<std::vector<PointIndex>>& cells) {
  std::vector<double> measures;
  measures.reserve(cells.size());
  for (const auto& cell : cells) measures.push_back(static_cast<double>(cell.size()));
  return measures;
}

void check_degree(double d, PointIndex idx) {
  if (!(d >= 0.0 && d <= 1.0)) {
    throw DomainError("membership degree at index " + std::to_string(idx) + " is outside [0,1]");
  }
}

}  // namespace

Partition::Partition(std::vector<std::vector<PointIndex>> cells, std::size_t point_count)
    : Partition(cells, counting_measures(cells), point_count) {}

Partition::Partition(std::vector<std::vector<PointIndex>> cells, std::vector<double> measures,
                     std::size_t point_count)
    : cells_(std::move(cells)), measures_(std::move(measures)), cell_of_(point_count, kUnassigned) {
  if (measures_.size() != cells_.size()) {
    throw DomainError("partition has " + std::to_string(cells_.size()) + " cells but " +
                      std::to_string(measures_.size()) + " measures");
  }
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    auto& cell = cells_[c];
    if (cell.empty()) throw DomainError("partition cell " + std::to_string(c) + " is empty");
    if (!std::isfinite(measures_[c]) || measures_[c] < 0.0) {
      throw DomainError("partition cell " + std::to_string(c) + " has a negative or non-finite measure");
    }
    std::sort(cell.begin(), cell.end());
    for (PointIndex idx : cell) {
      if (idx >= point_count) {
        throw DomainError("partition cell " + std::to_string(c) + " references unknown point index " +
                          std::to_string(idx));
      }
      if (cell_of_[idx] != kUnassigned) {
        throw DomainError("point index " + std::to_string(idx) + " appears in more than one partition cell");
      }
      cell_of_[idx] = c;
    }
  }
  const auto uncovered = std::find(cell_of_.begin(), cell_of_.end(), kUnassigned);
  if (uncovered != cell_of_.end()) {
    throw DomainError("partition does not cover point index " +
                      std::to_string(std::distance(cell_of_.begin(), uncovered)));
  }
}

GroundSpace::GroundSpace(std::vector<std::vector<double>> points, std::optional<Partition> partition)
    : dim_(0), partition_(std::move(partition)) {
  if (points.empty()) throw DomainError("ground space needs at least one point");
  dim_ = points.front().size();
  if (dim_ == 0) throw DomainError("ground-space points must have dimension >= 1");
  coords_.reserve(points.size() * dim_);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != dim_) {
      throw DomainError("ground-space point " + std::to_string(i) + " has dimension " +
                        std::to_string(points[i].size()) + ", expected " + std::to_string(dim_));
    }
    coords_.insert(coords_.end(), points[i].begin(), points[i].end());
  }
  if (partition_ && partition_->point_count() != count()) {
    throw DomainError("partition does not belong to this ground space");
  }
}

GroundSpace::GroundSpace(std::size_t dim, std::vector<double> flat_coords, std::optional<Partition> partition)
    : dim_(dim), coords_(std::move(flat_coords)), partition_(std::move(partition)) {
  if (dim_ == 0) throw DomainError("ground-space points must have dimension >= 1");
  if (coords_.empty() || coords_.size() % dim_ != 0) {
    throw DomainError("ground-space coordinates do not form whole points");
  }
  if (partition_ && partition_->point_count() != count()) {
    throw DomainError("partition does not belong to this ground space");
  }
}

std::shared_ptr<const GroundSpace> GroundSpace::line(std::vector<double> coords,
                                                     std::optional<Partition> partition) {
  return std::make_shared<const GroundSpace>(1, std::move(coords), std::move(partition));
}

std::span<const double> GroundSpace::point(PointIndex idx) const {
  if (idx >= count()) throw DomainError("point index " + std::to_string(idx) + " out of range");
  return std::span<const double>(coords_).subspan(idx * dim_, dim_);
}

bool same_ground(const GroundPtr& a, const GroundPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

DiscreteFuzzySet::DiscreteFuzzySet(GroundPtr ground) : ground_(std::move(ground)) {
  if (!ground_) throw DomainError("fuzzy set needs a ground space");
}

DiscreteFuzzySet::DiscreteFuzzySet(GroundPtr ground, const std::map<PointIndex, double>& degrees)
    : DiscreteFuzzySet(std::move(ground), std::vector<Entry>(degrees.begin(), degrees.end())) {}

DiscreteFuzzySet::DiscreteFuzzySet(GroundPtr ground, std::vector<Entry> degrees)
    : ground_(std::move(ground)) {
  if (!ground_) throw DomainError("fuzzy set needs a ground space");
  std::sort(degrees.begin(), degrees.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  entries_.reserve(degrees.size());
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    const auto [idx, d] = degrees[i];
    if (idx >= ground_->count()) {
      throw DomainError("point index " + std::to_string(idx) + " out of range");
    }
    if (i > 0 && degrees[i - 1].first == idx) {
      throw DomainError("duplicate degree for point index " + std::to_string(idx));
    }
    check_degree(d, idx);
    if (d > 0.0) entries_.emplace_back(idx, d);
  }
}

DiscreteFuzzySet DiscreteFuzzySet::from_dense(GroundPtr ground, std::span<const double> degrees) {
  if (!ground) throw DomainError("fuzzy set needs a ground space");
  if (degrees.size() != ground->count()) {
    throw DomainError("dense degree vector length does not match ground space");
  }
  std::vector<Entry> entries;
  for (PointIndex i = 0; i < degrees.size(); ++i) {
    check_degree(degrees[i], i);
    if (degrees[i] > 0.0) entries.emplace_back(i, degrees[i]);
  }
  return DiscreteFuzzySet(std::move(ground), std::move(entries));
}

bool DiscreteFuzzySet::in_support(PointIndex idx) const {
  return std::binary_search(entries_.begin(), entries_.end(), Entry{idx, 0.0},
                            [](const Entry& a, const Entry& b) { return a.first < b.first; });
}

double DiscreteFuzzySet::height() const noexcept {
  double h = 0.0;
  for (const auto& [idx, d] : entries_) h = std::max(h, d);
  return h;
}

bool operator==(const DiscreteFuzzySet& a, const DiscreteFuzzySet& b) {
  return same_ground(a.ground_, b.ground_) && a.entries_ == b.entries_;
}

double membership(const DiscreteFuzzySet& fs, PointIndex idx) {
  if (idx >= fs.ground()->count()) {
    throw DomainError("point index " + std::to_string(idx) + " out of range");
  }
  const auto entries = fs.entries();
  const auto it = std::lower_bound(entries.begin(), entries.end(), idx,
                                   [](const DiscreteFuzzySet::Entry& e, PointIndex i) { return e.first < i; });
  return (it != entries.end() && it->first == idx) ? it->second : 0.0;
}

GaussianFuzzySet::GaussianFuzzySet(std::vector<double> means, std::vector<double> widths)
    : means_(std::move(means)), widths_(std::move(widths)) {
  if (means_.empty()) throw DomainError("Gaussian fuzzy set needs at least one dimension");
  if (means_.size() != widths_.size()) {
    throw DomainError("Gaussian fuzzy set has " + std::to_string(means_.size()) + " means but " +
                      std::to_string(widths_.size()) + " widths");
  }
  for (std::size_t d = 0; d < means_.size(); ++d) {
    if (!std::isfinite(means_[d])) throw DomainError("Gaussian mean " + std::to_string(d) + " is not finite");
    if (!(widths_[d] > 0.0) || !std::isfinite(widths_[d])) {
      throw DomainError("Gaussian width " + std::to_string(d) + " must be positive and finite");
    }
  }
}

double gaussian_membership(const GaussianFuzzySet& fs, std::span<const double> x) {
  if (x.size() != fs.dim()) throw DomainError("point dimension does not match Gaussian fuzzy set");
  double result = 1.0;
  for (std::size_t d = 0; d < x.size(); ++d) {
    const double z = (x[d] - fs.means()[d]) / fs.widths()[d];
    result *= std::exp(-0.5 * z * z);
  }
  return result;
}

GaussianFuzzySet fuzzify_gaussian(std::vector<double> value, std::vector<double> widths) {
  return GaussianFuzzySet(std::move(value), std::move(widths));
}

DiscreteFuzzySet fuzzify_from_histogram(std::span<const double> samples, GroundPtr ground) {
  if (samples.empty()) throw DomainError("histogram fuzzification needs at least one sample");
  if (!ground || ground->dim() != 1) throw DomainError("histogram bins must be a 1-d ground space");

  std::vector<std::size_t> counts(ground->count(), 0);
  for (double s : samples) {
    if (!std::isfinite(s)) throw DomainError("histogram sample is not finite");
    std::size_t best = 0;
    double best_dist = std::abs(s - ground->point(0)[0]);
    for (PointIndex i = 1; i < ground->count(); ++i) {
      const double dist = std::abs(s - ground->point(i)[0]);
      if (dist < best_dist) {
        best = i;
        best_dist = dist;
      }
    }
    ++counts[best];
  }
  const double peak = static_cast<double>(*std::max_element(counts.begin(), counts.end()));
  std::vector<DiscreteFuzzySet::Entry> entries;
  for (PointIndex i = 0; i < counts.size(); ++i) {
    if (counts[i] > 0) entries.emplace_back(i, static_cast<double>(counts[i]) / peak);
  }
  return DiscreteFuzzySet(std::move(ground), std::move(entries));
}

DiscreteFuzzySet sample_onto(const GaussianFuzzySet& fs, GroundPtr ground, double min_degree) {
  if (!ground) throw DomainError("fuzzy set needs a ground space");
  if (ground->dim() != fs.dim()) throw DomainError("ground dimension does not match Gaussian fuzzy set");
  std::vector<DiscreteFuzzySet::Entry> entries;
  for (PointIndex i = 0; i < ground->count(); ++i) {
    const double d = gaussian_membership(fs, ground->point(i));
    if (d > 0.0 && d >= min_degree) entries.emplace_back(i, d);
  }
  return DiscreteFuzzySet(std::move(ground), std::move(entries));
}

std::vector<std::size_t> support_cells(const DiscreteFuzzySet& fs, const Partition& partition) {
  if (partition.point_count() != fs.ground()->count()) {
    throw DomainError("partition does not belong to the fuzzy set's ground space");
  }
  // A cell is inside the support iff every one of its points carries a positive degree.
  std::vector<std::size_t> covered(partition.size(), 0);
  for (const auto& [idx, d] : fs.entries()) ++covered[partition.cell_of(idx)];
  std::vector<std::size_t> result;
  for (std::size_t c = 0; c < partition.size(); ++c) {
    if (covered[c] == partition.cell(c).size()) result.push_back(c);
  }
  return result;
}

}  // namespace fuzzyk
