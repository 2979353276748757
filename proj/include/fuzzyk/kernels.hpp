#pragma once

#include <cmath>
#include <concepts>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "fuzzyk/error.hpp"
#include "fuzzyk/fuzzy_set.hpp"
#include "fuzzyk/tnorm.hpp"

namespace fuzzyk {

/// Kernel on ground elements (k1) or on membership degrees (k2).
///
///   linear      dot(u, v)
///   rbf         exp(-gamma |u - v|^2)
///   polynomial  (alpha + gamma dot(u, v))^beta
class BaseKernel {
 public:
  enum class Kind { linear, rbf, polynomial };

  static BaseKernel linear() noexcept { return BaseKernel(Kind::linear, 0.0, 1.0, 1); }
  static BaseKernel rbf(double gamma);
  static BaseKernel polynomial(double alpha, double gamma, int beta);

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] double alpha() const noexcept { return alpha_; }
  [[nodiscard]] double gamma() const noexcept { return gamma_; }
  [[nodiscard]] int beta() const noexcept { return beta_; }

  [[nodiscard]] double operator()(std::span<const double> u, std::span<const double> v) const;
  [[nodiscard]] double operator()(double a, double b) const;

  friend bool operator==(const BaseKernel&, const BaseKernel&) = default;

 private:
  BaseKernel(Kind kind, double alpha, double gamma, int beta) noexcept
      : kind_(kind), alpha_(alpha), gamma_(gamma), beta_(beta) {}

  Kind kind_;
  double alpha_;
  double gamma_;
  int beta_;
};

[[nodiscard]] inline double base_eval(const BaseKernel& k, std::span<const double> u,
                                      std::span<const double> v) {
  return k(u, v);
}

[[nodiscard]] std::string_view to_string(BaseKernel::Kind kind) noexcept;

/// Metrics on discrete fuzzy sets available to the distance-substitution kernels.
enum class FuzzyMetric { ratio };

[[nodiscard]] std::string_view to_string(FuzzyMetric m) noexcept;

/// sum |x - y| / sum (x + y) over the union of supports. Both empty is a DomainError.
[[nodiscard]] double ratio_distance(const DiscreteFuzzySet& x, const DiscreteFuzzySet& y);

[[nodiscard]] double distance(FuzzyMetric m, const DiscreteFuzzySet& x, const DiscreteFuzzySet& y);

// --- the four families ------------------------------------------------------

/// Sum over support pairs (a, b) of k1(point a, point b) * k2(x(a), y(b)).
[[nodiscard]] double cross_product_kernel(const DiscreteFuzzySet& x, const DiscreteFuzzySet& y,
                                          const BaseKernel& k1, const BaseKernel& k2);

/// Cross product kernel with a per-point measure: each pair term is scaled by
/// w(a) * w(b). `weights` holds one non-negative entry per ground point.
[[nodiscard]] double weighted_cross_product_kernel(const DiscreteFuzzySet& x, const DiscreteFuzzySet& y,
                                                   const BaseKernel& k1, const BaseKernel& k2,
                                                   std::span<const double> weights);

/// Sum over the cells A lying inside both supports of
/// (sum_{i in A} T(x(i), y(i))) * measure(A).
[[nodiscard]] double intersection_kernel(const DiscreteFuzzySet& x, const DiscreteFuzzySet& y, TNorm t,
                                         const Partition& partition);

/// max_i T(x(i), y(i)); 0 for disjoint supports.
[[nodiscard]] double nonsingleton_kernel(const DiscreteFuzzySet& x, const DiscreteFuzzySet& y, TNorm t);

/// Closed form of the sup-product intersection of two Gaussian tuples:
/// prod_d exp(-(m_d - m'_d)^2 / (2 (sigma_d^2 + sigma'_d^2))).
[[nodiscard]] double nonsingleton_gaussian_kernel(const GaussianFuzzySet& x, const GaussianFuzzySet& y);

template <class Metric>
concept FuzzySetMetric = std::invocable<Metric, const DiscreteFuzzySet&, const DiscreteFuzzySet&>;

/// (d(x, x0)^2 + d(y, x0)^2 - d(x, y)^2) / 2
template <FuzzySetMetric Metric>
[[nodiscard]] double distance_inner(const DiscreteFuzzySet& x, const DiscreteFuzzySet& y,
                                    const DiscreteFuzzySet& x0, Metric&& d) {
  const double dx = d(x, x0);
  const double dy = d(y, x0);
  const double dxy = d(x, y);
  return 0.5 * (dx * dx + dy * dy - dxy * dxy);
}

[[nodiscard]] inline double distance_inner(const DiscreteFuzzySet& x, const DiscreteFuzzySet& y,
                                           const DiscreteFuzzySet& x0, FuzzyMetric m) {
  return distance_inner(x, y, x0, [m](const auto& a, const auto& b) { return distance(m, a, b); });
}

void check_polynomial_params(double alpha, double gamma, int beta);

template <FuzzySetMetric Metric>
[[nodiscard]] double distance_polynomial_kernel(const DiscreteFuzzySet& x, const DiscreteFuzzySet& y,
                                                const DiscreteFuzzySet& x0, Metric&& d, double alpha,
                                                double gamma, int beta) {
  check_polynomial_params(alpha, gamma, beta);
  return std::pow(alpha + gamma * distance_inner(x, y, x0, std::forward<Metric>(d)), beta);
}

[[nodiscard]] inline double distance_polynomial_kernel(const DiscreteFuzzySet& x, const DiscreteFuzzySet& y,
                                                       const DiscreteFuzzySet& x0, FuzzyMetric m, double alpha,
                                                       double gamma, int beta) {
  return distance_polynomial_kernel(
      x, y, x0, [m](const auto& a, const auto& b) { return distance(m, a, b); }, alpha, gamma, beta);
}

/// exp(-lambda d(x, y)^2)
template <FuzzySetMetric Metric>
[[nodiscard]] double distance_gaussian_kernel(const DiscreteFuzzySet& x, const DiscreteFuzzySet& y, Metric&& d,
                                              double lambda) {
  if (!(lambda > 0.0)) throw DomainError("distance Gaussian kernel needs lambda > 0");
  const double dxy = d(x, y);
  return std::exp(-lambda * dxy * dxy);
}

[[nodiscard]] inline double distance_gaussian_kernel(const DiscreteFuzzySet& x, const DiscreteFuzzySet& y,
                                                     FuzzyMetric m, double lambda) {
  return distance_gaussian_kernel(
      x, y, [m](const auto& a, const auto& b) { return distance(m, a, b); }, lambda);
}

// --- kernel specs and uniform dispatch ----------------------------------------

namespace family {

struct CrossProduct {
  BaseKernel k1;
  BaseKernel k2;
  friend bool operator==(const CrossProduct&, const CrossProduct&) = default;
};

struct WeightedCrossProduct {
  BaseKernel k1;
  BaseKernel k2;
  std::vector<double> weights;
  friend bool operator==(const WeightedCrossProduct&, const WeightedCrossProduct&) = default;
};

// The partition comes from the data's ground space.
struct Intersection {
  TNorm tnorm;
  friend bool operator==(const Intersection&, const Intersection&) = default;
};

struct NonSingleton {
  TNorm tnorm;
  friend bool operator==(const NonSingleton&, const NonSingleton&) = default;
};

struct NonSingletonGaussian {
  friend bool operator==(const NonSingletonGaussian&, const NonSingletonGaussian&) = default;
};

struct DistanceInner {
  FuzzyMetric metric;
  DiscreteFuzzySet reference;
  friend bool operator==(const DistanceInner&, const DistanceInner&) = default;
};

struct DistancePolynomial {
  DistancePolynomial(FuzzyMetric metric, DiscreteFuzzySet reference, double alpha, double gamma, int beta);
  FuzzyMetric metric;
  DiscreteFuzzySet reference;
  double alpha;
  double gamma;
  int beta;
  friend bool operator==(const DistancePolynomial&, const DistancePolynomial&) = default;
};

struct DistanceGaussian {
  DistanceGaussian(FuzzyMetric metric, double lambda);
  FuzzyMetric metric;
  double lambda;
  friend bool operator==(const DistanceGaussian&, const DistanceGaussian&) = default;
};

}  // namespace family

struct FuzzyKernelSpec {
  using Family = std::variant<family::CrossProduct, family::WeightedCrossProduct, family::Intersection,
                              family::NonSingleton, family::NonSingletonGaussian, family::DistanceInner,
                              family::DistancePolynomial, family::DistanceGaussian>;
  Family family;

  /// Config name of the family ("cross_product", "nonsingleton_gaussian", ...).
  [[nodiscard]] std::string_view name() const noexcept;
  /// True for families that consume Gaussian fuzzy sets.
  [[nodiscard]] bool gaussian() const noexcept;

  friend bool operator==(const FuzzyKernelSpec&, const FuzzyKernelSpec&) = default;
};

using FuzzyDatum = std::variant<DiscreteFuzzySet, GaussianFuzzySet>;

/// Multi-attribute datum; per-attribute kernel values are multiplied.
using Record = std::vector<FuzzyDatum>;

[[nodiscard]] double eval(const FuzzyKernelSpec& spec, const FuzzyDatum& x, const FuzzyDatum& y);
[[nodiscard]] double eval(const FuzzyKernelSpec& spec, const Record& x, const Record& y);

}  // namespace fuzzyk
