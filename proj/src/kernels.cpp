#include "fuzzyk/kernels.hpp"

#include <string>

namespace fuzzyk {

namespace {

void require_same_ground(const DiscreteFuzzySet& x, const DiscreteFuzzySet& y) {
  if (!same_ground(x.ground(), y.ground())) {
    throw DomainError("fuzzy sets live on different ground spaces");
  }
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

BaseKernel BaseKernel::rbf(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("rbf kernel needs gamma > 0");
  return BaseKernel(Kind::rbf, 0.0, gamma, 1);
}

BaseKernel BaseKernel::polynomial(double alpha, double gamma, int beta) {
  check_polynomial_params(alpha, gamma, beta);
  return BaseKernel(Kind::polynomial, alpha, gamma, beta);
}

double BaseKernel::operator()(std::span<const double> u, std::span<const double> v) const {
  if (u.size() != v.size()) throw DomainError("base kernel arguments differ in dimension");
  switch (kind_) {
    case Kind::linear: {
      double dot = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) dot += u[i] * v[i];
      return dot;
    }
    case Kind::rbf: {
      double sq = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) {
        const double diff = u[i] - v[i];
        sq += diff * diff;
      }
      return std::exp(-gamma_ * sq);
    }
    case Kind::polynomial: {
      double dot = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) dot += u[i] * v[i];
      return std::pow(alpha_ + gamma_ * dot, beta_);
    }
  }
  return 0.0;
}

double BaseKernel::operator()(double a, double b) const {
  return (*this)(std::span<const double>(&a, 1), std::span<const double>(&b, 1));
}

std::string_view to_string(BaseKernel::Kind kind) noexcept {
  switch (kind) {
    case BaseKernel::Kind::linear:
      return "linear";
    case BaseKernel::Kind::rbf:
      return "rbf";
    case BaseKernel::Kind::polynomial:
      return "polynomial";
  }
  return "?";
}

void check_polynomial_params(double alpha, double gamma, int beta) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("polynomial kernel needs alpha >= 0");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("polynomial kernel needs gamma > 0");
  if (beta < 1) throw DomainError("polynomial kernel needs an integer beta >= 1");
}

std::string_view to_string(FuzzyMetric m) noexcept {
  switch (m) {
    case FuzzyMetric::ratio:
      return "ratio";
  }
  return "?";
}

double ratio_distance(const DiscreteFuzzySet& x, const DiscreteFuzzySet& y) {
  require_same_ground(x, y);
  if (x.empty() && y.empty()) throw DomainError("ratio distance is undefined between two empty fuzzy sets");
  double num = 0.0;
  double den = 0.0;
  auto xi = x.entries().begin();
  auto yi = y.entries().begin();
  const auto xe = x.entries().end();
  const auto ye = y.entries().end();
  while (xi != xe || yi != ye) {
    double a = 0.0;
    double b = 0.0;
    if (yi == ye || (xi != xe && xi->first < yi->first)) {
      a = (xi++)->second;
    } else if (xi == xe || yi->first < xi->first) {
      b = (yi++)->second;
    } else {
      a = (xi++)->second;
      b = (yi++)->second;
    }
    num += std::abs(a - b);
    den += a + b;
  }
  return num / den;
}

double distance(FuzzyMetric m, const DiscreteFuzzySet& x, const DiscreteFuzzySet& y) {
  switch (m) {
    case FuzzyMetric::ratio:
      return ratio_distance(x, y);
  }
  throw ConfigError("unknown fuzzy-set metric");
}

double cross_product_kernel(const DiscreteFuzzySet& x, const DiscreteFuzzySet& y, const BaseKernel& k1,
                            const BaseKernel& k2) {
  require_same_ground(x, y);
  const GroundSpace& ground = *x.ground();
  double sum = 0.0;
  for (const auto& [a, xa] : x.entries()) {
    const auto pa = ground.point(a);
    for (const auto& [b, yb] : y.entries()) {
      sum += k1(pa, ground.point(b)) * k2(xa, yb);
    }
  }
  return sum;
}

double weighted_cross_product_kernel(const DiscreteFuzzySet& x, const DiscreteFuzzySet& y, const BaseKernel& k1,
                                     const BaseKernel& k2, std::span<const double> weights) {
  require_same_ground(x, y);
  const GroundSpace& ground = *x.ground();
  if (weights.size() != ground.count()) {
    throw DomainError("weight vector has " + std::to_string(weights.size()) + " entries, ground space has " +
                      std::to_string(ground.count()) + " points");
  }
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] >= 0.0) || !std::isfinite(weights[i])) {
      throw DomainError("weight " + std::to_string(i) + " is negative or non-finite");
    }
  }
  double sum = 0.0;
  for (const auto& [a, xa] : x.entries()) {
    const auto pa = ground.point(a);
    for (const auto& [b, yb] : y.entries()) {
      sum += k1(pa, ground.point(b)) * k2(xa, yb) * weights[a] * weights[b];
    }
  }
  return sum;
}

double intersection_kernel(const DiscreteFuzzySet& x, const DiscreteFuzzySet& y, TNorm t,
                           const Partition& partition) {
  require_same_ground(x, y);
  const auto cx = support_cells(x, partition);
  const auto cy = support_cells(y, partition);
  double sum = 0.0;
  auto ix = cx.begin();
  auto iy = cy.begin();
  while (ix != cx.end() && iy != cy.end()) {
    if (*ix < *iy) {
      ++ix;
    } else if (*iy < *ix) {
      ++iy;
    } else {
      double cell_total = 0.0;
      for (PointIndex idx : partition.cell(*ix)) cell_total += apply(t, membership(x, idx), membership(y, idx));
      sum += cell_total * partition.measure(*ix);
      ++ix;
      ++iy;
    }
  }
  return sum;
}

double nonsingleton_kernel(const DiscreteFuzzySet& x, const DiscreteFuzzySet& y, TNorm t) {
  require_same_ground(x, y);
  double best = 0.0;
  auto xi = x.entries().begin();
  auto yi = y.entries().begin();
  while (xi != x.entries().end() && yi != y.entries().end()) {
    if (xi->first < yi->first) {
      ++xi;
    } else if (yi->first < xi->first) {
      ++yi;
    } else {
      best = std::max(best, apply(t, xi->second, yi->second));
      ++xi;
      ++yi;
    }
  }
  return best;
}

double nonsingleton_gaussian_kernel(const GaussianFuzzySet& x, const GaussianFuzzySet& y) {
  if (x.dim() != y.dim()) throw DomainError("Gaussian fuzzy sets differ in dimension");
  double result = 1.0;
  for (std::size_t d = 0; d < x.dim(); ++d) {
    const double gap = x.means()[d] - y.means()[d];
    const double sx = x.widths()[d];
    const double sy = y.widths()[d];
    result *= std::exp(-0.5 * gap * gap / (sx * sx + sy * sy));
  }
  return result;
}

namespace family {

DistancePolynomial::DistancePolynomial(FuzzyMetric metric, DiscreteFuzzySet reference, double alpha,
                                       double gamma, int beta)
    : metric(metric), reference(std::move(reference)), alpha(alpha), gamma(gamma), beta(beta) {
  check_polynomial_params(alpha, gamma, beta);
}

DistanceGaussian::DistanceGaussian(FuzzyMetric metric, double lambda) : metric(metric), lambda(lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("distance Gaussian kernel needs lambda > 0");
}

}  // namespace family

std::string_view FuzzyKernelSpec::name() const noexcept {
  return std::visit(Overloaded{
                        [](const family::CrossProduct&) { return std::string_view("cross_product"); },
                        [](const family::WeightedCrossProduct&) {
                          return std::string_view("weighted_cross_product");
                        },
                        [](const family::Intersection&) { return std::string_view("intersection"); },
                        [](const family::NonSingleton&) { return std::string_view("nonsingleton"); },
                        [](const family::NonSingletonGaussian&) {
                          return std::string_view("nonsingleton_gaussian");
                        },
                        [](const family::DistanceInner&) { return std::string_view("distance_inner"); },
                        [](const family::DistancePolynomial&) { return std::string_view("distance_poly"); },
                        [](const family::DistanceGaussian&) { return std::string_view("distance_gaussian"); },
                    },
                    family);
}

bool FuzzyKernelSpec::gaussian() const noexcept {
  return std::holds_alternative<family::NonSingletonGaussian>(family);
}

namespace {

const DiscreteFuzzySet& as_discrete(const FuzzyKernelSpec& spec, const FuzzyDatum& d) {
  if (const auto* fs = std::get_if<DiscreteFuzzySet>(&d)) return *fs;
  throw ConfigError("kernel family '" + std::string(spec.name()) + "' needs discrete fuzzy sets");
}

}  // namespace

double eval(const FuzzyKernelSpec& spec, const FuzzyDatum& x, const FuzzyDatum& y) {
  if (spec.gaussian()) {
    const auto* gx = std::get_if<GaussianFuzzySet>(&x);
    const auto* gy = std::get_if<GaussianFuzzySet>(&y);
    if (!gx || !gy) throw ConfigError("kernel family 'nonsingleton_gaussian' needs Gaussian fuzzy sets");
    return nonsingleton_gaussian_kernel(*gx, *gy);
  }
  const DiscreteFuzzySet& dx = as_discrete(spec, x);
  const DiscreteFuzzySet& dy = as_discrete(spec, y);
  return std::visit(
      Overloaded{
          [&](const family::CrossProduct& f) { return cross_product_kernel(dx, dy, f.k1, f.k2); },
          [&](const family::WeightedCrossProduct& f) {
            return weighted_cross_product_kernel(dx, dy, f.k1, f.k2, f.weights);
          },
          [&](const family::Intersection& f) {
            const auto& partition = dx.ground()->partition();
            if (!partition) throw ConfigError("intersection kernel needs a partitioned ground space");
            return intersection_kernel(dx, dy, f.tnorm, *partition);
          },
          [&](const family::NonSingleton& f) { return nonsingleton_kernel(dx, dy, f.tnorm); },
          [&](const family::NonSingletonGaussian&) -> double {
            throw ConfigError("unreachable: Gaussian family on discrete data");
          },
          [&](const family::DistanceInner& f) { return distance_inner(dx, dy, f.reference, f.metric); },
          [&](const family::DistancePolynomial& f) {
            return distance_polynomial_kernel(dx, dy, f.reference, f.metric, f.alpha, f.gamma, f.beta);
          },
          [&](const family::DistanceGaussian& f) { return distance_gaussian_kernel(dx, dy, f.metric, f.lambda); },
      },
      spec.family);
}

double eval(const FuzzyKernelSpec& spec, const Record& x, const Record& y) {
  if (x.size() != y.size()) throw DomainError("records differ in attribute count");
  if (x.empty()) throw DomainError("records have no attributes");
  double result = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) result *= eval(spec, x[i], y[i]);
  return result;
}

}  // namespace fuzzyk
