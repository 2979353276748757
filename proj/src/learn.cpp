#include "fuzzyk/learn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/Cholesky>

#include "fuzzyk/error.hpp"
#include "parallel.hpp"

namespace fuzzyk {

namespace {

void check_labels(std::span<const int> labels) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 1 && labels[i] != -1) {
      throw DomainError("label " + std::to_string(i) + " is not +1 or -1");
    }
  }
}

std::mt19937_64 replica_rng(std::uint64_t seed, std::uint64_t replica) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(replica), static_cast<std::uint32_t>(replica >> 32)};
  return std::mt19937_64(seq);
}

// V-statistic over pooled(order[..n_first]) vs pooled(order[n_first..]).
double pooled_statistic(const Eigen::MatrixXd& pooled, std::span<const std::size_t> order, std::size_t n_first) {
  const auto a = order.first(n_first);
  const auto b = order.subspan(n_first);
  double saa = 0.0;
  for (std::size_t i : a)
    for (std::size_t j : a) saa += pooled(i, j);
  double sbb = 0.0;
  for (std::size_t i : b)
    for (std::size_t j : b) sbb += pooled(i, j);
  double sab = 0.0;
  for (std::size_t i : a)
    for (std::size_t j : b) sab += pooled(i, j);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  return std::max(0.0, saa / (na * na) + sbb / (nb * nb) - 2.0 * sab / (na * nb));
}

}  // namespace

DualModel fit(const GramMatrix& gram, std::span<const int> labels, double lambda) {
  const std::size_t n = gram.size();
  if (labels.size() != n) {
    throw DomainError("label count " + std::to_string(labels.size()) + " does not match Gram size " +
                      std::to_string(n));
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("regularization must be positive");
  if (n == 0) throw DomainError("cannot fit on an empty training set");
  check_labels(labels);
  if (!gram.values.allFinite()) throw DataError("Gram matrix has non-finite entries");

  Eigen::MatrixXd system = gram.values;
  system.diagonal().array() += lambda;
  Eigen::VectorXd y(n);
  for (std::size_t i = 0; i < n; ++i) y(i) = labels[i];

  Eigen::LDLT<Eigen::MatrixXd> ldlt(system);
  if (ldlt.info() != Eigen::Success) throw NumericError("LDLT factorization failed");
  Eigen::VectorXd c = ldlt.solve(y);
  if (!c.allFinite() || (system * c - y).norm() > 1e-8 * std::max(1.0, y.norm()) * std::max(1.0, system.norm())) {
    throw NumericError("regularized Gram system is singular to working precision");
  }
  return DualModel{std::move(c), gram.item_ids, 0.0, gram.spec, lambda};
}

std::vector<int> predict(const DualModel& model, const Eigen::MatrixXd& cross) {
  if (cross.cols() != model.coefficients.size()) {
    throw DomainError("cross matrix has " + std::to_string(cross.cols()) + " columns, model has " +
                      std::to_string(model.coefficients.size()) + " coefficients");
  }
  std::vector<int> out(cross.rows());
  for (Eigen::Index i = 0; i < cross.rows(); ++i) {
    double score = model.bias;
    for (Eigen::Index j = 0; j < cross.cols(); ++j) score += cross(i, j) * model.coefficients(j);
    out[i] = score >= 0.0 ? 1 : -1;
  }
  return out;
}

CrossValidationResult cross_validate(const GramMatrix& gram, std::span<const int> labels, std::size_t folds,
                                     double lambda, std::uint64_t seed) {
  const std::size_t n = gram.size();
  if (labels.size() != n) throw DomainError("label count does not match Gram size");
  if (folds < 2 || folds > n) {
    throw DomainError("fold count must be between 2 and the number of records (" + std::to_string(n) + ")");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::size_t> fold_of(n);
  for (std::size_t k = 0; k < n; ++k) fold_of[order[k]] = k % folds;

  CrossValidationResult result;
  for (std::size_t f = 0; f < folds; ++f) {
    std::vector<Eigen::Index> train;
    std::vector<Eigen::Index> test;
    for (std::size_t i = 0; i < n; ++i) (fold_of[i] == f ? test : train).push_back(static_cast<Eigen::Index>(i));

    GramMatrix sub{gram.values(train, train), gram.spec, {}};
    std::vector<int> train_labels;
    for (auto i : train) train_labels.push_back(labels[i]);
    const DualModel model = fit(sub, train_labels, lambda);
    const auto predicted = predict(model, gram.values(test, train));

    std::size_t correct = 0;
    for (std::size_t t = 0; t < test.size(); ++t) correct += predicted[t] == labels[test[t]] ? 1 : 0;
    result.fold_accuracies.push_back(static_cast<double>(correct) / static_cast<double>(test.size()));
  }
  result.mean_accuracy = std::accumulate(result.fold_accuracies.begin(), result.fold_accuracies.end(), 0.0) /
                         static_cast<double>(folds);
  return result;
}

double mmd_statistic(const Eigen::MatrixXd& gxx, const Eigen::MatrixXd& gyy, const Eigen::MatrixXd& gxy) {
  const Eigen::Index n = gxx.rows();
  const Eigen::Index m = gyy.rows();
  if (n == 0 || m == 0) throw DomainError("MMD needs two non-empty samples");
  if (gxx.cols() != n || gyy.cols() != m || gxy.rows() != n || gxy.cols() != m) {
    throw DomainError("MMD matrices have inconsistent shapes");
  }
  double sxx = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) sxx += gxx(i, j);
  double syy = 0.0;
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) syy += gyy(i, j);
  double sxy = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j) sxy += gxy(i, j);
  const double dn = static_cast<double>(n);
  const double dm = static_cast<double>(m);
  return std::max(0.0, sxx / (dn * dn) + syy / (dm * dm) - 2.0 * sxy / (dn * dm));
}

MmdResult mmd_permutation_test(const Eigen::MatrixXd& pooled, std::size_t n_first, std::size_t n_permutations,
                               std::uint64_t seed, unsigned threads) {
  const auto total = static_cast<std::size_t>(pooled.rows());
  if (pooled.cols() != pooled.rows()) throw DomainError("pooled Gram matrix must be square");
  if (n_first == 0 || n_first >= total) throw DomainError("MMD needs two non-empty samples");
  if (n_permutations == 0) throw DomainError("MMD permutation test needs at least one permutation");

  std::vector<std::size_t> identity(total);
  std::iota(identity.begin(), identity.end(), 0);
  const double observed = pooled_statistic(pooled, identity, n_first);

  std::vector<char> exceeds(n_permutations, 0);
  detail::parallel_for(n_permutations, threads, [&](std::size_t r) {
    auto order = identity;
    auto rng = replica_rng(seed, r);
    std::shuffle(order.begin(), order.end(), rng);
    exceeds[r] = pooled_statistic(pooled, order, n_first) >= observed ? 1 : 0;
  });
  const auto hits = static_cast<std::size_t>(std::count(exceeds.begin(), exceeds.end(), 1));

  MmdResult result;
  result.statistic = observed;
  result.p_value = static_cast<double>(1 + hits) / static_cast<double>(1 + n_permutations);
  result.n_permutations = n_permutations;
  result.seed = seed;
  return result;
}

MmdResult mmd_permutation_test(std::span<const Record> sample_a, std::span<const Record> sample_b,
                               const FuzzyKernelSpec& spec, std::size_t n_permutations, std::uint64_t seed,
                               unsigned threads) {
  if (sample_a.empty() || sample_b.empty()) throw DomainError("MMD needs two non-empty samples");
  std::vector<Record> pooled(sample_a.begin(), sample_a.end());
  pooled.insert(pooled.end(), sample_b.begin(), sample_b.end());
  const GramMatrix gram = compute_gram(pooled, spec, {}, threads);
  return mmd_permutation_test(gram.values, sample_a.size(), n_permutations, seed, threads);
}

}  // namespace fuzzyk
