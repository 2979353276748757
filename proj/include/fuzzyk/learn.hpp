#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "fuzzyk/gram.hpp"

namespace fuzzyk {

/// Kernel ridge classifier in dual form: f(x) = sum_j c_j k(x, x_j) + bias.
struct DualModel {
  Eigen::VectorXd coefficients;
  std::vector<std::string> train_ids;
  double bias = 0.0;
  std::optional<FuzzyKernelSpec> spec;
  double regularization = 0.0;
};

/// Solves (G + lambda I) c = labels. Labels must be +1/-1.
[[nodiscard]] DualModel fit(const GramMatrix& gram, std::span<const int> labels, double lambda);

/// sign(cross * c + bias) with sign(0) = +1. `cross(i, j)` = k(test_i, train_j).
[[nodiscard]] std::vector<int> predict(const DualModel& model, const Eigen::MatrixXd& cross);

struct CrossValidationResult {
  std::vector<double> fold_accuracies;
  double mean_accuracy = 0.0;
};

/// k-fold cross validation over a precomputed Gram matrix. Fold assignment
/// is a seeded shuffle of the record indices dealt round-robin into folds.
[[nodiscard]] CrossValidationResult cross_validate(const GramMatrix& gram, std::span<const int> labels,
                                                   std::size_t folds, double lambda, std::uint64_t seed);

struct MmdResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n_permutations = 0;
  std::uint64_t seed = 0;
  std::string generator = "mt19937_64";
};

/// Biased (V-statistic) squared MMD: mean(gxx) + mean(gyy) - 2 mean(gxy), clamped at 0.
[[nodiscard]] double mmd_statistic(const Eigen::MatrixXd& gxx, const Eigen::MatrixXd& gyy,
                                   const Eigen::MatrixXd& gxy);

/// Permutation test on a pooled Gram matrix whose first `n_first` rows are
/// sample A. Replica r shuffles with an mt19937_64 seeded from (seed, r), so
/// the result is independent of the thread count.
[[nodiscard]] MmdResult mmd_permutation_test(const Eigen::MatrixXd& pooled, std::size_t n_first,
                                             std::size_t n_permutations, std::uint64_t seed,
                                             unsigned threads = 1);

[[nodiscard]] MmdResult mmd_permutation_test(std::span<const Record> sample_a, std::span<const Record> sample_b,
                                             const FuzzyKernelSpec& spec, std::size_t n_permutations,
                                             std::uint64_t seed, unsigned threads = 1);

}  // namespace fuzzyk
