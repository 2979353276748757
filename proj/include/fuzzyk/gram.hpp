#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "fuzzyk/kernels.hpp"

namespace fuzzyk {

/// Symmetric matrix of pairwise kernel values plus where it came from.
/// `spec` is empty for matrices loaded from a file.
struct GramMatrix {
  Eigen::MatrixXd values;
  std::optional<FuzzyKernelSpec> spec;
  std::vector<std::string> item_ids;

  [[nodiscard]] std::size_t size() const noexcept { return static_cast<std::size_t>(values.rows()); }
};

enum class PsdVerdict { psd, indefinite };

struct PsdReport {
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  PsdVerdict verdict = PsdVerdict::psd;
  double tolerance = 0.0;
  std::vector<double> eigenvalues;  // ascending
};

inline constexpr double kDefaultPsdTolerance = 1e-8;

/// Upper triangle evaluated (optionally on `threads` workers, 0 = hardware
/// concurrency), lower triangle mirrored. The result does not depend on the
/// thread count. Missing ids default to the row index.
[[nodiscard]] GramMatrix compute_gram(std::span<const Record> data, const FuzzyKernelSpec& spec,
                                      std::vector<std::string> item_ids = {}, unsigned threads = 1);

/// Rectangular matrix of k(rows[i], cols[j]).
[[nodiscard]] Eigen::MatrixXd compute_cross(std::span<const Record> rows, std::span<const Record> cols,
                                            const FuzzyKernelSpec& spec, unsigned threads = 1);

/// Full symmetric eigendecomposition. PSD iff
/// min_eig >= -tol * max(1, |max_eig|). Non-finite entries throw DataError.
[[nodiscard]] PsdReport check_psd(const Eigen::MatrixXd& values, double tol = kDefaultPsdTolerance);
[[nodiscard]] inline PsdReport check_psd(const GramMatrix& g, double tol = kDefaultPsdTolerance) {
  return check_psd(g.values, tol);
}

/// Cosine normalization k(x,y) / sqrt(k(x,x) k(y,y)); the diagonal becomes exactly 1.
[[nodiscard]] GramMatrix normalize(const GramMatrix& g);

/// Dense text form: first line n, then n rows of 17-significant-digit values.
void write_matrix(std::ostream& out, const Eigen::MatrixXd& m);
/// Inverse of write_matrix; throws ParseError on malformed input.
[[nodiscard]] Eigen::MatrixXd read_matrix(std::istream& in);

}  // namespace fuzzyk
