#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fuzzyk/dataset.hpp"

namespace fuzzyk::cli {

enum ExitCode : int { kOk = 0, kValidationError = 2, kNumericError = 3 };

struct FuzzifyOptions {
  std::filesystem::path input;  // crisp numeric table, comma/whitespace separated
  std::string method = "gaussian";  // "gaussian" | "histogram"
  std::vector<double> widths;  // one per column, or a single broadcast value
  std::size_t bins = 10;
  std::optional<std::size_t> grid;  // gaussian: sample onto an N-point line instead of emitting parameters
  double min_degree = 1e-3;  // gaussian + grid: drop sampled degrees below this
  std::optional<std::size_t> label_column;  // gaussian: column holding +1/-1 labels
  std::filesystem::path out;
};

struct GramOptions {
  std::filesystem::path data;
  std::filesystem::path kernel;
  std::filesystem::path out;
  bool normalize = false;
  unsigned threads = 1;
};

struct CheckPsdOptions {
  std::optional<std::filesystem::path> matrix;  // either a matrix file ...
  std::optional<std::filesystem::path> data;    // ... or data + kernel
  std::optional<std::filesystem::path> kernel;
  double tol = 1e-8;
  unsigned threads = 1;
};

struct ClassifyOptions {
  std::filesystem::path data;
  std::filesystem::path kernel;
  std::optional<std::uint64_t> seed;
  std::size_t folds = 5;
  double lambda = 1.0;
  unsigned threads = 1;
};

/// Records labelled +1 form sample A, records labelled -1 sample B.
struct MmdOptions {
  std::filesystem::path data;
  std::filesystem::path kernel;
  std::optional<std::uint64_t> seed;
  std::size_t permutations = 1000;
  unsigned threads = 1;
};

/// Parses a rectangular numeric table; ParseError on non-numeric cells,
/// ValidationError on an empty or ragged table.
[[nodiscard]] std::vector<std::vector<double>> parse_table(std::istream& in);

[[nodiscard]] Dataset fuzzify(const std::vector<std::vector<double>>& table, const FuzzifyOptions& opts);

// Each command writes a JSON report to `out`, diagnostics to `err`, and
// returns the process exit code.
int run_fuzzify(const FuzzifyOptions& opts, std::ostream& out, std::ostream& err);
int run_gram(const GramOptions& opts, std::ostream& out, std::ostream& err);
int run_check_psd(const CheckPsdOptions& opts, std::ostream& out, std::ostream& err);
int run_classify(const ClassifyOptions& opts, std::ostream& out, std::ostream& err);
int run_mmd(const MmdOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace fuzzyk::cli
