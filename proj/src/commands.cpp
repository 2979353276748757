#include "fuzzyk/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>

#include "fuzzyk/error.hpp"
#include "fuzzyk/gram.hpp"
#include "fuzzyk/learn.hpp"

namespace fuzzyk::cli {

using nlohmann::json;

namespace {

int guarded(std::ostream& err, const std::function<void()>& body) {
  try {
    body();
    return kOk;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumericError;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
  }
  return kValidationError;
}

void emit(std::ostream& out, const json& report) { out << report.dump(2) << '\n'; }

std::uint64_t require_seed(const std::optional<std::uint64_t>& seed) {
  if (!seed) throw ValidationError("--seed is required for commands with random behavior");
  return *seed;
}

const std::vector<int>& require_labels(const Dataset& data, const char* command) {
  if (!data.labels) throw ValidationError(std::string(command) + " needs a dataset with labels");
  return *data.labels;
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.empty()) throw ValidationError("--out is required");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open output file '" + path.string() + "'");
  return out;
}

json psd_to_json(const PsdReport& r) {
  return {{"min_eigenvalue", r.min_eigenvalue},
          {"max_eigenvalue", r.max_eigenvalue},
          {"verdict", r.verdict == PsdVerdict::psd ? "PSD" : "indefinite"},
          {"tolerance", r.tolerance},
          {"eigenvalues", r.eigenvalues}};
}

std::vector<double> column(const std::vector<std::vector<double>>& table, std::size_t c) {
  std::vector<double> out;
  out.reserve(table.size());
  for (const auto& row : table) out.push_back(row[c]);
  return out;
}

}  // namespace

std::vector<std::vector<double>> parse_table(std::istream& in) {
  std::vector<std::vector<double>> table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::replace_if(line.begin(), line.end(), [](char c) { return c == ',' || c == ';' || c == '\t' || c == '\r'; }, ' ');
    std::istringstream cells(line);
    std::vector<double> row;
    std::string cell;
    while (cells >> cell) {
      double v = 0.0;
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (res.ec != std::errc() || res.ptr != cell.data() + cell.size() || !std::isfinite(v)) {
        throw ParseError("table line " + std::to_string(line_no) + ", column " + std::to_string(row.size()) +
                         ": '" + cell + "' is not a finite number");
      }
      row.push_back(v);
    }
    if (row.empty()) continue;
    if (!table.empty() && row.size() != table.front().size()) {
      throw ValidationError("table line " + std::to_string(line_no) + " has " + std::to_string(row.size()) +
                            " columns, expected " + std::to_string(table.front().size()));
    }
    table.push_back(std::move(row));
  }
  if (table.empty()) throw ValidationError("input table is empty");
  return table;
}

Dataset fuzzify(const std::vector<std::vector<double>>& table, const FuzzifyOptions& opts) {
  if (table.empty() || table.front().empty()) throw ValidationError("input table is empty");
  const std::size_t n_cols = table.front().size();
  Dataset data;

  if (opts.method == "histogram") {
    if (opts.label_column) throw ValidationError("--label-column is not supported by histogram fuzzification");
    if (opts.bins == 0) throw ValidationError("--bins must be at least 1");
    double lo = table.front().front();
    double hi = lo;
    for (const auto& row : table) {
      lo = std::min(lo, *std::min_element(row.begin(), row.end()));
      hi = std::max(hi, *std::max_element(row.begin(), row.end()));
    }
    // Shared bins over the whole table so that every column lives on one ground space.
    std::vector<double> centers(opts.bins);
    const double step = (hi - lo) / static_cast<double>(opts.bins);
    for (std::size_t i = 0; i < opts.bins; ++i) centers[i] = lo + (static_cast<double>(i) + 0.5) * step;
    data.ground = GroundSpace::line(std::move(centers));
    for (std::size_t c = 0; c < n_cols; ++c) {
      data.records.push_back({fuzzify_from_histogram(column(table, c), data.ground)});
      data.ids.push_back("col" + std::to_string(c));
    }
    return data;
  }

  if (opts.method != "gaussian") throw ValidationError("unknown fuzzification method '" + opts.method + "'");
  if (opts.label_column && *opts.label_column >= n_cols) {
    throw ValidationError("--label-column " + std::to_string(*opts.label_column) + " is out of range");
  }
  std::vector<std::size_t> features;
  for (std::size_t c = 0; c < n_cols; ++c) {
    if (!opts.label_column || c != *opts.label_column) features.push_back(c);
  }
  if (features.empty()) throw ValidationError("no feature columns left to fuzzify");
  std::vector<double> widths = opts.widths;
  if (widths.size() == 1) widths.assign(features.size(), widths.front());
  if (widths.size() != features.size()) {
    throw ValidationError("--widths needs 1 or " + std::to_string(features.size()) + " values");
  }
  for (double w : widths) {
    if (!(w > 0.0)) throw ValidationError("--widths must all be positive");
  }

  if (opts.grid) {
    if (*opts.grid < 2) throw ValidationError("--grid needs at least 2 points");
    double lo = table.front()[features.front()];
    double hi = lo;
    for (const auto& row : table) {
      for (std::size_t c : features) {
        lo = std::min(lo, row[c]);
        hi = std::max(hi, row[c]);
      }
    }
    const double pad = 4.0 * *std::max_element(widths.begin(), widths.end());
    std::vector<double> coords(*opts.grid);
    const double step = (hi - lo + 2.0 * pad) / static_cast<double>(*opts.grid - 1);
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = lo - pad + static_cast<double>(i) * step;
    data.ground = GroundSpace::line(std::move(coords));
  }

  std::vector<int> labels;
  for (std::size_t r = 0; r < table.size(); ++r) {
    Record record;
    for (std::size_t f = 0; f < features.size(); ++f) {
      GaussianFuzzySet g = fuzzify_gaussian({table[r][features[f]]}, {widths[f]});
      if (opts.grid) {
        record.emplace_back(sample_onto(g, data.ground, opts.min_degree));
      } else {
        record.emplace_back(std::move(g));
      }
    }
    data.records.push_back(std::move(record));
    data.ids.push_back(std::to_string(r));
    if (opts.label_column) {
      const double v = table[r][*opts.label_column];
      if (v != 1.0 && v != -1.0) {
        throw ValidationError("table row " + std::to_string(r) + ": label must be 1 or -1");
      }
      labels.push_back(static_cast<int>(v));
    }
  }
  if (opts.label_column) data.labels = std::move(labels);
  return data;
}

int run_fuzzify(const FuzzifyOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::ifstream in(opts.input);
    if (!in) throw ValidationError("cannot open input table '" + opts.input.string() + "'");
    const Dataset data = fuzzify(parse_table(in), opts);
    auto file = open_output(opts.out);
    file << to_json(data).dump(2) << '\n';
    emit(out, {{"command", "fuzzify"},
               {"method", opts.method},
               {"records", data.records.size()},
               {"out", opts.out.string()}});
  });
}

int run_gram(const GramOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Dataset data = load_dataset(opts.data);
    const FuzzyKernelSpec spec = load_kernel_spec(opts.kernel, data.ground);
    GramMatrix gram = compute_gram(data.records, spec, data.ids, opts.threads);
    if (opts.normalize) gram = normalize(gram);
    auto file = open_output(opts.out);
    write_matrix(file, gram.values);
    emit(out, {{"command", "gram"},
               {"n", gram.size()},
               {"kernel", to_json(spec)},
               {"item_ids", gram.item_ids},
               {"normalized", opts.normalize},
               {"matrix", opts.out.string()}});
  });
}

int run_check_psd(const CheckPsdOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    json report = {{"command", "check-psd"}};
    Eigen::MatrixXd values;
    if (opts.matrix) {
      if (opts.data || opts.kernel) throw ValidationError("give either --matrix or --data with --kernel");
      std::ifstream in(*opts.matrix);
      if (!in) throw ValidationError("cannot open matrix file '" + opts.matrix->string() + "'");
      values = read_matrix(in);
      report["source"] = opts.matrix->string();
    } else {
      if (!opts.data || !opts.kernel) throw ValidationError("check-psd needs --matrix, or --data and --kernel");
      const Dataset data = load_dataset(*opts.data);
      const FuzzyKernelSpec spec = load_kernel_spec(*opts.kernel, data.ground);
      values = compute_gram(data.records, spec, data.ids, opts.threads).values;
      report["kernel"] = to_json(spec);
    }
    report.update(psd_to_json(check_psd(values, opts.tol)));
    emit(out, report);
  });
}

int run_classify(const ClassifyOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::uint64_t seed = require_seed(opts.seed);
    const Dataset data = load_dataset(opts.data);
    const auto& labels = require_labels(data, "classify");
    const FuzzyKernelSpec spec = load_kernel_spec(opts.kernel, data.ground);
    const GramMatrix gram = compute_gram(data.records, spec, data.ids, opts.threads);
    const auto cv = cross_validate(gram, labels, opts.folds, opts.lambda, seed);
    emit(out, {{"command", "classify"},
               {"kernel", to_json(spec)},
               {"folds", opts.folds},
               {"lambda", opts.lambda},
               {"seed", seed},
               {"fold_accuracies", cv.fold_accuracies},
               {"mean_accuracy", cv.mean_accuracy}});
  });
}

int run_mmd(const MmdOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::uint64_t seed = require_seed(opts.seed);
    const Dataset data = load_dataset(opts.data);
    const auto& labels = require_labels(data, "mmd-test");
    const FuzzyKernelSpec spec = load_kernel_spec(opts.kernel, data.ground);
    std::vector<Record> a;
    std::vector<Record> b;
    for (std::size_t i = 0; i < data.records.size(); ++i) (labels[i] == 1 ? a : b).push_back(data.records[i]);
    if (a.empty() || b.empty()) throw ValidationError("mmd-test needs records labelled 1 and records labelled -1");
    if (opts.permutations == 0) throw ValidationError("--permutations must be positive");
    const MmdResult r = mmd_permutation_test(a, b, spec, opts.permutations, seed, opts.threads);
    emit(out, {{"command", "mmd-test"},
               {"kernel", to_json(spec)},
               {"n_a", a.size()},
               {"n_b", b.size()},
               {"statistic", r.statistic},
               {"p_value", r.p_value},
               {"n_permutations", r.n_permutations},
               {"seed", r.seed},
               {"generator", r.generator}});
  });
}

}  // namespace fuzzyk::cli
