#include "fuzzyk/gram.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include <Eigen/Eigenvalues>

#include "fuzzyk/error.hpp"
#include "parallel.hpp"

namespace fuzzyk {

namespace {

// Must be called from inside a catch block.
[[noreturn]] void rethrow_for_pair(std::size_t i, std::size_t j) {
  const std::string where = "kernel evaluation failed for pair (" + std::to_string(i) + ", " + std::to_string(j) + "): ";
  try {
    throw;
  } catch (const ConfigError& e) {
    throw ConfigError(where + e.what());
  } catch (const DomainError& e) {
    throw DomainError(where + e.what());
  } catch (const DataError& e) {
    throw DataError(where + e.what());
  } catch (const NumericError& e) {
    throw NumericError(where + e.what());
  }
}

}  // namespace

GramMatrix compute_gram(std::span<const Record> data, const FuzzyKernelSpec& spec,
                        std::vector<std::string> item_ids, unsigned threads) {
  const std::size_t n = data.size();
  if (item_ids.empty()) {
    for (std::size_t i = 0; i < n; ++i) item_ids.push_back(std::to_string(i));
  } else if (item_ids.size() != n) {
    throw DomainError("item id count does not match data size");
  }
  Eigen::MatrixXd values(n, n);
  detail::parallel_for(n, threads, [&](std::size_t i) {
    for (std::size_t j = i; j < n; ++j) {
      try {
        values(i, j) = eval(spec, data[i], data[j]);
      } catch (...) {
        rethrow_for_pair(i, j);
      }
    }
  });
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) values(i, j) = values(j, i);
  }
  return GramMatrix{std::move(values), spec, std::move(item_ids)};
}

Eigen::MatrixXd compute_cross(std::span<const Record> rows, std::span<const Record> cols,
                              const FuzzyKernelSpec& spec, unsigned threads) {
  Eigen::MatrixXd values(rows.size(), cols.size());
  detail::parallel_for(rows.size(), threads, [&](std::size_t i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      try {
        values(i, j) = eval(spec, rows[i], cols[j]);
      } catch (...) {
        rethrow_for_pair(i, j);
      }
    }
  });
  return values;
}

PsdReport check_psd(const Eigen::MatrixXd& values, double tol) {
  if (!(tol > 0.0)) throw DomainError("PSD tolerance must be positive");
  if (values.rows() != values.cols()) throw DomainError("PSD check needs a square matrix");
  if (values.size() == 0) throw DomainError("PSD check needs a non-empty matrix");
  if (!values.allFinite()) throw DataError("matrix has non-finite entries");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(values, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("symmetric eigensolver did not converge");
  const Eigen::VectorXd& eig = solver.eigenvalues();

  PsdReport report;
  report.eigenvalues.assign(eig.data(), eig.data() + eig.size());
  report.min_eigenvalue = eig.minCoeff();
  report.max_eigenvalue = eig.maxCoeff();
  report.tolerance = tol;
  const double floor = -tol * std::max(1.0, std::abs(report.max_eigenvalue));
  report.verdict = report.min_eigenvalue >= floor ? PsdVerdict::psd : PsdVerdict::indefinite;
  return report;
}

GramMatrix normalize(const GramMatrix& g) {
  const Eigen::Index n = g.values.rows();
  Eigen::VectorXd diag = g.values.diagonal();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(diag(i) > 0.0)) {
      throw DomainError("cannot normalize: diagonal entry " + std::to_string(i) + " is not positive");
    }
  }
  GramMatrix out = g;
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = g.values(i, j) / std::sqrt(diag(i) * diag(j));
      out.values(i, j) = v;
      out.values(j, i) = v;
    }
  }
  return out;
}

void write_matrix(std::ostream& out, const Eigen::MatrixXd& m) {
  out << m.rows() << '\n';
  char buf[64];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const auto res = std::to_chars(buf, buf + sizeof buf, m(i, j), std::chars_format::general, 17);
      if (j > 0) out << ' ';
      out.write(buf, res.ptr - buf);
    }
    out << '\n';
  }
}

Eigen::MatrixXd read_matrix(std::istream& in) {
  long long n = 0;
  if (!(in >> n) || n <= 0) throw ParseError("matrix file: first line must be a positive size");
  Eigen::MatrixXd m(n, n);
  for (long long i = 0; i < n; ++i) {
    for (long long j = 0; j < n; ++j) {
      std::string token;
      if (!(in >> token)) {
        throw ParseError("matrix file: missing entry at row " + std::to_string(i) + ", column " + std::to_string(j));
      }
      double v = 0.0;
      const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
      if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
        throw ParseError("matrix file: bad number '" + token + "' at row " + std::to_string(i) + ", column " +
                         std::to_string(j));
      }
      m(i, j) = v;
    }
  }
  std::string extra;
  if (in >> extra) throw ParseError("matrix file: trailing content after " + std::to_string(n) + " rows");
  return m;
}

}  // namespace fuzzyk
