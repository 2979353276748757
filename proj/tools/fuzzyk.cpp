// fuzzyk: fuzzify crisp data, compute Gram matrices, check PSD, classify and
// run MMD two-sample tests with kernels on fuzzy sets.

#include <iostream>

#include <CLI11.hpp>

#include "fuzzyk/commands.hpp"

int main(int argc, char** argv) {
  using namespace fuzzyk::cli;

  CLI::App app{"Kernels on fuzzy sets"};
  app.require_subcommand(1);

  FuzzifyOptions fz;
  auto* fuzzify = app.add_subcommand("fuzzify", "Turn a crisp numeric table into a fuzzy dataset");
  fuzzify->add_option("--input", fz.input, "Crisp table (comma or whitespace separated)")->required();
  fuzzify->add_option("--method", fz.method, "gaussian | histogram")
      ->check(CLI::IsMember({"gaussian", "histogram"}));
  fuzzify->add_option("--widths", fz.widths, "Gaussian widths, one per column or a single value")->delimiter(',');
  fuzzify->add_option("--bins", fz.bins, "Histogram bin count");
  fuzzify->add_option("--grid", fz.grid, "Sample Gaussian memberships onto an N-point grid");
  fuzzify->add_option("--min-degree", fz.min_degree, "Drop sampled degrees below this value");
  fuzzify->add_option("--label-column", fz.label_column, "Column holding +1/-1 labels");
  fuzzify->add_option("--out", fz.out, "Output dataset file")->required();

  GramOptions gr;
  auto* gram = app.add_subcommand("gram", "Compute the Gram matrix of a dataset");
  gram->add_option("--data", gr.data)->required();
  gram->add_option("--kernel", gr.kernel)->required();
  gram->add_option("--out", gr.out, "Matrix file")->required();
  gram->add_flag("--normalize", gr.normalize, "Cosine-normalize the matrix");
  gram->add_option("--threads", gr.threads, "Worker threads (0 = all cores)");

  CheckPsdOptions ps;
  auto* psd = app.add_subcommand("check-psd", "Eigenvalue check of a Gram matrix");
  psd->add_option("--matrix", ps.matrix, "Matrix file written by 'gram'");
  psd->add_option("--data", ps.data);
  psd->add_option("--kernel", ps.kernel);
  psd->add_option("--tol", ps.tol, "Relative eigenvalue tolerance");
  psd->add_option("--threads", ps.threads);

  ClassifyOptions cl;
  auto* classify = app.add_subcommand("classify", "k-fold cross-validated kernel ridge classification");
  classify->add_option("--data", cl.data)->required();
  classify->add_option("--kernel", cl.kernel)->required();
  classify->add_option("--seed", cl.seed);
  classify->add_option("--folds", cl.folds);
  classify->add_option("--lambda", cl.lambda, "Ridge regularization");
  classify->add_option("--threads", cl.threads);

  MmdOptions mm;
  auto* mmd = app.add_subcommand("mmd-test", "MMD permutation test between the +1 and -1 records");
  mmd->add_option("--data", mm.data)->required();
  mmd->add_option("--kernel", mm.kernel)->required();
  mmd->add_option("--seed", mm.seed);
  mmd->add_option("--permutations", mm.permutations);
  mmd->add_option("--threads", mm.threads);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kValidationError;
  }

  if (*fuzzify) return run_fuzzify(fz, std::cout, std::cerr);
  if (*gram) return run_gram(gr, std::cout, std::cerr);
  if (*psd) return run_check_psd(ps, std::cout, std::cerr);
  if (*classify) return run_classify(cl, std::cout, std::cerr);
  return run_mmd(mm, std::cout, std::cerr);
}
