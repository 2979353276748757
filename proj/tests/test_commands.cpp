#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include "fuzzyk/commands.hpp"
#include "fuzzyk/error.hpp"

namespace fuzzyk::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class Workdir : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("fuzzyk_") + info->test_suite_name() + "_" + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) const {
    const auto path = dir_ / name;
    std::ofstream(path, std::ios::binary) << text;
    return path;
  }

  fs::path labelled_dataset() const {
    return write("data.json", R"({"records": [
      [{"type": "gaussian", "m": [0.0], "sigma": [1.0]}],
      [{"type": "gaussian", "m": [0.3], "sigma": [1.0]}],
      [{"type": "gaussian", "m": [-0.2], "sigma": [1.0]}],
      [{"type": "gaussian", "m": [4.0], "sigma": [1.0]}],
      [{"type": "gaussian", "m": [4.2], "sigma": [1.0]}],
      [{"type": "gaussian", "m": [3.9], "sigma": [1.0]}]],
      "labels": [1, 1, 1, -1, -1, -1]})");
  }

  fs::path gaussian_kernel() const { return write("kernel.json", R"({"family": "nonsingleton_gaussian"})"); }

  fs::path dir_;
};

using Commands = Workdir;

TEST(ParseTable, SeparatorsAndComments) {
  std::istringstream in("1,2;3\n# note\n4\t5 6  # trailing\n\n");
  EXPECT_EQ(parse_table(in), (std::vector<std::vector<double>>{{1, 2, 3}, {4, 5, 6}}));
}

TEST(ParseTable, Errors) {
  std::istringstream empty("# nothing\n\n");
  EXPECT_THROW((void)parse_table(empty), ValidationError);
  std::istringstream ragged("1 2\n3\n");
  EXPECT_THROW((void)parse_table(ragged), ValidationError);
  std::istringstream text("1 abc\n");
  EXPECT_THROW((void)parse_table(text), ParseError);
}

TEST(Fuzzify, SingleRowGaussian) {
  FuzzifyOptions opts;
  opts.widths = {0.5};
  const auto d = fuzzify({{2.0, -1.0}}, opts);
  ASSERT_EQ(d.records.size(), 1u);
  ASSERT_EQ(d.records[0].size(), 2u);
  EXPECT_EQ(std::get<GaussianFuzzySet>(d.records[0][1]).means(), std::vector<double>{-1.0});
  EXPECT_EQ(std::get<GaussianFuzzySet>(d.records[0][1]).widths(), std::vector<double>{0.5});
}

TEST(Fuzzify, ConstantColumnFallsIntoOneBin) {
  FuzzifyOptions opts;
  opts.method = "histogram";
  opts.bins = 4;
  const auto d = fuzzify({{3.0}, {3.0}, {3.0}}, opts);
  ASSERT_EQ(d.records.size(), 1u);
  const auto& fs = std::get<DiscreteFuzzySet>(d.records[0][0]);
  ASSERT_EQ(fs.support_size(), 1u);
  EXPECT_EQ(fs.entries().front().second, 1.0);
}

TEST(Fuzzify, LabelColumnAndGrid) {
  FuzzifyOptions opts;
  opts.widths = {0.3};
  opts.label_column = 1;
  opts.grid = 50;
  const auto d = fuzzify({{0.0, 1}, {1.0, -1}}, opts);
  EXPECT_EQ(d.labels, (std::vector<int>{1, -1}));
  ASSERT_NE(d.ground, nullptr);
  EXPECT_EQ(d.ground->count(), 50u);
  EXPECT_GT(std::get<DiscreteFuzzySet>(d.records[0][0]).height(), 0.9);
}

TEST(Fuzzify, Errors) {
  FuzzifyOptions opts;
  EXPECT_THROW((void)fuzzify({}, opts), ValidationError);
  EXPECT_THROW((void)fuzzify({{1.0}}, opts), ValidationError);  // no widths
  opts.widths = {0.5, 0.5};
  EXPECT_THROW((void)fuzzify({{1.0}}, opts), ValidationError);
  opts.widths = {0.5};
  opts.label_column = 0;
  EXPECT_THROW((void)fuzzify({{1.0}}, opts), ValidationError);
  opts.label_column = 1;
  EXPECT_THROW((void)fuzzify({{1.0, 2.0}}, opts), ValidationError);
  opts.method = "kde";
  EXPECT_THROW((void)fuzzify({{1.0}}, opts), ValidationError);
}

TEST_F(Commands, FuzzifyWritesLoadableDataset) {
  FuzzifyOptions opts;
  opts.input = write("table.csv", "0.5,1\n1.5,-1\n");
  opts.widths = {0.4};
  opts.label_column = 1;
  opts.out = dir_ / "out.json";
  std::ostringstream out, err;
  ASSERT_EQ(run_fuzzify(opts, out, err), kOk) << err.str();
  const auto d = load_dataset(opts.out);
  EXPECT_EQ(d.records.size(), 2u);
  EXPECT_EQ(json::parse(out.str())["records"], 2);
}

TEST_F(Commands, FuzzifyEmptyTableIsValidationError) {
  FuzzifyOptions opts;
  opts.input = write("empty.csv", "");
  opts.widths = {1.0};
  opts.out = dir_ / "out.json";
  std::ostringstream out, err;
  EXPECT_EQ(run_fuzzify(opts, out, err), kValidationError);
  EXPECT_FALSE(err.str().empty());
}

TEST_F(Commands, GramThenCheckPsd) {
  GramOptions g;
  g.data = labelled_dataset();
  g.kernel = gaussian_kernel();
  g.out = dir_ / "gram.txt";
  std::ostringstream out, err;
  ASSERT_EQ(run_gram(g, out, err), kOk) << err.str();
  const auto meta = json::parse(out.str());
  EXPECT_EQ(meta["n"], 6);
  EXPECT_EQ(meta["kernel"]["family"], "nonsingleton_gaussian");
  EXPECT_EQ(meta["item_ids"].size(), 6u);

  CheckPsdOptions p;
  p.matrix = g.out;
  std::ostringstream pout;
  ASSERT_EQ(run_check_psd(p, pout, err), kOk) << err.str();
  EXPECT_EQ(json::parse(pout.str())["verdict"], "PSD");

  CheckPsdOptions q;
  q.data = g.data;
  q.kernel = g.kernel;
  std::ostringstream qout;
  ASSERT_EQ(run_check_psd(q, qout, err), kOk) << err.str();
  EXPECT_EQ(json::parse(qout.str())["min_eigenvalue"], json::parse(pout.str())["min_eigenvalue"]);
}

TEST_F(Commands, CheckPsdIdentityAndIndefinite) {
  CheckPsdOptions p;
  p.matrix = write("id.txt", "3\n1 0 0\n0 1 0\n0 0 1\n");
  std::ostringstream out, err;
  ASSERT_EQ(run_check_psd(p, out, err), kOk);
  EXPECT_EQ(json::parse(out.str())["verdict"], "PSD");

  p.matrix = write("bad.txt", "2\n1 2\n2 1\n");
  std::ostringstream out2;
  ASSERT_EQ(run_check_psd(p, out2, err), kOk);
  EXPECT_EQ(json::parse(out2.str())["verdict"], "indefinite");

  p.matrix = write("nan.txt", "2\n1 nan\nnan 1\n");
  std::ostringstream out3;
  EXPECT_NE(run_check_psd(p, out3, err), kOk);
}

TEST_F(Commands, ClassifyNeedsLabelsAndSeed) {
  ClassifyOptions c;
  c.data = write("nolabels.json", R"({"records": [[{"type": "gaussian", "m": [0], "sigma": [1]}],
                                                  [{"type": "gaussian", "m": [1], "sigma": [1]}]]})");
  c.kernel = gaussian_kernel();
  c.seed = 1;
  c.folds = 2;
  std::ostringstream out, err;
  EXPECT_EQ(run_classify(c, out, err), kValidationError);

  c.data = labelled_dataset();
  c.seed.reset();
  EXPECT_EQ(run_classify(c, out, err), kValidationError);

  c.seed = 3;
  c.folds = 3;
  c.lambda = 0.1;
  std::ostringstream ok;
  ASSERT_EQ(run_classify(c, ok, err), kOk) << err.str();
  EXPECT_EQ(json::parse(ok.str())["mean_accuracy"], 1.0);
}

TEST_F(Commands, BadKernelConfigIsValidationExit) {
  GramOptions g;
  g.data = labelled_dataset();
  g.kernel = write("k.json", R"({"family": "intersection"})");
  g.out = dir_ / "gram.txt";
  std::ostringstream out, err;
  EXPECT_EQ(run_gram(g, out, err), kValidationError);
  EXPECT_NE(err.str().find("configuration"), std::string::npos) << err.str();
}

TEST_F(Commands, MmdReportIsReproducible) {
  MmdOptions m;
  m.data = labelled_dataset();
  m.kernel = gaussian_kernel();
  m.seed = 99;
  m.permutations = 200;
  std::ostringstream a, b, err;
  ASSERT_EQ(run_mmd(m, a, err), kOk) << err.str();
  m.threads = 3;
  ASSERT_EQ(run_mmd(m, b, err), kOk) << err.str();
  EXPECT_EQ(a.str(), b.str());
  const auto r = json::parse(a.str());
  EXPECT_EQ(r["generator"], "mt19937_64");
  EXPECT_EQ(r["n_a"], 3);
  EXPECT_LE(r["p_value"].get<double>(), 1.0);
}

#ifdef FUZZYK_CLI_PATH
int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + FUZZYK_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST_F(Commands, BinaryExitCodes) {
  const auto id = write("id.txt", "2\n1 0\n0 1\n");
  EXPECT_EQ(run_cli("check-psd --matrix \"" + id.string() + "\""), 0);
  EXPECT_EQ(run_cli("classify --data \"" + (dir_ / "missing.json").string() + "\" --kernel k --seed 1"), 2);
  EXPECT_EQ(run_cli("no-such-command"), 2);
  const auto nolabels = write("nolabels.json", R"({"records": [[{"type": "gaussian", "m": [0], "sigma": [1]}]]})");
  EXPECT_EQ(run_cli("classify --data \"" + nolabels.string() + "\" --kernel \"" + gaussian_kernel().string() +
                    "\" --seed 1"),
            2);
}
#endif

}  // namespace
}  // namespace fuzzyk::cli
