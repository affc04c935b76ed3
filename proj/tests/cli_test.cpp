#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "undersolve/io.hpp"

namespace {

namespace fs = std::filesystem;
using undersolve::cli::run;

const fs::path kExample = fs::path(UNDERSOLVE_DATA_DIR) / "worked_example";

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> with_example(std::vector<std::string> args) {
  args.insert(args.end(), {"--matrix", (kExample / "A.mtx").string(), "--rhs", (kExample / "b.mtx").string(),
                           "--x0", (kExample / "x0.mtx").string()});
  return args;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("undersolve_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(Cli, RrefSolvesWorkedExample) {
  const Result r = invoke(with_example({"rref"}));
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("rank 5"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("converged"), std::string::npos) << r.out;
}

TEST_F(Cli, SolveWritesJsonReport) {
  const fs::path json = dir_ / "report.json";
  const Result r = invoke(with_example({"solve", "--method", "ggs", "--rref", "--json", json.string()}));
  EXPECT_EQ(r.code, 0) << r.err << r.out;
  std::ifstream in(json);
  std::stringstream text;
  text << in.rdbuf();
  const auto report = undersolve::io::read_report(text.str());
  EXPECT_EQ(report.status, undersolve::SolveStatus::Converged);
  EXPECT_EQ(report.config.method, undersolve::Method::GeneralizedGaussSeidel);
}

TEST_F(Cli, SolveExitCodes) {
  EXPECT_EQ(invoke(with_example({"solve", "--method", "baseline", "--max-iter", "5"})).code,
            undersolve::cli::kNotConverged);
  EXPECT_EQ(invoke(with_example({"solve", "--method", "gjacobi"})).code, undersolve::cli::kDiverged);
  const Result square = invoke(with_example({"solve", "--method", "jacobi"}));
  EXPECT_EQ(square.code, undersolve::cli::kInputError);
  EXPECT_NE((square.out + square.err).find("requires a square matrix"), std::string::npos);
}

TEST_F(Cli, BaselineOnSquareIsInputError) {
  undersolve::io::save_matrix(dir_ / "A.csv", undersolve::DenseMatrix::identity(2));
  undersolve::io::save_vector(dir_ / "b.csv", undersolve::Vector{1, 1});
  const Result r = invoke({"solve", "--method", "baseline", "--matrix", (dir_ / "A.csv").string(), "--rhs",
                           (dir_ / "b.csv").string()});
  EXPECT_EQ(r.code, undersolve::cli::kInputError);
  EXPECT_NE((r.out + r.err).find("method requires m < n"), std::string::npos);
}

TEST_F(Cli, CheckUncertifiedOnOriginalSystem) {
  const Result r = invoke({"check", "--method", "gjacobi", "--matrix", (kExample / "A.csv").string(), "--rhs",
                           (kExample / "b.csv").string()});
  EXPECT_EQ(r.code, undersolve::cli::kUncertified) << r.err;
  EXPECT_NE(r.out.find("c1"), std::string::npos);
}

TEST_F(Cli, GenThenCheckCertified) {
  const std::string prefix = (dir_ / "sys_").string();
  ASSERT_EQ(invoke({"gen", "--rows", "3", "--cols", "7", "--seed", "5", "--certified", "--out-prefix", prefix}).code,
            0);
  EXPECT_TRUE(fs::exists(prefix + "A.csv"));
  EXPECT_TRUE(fs::exists(prefix + "x.csv"));
  for (const char* method : {"gjacobi", "ggs"}) {
    const Result r = invoke({"check", "--method", method, "--matrix", prefix + "A.csv", "--rhs", prefix + "b.csv"});
    EXPECT_EQ(r.code, 0) << r.out;
    const Result s = invoke({"solve", "--method", method, "--matrix", prefix + "A.csv", "--rhs", prefix + "b.csv"});
    EXPECT_EQ(s.code, 0) << s.out;
  }
}

TEST_F(Cli, CompareTable) {
  const Result r = invoke(with_example({"compare", "--methods", "baseline,gjacobi,ggs", "--rref"}));
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("baseline"), std::string::npos);
  EXPECT_NE(r.out.find("ggs"), std::string::npos);
  EXPECT_EQ(invoke(with_example({"compare", "--methods", ""})).code, undersolve::cli::kInputError);
}

TEST_F(Cli, InconsistentRref) {
  undersolve::io::save_matrix(dir_ / "A.csv", undersolve::DenseMatrix{{1, 1, 1}, {1, 1, 1}});
  undersolve::io::save_vector(dir_ / "b.csv", undersolve::Vector{1, 2});
  const Result r = invoke({"rref", "--matrix", (dir_ / "A.csv").string(), "--rhs", (dir_ / "b.csv").string()});
  EXPECT_EQ(r.code, undersolve::cli::kDiverged);
  EXPECT_NE(r.out.find("system is inconsistent"), std::string::npos);
}

TEST_F(Cli, BadInput) {
  EXPECT_EQ(invoke({"solve", "--method", "nope", "--matrix", "x.csv", "--rhs", "y.csv"}).code,
            undersolve::cli::kInputError);
  EXPECT_EQ(invoke({"solve", "--method", "gjacobi", "--matrix", (dir_ / "missing.csv").string(), "--rhs",
                    (dir_ / "missing.csv").string()})
                .code,
            undersolve::cli::kInputError);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

}  // namespace
