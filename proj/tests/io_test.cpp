#include <gtest/gtest.h>

#include <bit>
#include <cstdint>
#include <filesystem>
#include <random>

#include "oracles.hpp"
#include "undersolve/io.hpp"
#include "undersolve/iterate.hpp"

namespace undersolve {
namespace {

namespace fs = std::filesystem;

bool same_bits(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

bool same_bits(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!same_bits(a(i, j), b(i, j))) return false;
  return true;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const SolverError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no SolverError thrown";
  return ErrorKind::IoError;
}

double awkward_double(std::mt19937_64& rng) {
  // Mix of magnitudes, subnormals and values with long expansions.
  std::uniform_int_distribution<int> pick(0, 4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  switch (pick(rng)) {
    case 0: return u(rng);
    case 1: return u(rng) * 1e300;
    case 2: return u(rng) * 1e-310;
    case 3: return 1.0 / 3.0 + u(rng) * 1e-15;
    default: return std::ldexp(u(rng), std::uniform_int_distribution<int>(-60, 60)(rng));
  }
}

fs::path temp_dir() {
  const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
  const fs::path dir = fs::temp_directory_path() / ("undersolve_io_" + std::string(info->name()));
  fs::create_directories(dir);
  return dir;
}

TEST(MatrixMarket, CoordinateExample) {
  const DenseMatrix a = io::read_matrix_market(
      "%%MatrixMarket matrix coordinate real general\n"
      "% comment\n"
      "2 3 3\n"
      "1 1 1.5\n"
      "2 3 -2\n"
      "1 2 4e1\n");
  EXPECT_EQ(a, (DenseMatrix{{1.5, 40, 0}, {0, 0, -2}}));
}

TEST(MatrixMarket, ArrayIsColumnMajor) {
  const DenseMatrix a = io::read_matrix_market(
      "%%MatrixMarket matrix array integer general\r\n"
      "2 2\r\n1\r\n2\r\n3\r\n4\r\n");
  EXPECT_EQ(a, (DenseMatrix{{1, 3}, {2, 4}}));
}

TEST(MatrixMarket, Errors) {
  EXPECT_EQ(kind_of([] { io::read_matrix_market("%%MatrixMarket matrix coordinate real symmetric\n1 1 0\n"); }),
            ErrorKind::UnsupportedFormat);
  EXPECT_EQ(kind_of([] { io::read_matrix_market("%%MatrixMarket matrix coordinate complex general\n1 1 0\n"); }),
            ErrorKind::UnsupportedFormat);
  EXPECT_EQ(kind_of([] { io::read_matrix_market("2 2\n1\n2\n3\n4\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { io::read_matrix_market("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n"); }),
            ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { io::read_matrix_market("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1\n"); }),
            ErrorKind::ParseError);
  try {
    io::read_matrix_market("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 abc\n");
    FAIL();
  } catch (const SolverError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(MatrixMarket, WriterReparsesIdentically) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    DenseMatrix a(1 + trial % 5, 1 + trial % 7);
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = (trial + i + j) % 3 == 0 ? 0.0 : awkward_double(rng);
    for (auto layout : {io::MatrixMarketLayout::Array, io::MatrixMarketLayout::Coordinate}) {
      EXPECT_TRUE(same_bits(io::read_matrix_market(io::write_matrix_market(a, layout)), a));
    }
  }
}

TEST(Csv, ParseExample) {
  EXPECT_EQ(io::read_csv_matrix("1,2,3\r\n4, 5 ,6\n"), (DenseMatrix{{1, 2, 3}, {4, 5, 6}}));
}

TEST(Csv, Errors) {
  EXPECT_EQ(kind_of([] { io::read_csv_matrix("1,2\n3\n"); }), ErrorKind::RaggedRows);
  EXPECT_EQ(kind_of([] { io::read_csv_matrix("1,x\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { io::read_csv_matrix("1,nan\n"); }), ErrorKind::ParseError);
}

TEST(Csv, RoundTripBitIdentical) {
  std::mt19937_64 rng(22);
  DenseMatrix a(20, 10);
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j < 10; ++j) a(i, j) = awkward_double(rng);
  EXPECT_TRUE(same_bits(io::read_csv_matrix(io::write_csv_matrix(a)), a));
}

TEST(Vectors, RowOrColumn) {
  EXPECT_EQ(io::as_vector(DenseMatrix{{1, 2, 3}}), (Vector{1, 2, 3}));
  EXPECT_EQ(io::as_vector(DenseMatrix{{1}, {2}}), (Vector{1, 2}));
  EXPECT_THROW(io::as_vector(DenseMatrix(2, 2)), SolverError);
  EXPECT_EQ(io::as_column(Vector{4, 5}), (DenseMatrix{{4}, {5}}));
}

TEST(Files, SaveAndLoadByExtension) {
  const fs::path dir = temp_dir();
  const DenseMatrix a{{1.25, -2}, {0, 3e-7}};
  io::save_matrix(dir / "a.csv", a);
  io::save_matrix(dir / "a.mtx", a);
  EXPECT_EQ(io::load_matrix(dir / "a.csv"), a);
  EXPECT_EQ(io::load_matrix(dir / "a.mtx"), a);
  io::save_vector(dir / "v.csv", Vector{1, 2});
  EXPECT_EQ(io::load_vector(dir / "v.csv"), (Vector{1, 2}));
  EXPECT_EQ(kind_of([&] { io::load_matrix(dir / "a.txt"); }), ErrorKind::UnsupportedFormat);
  EXPECT_EQ(kind_of([&] { io::load_matrix(dir / "missing.csv"); }), ErrorKind::IoError);
  fs::remove_all(dir);
}

TEST(Files, WorkedExampleFormatsAgree) {
  const fs::path dir = fs::path(UNDERSOLVE_DATA_DIR) / "worked_example";
  EXPECT_EQ(io::load_matrix(dir / "A.csv"), io::load_matrix(dir / "A.mtx"));
  EXPECT_EQ(io::load_vector(dir / "b.csv"), io::load_vector(dir / "b.mtx"));
  EXPECT_EQ(io::load_vector(dir / "x0.csv"), io::load_vector(dir / "x0.mtx"));
  const io::ProblemFile p = io::load_problem(dir / "A.mtx", dir / "b.mtx", dir / "x0.mtx");
  EXPECT_EQ(p.a.rows(), 5u);
  EXPECT_EQ(p.a.cols(), 8u);
  ASSERT_TRUE(p.x0.has_value());
  EXPECT_EQ(*p.x0, (Vector{2, 0, -1, 2, 0, 0, -3, 1}));
}

TEST(Files, ProblemMismatchNamesFile) {
  const fs::path dir = temp_dir();
  io::save_matrix(dir / "A.csv", DenseMatrix{{1, 2, 3}});
  io::save_vector(dir / "b.csv", Vector{1, 2});
  try {
    io::load_problem(dir / "A.csv", dir / "b.csv");
    FAIL();
  } catch (const SolverError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
    EXPECT_NE(std::string(e.what()).find("b.csv"), std::string::npos) << e.what();
  }
  fs::remove_all(dir);
}

SolveReport sample_report(std::mt19937_64& rng) {
  SolveReport r;
  r.status = SolveStatus::Converged;
  r.message = "ok \"quoted\"";
  r.iterations = 7;
  for (int i = 0; i < 8; ++i) r.residual_norms.push_back(std::fabs(awkward_double(rng)));
  std::vector<double> sol;
  for (int i = 0; i < 6; ++i) sol.push_back(awkward_double(rng));
  r.solution = Vector(sol);
  r.config.method = Method::GeneralizedGaussSeidel;
  r.config.epsilon = 1e-11;
  r.config.residual_norm = NormKind::Infinity;
  r.column_perm = {2, 0, 1, 3, 4, 5};
  r.system_rows = 3;
  r.original_residual = awkward_double(rng);
  ConditionReport c;
  c.splitting = Splitting::GaussSeidel;
  c.m = 3;
  c.per_norm.push_back({NormKind::One, awkward_double(rng), awkward_double(rng), 0.1, 0.2, true});
  c.overall_certified = true;
  r.conditions = c;
  return r;
}

void expect_same(const SolveReport& a, const SolveReport& b) {
  EXPECT_EQ(a.status, b.status);
  EXPECT_EQ(a.error, b.error);
  EXPECT_EQ(a.message, b.message);
  EXPECT_EQ(a.iterations, b.iterations);
  ASSERT_EQ(a.residual_norms.size(), b.residual_norms.size());
  for (std::size_t i = 0; i < a.residual_norms.size(); ++i) EXPECT_TRUE(same_bits(a.residual_norms[i], b.residual_norms[i]));
  ASSERT_EQ(a.solution.size(), b.solution.size());
  for (std::size_t i = 0; i < a.solution.size(); ++i) EXPECT_TRUE(same_bits(a.solution[i], b.solution[i]));
  EXPECT_EQ(a.config, b.config);
  EXPECT_EQ(a.column_perm, b.column_perm);
  EXPECT_EQ(a.system_rows, b.system_rows);
  ASSERT_EQ(a.original_residual.has_value(), b.original_residual.has_value());
  if (a.original_residual) EXPECT_TRUE(same_bits(*a.original_residual, *b.original_residual));
  ASSERT_EQ(a.conditions.has_value(), b.conditions.has_value());
  if (a.conditions) {
    EXPECT_EQ(a.conditions->splitting, b.conditions->splitting);
    ASSERT_EQ(a.conditions->per_norm.size(), b.conditions->per_norm.size());
    EXPECT_TRUE(same_bits(a.conditions->per_norm[0].c1, b.conditions->per_norm[0].c1));
    EXPECT_TRUE(same_bits(a.conditions->per_norm[0].c2, b.conditions->per_norm[0].c2));
  }
}

TEST(Report, RoundTrip) {
  std::mt19937_64 rng(23);
  const SolveReport r = sample_report(rng);
  expect_same(io::read_report(io::write_report(r)), r);
}

TEST(Report, ErrorReportRoundTrip) {
  SolverConfig cfg;
  cfg.method = Method::Baseline;
  const SolveReport r = run(DenseMatrix::identity(2), Vector{1, 1}, cfg);
  ASSERT_EQ(r.status, SolveStatus::Error);
  expect_same(io::read_report(io::write_report(r)), r);
}

TEST(Report, KeysAreSorted) {
  std::mt19937_64 rng(24);
  const std::string text = io::write_report(sample_report(rng));
  EXPECT_LT(text.find("\"column_perm\""), text.find("\"config\""));
  EXPECT_LT(text.find("\"iterations\""), text.find("\"status\""));
}

TEST(Report, ArrayRoundTripPreservesOrder) {
  std::mt19937_64 rng(25);
  std::vector<SolveReport> reports{sample_report(rng), sample_report(rng)};
  reports[1].config.method = Method::Baseline;
  const auto back = io::read_reports(io::write_reports(reports));
  ASSERT_EQ(back.size(), 2u);
  expect_same(back[0], reports[0]);
  expect_same(back[1], reports[1]);
}

TEST(Report, MalformedInput) {
  EXPECT_EQ(kind_of([] { io::read_report("{"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { io::read_report("{}"); }), ErrorKind::ParseError);
}

}  // namespace
}  // namespace undersolve
