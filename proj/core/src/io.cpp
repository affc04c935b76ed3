#include "undersolve/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace undersolve::io {

using nlohmann::json;

namespace {

std::string parse_error(std::size_t line, const std::string& what) {
  return "line " + std::to_string(line) + ": " + what;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits on LF, dropping a trailing CR from each line.
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

std::vector<std::string_view> split_whitespace(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

std::optional<double> parse_double(std::string_view token) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::optional<std::size_t> parse_count(std::string_view token) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string extension_of(const std::filesystem::path& path) { return lowercase(path.extension().string()); }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SolverError(ErrorKind::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// --- report (de)serialization ---------------------------------------------

json to_json(const ConditionReport& c) {
  json per_norm = json::array();
  for (const auto& r : c.per_norm) {
    per_norm.push_back({
        {"norm", std::string(to_string(r.norm))},
        {"c1", r.c1},
        {"c2", r.c2},
        {"c2_normalized", r.c2_normalized},
        {"cauchy_bound", r.cauchy_bound},
        {"certified", r.certified},
    });
  }
  return {
      {"splitting", c.splitting == Splitting::Jacobi ? "jacobi" : "gauss_seidel"},
      {"m", c.m},
      {"per_norm", per_norm},
      {"overall_certified", c.overall_certified},
  };
}

template <typename T>
T require_enum(std::optional<T> value, const std::string& field) {
  if (!value) throw SolverError(ErrorKind::ParseError, "report field '" + field + "' has an unknown value");
  return *value;
}

ConditionReport conditions_from_json(const json& j) {
  ConditionReport c;
  const std::string splitting = j.at("splitting").get<std::string>();
  if (splitting != "jacobi" && splitting != "gauss_seidel") {
    throw SolverError(ErrorKind::ParseError, "report field 'splitting' has an unknown value");
  }
  c.splitting = splitting == "jacobi" ? Splitting::Jacobi : Splitting::GaussSeidel;
  c.m = j.at("m").get<std::size_t>();
  c.overall_certified = j.at("overall_certified").get<bool>();
  for (const auto& r : j.at("per_norm")) {
    NormCondition record;
    record.norm = require_enum(norm_from_string(r.at("norm").get<std::string>()), "norm");
    record.c1 = r.at("c1").get<double>();
    record.c2 = r.at("c2").get<double>();
    record.c2_normalized = r.at("c2_normalized").get<double>();
    record.cauchy_bound = r.at("cauchy_bound").get<double>();
    record.certified = r.at("certified").get<bool>();
    c.per_norm.push_back(record);
  }
  return c;
}

json to_json(const SolveReport& r) {
  const SolverConfig& cfg = r.config;
  json j = {
      {"status", std::string(to_string(r.status))},
      {"message", r.message},
      {"iterations", r.iterations},
      {"residual_norms", r.residual_norms},
      {"solution", r.solution.raw()},
      {"column_perm", r.column_perm},
      {"system_rows", r.system_rows},
      {"config",
       {
           {"method", std::string(to_string(cfg.method))},
           {"epsilon", cfg.epsilon},
           {"max_iterations", cfg.max_iterations},
           {"residual_norm", std::string(to_string(cfg.residual_norm))},
           {"permutation_policy", std::string(to_string(cfg.permutation_policy))},
           {"stagnation_window", cfg.stagnation_window},
       }},
  };
  j["error"] = r.error ? json(std::string(to_string(*r.error))) : json(nullptr);
  j["original_residual"] = r.original_residual ? json(*r.original_residual) : json(nullptr);
  j["conditions"] = r.conditions ? to_json(*r.conditions) : json(nullptr);
  return j;
}

SolveReport report_from_json(const json& j) {
  SolveReport r;
  r.status = require_enum(status_from_string(j.at("status").get<std::string>()), "status");
  r.message = j.at("message").get<std::string>();
  r.iterations = j.at("iterations").get<std::size_t>();
  r.residual_norms = j.at("residual_norms").get<std::vector<double>>();
  r.solution = Vector(j.at("solution").get<std::vector<double>>());
  r.column_perm = j.at("column_perm").get<std::vector<std::size_t>>();
  r.system_rows = j.at("system_rows").get<std::size_t>();

  const json& cfg = j.at("config");
  r.config.method = require_enum(method_from_string(cfg.at("method").get<std::string>()), "method");
  r.config.epsilon = cfg.at("epsilon").get<double>();
  r.config.max_iterations = cfg.at("max_iterations").get<std::size_t>();
  r.config.residual_norm =
      require_enum(norm_from_string(cfg.at("residual_norm").get<std::string>()), "residual_norm");
  r.config.permutation_policy =
      require_enum(policy_from_string(cfg.at("permutation_policy").get<std::string>()), "permutation_policy");
  r.config.stagnation_window = cfg.at("stagnation_window").get<std::size_t>();

  if (!j.at("error").is_null()) r.error = error_kind_from_string(j.at("error").get<std::string>());
  if (!j.at("original_residual").is_null()) r.original_residual = j.at("original_residual").get<double>();
  if (!j.at("conditions").is_null()) r.conditions = conditions_from_json(j.at("conditions"));
  return r;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw SolverError(ErrorKind::ParseError, std::string("malformed report: ") + e.what());
  }
}

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw SolverError(ErrorKind::ParseError, std::string("malformed report: ") + e.what());
  }
}

}  // namespace

// --- Matrix Market ---------------------------------------------------------

DenseMatrix read_matrix_market(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw SolverError(ErrorKind::ParseError, parse_error(1, "empty input"));

  const auto header = split_whitespace(lines[0]);
  if (header.size() != 5 || lowercase(header[0]) != "%%matrixmarket" || lowercase(header[1]) != "matrix") {
    throw SolverError(ErrorKind::ParseError, parse_error(1, "missing '%%MatrixMarket matrix' header"));
  }
  const std::string layout = lowercase(header[2]);
  const std::string field = lowercase(header[3]);
  const std::string symmetry = lowercase(header[4]);
  if (layout != "coordinate" && layout != "array") {
    throw SolverError(ErrorKind::UnsupportedFormat, parse_error(1, "unsupported layout '" + layout + "'"));
  }
  if (field != "real" && field != "integer") {
    throw SolverError(ErrorKind::UnsupportedFormat, parse_error(1, "unsupported field '" + field + "'"));
  }
  if (symmetry != "general") {
    throw SolverError(ErrorKind::UnsupportedFormat, parse_error(1, "unsupported symmetry '" + symmetry + "'"));
  }
  const bool coordinate = layout == "coordinate";

  std::size_t idx = 1;
  auto next_data_line = [&]() -> std::optional<std::size_t> {
    while (idx < lines.size()) {
      const std::string_view line = trim(lines[idx]);
      if (!line.empty() && line.front() != '%') return idx++;
      ++idx;
    }
    return std::nullopt;
  };

  const auto size_line = next_data_line();
  if (!size_line) throw SolverError(ErrorKind::ParseError, parse_error(lines.size(), "missing size line"));
  const auto size_tokens = split_whitespace(lines[*size_line]);
  const std::size_t expected_tokens = coordinate ? 3 : 2;
  std::vector<std::size_t> sizes;
  for (auto t : size_tokens) {
    const auto v = parse_count(t);
    if (!v) break;
    sizes.push_back(*v);
  }
  if (size_tokens.size() != expected_tokens || sizes.size() != expected_tokens) {
    throw SolverError(ErrorKind::ParseError, parse_error(*size_line + 1, "malformed size line"));
  }
  const std::size_t rows = sizes[0];
  const std::size_t cols = sizes[1];

  DenseMatrix a(rows, cols);
  const std::size_t entries = coordinate ? sizes[2] : rows * cols;
  for (std::size_t k = 0; k < entries; ++k) {
    const auto at = next_data_line();
    if (!at) {
      throw SolverError(ErrorKind::ParseError,
                        parse_error(lines.size(), "expected " + std::to_string(entries) + " entries, found " +
                                                      std::to_string(k)));
    }
    const std::size_t line_no = *at + 1;
    const auto tokens = split_whitespace(lines[*at]);
    if (coordinate) {
      if (tokens.size() != 3) throw SolverError(ErrorKind::ParseError, parse_error(line_no, "expected 'i j value'"));
      const auto i = parse_count(tokens[0]);
      const auto j = parse_count(tokens[1]);
      const auto v = parse_double(tokens[2]);
      if (!i || !j || !v || *i < 1 || *j < 1 || *i > rows || *j > cols) {
        throw SolverError(ErrorKind::ParseError, parse_error(line_no, "invalid coordinate entry"));
      }
      a(*i - 1, *j - 1) = *v;
    } else {
      if (tokens.size() != 1) throw SolverError(ErrorKind::ParseError, parse_error(line_no, "expected one value"));
      const auto v = parse_double(tokens[0]);
      if (!v) throw SolverError(ErrorKind::ParseError, parse_error(line_no, "invalid number"));
      a(k % rows, k / rows) = *v;
    }
  }
  if (const auto extra = next_data_line()) {
    throw SolverError(ErrorKind::ParseError, parse_error(*extra + 1, "unexpected data after last entry"));
  }
  return a;
}

std::string write_matrix_market(const DenseMatrix& a, MatrixMarketLayout layout) {
  std::string out;
  if (layout == MatrixMarketLayout::Array) {
    out += "%%MatrixMarket matrix array real general\n";
    out += std::to_string(a.rows()) + " " + std::to_string(a.cols()) + "\n";
    for (std::size_t j = 0; j < a.cols(); ++j) {
      for (std::size_t i = 0; i < a.rows(); ++i) out += format_double(a(i, j)) + "\n";
    }
    return out;
  }
  std::size_t nnz = 0;
  for (double v : a.values()) nnz += v != 0.0;
  out += "%%MatrixMarket matrix coordinate real general\n";
  out += std::to_string(a.rows()) + " " + std::to_string(a.cols()) + " " + std::to_string(nnz) + "\n";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0.0) continue;
      out += std::to_string(i + 1) + " " + std::to_string(j + 1) + " " + format_double(a(i, j)) + "\n";
    }
  }
  return out;
}

// --- CSV -------------------------------------------------------------------

DenseMatrix read_csv_matrix(std::string_view text) {
  const auto lines = split_lines(text);
  std::vector<double> values;
  std::size_t rows = 0;
  std::size_t cols = 0;
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::string_view line = trim(lines[n]);
    if (line.empty()) continue;
    std::size_t count = 0;
    std::string_view rest = line;
    while (true) {
      const auto comma = rest.find(',');
      const auto v = parse_double(rest.substr(0, comma));
      if (!v) {
        throw SolverError(ErrorKind::ParseError,
                          parse_error(n + 1, "invalid number '" + std::string(trim(rest.substr(0, comma))) + "'"));
      }
      values.push_back(*v);
      ++count;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (rows == 0) {
      cols = count;
    } else if (count != cols) {
      throw SolverError(ErrorKind::RaggedRows, parse_error(n + 1, "row has " + std::to_string(count) +
                                                                   " entries, expected " + std::to_string(cols)));
    }
    ++rows;
  }
  if (rows == 0) throw SolverError(ErrorKind::ParseError, parse_error(1, "no data rows"));
  return DenseMatrix(rows, cols, std::move(values));
}

std::string write_csv_matrix(const DenseMatrix& a) {
  std::string out;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j > 0) out += ',';
      out += format_double(a(i, j));
    }
    out += '\n';
  }
  return out;
}

Vector as_vector(const DenseMatrix& a) {
  if (a.rows() != 1 && a.cols() != 1) {
    throw SolverError(ErrorKind::DimensionMismatch, "expected a single row or column, got " +
                                                        std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  return Vector(std::vector<double>(a.values().begin(), a.values().end()));
}

DenseMatrix as_column(const Vector& v) { return DenseMatrix(v.size(), 1, v.raw()); }

// --- files -----------------------------------------------------------------

DenseMatrix load_matrix(const std::filesystem::path& path) {
  const std::string ext = extension_of(path);
  if (ext != ".mtx" && ext != ".csv") {
    throw SolverError(ErrorKind::UnsupportedFormat,
                      "'" + path.string() + "': unknown extension (expected .mtx or .csv)");
  }
  const std::string text = read_file(path);
  try {
    return ext == ".mtx" ? read_matrix_market(text) : read_csv_matrix(text);
  } catch (const SolverError& e) {
    throw SolverError(e.kind(), "'" + path.string() + "': " + e.what());
  }
}

Vector load_vector(const std::filesystem::path& path) {
  const DenseMatrix m = load_matrix(path);
  try {
    return as_vector(m);
  } catch (const SolverError& e) {
    throw SolverError(e.kind(), "'" + path.string() + "': " + e.what());
  }
}

void save_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SolverError(ErrorKind::IoError, "cannot write '" + path.string() + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw SolverError(ErrorKind::IoError, "failed writing '" + path.string() + "'");
}

void save_matrix(const std::filesystem::path& path, const DenseMatrix& a) {
  const std::string ext = extension_of(path);
  if (ext == ".mtx") {
    save_text(path, write_matrix_market(a));
  } else if (ext == ".csv") {
    save_text(path, write_csv_matrix(a));
  } else {
    throw SolverError(ErrorKind::UnsupportedFormat,
                      "'" + path.string() + "': unknown extension (expected .mtx or .csv)");
  }
}

void save_vector(const std::filesystem::path& path, const Vector& v) { save_matrix(path, as_column(v)); }

ProblemFile load_problem(const std::filesystem::path& matrix, const std::filesystem::path& rhs,
                         const std::optional<std::filesystem::path>& x0) {
  ProblemFile problem{load_matrix(matrix), load_vector(rhs), std::nullopt, matrix.stem().string()};
  if (problem.b.size() != problem.a.rows()) {
    throw SolverError(ErrorKind::DimensionMismatch,
                      "'" + rhs.string() + "' has " + std::to_string(problem.b.size()) + " entries but '" +
                          matrix.string() + "' has " + std::to_string(problem.a.rows()) + " rows");
  }
  if (x0) {
    problem.x0 = load_vector(*x0);
    if (problem.x0->size() != problem.a.cols()) {
      throw SolverError(ErrorKind::DimensionMismatch,
                        "'" + x0->string() + "' has " + std::to_string(problem.x0->size()) + " entries but '" +
                            matrix.string() + "' has " + std::to_string(problem.a.cols()) + " columns");
    }
  }
  return problem;
}

// --- reports ---------------------------------------------------------------

std::string write_report(const SolveReport& report) { return to_json(report).dump(2) + "\n"; }

SolveReport read_report(std::string_view text) {
  const json j = parse_json(text);
  return guarded([&] { return report_from_json(j); });
}

std::string write_reports(const std::vector<SolveReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  return arr.dump(2) + "\n";
}

std::vector<SolveReport> read_reports(std::string_view text) {
  const json j = parse_json(text);
  return guarded([&] {
    std::vector<SolveReport> out;
    for (const auto& item : j) out.push_back(report_from_json(item));
    return out;
  });
}

std::string write_conditions(const ConditionReport& report) { return to_json(report).dump(2) + "\n"; }

}  // namespace undersolve::io
