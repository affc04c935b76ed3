#include "cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <optional>
#include <ostream>

#include "undersolve/undersolve.hpp"

namespace undersolve::cli {

namespace {

struct CommonOptions {
  std::string matrix;
  std::string rhs;
  std::string x0;
  std::string json;
  std::string method = "gjacobi";
  double eps = 1e-8;
  std::size_t max_iter = 10000;
  std::string norm = "one";
  bool pivot_columns = false;
  bool rref = false;
};

struct GenOptions {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::uint64_t seed = 0;
  bool certified = false;
  std::string out_prefix;
};

const std::vector<std::string> kAllMethods{"baseline", "gjacobi", "ggs", "jacobi", "gs"};

int exit_for(const SolveReport& report) {
  switch (report.status) {
    case SolveStatus::Converged:
      return kOk;
    case SolveStatus::MaxIterations:
    case SolveStatus::Stagnated:
      return kNotConverged;
    case SolveStatus::Diverged:
      return kDiverged;
    case SolveStatus::Error:
      return report.error == ErrorKind::Inconsistent ? kDiverged : kInputError;
  }
  return kInputError;
}

Method parse_method(const std::string& name) {
  const auto method = method_from_string(name);
  if (!method) throw SolverError(ErrorKind::InvalidConfig, "unknown method '" + name + "'");
  return *method;
}

SolverConfig make_config(const CommonOptions& o, Method method) {
  SolverConfig cfg;
  cfg.method = method;
  cfg.epsilon = o.eps;
  cfg.max_iterations = o.max_iter;
  cfg.residual_norm = o.norm == "inf" ? NormKind::Infinity : NormKind::One;
  cfg.permutation_policy = o.pivot_columns ? PermutationPolicy::PivotColumns : PermutationPolicy::Identity;
  cfg.validate();
  return cfg;
}

io::ProblemFile load(const CommonOptions& o) {
  return io::load_problem(o.matrix, o.rhs,
                          o.x0.empty() ? std::nullopt : std::optional<std::filesystem::path>(o.x0));
}

Vector initial_guess(const io::ProblemFile& p) { return p.x0 ? *p.x0 : Vector(p.a.cols()); }

void require_shape(const DenseMatrix& a, Method method) {
  if (is_classical(method)) {
    if (!a.is_square()) {
      throw SolverError(ErrorKind::NotSquare, fmt::format("method {} requires a square matrix (got {}x{})",
                                                          to_string(method), a.rows(), a.cols()));
    }
  } else if (a.rows() >= a.cols()) {
    throw SolverError(ErrorKind::NotUnderdetermined,
                      fmt::format("method requires m < n (got {}x{})", a.rows(), a.cols()));
  }
}

// Solves with `method`, optionally on the row-reduced system.
SolveReport solve_problem(const io::ProblemFile& p, const SolverConfig& cfg, bool use_rref) {
  const Vector x0 = initial_guess(p);
  if (!use_rref) return run(p.a, p.b, x0, cfg);
  if (is_generalized(cfg.method)) return exact_solve(p.a, p.b, x0, cfg);
  if (is_classical(cfg.method)) {
    throw SolverError(ErrorKind::InvalidConfig, "--rref needs an underdetermined method");
  }
  const ReducedSystem reduced = reduce_system(p.a, p.b);
  SolveReport report = run(reduced.a, reduced.b, x0, cfg);
  report.original_residual = vector_norm(residual(p.a, report.solution, p.b), cfg.residual_norm);
  return report;
}

std::string format_vector(const Vector& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += fmt::format("{}{:.10g}", i ? ", " : "", v[i]);
  return out + "]";
}

void print_summary(std::ostream& out, const SolveReport& r) {
  out << fmt::format("method      : {}\n", to_string(r.config.method));
  out << fmt::format("status      : {}\n", to_string(r.status));
  out << fmt::format("iterations  : {}\n", r.iterations);
  if (!r.residual_norms.empty()) {
    out << fmt::format("residual    : {:.6e} ({}-norm)\n", r.final_residual(), to_string(r.config.residual_norm));
  }
  if (r.original_residual) {
    out << fmt::format("original    : {:.6e} ({}-norm, against the input system)\n", *r.original_residual,
                       to_string(r.config.residual_norm));
  }
  if (r.status == SolveStatus::Error && r.error) {
    out << fmt::format("error       : {} ({})\n", to_string(*r.error), r.message);
  } else if (!r.message.empty()) {
    out << fmt::format("note        : {}\n", r.message);
  }
}

void write_json(const std::string& path, const std::string& text) {
  if (!path.empty()) io::save_text(path, text);
}

// --- subcommands -----------------------------------------------------------

int cmd_solve(const CommonOptions& o, std::ostream& out) {
  const Method method = parse_method(o.method);
  const io::ProblemFile p = load(o);
  require_shape(p.a, method);
  const SolveReport report = solve_problem(p, make_config(o, method), o.rref);
  print_summary(out, report);
  write_json(o.json, io::write_report(report));
  return exit_for(report);
}

int cmd_check(const CommonOptions& o, std::ostream& out) {
  const Method method = parse_method(o.method);
  if (!is_generalized(method)) throw SolverError(ErrorKind::InvalidConfig, "check needs gjacobi or ggs");
  const io::ProblemFile p = load(o);
  const PartitionedSystem sys = partition_system(
      p.a, p.b, o.pivot_columns ? PermutationPolicy::PivotColumns : PermutationPolicy::Identity);
  const ConditionReport report = check_conditions(
      sys, method == Method::GeneralizedJacobi ? Splitting::Jacobi : Splitting::GaussSeidel);

  out << fmt::format("splitting: {}  m = {}\n", method == Method::GeneralizedJacobi ? "jacobi" : "gauss-seidel",
                     report.m);
  out << fmt::format("{:<10} {:>14} {:>14} {:>14}  {}\n", "norm", "c1 (<1)", "c2 (<m)", "cauchy", "verdict");
  for (const auto& r : report.per_norm) {
    out << fmt::format("{:<10} {:>14.6e} {:>14.6e} {:>14.6e}  {}\n", to_string(r.norm), r.c1, r.c2,
                       r.cauchy_bound, r.certified ? "certified" : "uncertified");
  }
  if (const auto factor = contraction_factor(report, report.m)) {
    out << fmt::format("contraction factor: {:.6e}\n", *factor);
  } else {
    out << "not certified in any norm (the conditions are sufficient only)\n";
  }
  write_json(o.json, io::write_conditions(report));
  return report.overall_certified ? kOk : kUncertified;
}

int cmd_rref(const CommonOptions& o, std::ostream& out) {
  const Method method = parse_method(o.method);
  if (!is_generalized(method)) throw SolverError(ErrorKind::InvalidConfig, "rref needs gjacobi or ggs");
  const io::ProblemFile p = load(o);
  require_shape(p.a, method);
  const SolverConfig cfg = make_config(o, method);

  std::optional<ReducedSystem> reduced;
  try {
    reduced = reduce_system(p.a, p.b);
  } catch (const SolverError& e) {
    if (e.kind() != ErrorKind::Inconsistent) throw;
    out << "system is inconsistent: no solution exists\n";
    return kDiverged;
  }

  const RrefResult& r = reduced->augmented_rref;
  out << fmt::format("rref([A b]): rank {}, pivot columns", r.rank);
  for (std::size_t c : r.pivot_columns) out << ' ' << c;
  out << '\n';
  for (std::size_t i = 0; i < r.matrix.rows(); ++i) {
    for (std::size_t j = 0; j < r.matrix.cols(); ++j) {
      out << fmt::format("{}{:>12.6g}", j + 1 == r.matrix.cols() ? " |" : "", r.matrix(i, j));
    }
    out << '\n';
  }
  if (reduced->rank() < p.a.rows()) {
    out << fmt::format("note: rank {} < {} rows; iterating on the {} nonzero rows\n", reduced->rank(), p.a.rows(),
                       reduced->rank());
  }

  const SolveReport report = exact_solve(p.a, p.b, initial_guess(p), cfg);
  print_summary(out, report);
  out << "solution    : " << format_vector(report.solution) << '\n';
  write_json(o.json, io::write_report(report));
  return exit_for(report);
}

int cmd_compare(const CommonOptions& o, const std::vector<std::string>& names, std::ostream& out) {
  std::vector<Method> methods;
  for (const auto& name : names) {
    if (!name.empty()) methods.push_back(parse_method(name));
  }
  if (methods.empty()) throw SolverError(ErrorKind::InvalidConfig, "no methods given");
  if (methods.size() == 1) {
    CommonOptions single = o;
    single.method = std::string(to_string(methods.front()));
    return cmd_solve(single, out);
  }

  const io::ProblemFile p = load(o);
  std::vector<SolveReport> reports;
  for (Method method : methods) {
    const SolverConfig cfg = make_config(o, method);
    try {
      reports.push_back(solve_problem(p, cfg, o.rref));
    } catch (const SolverError& e) {
      SolveReport failed;
      failed.status = SolveStatus::Error;
      failed.error = e.kind();
      failed.message = e.what();
      failed.config = cfg;
      failed.solution = initial_guess(p);
      reports.push_back(std::move(failed));
    }
  }

  // Residual column is the 1-norm against the system each method iterated on.
  std::optional<ReducedSystem> reduced;
  if (o.rref) reduced = reduce_system(p.a, p.b);
  const DenseMatrix& a = reduced ? reduced->a : p.a;
  const Vector& b = reduced ? reduced->b : p.b;

  out << fmt::format("{:<10} {:<16} {:>10} {:>16}\n", "method", "status", "iterations", "residual (1-norm)");
  for (const auto& r : reports) {
    const double res = r.solution.size() == a.cols() ? norm_one(residual(a, r.solution, b)) : 0.0;
    out << fmt::format("{:<10} {:<16} {:>10} {:>16.6e}\n", to_string(r.config.method), to_string(r.status),
                       r.iterations, res);
  }
  write_json(o.json, io::write_reports(reports));
  return kOk;
}

int cmd_gen(const GenOptions& g, std::ostream& out) {
  const GeneratedSystem sys = generate_system({g.rows, g.cols, g.seed, g.certified});
  const std::string a_path = g.out_prefix + "A.csv";
  const std::string b_path = g.out_prefix + "b.csv";
  const std::string x_path = g.out_prefix + "x.csv";
  io::save_matrix(a_path, sys.a);
  io::save_vector(b_path, sys.b);
  io::save_vector(x_path, sys.x_star);
  out << fmt::format("wrote {} ({}x{}), {}, {}\n", a_path, sys.a.rows(), sys.a.cols(), b_path, x_path);
  return kOk;
}

void add_system_flags(CLI::App* sub, CommonOptions& o) {
  sub->add_option("--matrix", o.matrix, "Coefficient matrix (.mtx or .csv)")->required();
  sub->add_option("--rhs", o.rhs, "Right-hand side (.mtx or .csv)")->required();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized Jacobi / Gauss-Seidel solvers for underdetermined systems", "undersolve"};
  app.require_subcommand(1);

  CommonOptions o;
  GenOptions g;
  std::vector<std::string> methods;
  const auto method_names = CLI::IsMember(kAllMethods);
  const auto generalized_names = CLI::IsMember({"gjacobi", "ggs"});

  auto* solve = app.add_subcommand("solve", "Iterate one method until the residual drops below --eps");
  add_system_flags(solve, o);
  solve->add_option("--x0", o.x0, "Initial guess (default: zero vector)");
  solve->add_option("--method", o.method, "baseline|gjacobi|ggs|jacobi|gs")->required()->check(method_names);
  solve->add_option("--eps", o.eps, "Residual threshold")->capture_default_str();
  solve->add_option("--max-iter", o.max_iter, "Iteration limit")->capture_default_str();
  solve->add_option("--norm", o.norm, "Residual norm: one|inf")->check(CLI::IsMember({"one", "inf"}));
  solve->add_flag("--pivot-columns", o.pivot_columns, "Choose a nonsingular head block by column pivoting");
  solve->add_flag("--rref", o.rref, "Iterate on the reduced row echelon form of [A b]");
  solve->add_option("--json", o.json, "Write the full report as JSON");

  auto* check = app.add_subcommand("check", "Evaluate the sufficient convergence conditions");
  add_system_flags(check, o);
  check->add_option("--method", o.method, "gjacobi|ggs")->required()->check(generalized_names);
  check->add_flag("--pivot-columns", o.pivot_columns, "Choose a nonsingular head block by column pivoting");
  check->add_option("--json", o.json, "Write the condition report as JSON");

  auto* rref_cmd = app.add_subcommand("rref", "Row-reduce [A b] and iterate on the reduced system");
  add_system_flags(rref_cmd, o);
  rref_cmd->add_option("--x0", o.x0, "Initial guess (default: zero vector)");
  rref_cmd->add_option("--method", o.method, "gjacobi|ggs")->check(generalized_names)->capture_default_str();
  rref_cmd->add_option("--eps", o.eps, "Residual threshold")->capture_default_str();
  rref_cmd->add_option("--max-iter", o.max_iter, "Iteration limit")->capture_default_str();
  rref_cmd->add_option("--json", o.json, "Write the full report as JSON");

  auto* compare = app.add_subcommand("compare", "Run several methods from the same initial guess");
  add_system_flags(compare, o);
  compare->add_option("--x0", o.x0, "Initial guess (default: zero vector)");
  compare->add_option("--methods", methods, "Comma-separated method list")->required()->delimiter(',');
  compare->add_option("--eps", o.eps, "Residual threshold")->capture_default_str();
  compare->add_option("--max-iter", o.max_iter, "Iteration limit")->capture_default_str();
  compare->add_option("--norm", o.norm, "Residual norm: one|inf")->check(CLI::IsMember({"one", "inf"}));
  compare->add_flag("--rref", o.rref, "Run every method on the reduced row echelon form of [A b]");
  compare->add_option("--json", o.json, "Write all reports as a JSON array");

  auto* gen = app.add_subcommand("gen", "Write a random system with a known solution");
  gen->add_option("--rows", g.rows, "Equations m")->required();
  gen->add_option("--cols", g.cols, "Unknowns n (> m)")->required();
  gen->add_option("--seed", g.seed, "RNG seed")->capture_default_str();
  gen->add_flag("--certified", g.certified, "Only emit systems passing the sufficient conditions");
  gen->add_option("--out-prefix", g.out_prefix, "Output prefix; writes <prefix>A.csv, b.csv, x.csv")->required();

  std::vector<std::string> argv_store{"undersolve"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    if (solve->parsed()) return cmd_solve(o, out);
    if (check->parsed()) return cmd_check(o, out);
    if (rref_cmd->parsed()) return cmd_rref(o, out);
    if (compare->parsed()) return cmd_compare(o, methods, out);
    if (gen->parsed()) return cmd_gen(g, out);
  } catch (const SolverError& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::Inconsistent ? kDiverged : kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace undersolve::cli
