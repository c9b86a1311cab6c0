#pragma once

#include "ngnep/library.hpp"
#include "ngnep/outer_loops.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ngnep {

enum class Algorithm { ampqp, ampal };

const char* to_string(Algorithm a);
std::optional<Algorithm> algorithm_from_string(const std::string& name);

/// Starting point: a constant fill value or an explicit vector.
struct StartRule {
  std::optional<double> fill;
  std::vector<double> values;
  std::string label;

  static StartRule constant(double value);
  static StartRule explicit_vector(std::vector<double> values, std::string label);
  Vector<double> materialize(Index n) const;
};

enum class OutputFormat { csv, table };

/// One solver configuration grid. Every list is swept as a Cartesian
/// product in the order problems × algorithms × gammas × outer_tols ×
/// starts × repeats. An empty `gammas` uses the size-based default and an
/// empty `outer_tols` uses `outer.outer_tol`.
struct RunConfig {
  std::vector<std::string> problems;  ///< "builtin:<name>" or a problem-file path
  std::vector<Algorithm> algorithms{Algorithm::ampal};
  std::vector<double> gammas;
  std::vector<double> outer_tols;
  std::vector<StartRule> starts{StartRule::constant(0.0)};
  OuterConfig outer;
  int repeat = 1;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

/// One result row: iteration counts, final residuals and the configuration.
struct ReportRow {
  std::string example;
  std::size_t players = 0;
  Index dimension = 0;
  std::string x0;
  long outer_iters = 0;
  long inner_iters_total = 0;
  KktResiduals residuals;
  double rho_max = 0.0;
  Termination termination = Termination::outer_budget;
  Algorithm algorithm = Algorithm::ampal;
  double gamma = 0.0;
  double outer_tol = 0.0;
  long field_evals = 0;

  bool failed() const { return termination == Termination::subproblem_failure; }
};

/// A problem resolved from its source string. Throws ParseError for
/// malformed files and std::invalid_argument for unknown built-ins.
struct LoadedProblem {
  std::string id;
  ProblemDescription description;
  NgnepProblem<double> problem;
};

LoadedProblem load_problem(const std::string& source, std::uint64_t seed);

/// Solves one configuration and turns the report into a row.
ReportRow solve_row(const LoadedProblem& problem, Algorithm algorithm, const OuterConfig& config,
                    const StartRule& start);

/// Runs the whole grid; rows come back in grid order regardless of
/// `config.threads`.
std::vector<ReportRow> sweep(const RunConfig& config);

/// Column header shared by every CSV the harness writes.
const std::vector<std::string>& csv_columns();
std::string format_csv(const std::vector<ReportRow>& rows);
std::string format_table(const std::vector<ReportRow>& rows);

/// Thread count from NGNEP_THREADS (≥ 1), else `fallback`.
unsigned threads_from_environment(unsigned fallback = 1);

}  // namespace ngnep
