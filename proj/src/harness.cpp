#include "ngnep/harness.hpp"

#include "ngnep/problem_io.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ngnep {

const char* to_string(Algorithm a) { return a == Algorithm::ampqp ? "ampqp" : "ampal"; }

std::optional<Algorithm> algorithm_from_string(const std::string& name) {
  if (name == "ampqp") return Algorithm::ampqp;
  if (name == "ampal") return Algorithm::ampal;
  return std::nullopt;
}

namespace {

std::string format_number(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string format_residual(double v) { return v == 0.0 ? "0" : format_number("%.1e", v); }

std::vector<std::string> row_cells(const ReportRow& r) {
  std::vector<std::string> cells{r.example, std::to_string(r.players), std::to_string(r.dimension), r.x0};
  if (r.failed()) {
    cells.insert(cells.end(), {"F", "", "", "", "", ""});
  } else {
    cells.insert(cells.end(), {std::to_string(r.outer_iters), std::to_string(r.inner_iters_total),
                               format_residual(r.residuals.r_f), format_residual(r.residuals.r_o),
                               format_residual(r.residuals.r_c), format_number("%.6g", r.rho_max)});
  }
  cells.insert(cells.end(), {to_string(r.termination), to_string(r.algorithm), format_number("%.6g", r.gamma),
                             format_number("%.6g", r.outer_tol), std::to_string(r.field_evals)});
  return cells;
}

}  // namespace

StartRule StartRule::constant(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("starting fill value must be finite");
  StartRule s;
  s.fill = value;
  s.label = format_number("%g", value);
  return s;
}

StartRule StartRule::explicit_vector(std::vector<double> values, std::string label) {
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("starting vector entries must be finite");
  StartRule s;
  s.values = std::move(values);
  s.label = std::move(label);
  return s;
}

Vector<double> StartRule::materialize(Index n) const {
  if (fill) return Vector<double>::Constant(n, *fill);
  if (Index(values.size()) != n)
    throw std::invalid_argument("starting vector '" + label + "' has " + std::to_string(values.size()) +
                                " entries, problem dimension is " + std::to_string(n));
  return Eigen::Map<const Vector<double>>(values.data(), n);
}

LoadedProblem load_problem(const std::string& source, std::uint64_t seed) {
  static const std::string prefix = "builtin:";
  if (source.rfind(prefix, 0) == 0) {
    const std::string name = source.substr(prefix.size());
    auto spec = builtin_instance(name, seed);
    if (!spec) throw std::invalid_argument("unknown built-in problem '" + name + "'");
    return LoadedProblem{name, describe(*spec), build_instance(*spec)};
  }
  ProblemDescription desc = load_problem_file(source);
  std::string id = desc.name;
  if (id.empty()) {
    id = source;
    if (auto slash = id.find_last_of('/'); slash != std::string::npos) id = id.substr(slash + 1);
  }
  NgnepProblem<double> problem = make_problem(desc);
  return LoadedProblem{std::move(id), std::move(desc), std::move(problem)};
}

ReportRow solve_row(const LoadedProblem& lp, Algorithm algorithm, const OuterConfig& config, const StartRule& start) {
  const auto& problem = lp.problem;
  const Vector<double> x0 = start.materialize(problem.dimension());
  const SolveReport<double> report =
      algorithm == Algorithm::ampqp ? ampqp_solve(problem, config, x0) : ampal_solve(problem, config, x0);
  ReportRow row;
  row.example = lp.id;
  row.players = problem.num_players();
  row.dimension = problem.dimension();
  row.x0 = start.label;
  row.outer_iters = report.outer_iters;
  row.inner_iters_total = report.inner_iters_total;
  row.residuals = report.final_residuals;
  row.rho_max = report.rho_max;
  row.termination = report.termination;
  row.algorithm = algorithm;
  row.gamma = config.resolved_gamma(problem.dimension());
  row.outer_tol = config.outer_tol;
  row.field_evals = report.field_evals;
  return row;
}

std::vector<ReportRow> sweep(const RunConfig& config) {
  struct Job {
    std::size_t problem;
    Algorithm algorithm;
    OuterConfig outer;
    const StartRule* start;
  };
  std::vector<std::unique_ptr<LoadedProblem>> problems;
  for (const auto& src : config.problems) problems.push_back(std::make_unique<LoadedProblem>(load_problem(src, config.seed)));

  const std::vector<std::optional<double>> gammas = [&] {
    std::vector<std::optional<double>> g;
    for (double v : config.gammas) g.emplace_back(v);
    if (g.empty()) g.emplace_back(config.outer.gamma);
    return g;
  }();
  const std::vector<double> tols = config.outer_tols.empty() ? std::vector<double>{config.outer.outer_tol} : config.outer_tols;

  std::vector<Job> jobs;
  for (std::size_t p = 0; p < problems.size(); ++p)
    for (Algorithm a : config.algorithms)
      for (const auto& g : gammas)
        for (double tol : tols)
          for (const auto& start : config.starts)
            for (int r = 0; r < std::max(1, config.repeat); ++r) {
              OuterConfig oc = config.outer;
              oc.gamma = g;
              oc.outer_tol = tol;
              oc.validate();
              jobs.push_back(Job{p, a, oc, &start});
            }
  // Surface bad explicit starting vectors before any solve runs.
  for (const auto& job : jobs) job.start->materialize(problems[job.problem]->problem.dimension());

  std::vector<ReportRow> rows(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        rows[i] = solve_row(*problems[jobs[i].problem], jobs[i].algorithm, jobs[i].outer, *jobs[i].start);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(config.threads, unsigned(jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (!errors[i]) continue;
    // Contract violations inside a solve become failure rows; the sweep continues.
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      const auto& lp = *problems[jobs[i].problem];
      ReportRow& row = rows[i];
      row.example = lp.id;
      row.players = lp.problem.num_players();
      row.dimension = lp.problem.dimension();
      row.x0 = jobs[i].start->label;
      row.termination = Termination::subproblem_failure;
      row.algorithm = jobs[i].algorithm;
      row.gamma = jobs[i].outer.resolved_gamma(lp.problem.dimension());
      row.outer_tol = jobs[i].outer.outer_tol;
    }
  }
  return rows;
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{"example", "N",     "n",         "x0",   "k",     "i_total",
                                             "R_f",     "R_o",   "R_c",       "rho_max", "termination", "algo",
                                             "gamma",   "outer_tol", "n_grad"};
  return cols;
}

std::string format_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const auto& r : rows) {
    const auto cells = row_cells(r);
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  }
  return out.str();
}

std::string format_table(const std::vector<ReportRow>& rows) {
  const auto& cols = csv_columns();
  std::vector<std::vector<std::string>> cells;
  for (const auto& r : rows) cells.push_back(row_cells(r));
  std::vector<std::size_t> width(cols.size());
  for (std::size_t i = 0; i < cols.size(); ++i) width[i] = cols[i].size();
  for (const auto& c : cells)
    for (std::size_t i = 0; i < c.size(); ++i) width[i] = std::max(width[i], c[i].size());
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& c) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      out << (i ? "  " : "");
      out << std::string(width[i] - c[i].size(), ' ') << c[i];
    }
    out << '\n';
  };
  line(cols);
  std::size_t total = 0;
  for (auto w : width) total += w;
  out << std::string(total + 2 * (width.size() - 1), '-') << '\n';
  for (const auto& c : cells) line(c);
  return out.str();
}

unsigned threads_from_environment(unsigned fallback) {
  if (const char* env = std::getenv("NGNEP_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return unsigned(v);
  }
  return fallback;
}

}  // namespace ngnep
