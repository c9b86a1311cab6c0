// Command-line front end for the NGNEP solver harness.
#include "ngnep/harness.hpp"
#include "ngnep/problem_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kConfigError = 2;

std::vector<double> read_vector_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open starting-point file '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  for (char& c : text)
    if (c == ',') c = ' ';
  std::istringstream ss(text);
  std::vector<double> out;
  std::string tok;
  while (ss >> tok) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw std::invalid_argument("bad number '" + tok + "' in starting-point file '" + path + "'");
    out.push_back(v);
  }
  return out;
}

ngnep::StartRule parse_start(const std::string& item) {
  if (!item.empty() && item[0] == '@') return ngnep::StartRule::explicit_vector(read_vector_file(item.substr(1)), item);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(item, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != item.size() || item.empty()) throw std::invalid_argument("bad --x0 entry '" + item + "'");
  auto rule = ngnep::StartRule::constant(v);
  rule.label = item;
  return rule;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solve nonlinear generalized Nash equilibrium problems with AMPQP/AMPAL"};
  ngnep::RunConfig cfg;
  std::vector<std::string> algos{"ampal"};
  std::vector<std::string> starts{"0"};
  std::string out_path, format = "csv", export_path;
  bool no_gating = false, list = false, no_multipliers = false;

  app.add_option("--problem,-p", cfg.problems, "Problem file or builtin:<name> (repeatable, comma-separated)")
      ->delimiter(',');
  app.add_flag("--list", list, "List built-in problems and exit");
  app.add_option("--export", export_path, "Write the single selected problem as a problem file and exit");
  app.add_option("--algo", algos, "ampqp and/or ampal")->delimiter(',')->check(CLI::IsMember({"ampqp", "ampal"}));
  app.add_option("--gamma", cfg.gammas, "Penalty growth factor(s) > 1 (default 4 if n < 100 else 2)")
      ->delimiter(',');
  app.add_option("--delta0", cfg.outer.delta0, "Initial subproblem tolerance");
  app.add_option("--beta0", cfg.outer.beta0, "Initial inequality penalty");
  app.add_option("--rho0", cfg.outer.rho0, "Initial equality penalty");
  app.add_option("--x0", starts, "Starting point(s): scalar fill or @file")->delimiter(',');
  app.add_option("--max-outer", cfg.outer.max_outer, "Outer iteration budget");
  app.add_option("--max-inner", cfg.outer.max_inner, "Inner iteration cap per subproblem");
  app.add_option("--inner-tol", cfg.outer.inner_tol, "Floor on the inner stopping tolerance");
  app.add_option("--outer-tol", cfg.outer_tols, "KKT residual target(s)")->delimiter(',');
  app.add_option("--penalty-cap", cfg.outer.penalty_cap, "Largest allowed penalty parameter");
  app.add_option("--multiplier-cap", cfg.outer.multiplier_cap, "Largest allowed multiplier entry");
  app.add_flag("--no-gating", no_gating, "Grow penalties every outer iteration");
  app.add_flag("--no-multiplier-update", no_multipliers, "Keep AMPAL multipliers at their initial values");
  app.add_option("--out,-o", out_path, "Output file (default stdout)");
  app.add_option("--format", format, "csv or table")->check(CLI::IsMember({"csv", "table"}));
  app.add_option("--seed", cfg.seed, "Seed for randomized instances");
  app.add_option("--repeat", cfg.repeat, "Repeat each configuration")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  if (list) {
    for (const auto& name : ngnep::builtin_names()) std::cout << "builtin:" << name << '\n';
    return 0;
  }

  try {
    if (!export_path.empty()) {
      if (cfg.problems.size() != 1) throw std::invalid_argument("--export needs exactly one --problem");
      const auto loaded = ngnep::load_problem(cfg.problems.front(), cfg.seed);
      auto desc = loaded.description;
      if (desc.name.empty()) desc.name = loaded.id;
      std::ofstream(export_path) << ngnep::serialize_problem(desc);
      return 0;
    }
    if (cfg.problems.empty()) throw std::invalid_argument("no --problem given (see --list)");
    cfg.algorithms.clear();
    for (const auto& a : algos) cfg.algorithms.push_back(*ngnep::algorithm_from_string(a));
    cfg.starts.clear();
    for (const auto& s : starts) cfg.starts.push_back(parse_start(s));
    cfg.outer.adaptive_gating = !no_gating;
    cfg.outer.update_multipliers = !no_multipliers;
    cfg.threads = ngnep::threads_from_environment();

    const auto rows = ngnep::sweep(cfg);
    const std::string text = format == "table" ? ngnep::format_table(rows) : ngnep::format_csv(rows);
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(out_path);
      if (!out) throw std::invalid_argument("cannot open output file '" + out_path + "'");
      out << text;
    }
  } catch (const ngnep::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
