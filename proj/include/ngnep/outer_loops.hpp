#pragma once

#include "ngnep/amp.hpp"
#include "ngnep/diagnostics.hpp"
#include "ngnep/penalties.hpp"
#include "ngnep/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace ngnep {

struct OuterConfig {
  std::optional<double> gamma;  ///< schedule ratio; defaults to 4 if n < 100 else 2
  double delta0 = 0.5;
  double beta0 = 1.0;
  double rho0 = 1.0;
  long max_outer = 50;
  long max_inner = 2000;
  double inner_tol = 1e-6;
  double outer_tol = 1e-4;
  double penalty_cap = 1e12;
  double multiplier_cap = 1e6;
  bool adaptive_gating = true;
  double gating_factor = 0.5;
  long residual_check_every = 10;
  /// Cap each subproblem at the iteration count after which the AMP gap
  /// bound guarantees a δ_{k+1}-approximate solution.
  bool theory_budget = true;
  /// When false, subproblems skip the residual early exit and always run
  /// their full iteration budget (used by complexity studies).
  bool inner_early_exit = true;
  /// AMPAL only: when false the multipliers stay at their initial values.
  bool update_multipliers = true;

  double resolved_gamma(Index n) const { return gamma.value_or(n < 100 ? 4.0 : 2.0); }

  void validate() const {
    if (gamma && !(*gamma > 1.0)) throw std::invalid_argument("OuterConfig: gamma must be > 1");
    if (!(delta0 > 0.0 && delta0 < 1.0)) throw std::invalid_argument("OuterConfig: delta0 must lie in (0, 1)");
    if (!(beta0 > 0.0) || !(rho0 > 0.0)) throw std::invalid_argument("OuterConfig: initial penalties must be > 0");
    if (max_outer < 0 || max_inner < 1) throw std::invalid_argument("OuterConfig: invalid iteration budget");
    if (!(penalty_cap > 0.0) || !(multiplier_cap > 0.0)) throw std::invalid_argument("OuterConfig: caps must be > 0");
    if (!(gating_factor > 0.0 && gating_factor < 1.0))
      throw std::invalid_argument("OuterConfig: gating factor must lie in (0, 1)");
    if (!(inner_tol >= 0.0) || !(outer_tol >= 0.0)) throw std::invalid_argument("OuterConfig: tolerances must be >= 0");
  }
};

enum class Termination { converged, outer_budget, penalty_cap_hit, subproblem_failure };

inline const char* to_string(Termination t) {
  switch (t) {
    case Termination::converged: return "converged";
    case Termination::outer_budget: return "outer_budget";
    case Termination::penalty_cap_hit: return "penalty_cap_hit";
    case Termination::subproblem_failure: return "subproblem_failure";
  }
  return "?";
}

/// What happened in one outer iteration.
struct OuterRecord {
  KktResiduals residuals;
  double delta = 0.0;        ///< δ_{k+1}
  double beta_max = 0.0;     ///< max_s β^s_{k+1}
  double rho_max = 0.0;      ///< max_s ρ^s_{k+1}
  double inner_tol = 0.0;
  long inner_budget = 0;
  long inner_iters = 0;
  long field_evals = 0;
  double lambda_min = 0.0;     ///< smallest inequality multiplier entry after the update
  double multiplier_max = 0.0; ///< largest multiplier magnitude after the update
  bool penalties_grew = false;
  AmpStatus inner_status = AmpStatus::budget_exhausted;
};

template <typename Scalar>
struct SolveReport {
  BlockVector<Scalar> x_final;
  BlockVector<Scalar> x_avg;  ///< uniform average of the outer iterates x_1 … x_T
  std::vector<Vector<Scalar>> iterates;
  long outer_iters = 0;
  long inner_iters_total = 0;
  long field_evals = 0;  ///< F evaluations, including residual checks
  std::vector<OuterRecord> history;
  KktResiduals final_residuals;
  PenaltyState<Scalar> penalties;
  double rho_max = 0.0;  ///< largest final penalty parameter
  Termination termination = Termination::outer_budget;
  std::string message;
};

/// Penalized composite VI: F = v, ∇G = ∇(g + h) in the selected mode.
template <typename Scalar>
CompositeVi<Scalar> make_penalized_vi(const NgnepProblem<Scalar>& problem, const PenaltyState<Scalar>& pen,
                                      PenaltyMode mode) {
  CompositeVi<Scalar> vi;
  const NgnepProblem<Scalar>* p = &problem;
  vi.field = [p](const Vector<Scalar>& x) { return p->joint_gradient(x); };
  vi.grad_G = [p, pen, mode](const Vector<Scalar>& x) { return penalty_gradient(*p, pen, x, mode); };
  vi.value_G = [p, pen, mode](const Vector<Scalar>& x) { return penalty_value(*p, pen, x, mode); };
  vi.feasible_set = problem.base_set();
  vi.lF = problem.joint_lipschitz();
  vi.lG = smoothness_budget(problem, pen).l_G();
  vi.alpha = problem.alpha();
  return vi;
}

/// Grow penalties unless the max group violation shrank by at least τ.
inline bool penalty_gate(std::optional<double> previous_violation, double current_violation, double tau) {
  if (!previous_violation) return true;
  return current_violation > tau * *previous_violation;
}

inline bool penalty_gate(const std::optional<std::vector<GroupResidual>>& previous,
                         const std::vector<GroupResidual>& current, double tau) {
  if (!previous) return true;
  return penalty_gate(max_violation(*previous), max_violation(current), tau);
}

/// Multipliers approximately minimizing ‖v(x0) + Σ_s scatter(A_sᵀλ^s + E_sᵀμ^s)‖²
/// subject to λ ≥ 0, by projected gradient with step 1/‖K‖² (K the stacked
/// constraint matrix). At most 500 iterations; stops early once the
/// gradient-mapping norm is ≤ 1e-8. Penalties in the result are set to 1.
template <typename Scalar>
PenaltyState<Scalar> nnls_multiplier_init(const NgnepProblem<Scalar>& problem, const std::type_identity_t<Vector<Scalar>>& x0,
                                          Scalar multiplier_cap = Scalar(1e6), int max_iter = 500,
                                          Scalar tol = Scalar(1e-8)) {
  PenaltyState<Scalar> out = PenaltyState<Scalar>::uniform(problem, Scalar(1), Scalar(1));
  const Index n = problem.dimension();
  Index rows = 0;
  for (const auto& g : problem.groups()) rows += g.A.rows() + g.E.rows();
  if (rows == 0) return out;

  // Rows of K: every group's inequality rows, then its equality rows, placed in full-x columns.
  Matrix<Scalar> K = Matrix<Scalar>::Zero(rows, n);
  std::vector<bool> sign_constrained(rows, false);
  Index r = 0;
  for (std::size_t s = 0; s < problem.num_groups(); ++s) {
    const auto& g = problem.group(s);
    auto place = [&](const Matrix<Scalar>& M, bool nonneg) {
      for (Index i = 0; i < M.rows(); ++i, ++r) {
        Vector<Scalar> row = Vector<Scalar>::Zero(n);
        problem.scatter_add(s, Vector<Scalar>(M.row(i).transpose()), row);
        K.row(r) = row.transpose();
        sign_constrained[r] = nonneg;
      }
    };
    place(g.A, true);
    place(g.E, false);
  }
  const Vector<Scalar> c = problem.joint_gradient(x0);
  const Scalar knorm = spectral_norm<Scalar>(K);
  if (knorm == Scalar(0)) return out;
  const Scalar L = knorm * knorm;

  auto project = [&](Vector<Scalar>& y) {
    for (Index i = 0; i < rows; ++i) {
      if (sign_constrained[i]) y[i] = std::max(y[i], Scalar(0));
      y[i] = std::clamp(y[i], -multiplier_cap, multiplier_cap);
    }
  };
  Vector<Scalar> y = Vector<Scalar>::Zero(rows);
  for (int it = 0; it < max_iter; ++it) {
    const Vector<Scalar> grad = K * (c + K.transpose() * y);
    Vector<Scalar> next = y - grad / L;
    project(next);
    const Scalar mapping = L * (y - next).norm();
    y = std::move(next);
    if (mapping <= tol) break;
  }

  r = 0;
  for (std::size_t s = 0; s < problem.num_groups(); ++s) {
    const auto& g = problem.group(s);
    out.lambda[s] = y.segment(r, g.A.rows());
    r += g.A.rows();
    out.mu[s] = y.segment(r, g.E.rows());
    r += g.E.rows();
  }
  return out;
}

/// λ^s ← min(cap, max{0, λ^s + β^s(A_s x − b_s)}), μ^s ← clamp(μ^s + ρ^s(E_s x − d_s), ±cap).
template <typename Scalar>
void update_multipliers(const NgnepProblem<Scalar>& problem, PenaltyState<Scalar>& pen, const std::type_identity_t<Vector<Scalar>>& x,
                        Scalar multiplier_cap) {
  for (std::size_t s = 0; s < problem.num_groups(); ++s) {
    const auto& g = problem.group(s);
    const Vector<Scalar> xs = problem.gather(s, x);
    pen.lambda[s] = (pen.lambda[s] + pen.beta[s] * (g.A * xs - g.b)).cwiseMax(Scalar(0)).cwiseMin(multiplier_cap);
    pen.mu[s] = (pen.mu[s] + pen.rho[s] * (g.E * xs - g.d)).cwiseMax(-multiplier_cap).cwiseMin(multiplier_cap);
  }
}

/// Multipliers implied by the quadratic penalty at x: β max{0, A x − b} and ρ(E x − d).
template <typename Scalar>
PenaltyState<Scalar> penalty_implied_multipliers(const NgnepProblem<Scalar>& problem, const PenaltyState<Scalar>& pen,
                                                 const std::type_identity_t<Vector<Scalar>>& x) {
  PenaltyState<Scalar> out = pen;
  for (std::size_t s = 0; s < problem.num_groups(); ++s) {
    const auto& g = problem.group(s);
    const Vector<Scalar> xs = problem.gather(s, x);
    out.lambda[s] = pen.beta[s] * (g.A * xs - g.b).cwiseMax(Scalar(0));
    out.mu[s] = pen.rho[s] * (g.E * xs - g.d);
  }
  return out;
}

namespace detail {

template <typename Scalar>
SolveReport<Scalar> outer_solve(const NgnepProblem<Scalar>& problem, const OuterConfig& config,
                                const Vector<Scalar>& x0, PenaltyMode mode,
                                const std::optional<PenaltyState<Scalar>>& initial_multipliers) {
  config.validate();
  if (x0.size() != problem.dimension()) throw std::invalid_argument("outer solve: x0 dimension mismatch");
  const bool al = mode == PenaltyMode::augmented_lagrangian;
  const Scalar gamma = Scalar(config.resolved_gamma(problem.dimension()));
  const Scalar cap = Scalar(config.penalty_cap);
  const Scalar mcap = Scalar(config.multiplier_cap);
  const double diameter = double(problem.base_set().diameter());

  Vector<Scalar> x = problem.base_set().project(x0);
  PenaltyState<Scalar> pen = PenaltyState<Scalar>::uniform(problem, std::min(Scalar(config.beta0), cap),
                                                           std::min(Scalar(config.rho0), cap));
  if (al) {
    PenaltyState<Scalar> init = initial_multipliers ? *initial_multipliers : nnls_multiplier_init(problem, x, mcap);
    check_penalty_shape(problem, init);
    for (std::size_t s = 0; s < problem.num_groups(); ++s) {
      pen.lambda[s] = init.lambda[s].cwiseMax(Scalar(0)).cwiseMin(mcap);
      pen.mu[s] = init.mu[s].cwiseMax(-mcap).cwiseMin(mcap);
    }
  }
  auto residuals_at = [&](const Vector<Scalar>& pt) {
    return kkt_residuals(problem, pt, al ? pen : penalty_implied_multipliers(problem, pen, pt));
  };

  SolveReport<Scalar> report;
  report.termination = Termination::outer_budget;
  Scalar delta = Scalar(config.delta0);
  std::optional<double> previous_violation;
  double current_violation = max_violation(group_residuals(problem, x));
  Vector<Scalar> sum = Vector<Scalar>::Zero(x.size());

  for (long k = 0; k < config.max_outer; ++k) {
    OuterRecord rec;
    rec.penalties_grew = !config.adaptive_gating ||
                         penalty_gate(previous_violation, current_violation, config.gating_factor);
    if (rec.penalties_grew) {
      for (auto& b : pen.beta) b = std::min(cap, gamma * b);
      for (auto& r : pen.rho) r = std::min(cap, gamma * r);
    }
    delta = delta / gamma;

    const CompositeVi<Scalar> vi = make_penalized_vi(problem, pen, mode);
    rec.delta = double(delta);
    rec.inner_tol = std::max(config.inner_tol, double(delta) / (diameter * (1.0 + double(vi.lG))));
    rec.inner_budget = config.max_inner;
    if (config.theory_budget) {
      const long bound = vi.alpha > Scalar(0)
                             ? strongly_monotone_iteration_bound(double(vi.lF), double(vi.lG), double(vi.alpha), diameter, double(delta))
                             : monotone_iteration_bound(double(vi.lF), double(vi.lG), diameter, double(delta));
      rec.inner_budget = std::min(rec.inner_budget, bound);
    }
    const AmpResult<Scalar> inner =
        amp_solve(vi, x, StopRule{rec.inner_budget, config.inner_early_exit ? rec.inner_tol : -1.0,
                                  config.inner_early_exit ? config.residual_check_every : rec.inner_budget});
    report.inner_iters_total += inner.iterations;
    report.field_evals += inner.field_evals();
    if (inner.status == AmpStatus::non_finite) {
      report.termination = Termination::subproblem_failure;
      report.message = inner.message;
      break;
    }

    x = inner.point;
    if (al && config.update_multipliers) update_multipliers(problem, pen, x, mcap);

    rec.beta_max = 0.0;
    for (Scalar b : pen.beta) rec.beta_max = std::max(rec.beta_max, double(b));
    for (Scalar r : pen.rho) rec.rho_max = std::max(rec.rho_max, double(r));
    rec.lambda_min = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < pen.lambda.size(); ++s) {
      if (pen.lambda[s].size() > 0) {
        rec.lambda_min = std::min(rec.lambda_min, double(pen.lambda[s].minCoeff()));
        rec.multiplier_max = std::max(rec.multiplier_max, double(pen.lambda[s].cwiseAbs().maxCoeff()));
      }
      if (pen.mu[s].size() > 0) rec.multiplier_max = std::max(rec.multiplier_max, double(pen.mu[s].cwiseAbs().maxCoeff()));
    }
    if (!std::isfinite(rec.lambda_min)) rec.lambda_min = 0.0;
    rec.inner_iters = inner.iterations;
    rec.field_evals = inner.field_evals();
    rec.inner_status = inner.status;
    rec.residuals = residuals_at(x);
    report.history.push_back(rec);
    report.iterates.push_back(x);
    sum += x;
    ++report.outer_iters;

    previous_violation = current_violation;
    current_violation = max_violation(group_residuals(problem, x));

    if (rec.residuals.max() <= config.outer_tol) {
      report.termination = Termination::converged;
      break;
    }
    if (pen.min_penalty() >= cap) {
      report.termination = Termination::penalty_cap_hit;
      break;
    }
  }

  report.x_final = BlockVector<Scalar>(problem.layout(), x);
  report.x_avg = BlockVector<Scalar>(problem.layout(),
                                     report.outer_iters > 0 ? Vector<Scalar>(sum / Scalar(report.outer_iters)) : x);
  report.final_residuals = residuals_at(x);
  report.penalties = al ? pen : penalty_implied_multipliers(problem, pen, x);
  report.rho_max = double(pen.max_penalty());
  return report;
}

}  // namespace detail

/// Accelerated mirror-prox quadratic penalty method.
template <typename Scalar>
SolveReport<Scalar> ampqp_solve(const NgnepProblem<Scalar>& problem, const OuterConfig& config,
                                const std::type_identity_t<Vector<Scalar>>& x0) {
  return detail::outer_solve<Scalar>(problem, config, x0, PenaltyMode::quadratic, std::nullopt);
}

/// Accelerated mirror-prox augmented Lagrangian method. Multipliers start
/// from `initial_multipliers` when given, else from nnls_multiplier_init.
template <typename Scalar>
SolveReport<Scalar> ampal_solve(const NgnepProblem<Scalar>& problem, const OuterConfig& config,
                                const std::type_identity_t<Vector<Scalar>>& x0,
                                const std::type_identity_t<std::optional<PenaltyState<Scalar>>>& initial_multipliers = std::nullopt) {
  return detail::outer_solve<Scalar>(problem, config, x0, PenaltyMode::augmented_lagrangian, initial_multipliers);
}

}  // namespace ngnep
