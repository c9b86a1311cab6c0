#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/LU>

#include "ngnep/library.hpp"
#include "ngnep/outer_loops.hpp"

using namespace ngnep;
using Vec = Vector<double>;
using Mat = Matrix<double>;

namespace {

NgnepProblem<double> builtin(const std::string& name) { return build_instance(*builtin_instance(name)); }

NgnepProblem<double> scalar_problem(double v, ConstraintGroup<double> g) {
  std::vector<Player<double>> players{{SimpleSet<double>::box(1, -1.0, 1.0), [v](const Vec&) { return Vec::Constant(1, v); }}};
  return NgnepProblem<double>(players, {std::move(g)}, 1.0, 0.0);
}

}  // namespace

TEST_CASE("Cournot with an inactive cap reaches the interior equilibrium") {
  const auto p = builtin("cournot");
  const Vec target = Vec::Constant(2, 1.0 / 3.0);
  OuterConfig cfg;
  for (bool al : {false, true}) {
    const auto r = al ? ampal_solve(p, cfg, Vec::Zero(2)) : ampqp_solve(p, cfg, Vec::Zero(2));
    CHECK(r.termination == Termination::converged);
    CHECK((r.x_final.data() - target).norm() <= 1e-3);
  }
}

TEST_CASE("Cournot with an active cap reaches the variational equilibrium") {
  const auto p = builtin("cournot-active");
  const Vec target = Vec::Constant(2, 0.25);
  OuterConfig cfg;
  const auto al = ampal_solve(p, cfg, Vec::Zero(2));
  CHECK(al.termination == Termination::converged);
  CHECK((al.x_final.data() - target).norm() <= 1e-3);
  CHECK(std::abs(al.penalties.lambda[0][0] - 0.25) <= 1e-2);
  const auto qp = ampqp_solve(p, cfg, Vec::Zero(2));
  CHECK(qp.termination == Termination::converged);
  CHECK((qp.x_final.data() - target).norm() <= 1e-3);
}

TEST_CASE("single player with an equality constraint matches constrained least squares") {
  // min ½‖x − p‖² s.t. x₁ + x₂ = 1, p = (2, 2): x = p − Eᵀ(EEᵀ)⁻¹(Ep − d).
  const Vec pt = Vec::Constant(2, 2.0);
  const Mat E = Mat::Ones(1, 2);
  const Vec expect = pt - E.transpose() * ((E * E.transpose()).inverse() * (E * pt - Vec::Ones(1)));
  const auto p = builtin("n1-equality");
  OuterConfig cfg;
  for (bool al : {false, true}) {
    const auto r = al ? ampal_solve(p, cfg, Vec::Zero(2)) : ampqp_solve(p, cfg, Vec::Zero(2));
    CHECK(r.termination == Termination::converged);
    CHECK((r.x_final.data() - expect).norm() <= 1e-4);
  }
}

TEST_CASE("multiplier update examples") {
  ConstraintGroup<double> g;
  g.members = {0};
  g.A = Mat::Ones(1, 1);
  g.b = Vec::Constant(1, 1.0);
  g.E = Mat::Ones(1, 1);
  g.d = Vec::Constant(1, -0.25);
  const auto p = scalar_problem(0.0, g);
  auto pen = PenaltyState<double>::uniform(p, 2.0, 4.0);
  pen.lambda[0] = Vec::Constant(1, 0.5);
  pen.mu[0] = Vec::Constant(1, 1.0);
  update_multipliers(p, pen, Vec::Zero(1), 1e6);  // A x − b = −1, E x − d = 0.25
  CHECK(pen.lambda[0][0] == 0.0);
  CHECK(pen.mu[0][0] == doctest::Approx(2.0));

  pen.lambda[0] = Vec::Constant(1, 5.0);
  pen.mu[0] = Vec::Constant(1, -6.0);  // −6 + 4·1.25 = −1, clamped to −0.75
  update_multipliers(p, pen, Vec::Constant(1, 1.0), 0.75);
  CHECK(pen.lambda[0][0] == 0.75);
  CHECK(pen.mu[0][0] == -0.75);
}

TEST_CASE("NNLS multiplier initialization examples") {
  ConstraintGroup<double> eq;
  eq.members = {0};
  eq.E = Mat::Ones(1, 1);
  eq.d = Vec::Zero(1);
  CHECK(nnls_multiplier_init(scalar_problem(1.0, eq), Vec::Zero(1)).mu[0][0] == doctest::Approx(-1.0).epsilon(1e-8));
  auto zero = nnls_multiplier_init(scalar_problem(0.0, eq), Vec::Zero(1));
  CHECK(zero.mu[0][0] == 0.0);

  ConstraintGroup<double> ineq;
  ineq.members = {0};
  ineq.A = Mat::Ones(1, 1);
  ineq.b = Vec::Zero(1);
  CHECK(nnls_multiplier_init(scalar_problem(1.0, ineq), Vec::Zero(1)).lambda[0][0] == 0.0);
  // v = −1 is cancelled exactly by λ = 1 ≥ 0.
  CHECK(nnls_multiplier_init(scalar_problem(-1.0, ineq), Vec::Zero(1)).lambda[0][0] ==
        doctest::Approx(1.0).epsilon(1e-8));
  CHECK(nnls_multiplier_init(scalar_problem(-1.0, ineq), Vec::Zero(1), 0.5).lambda[0][0] == 0.5);
}

TEST_CASE("penalty gate examples") {
  CHECK_FALSE(penalty_gate(1.0, 0.4, 0.5));
  CHECK(penalty_gate(1.0, 0.6, 0.5));
  CHECK(penalty_gate(std::nullopt, 0.0, 0.5));
  std::vector<GroupResidual> prev{{1.0, 0.2}}, curr{{0.1, 0.45}};
  CHECK_FALSE(penalty_gate(std::optional(prev), curr, 0.5));
}

TEST_CASE("schedule exactness with gating disabled") {
  // bilinear has an inequality group, transport an equality group.
  for (const std::string name : {"bilinear", "transport"}) {
    const auto prob = builtin(name);
    for (double gamma : {2.0, 4.0}) {
      OuterConfig cfg;
      cfg.gamma = gamma;
      cfg.adaptive_gating = false;
      cfg.max_outer = 30;
      cfg.max_inner = 5;
      cfg.outer_tol = 0.0;
      cfg.penalty_cap = 1e30;
      cfg.beta0 = 1.5;
      cfg.rho0 = 1.5;
      for (bool al : {false, true}) {
        const auto r = al ? ampal_solve(prob, cfg, Vec::Zero(prob.dimension()))
                          : ampqp_solve(prob, cfg, Vec::Zero(prob.dimension()));
        REQUIRE(r.history.size() == 30);
        double beta = cfg.beta0, delta = cfg.delta0;
        for (std::size_t k = 0; k < r.history.size(); ++k) {
          beta *= gamma;
          delta /= gamma;
          CHECK(r.history[k].beta_max == beta);
          CHECK(r.history[k].rho_max == beta);
          CHECK(r.history[k].delta == delta);
          CHECK(r.history[k].penalties_grew);
        }
      }
    }
  }
}

TEST_CASE("multipliers stay nonnegative and within their caps; penalties within theirs") {
  for (const std::string name : {"market", "auction", "cournot-active", "transport", "bilinear"}) {
    CAPTURE(name);
    const auto p = builtin(name);
    OuterConfig cfg;
    cfg.multiplier_cap = 0.3;
    cfg.penalty_cap = 100.0;
    cfg.outer_tol = 0.0;
    cfg.max_outer = 12;
    cfg.adaptive_gating = false;
    const auto r = ampal_solve(p, cfg, Vec::Constant(p.dimension(), 0.5));
    for (const auto& rec : r.history) {
      CHECK(rec.lambda_min >= 0.0);
      CHECK(rec.multiplier_max <= 0.3);
      CHECK(rec.beta_max <= 100.0);
      CHECK(rec.rho_max <= 100.0);
    }
    // auction reaches an exact zero residual before the cap.
    if (r.termination != Termination::converged) {
      CHECK(r.termination == Termination::penalty_cap_hit);
      CHECK(r.rho_max == 100.0);
    }
  }
}

TEST_CASE("AMPAL with frozen zero multipliers follows AMPQP exactly") {
  for (const std::string name : {"cournot-active", "market", "n1-equality"}) {
    const auto p = builtin(name);
    OuterConfig cfg;
    cfg.adaptive_gating = false;
    cfg.update_multipliers = false;
    cfg.outer_tol = 0.0;
    cfg.max_outer = 8;
    const Vec x0 = Vec::Constant(p.dimension(), 0.1);
    const auto qp = ampqp_solve(p, cfg, x0);
    const auto al = ampal_solve(p, cfg, x0, PenaltyState<double>::uniform(p, 1.0, 1.0));
    REQUIRE(qp.iterates.size() == al.iterates.size());
    for (std::size_t k = 0; k < qp.iterates.size(); ++k) CHECK((qp.iterates[k] - al.iterates[k]).norm() <= 1e-12);
    CHECK(qp.inner_iters_total == al.inner_iters_total);
  }
}

TEST_CASE("converged solves are feasible to the outer tolerance") {
  for (const auto& name : builtin_names()) {
    CAPTURE(name);
    const auto p = builtin(name);
    OuterConfig cfg;
    for (bool al : {false, true}) {
      const auto r = al ? ampal_solve(p, cfg, Vec::Zero(p.dimension())) : ampqp_solve(p, cfg, Vec::Zero(p.dimension()));
      CHECK(r.termination == Termination::converged);
      CHECK(max_violation(group_residuals(p, r.x_final.data())) <= cfg.outer_tol);
      CHECK(r.inner_iters_total >= r.outer_iters);
      CHECK(long(r.history.size()) == r.outer_iters);
    }
  }
}

TEST_CASE("report bookkeeping") {
  const auto p = builtin("market");
  OuterConfig cfg;
  cfg.max_outer = 0;
  const Vec x0 = Vec::Constant(p.dimension(), 1.0);
  const auto r = ampal_solve(p, cfg, x0);
  CHECK(r.outer_iters == 0);
  CHECK(r.inner_iters_total == 0);
  CHECK(r.rho_max == 1.0);
  CHECK(r.termination == Termination::outer_budget);
  CHECK(r.x_final.data() == p.base_set().project(x0));

  cfg.max_outer = 5;
  cfg.outer_tol = 0.0;
  const auto s = ampqp_solve(p, cfg, x0);
  Vec mean = Vec::Zero(p.dimension());
  for (const auto& x : s.iterates) mean += x;
  mean /= double(s.iterates.size());
  CHECK((s.x_avg.data() - mean).norm() <= 1e-14);
  CHECK(s.x_final.data() == s.iterates.back());
  long evals = 0;
  for (const auto& rec : s.history) evals += rec.field_evals;
  CHECK(evals == s.field_evals);
}

TEST_CASE("non-finite oracle output ends the solve as a subproblem failure") {
  std::vector<Player<double>> players{
      {SimpleSet<double>::box(1, 0.0, 1.0), [](const Vec& x) { return Vec::Constant(1, x[0] > 0.05 ? NAN : -1.0); }}};
  ConstraintGroup<double> g;
  g.members = {0};
  g.A = Mat::Ones(1, 1);
  g.b = Vec::Constant(1, 0.5);
  const NgnepProblem<double> p(players, {g}, 1.0, 0.0);
  const auto r = ampqp_solve(p, OuterConfig{}, Vec::Zero(1));
  CHECK(r.termination == Termination::subproblem_failure);
  CHECK_FALSE(r.message.empty());
}

TEST_CASE("configuration validation") {
  OuterConfig cfg;
  cfg.gamma = 1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = OuterConfig{};
  cfg.delta0 = 1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = OuterConfig{};
  cfg.gating_factor = 1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  CHECK(OuterConfig{}.resolved_gamma(99) == 4.0);
  CHECK(OuterConfig{}.resolved_gamma(100) == 2.0);
}
