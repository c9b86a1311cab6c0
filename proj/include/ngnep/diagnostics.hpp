#pragma once

#include "ngnep/amp.hpp"
#include "ngnep/penalties.hpp"
#include "ngnep/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace ngnep {

/// Feasibility, optimality and complementarity residuals of a KKT system.
struct KktResiduals {
  double r_f = 0.0;
  double r_o = 0.0;
  double r_c = 0.0;

  double max() const { return std::max({r_f, r_o, r_c}); }
};

/// KKT residuals with one shared (λ^s, μ^s) per group:
///
///   R_f = max_s max(‖max{0, A_s x − b_s}‖, ‖E_s x − d_s‖)
///   R_o = ‖x − P_X̂(x − (v(x) + Σ_s scatter(A_sᵀλ^s + E_sᵀμ^s)))‖
///   R_c = max_s ‖min{λ^s, −(A_s x − b_s)}‖
template <typename Scalar>
KktResiduals kkt_residuals(const NgnepProblem<Scalar>& problem, const std::type_identity_t<Vector<Scalar>>& x,
                           const PenaltyState<Scalar>& pen) {
  detail::check_penalty_shape(problem, pen);
  KktResiduals out;
  Vector<Scalar> lagrangian_grad = problem.joint_gradient(x);
  for (std::size_t s = 0; s < problem.num_groups(); ++s) {
    const auto& g = problem.group(s);
    const Vector<Scalar> xs = problem.gather(s, x);
    const Vector<Scalar> ineq = g.A * xs - g.b;
    const Vector<Scalar> eq = g.E * xs - g.d;
    out.r_f = std::max({out.r_f, double(ineq.cwiseMax(Scalar(0)).norm()), double(eq.norm())});
    if (ineq.size() > 0) out.r_c = std::max(out.r_c, double(pen.lambda[s].cwiseMin(-ineq).norm()));
    problem.scatter_add(s, Vector<Scalar>(g.A.transpose() * pen.lambda[s] + g.E.transpose() * pen.mu[s]),
                        lagrangian_grad);
  }
  out.r_o = double((x - problem.base_set().project(x - lagrangian_grad)).norm());
  return out;
}

template <typename Scalar>
KktResiduals kkt_residuals(const NgnepProblem<Scalar>& problem, const BlockVector<Scalar>& x,
                           const PenaltyState<Scalar>& pen) {
  return kkt_residuals(problem, x.data(), pen);
}

struct EpsilonVerdict {
  bool feasible = false;        ///< every group residual ≤ eps
  bool pass = false;            ///< feasible and worst_margin ≤ eps
  double max_violation = 0.0;
  double worst_margin = 0.0;    ///< max sampled (x̄^ν − x^ν)ᵀ v_ν(x^ν, x̄^{−ν})
  std::size_t worst_player = 0;
  long samples_tested = 0;
};

/// Sampled certificate of an ε-solution for small instances (n ≤ 6).
///
/// For each player the candidate deviations are a grid over the bounding
/// box of X̂_ν plus `sample_budget` random draws, all projected onto X̂_ν,
/// then filtered by the ε-relaxed shared constraints with rivals fixed at x̄.
template <typename Scalar>
EpsilonVerdict epsilon_solution_check(const NgnepProblem<Scalar>& problem, const std::type_identity_t<Vector<Scalar>>& xbar, double eps,
                                      long sample_budget, std::uint64_t seed = 0) {
  if (problem.dimension() > 6) throw std::invalid_argument("epsilon_solution_check: total dimension must be <= 6");
  if (xbar.size() != problem.dimension()) throw std::invalid_argument("epsilon_solution_check: dimension mismatch");
  EpsilonVerdict out;
  out.max_violation = max_violation(group_residuals(problem, xbar));
  out.feasible = out.max_violation <= eps;

  std::mt19937_64 rng(seed);
  const auto& layout = problem.layout();
  for (std::size_t nu = 0; nu < problem.num_players(); ++nu) {
    const auto& set = problem.player(nu).set;
    const Index w = layout.width(nu);
    std::vector<Vector<Scalar>> candidates;
    const long per_dim = std::max<long>(2, long(std::floor(std::pow(double(std::max<long>(sample_budget, 1)), 1.0 / double(w)))));
    auto [lo, hi] = set.bounding_box();
    std::vector<long> idx(w, 0);
    for (bool done = false; !done;) {
      Vector<Scalar> p(w);
      for (Index i = 0; i < w; ++i) p[i] = lo[i] + (hi[i] - lo[i]) * Scalar(idx[i]) / Scalar(per_dim - 1);
      candidates.push_back(set.project(p));
      done = true;
      for (Index i = 0; i < w; ++i) {
        if (++idx[i] < per_dim) { done = false; break; }
        idx[i] = 0;
      }
    }
    for (long i = 0; i < sample_budget; ++i) candidates.push_back(sample_point(set, rng));

    Vector<Scalar> y = xbar;
    for (const auto& cand : candidates) {
      y.segment(layout.start(nu), w) = cand;
      bool admissible = true;
      for (std::size_t s : problem.memberships(nu)) {
        const auto& g = problem.group(s);
        const Vector<Scalar> ys = problem.gather(s, y);
        if (double((g.A * ys - g.b).cwiseMax(Scalar(0)).norm()) > eps || double((g.E * ys - g.d).norm()) > eps) {
          admissible = false;
          break;
        }
      }
      if (!admissible) continue;
      ++out.samples_tested;
      const Vector<Scalar> v = problem.player(nu).gradient(y);
      const double margin = double((xbar.segment(layout.start(nu), w) - cand).dot(v));
      if (margin > out.worst_margin) {
        out.worst_margin = margin;
        out.worst_player = nu;
      }
    }
  }
  out.pass = out.feasible && out.worst_margin <= eps;
  return out;
}

/// max over grid points y ∈ Z of G(z) − G(y) + (z − y)ᵀF(y).
///
/// The grid has `resolution` points per coordinate over the bounding box of
/// Z; each grid point is projected onto Z. Only for dim Z ≤ 3.
template <typename Scalar>
Scalar gap_brute_force(const CompositeVi<Scalar>& vi, const std::type_identity_t<Vector<Scalar>>& z, long resolution) {
  const Index n = vi.dimension();
  if (n > 3) throw std::invalid_argument("gap_brute_force: dimension must be <= 3");
  if (resolution < 2) throw std::invalid_argument("gap_brute_force: resolution must be >= 2");
  auto [lo, hi] = vi.feasible_set.bounding_box();
  const Scalar Gz = vi.eval_G(z);
  Scalar best = -std::numeric_limits<Scalar>::infinity();
  std::vector<long> idx(n, 0);
  Vector<Scalar> p(n);
  for (bool done = false; !done;) {
    for (Index i = 0; i < n; ++i) p[i] = lo[i] + (hi[i] - lo[i]) * Scalar(idx[i]) / Scalar(resolution - 1);
    const Vector<Scalar> y = vi.feasible_set.project(p);
    best = std::max(best, Scalar(Gz - vi.eval_G(y) + (z - y).dot(vi.field(y))));
    done = true;
    for (Index i = 0; i < n; ++i) {
      if (++idx[i] < resolution) { done = false; break; }
      idx[i] = 0;
    }
  }
  return best;
}

}  // namespace ngnep
