#pragma once

#include "ngnep/problem.hpp"

#include <stdexcept>
#include <type_traits>
#include <vector>

namespace ngnep {

enum class PenaltyMode { quadratic, augmented_lagrangian };

/// Per-group penalty parameters (β^s, ρ^s) and multipliers (λ^s, μ^s).
template <typename Scalar>
struct PenaltyState {
  std::vector<Scalar> beta;
  std::vector<Scalar> rho;
  std::vector<Vector<Scalar>> lambda;
  std::vector<Vector<Scalar>> mu;

  /// Uniform penalties and zero multipliers sized to `problem`.
  static PenaltyState uniform(const NgnepProblem<Scalar>& problem, Scalar beta0, Scalar rho0) {
    if (!(beta0 > Scalar(0)) || !(rho0 > Scalar(0))) throw std::invalid_argument("PenaltyState: penalties must be > 0");
    PenaltyState p;
    for (const auto& g : problem.groups()) {
      p.beta.push_back(beta0);
      p.rho.push_back(rho0);
      p.lambda.push_back(Vector<Scalar>::Zero(g.A.rows()));
      p.mu.push_back(Vector<Scalar>::Zero(g.E.rows()));
    }
    return p;
  }

  Scalar max_penalty() const {
    Scalar m(0);
    for (Scalar b : beta) m = std::max(m, b);
    for (Scalar r : rho) m = std::max(m, r);
    return m;
  }

  Scalar min_penalty() const {
    Scalar m = std::numeric_limits<Scalar>::infinity();
    for (Scalar b : beta) m = std::min(m, b);
    for (Scalar r : rho) m = std::min(m, r);
    return m;
  }

  void zero_multipliers() {
    for (auto& l : lambda) l.setZero();
    for (auto& m : mu) m.setZero();
  }
};

/// ℓ_β = Σ β^s‖A_s‖², ℓ_ρ = Σ ρ^s‖E_s‖², ℓ_G = ℓ_β + ℓ_ρ.
template <typename Scalar>
struct SmoothnessBudget {
  Scalar l_beta = Scalar(0);
  Scalar l_rho = Scalar(0);
  Scalar l_G() const { return l_beta + l_rho; }
};

template <typename Scalar>
SmoothnessBudget<Scalar> smoothness_budget(const NgnepProblem<Scalar>& problem, const PenaltyState<Scalar>& pen) {
  SmoothnessBudget<Scalar> out;
  for (std::size_t s = 0; s < problem.num_groups(); ++s) {
    const Scalar na = problem.norm_A(s), ne = problem.norm_E(s);
    out.l_beta += pen.beta[s] * na * na;
    out.l_rho += pen.rho[s] * ne * ne;
  }
  return out;
}

namespace detail {

template <typename Scalar>
void check_penalty_shape(const NgnepProblem<Scalar>& problem, const PenaltyState<Scalar>& pen) {
  const std::size_t S = problem.num_groups();
  if (pen.beta.size() != S || pen.rho.size() != S || pen.lambda.size() != S || pen.mu.size() != S)
    throw std::invalid_argument("PenaltyState does not match the number of constraint groups");
  for (std::size_t s = 0; s < S; ++s)
    if (pen.lambda[s].size() != problem.group(s).A.rows() || pen.mu[s].size() != problem.group(s).E.rows())
      throw std::invalid_argument("PenaltyState multiplier length does not match group " + std::to_string(s));
}

/// Shifted residuals for group s: inequality part max{0, A x − b + λ/β}
/// scaled by β, equality part ρ(E x − d) + μ. With zero multipliers these
/// are the quadratic-penalty quantities.
template <typename Scalar>
std::pair<Vector<Scalar>, Vector<Scalar>> group_penalty_multipliers(const NgnepProblem<Scalar>& problem,
                                                                    const PenaltyState<Scalar>& pen, std::size_t s,
                                                                    const Vector<Scalar>& xs, PenaltyMode mode) {
  const auto& g = problem.group(s);
  Vector<Scalar> ineq, eq;
  if (mode == PenaltyMode::quadratic) {
    ineq = pen.beta[s] * (g.A * xs - g.b).cwiseMax(Scalar(0));
    eq = pen.rho[s] * (g.E * xs - g.d);
  } else {
    ineq = pen.beta[s] * (g.A * xs - g.b + pen.lambda[s] / pen.beta[s]).cwiseMax(Scalar(0));
    eq = pen.rho[s] * (g.E * xs - g.d) + pen.mu[s];
  }
  return {std::move(ineq), std::move(eq)};
}

}  // namespace detail

/// ∇(g + h)(x): each group's Aᵀ(…) + Eᵀ(…) scattered into its member blocks.
template <typename Scalar>
Vector<Scalar> penalty_gradient(const NgnepProblem<Scalar>& problem, const PenaltyState<Scalar>& pen,
                                const std::type_identity_t<Vector<Scalar>>& x, PenaltyMode mode) {
  detail::check_penalty_shape(problem, pen);
  Vector<Scalar> out = Vector<Scalar>::Zero(x.size());
  for (std::size_t s = 0; s < problem.num_groups(); ++s) {
    const auto& g = problem.group(s);
    const Vector<Scalar> xs = problem.gather(s, x);
    auto [ineq, eq] = detail::group_penalty_multipliers(problem, pen, s, xs, mode);
    Vector<Scalar> contrib = g.A.transpose() * ineq + g.E.transpose() * eq;
    problem.scatter_add(s, contrib, out);
  }
  return out;
}

/// ∇g₁ + ∇h₁ (multipliers ignored).
template <typename Scalar>
BlockVector<Scalar> qp_penalty_gradient(const NgnepProblem<Scalar>& problem, const PenaltyState<Scalar>& pen,
                                        const BlockVector<Scalar>& x) {
  return BlockVector<Scalar>(problem.layout(), penalty_gradient(problem, pen, x.data(), PenaltyMode::quadratic));
}

/// ∇g₂ + ∇h₂.
template <typename Scalar>
BlockVector<Scalar> al_penalty_gradient(const NgnepProblem<Scalar>& problem, const PenaltyState<Scalar>& pen,
                                        const BlockVector<Scalar>& x) {
  return BlockVector<Scalar>(problem.layout(),
                             penalty_gradient(problem, pen, x.data(), PenaltyMode::augmented_lagrangian));
}

/// g₁ + h₁ or g₂ + h₂ at x.
template <typename Scalar>
Scalar penalty_value(const NgnepProblem<Scalar>& problem, const PenaltyState<Scalar>& pen, const std::type_identity_t<Vector<Scalar>>& x,
                     PenaltyMode mode) {
  detail::check_penalty_shape(problem, pen);
  Scalar total(0);
  for (std::size_t s = 0; s < problem.num_groups(); ++s) {
    const auto& g = problem.group(s);
    const Vector<Scalar> xs = problem.gather(s, x);
    if (mode == PenaltyMode::quadratic) {
      total += pen.beta[s] / Scalar(2) * (g.A * xs - g.b).cwiseMax(Scalar(0)).squaredNorm();
      total += pen.rho[s] / Scalar(2) * (g.E * xs - g.d).squaredNorm();
    } else {
      total += pen.beta[s] / Scalar(2) * (g.A * xs - g.b + pen.lambda[s] / pen.beta[s]).cwiseMax(Scalar(0)).squaredNorm();
      total += pen.rho[s] / Scalar(2) * (g.E * xs - g.d + pen.mu[s] / pen.rho[s]).squaredNorm();
    }
  }
  return total;
}

template <typename Scalar>
Scalar penalty_value(const NgnepProblem<Scalar>& problem, const PenaltyState<Scalar>& pen,
                     const BlockVector<Scalar>& x, PenaltyMode mode) {
  return penalty_value(problem, pen, x.data(), mode);
}

}  // namespace ngnep
