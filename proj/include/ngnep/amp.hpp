#pragma once

#include "ngnep/block_vector.hpp"
#include "ngnep/simple_set.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace ngnep {

template <typename Scalar>
using VectorField = std::function<Vector<Scalar>(const Vector<Scalar>&)>;

/// Composite variational inequality: find z⋆ ∈ Z with
/// (z − z⋆)ᵀ(F(z⋆) + ∇G(z⋆)) ≥ 0 for all z ∈ Z.
///
/// `field` is ℓ_F-Lipschitz and α-strongly monotone (α = 0 allowed);
/// `grad_G` is the gradient of a convex ℓ_G-smooth G and may be empty
/// (G = 0). `value_G` is only needed by gap evaluation.
template <typename Scalar>
struct CompositeVi {
  VectorField<Scalar> field;
  VectorField<Scalar> grad_G;
  std::function<Scalar(const Vector<Scalar>&)> value_G;
  ProductSet<Scalar> feasible_set;
  Scalar lF = Scalar(1);
  Scalar lG = Scalar(0);
  Scalar alpha = Scalar(0);

  Index dimension() const { return feasible_set.dimension(); }

  void validate() const {
    if (!field) throw std::invalid_argument("CompositeVi: missing field F");
    if (!(lF > Scalar(0))) throw std::invalid_argument("CompositeVi: lF must be > 0");
    if (!(lG >= Scalar(0))) throw std::invalid_argument("CompositeVi: lG must be >= 0");
    if (!(alpha >= Scalar(0))) throw std::invalid_argument("CompositeVi: alpha must be >= 0");
    if (alpha > lF) throw std::invalid_argument("CompositeVi: alpha cannot exceed lF");
  }

  Vector<Scalar> eval_grad_G(const Vector<Scalar>& z) const {
    if (!grad_G) return Vector<Scalar>::Zero(z.size());
    return grad_G(z);
  }

  Scalar eval_G(const Vector<Scalar>& z) const {
    if (value_G) return value_G(z);
    if (grad_G) throw std::logic_error("CompositeVi: value_G required when grad_G is set");
    return Scalar(0);
  }
};

struct NonFiniteError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename Scalar>
struct AmpSchedule {
  Scalar alpha_k;
  Scalar gamma_k;
};

/// α_k = 2/(k+1), γ_k = k/(4ℓ_G + 3kℓ_F).
template <typename Scalar>
AmpSchedule<Scalar> monotone_schedule(long k, Scalar lF, Scalar lG) {
  if (k < 1) throw std::invalid_argument("monotone_schedule: k must be >= 1");
  if (lF < Scalar(0) || lG < Scalar(0)) throw std::invalid_argument("monotone_schedule: negative Lipschitz constant");
  if (lF == Scalar(0) && lG == Scalar(0)) throw std::invalid_argument("monotone_schedule: degenerate VI (lF = lG = 0)");
  const Scalar kk = Scalar(k);
  return {Scalar(2) / (kk + Scalar(1)), kk / (Scalar(4) * lG + Scalar(3) * kk * lF)};
}

/// Constant schedule α_k = ¼ min{α/ℓ_F, √(α/ℓ_G)}, γ_k = α_k/α, with √(α/0) read as +∞.
template <typename Scalar>
AmpSchedule<Scalar> strongly_monotone_schedule(Scalar lF, Scalar lG, Scalar alpha) {
  using std::sqrt;
  if (!(alpha > Scalar(0))) throw std::invalid_argument("strongly_monotone_schedule: alpha must be > 0 (use the monotone schedule)");
  if (lF < alpha) throw std::invalid_argument("strongly_monotone_schedule: lF must be >= alpha");
  Scalar ratio = alpha / lF;
  if (lG > Scalar(0)) ratio = std::min(ratio, Scalar(sqrt(alpha / lG)));
  const Scalar a = ratio / Scalar(4);
  return {a, a / alpha};
}

template <typename Scalar>
AmpSchedule<Scalar> schedule_for(const CompositeVi<Scalar>& vi, long k) {
  if (vi.alpha > Scalar(0)) return strongly_monotone_schedule(vi.lF, vi.lG, vi.alpha);
  return monotone_schedule(k, vi.lF, vi.lG);
}

/// Inner-loop iterates (z_k, w_k, z_k^ag) and the schedule values of the last step.
template <typename Scalar>
struct AmpState {
  Vector<Scalar> z;
  Vector<Scalar> w;
  Vector<Scalar> z_ag;
  long k = 1;
  Scalar alpha_k = Scalar(1);
  Scalar gamma_k = Scalar(0);

  static AmpState start_at(const Vector<Scalar>& z1) { return AmpState{z1, z1, z1, 1, Scalar(1), Scalar(0)}; }
};

namespace detail {
template <typename Scalar>
void require_finite(const Vector<Scalar>& v, const char* what, long k) {
  if (!v.allFinite()) throw NonFiniteError(std::string("non-finite ") + what + " at AMP step " + std::to_string(k));
}
}  // namespace detail

/// One accelerated mirror-prox step with Euclidean prox:
///
///   z^md    = (1 − α_k) z^ag + α_k w
///   z_{k+1} = P_Z(w − γ_k (F(w) + ∇G(z^md)))
///   w_{k+1} = P_Z(w − γ_k (F(z_{k+1}) + ∇G(z^md)))
///   z^ag    = (1 − α_k) z^ag + α_k z_{k+1}
///
/// Two evaluations of F and one of ∇G. Throws NonFiniteError on a
/// non-finite oracle output.
template <typename Scalar>
AmpState<Scalar> amp_step(const CompositeVi<Scalar>& vi, const AmpState<Scalar>& state,
                          const AmpSchedule<Scalar>& sched) {
  const Index n = vi.dimension();
  if (state.z.size() != n || state.w.size() != n || state.z_ag.size() != n)
    throw std::invalid_argument("amp_step: state dimension does not match the VI");
  const Scalar a = sched.alpha_k, g = sched.gamma_k;
  const Vector<Scalar> z_md = (Scalar(1) - a) * state.z_ag + a * state.w;
  const Vector<Scalar> grad_md = vi.eval_grad_G(z_md);
  detail::require_finite(grad_md, "gradient of G", state.k);
  const Vector<Scalar> f_w = vi.field(state.w);
  detail::require_finite(f_w, "field value", state.k);

  AmpState<Scalar> next;
  next.z = vi.feasible_set.project(state.w - g * (f_w + grad_md));
  const Vector<Scalar> f_z = vi.field(next.z);
  detail::require_finite(f_z, "field value", state.k);
  next.w = vi.feasible_set.project(state.w - g * (f_z + grad_md));
  next.z_ag = (Scalar(1) - a) * state.z_ag + a * next.z;
  next.k = state.k + 1;
  next.alpha_k = a;
  next.gamma_k = g;
  return next;
}

template <typename Scalar>
AmpState<Scalar> amp_step(const CompositeVi<Scalar>& vi, const AmpState<Scalar>& state) {
  return amp_step(vi, state, schedule_for(vi, state.k));
}

/// ‖z − P_Z(z − η(F(z) + ∇G(z)))‖/η with η = 1/(ℓ_F + ℓ_G).
template <typename Scalar>
Scalar natural_residual(const CompositeVi<Scalar>& vi, const std::type_identity_t<Vector<Scalar>>& z) {
  const Scalar eta = Scalar(1) / (vi.lF + vi.lG);
  const Vector<Scalar> op = vi.field(z) + vi.eval_grad_G(z);
  if (!op.allFinite()) return std::numeric_limits<Scalar>::infinity();
  return (z - vi.feasible_set.project(z - eta * op)).norm() / eta;
}

struct StopRule {
  long max_iter = 2000;
  double residual_tol = 1e-6;
  long check_every = 10;
};

enum class AmpStatus { converged, budget_exhausted, non_finite };

inline const char* to_string(AmpStatus s) {
  switch (s) {
    case AmpStatus::converged: return "converged";
    case AmpStatus::budget_exhausted: return "budget_exhausted";
    case AmpStatus::non_finite: return "non_finite";
  }
  return "?";
}

template <typename Scalar>
struct AmpResult {
  Vector<Scalar> point;  ///< aggregate iterate z^ag
  long iterations = 0;   ///< AMP steps taken
  long residual_checks = 0;
  Scalar residual = std::numeric_limits<Scalar>::infinity();
  AmpStatus status = AmpStatus::budget_exhausted;
  std::string message;

  /// Field evaluations: 2 per step plus one per residual check.
  long field_evals() const { return 2 * iterations + residual_checks; }
  long grad_G_evals() const { return iterations + residual_checks; }
};

/// Runs AMP from `start` (projected onto Z) until the natural residual at
/// z^ag is below `stop.residual_tol` or `stop.max_iter` steps have been
/// taken. The residual is checked every `stop.check_every` steps and after
/// the last step. Uses the constant schedule when vi.alpha > 0 and the
/// monotone schedule otherwise. `observer` sees every post-step state.
template <typename Scalar>
AmpResult<Scalar> amp_solve(const CompositeVi<Scalar>& vi, const std::type_identity_t<Vector<Scalar>>& start,
                            const StopRule& stop,
                            const std::type_identity_t<std::function<void(const AmpState<Scalar>&)>>& observer = {}) {
  vi.validate();
  if (start.size() != vi.dimension()) throw std::invalid_argument("amp_solve: start dimension mismatch");
  const long every = std::max<long>(1, stop.check_every);
  AmpState<Scalar> state = AmpState<Scalar>::start_at(vi.feasible_set.project(start));
  AmpResult<Scalar> result;
  result.point = state.z_ag;
  while (result.iterations < stop.max_iter) {
    try {
      state = amp_step(vi, state);
    } catch (const NonFiniteError& e) {
      result.status = AmpStatus::non_finite;
      result.message = e.what();
      return result;
    }
    ++result.iterations;
    if (observer) observer(state);
    result.point = state.z_ag;
    if (result.iterations % every == 0 || result.iterations == stop.max_iter) {
      ++result.residual_checks;
      result.residual = natural_residual(vi, state.z_ag);
      if (!std::isfinite(double(result.residual))) {
        result.status = AmpStatus::non_finite;
        result.message = "non-finite residual at AMP step " + std::to_string(state.k);
        return result;
      }
      if (result.residual <= Scalar(stop.residual_tol)) {
        result.status = AmpStatus::converged;
        return result;
      }
    }
  }
  result.status = AmpStatus::budget_exhausted;
  return result;
}

/// Smallest step count after which the monotone-schedule gap bound
/// 16ℓ_G D²/(k(k−1)) + 12ℓ_F D²/(k−1) is at most δ (each term held to δ/2).
inline long monotone_iteration_bound(double lF, double lG, double diameter, double delta) {
  const double d2 = diameter * diameter;
  const double m = std::max(24.0 * lF * d2 / delta, std::sqrt(32.0 * lG * d2 / delta));
  if (!std::isfinite(m) || m > 1e15) return std::numeric_limits<long>::max();
  return static_cast<long>(std::ceil(m)) + 1;
}

/// Smallest k with (1 − α₀)^{k−1}(ℓ_F + (ℓ_G + α)/2)D² ≤ δ for the constant schedule.
inline long strongly_monotone_iteration_bound(double lF, double lG, double alpha, double diameter, double delta) {
  const double a0 = strongly_monotone_schedule(lF, lG, alpha).alpha_k;
  const double c = (lF + 0.5 * (lG + alpha)) * diameter * diameter;
  if (c <= delta) return 2;
  const double m = std::log(c / delta) / -std::log1p(-a0);
  if (!std::isfinite(m) || m > 1e15) return std::numeric_limits<long>::max();
  return static_cast<long>(std::ceil(m)) + 1;
}

}  // namespace ngnep
