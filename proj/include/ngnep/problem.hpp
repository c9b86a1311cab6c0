#pragma once

#include "ngnep/block_vector.hpp"
#include "ngnep/simple_set.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace ngnep {

/// Maps the full joint profile x to player ν's partial gradient v_ν(x).
template <typename Scalar>
using GradientOracle = std::function<Vector<Scalar>(const Vector<Scalar>&)>;

template <typename Scalar>
struct Player {
  SimpleSet<Scalar> set;
  GradientOracle<Scalar> gradient;
};

/// Shared linear constraints A x^{N_s} ≤ b, E x^{N_s} = d over a subset of players.
///
/// Columns of A and E follow the concatenation of the member blocks in
/// ascending player order.
template <typename Scalar>
struct ConstraintGroup {
  std::vector<std::size_t> members;
  Matrix<Scalar> A;
  Vector<Scalar> b;
  Matrix<Scalar> E;
  Vector<Scalar> d;

  Index num_inequalities() const { return A.rows(); }
  Index num_equalities() const { return E.rows(); }
};

struct GroupResidual {
  double ineq_violation = 0.0;
  double eq_violation = 0.0;
};

/// Nonlinear generalized Nash equilibrium problem with shared linear constraints.
///
/// Immutable once constructed. Construction validates group structure,
/// builds the membership index ν ↦ {s : ν ∈ N_s}, and caches the spectral
/// norms of every A_s and E_s.
template <typename Scalar>
class NgnepProblem {
 public:
  NgnepProblem(std::vector<Player<Scalar>> players, std::vector<ConstraintGroup<Scalar>> groups, Scalar ltheta,
               Scalar alpha);

  std::size_t num_players() const { return players_.size(); }
  std::size_t num_groups() const { return groups_.size(); }
  Index dimension() const { return base_set_.dimension(); }
  const BlockLayout& layout() const { return base_set_.layout(); }
  const ProductSet<Scalar>& base_set() const { return base_set_; }
  const Player<Scalar>& player(std::size_t nu) const { return players_.at(nu); }
  const std::vector<Player<Scalar>>& players() const { return players_; }
  const ConstraintGroup<Scalar>& group(std::size_t s) const { return groups_.at(s); }
  const std::vector<ConstraintGroup<Scalar>>& groups() const { return groups_; }
  const std::vector<std::size_t>& memberships(std::size_t nu) const { return membership_.at(nu); }

  Scalar ltheta() const { return ltheta_; }
  Scalar alpha() const { return alpha_; }
  /// ℓ_F = √N · ℓ_θ, the Lipschitz constant of the joint field v.
  Scalar joint_lipschitz() const {
    using std::sqrt;
    return sqrt(Scalar(num_players())) * ltheta_;
  }

  Scalar norm_A(std::size_t s) const { return norm_A_.at(s); }
  Scalar norm_E(std::size_t s) const { return norm_E_.at(s); }

  /// x^{N_s}: concatenation of the member blocks of group s.
  Vector<Scalar> gather(std::size_t s, const Vector<Scalar>& x) const {
    const auto& g = groups_[s];
    Vector<Scalar> out(group_width_[s]);
    Index pos = 0;
    for (std::size_t nu : g.members) {
      const Index w = layout().width(nu);
      out.segment(pos, w) = x.segment(layout().start(nu), w);
      pos += w;
    }
    return out;
  }

  /// out^{N_s} += y, the transpose of gather.
  void scatter_add(std::size_t s, const Vector<Scalar>& y, Vector<Scalar>& out) const {
    const auto& g = groups_[s];
    Index pos = 0;
    for (std::size_t nu : g.members) {
      const Index w = layout().width(nu);
      out.segment(layout().start(nu), w) += y.segment(pos, w);
      pos += w;
    }
  }

  /// v(x) as a flat vector. Throws if an oracle returns the wrong width.
  Vector<Scalar> joint_gradient(const Vector<Scalar>& x) const {
    if (x.size() != dimension()) throw std::invalid_argument("joint_gradient: profile dimension mismatch");
    Vector<Scalar> out(x.size());
    for (std::size_t nu = 0; nu < players_.size(); ++nu) {
      Vector<Scalar> g = players_[nu].gradient(x);
      if (g.size() != layout().width(nu))
        throw std::runtime_error("gradient oracle for player " + std::to_string(nu) + " returned width " +
                                 std::to_string(g.size()) + ", expected " + std::to_string(layout().width(nu)));
      out.segment(layout().start(nu), layout().width(nu)) = g;
    }
    return out;
  }

 private:
  std::vector<Player<Scalar>> players_;
  std::vector<ConstraintGroup<Scalar>> groups_;
  ProductSet<Scalar> base_set_;
  std::vector<std::vector<std::size_t>> membership_;
  std::vector<Index> group_width_;
  std::vector<Scalar> norm_A_;
  std::vector<Scalar> norm_E_;
  Scalar ltheta_;
  Scalar alpha_;
};

/// Spectral norm ‖M‖₂ by power iteration on MᵀM.
///
/// Starts from the normalized all-ones vector; if that start lies in the
/// null space of M it falls back to the standard basis vectors in order.
/// Stops when the Rayleigh quotient changes by less than `rel_tol`
/// relatively, or after `max_iter` iterations. Returns 0 for a zero matrix.
template <typename Scalar>
Scalar spectral_norm(const Matrix<Scalar>& M, Scalar rel_tol = Scalar(1e-8), int max_iter = 10000) {
  using std::sqrt;
  if (M.size() == 0 || M.cwiseAbs().maxCoeff() == Scalar(0)) return Scalar(0);
  const Index n = M.cols();
  auto run = [&](Vector<Scalar> u) -> Scalar {
    u.normalize();
    Scalar estimate(0);
    for (int it = 0; it < max_iter; ++it) {
      Vector<Scalar> w = M.transpose() * (M * u);
      const Scalar rq = u.dot(w);
      const Scalar wn = w.norm();
      if (wn == Scalar(0)) return Scalar(0);
      u = w / wn;
      if (it > 0 && std::abs(rq - estimate) <= rel_tol * std::abs(rq)) return rq;
      estimate = rq;
    }
    return estimate;
  };
  Scalar best = run(Vector<Scalar>::Ones(n));
  for (Index j = 0; best == Scalar(0) && j < n; ++j) best = run(Vector<Scalar>::Unit(n, j));
  return sqrt(std::max(best, Scalar(0)));
}

template <typename Scalar>
NgnepProblem<Scalar>::NgnepProblem(std::vector<Player<Scalar>> players, std::vector<ConstraintGroup<Scalar>> groups,
                                   Scalar ltheta, Scalar alpha)
    : players_(std::move(players)), groups_(std::move(groups)), ltheta_(ltheta), alpha_(alpha) {
  if (players_.empty()) throw std::invalid_argument("NgnepProblem: at least one player required");
  if (!(ltheta_ > Scalar(0)) || !std::isfinite(ltheta_))
    throw std::invalid_argument("NgnepProblem: Lipschitz constant must be positive and finite");
  if (!(alpha_ >= Scalar(0))) throw std::invalid_argument("NgnepProblem: alpha must be nonnegative");
  if (alpha_ > joint_lipschitz())
    throw std::invalid_argument("NgnepProblem: alpha cannot exceed the joint Lipschitz constant sqrt(N)*ltheta");
  std::vector<SimpleSet<Scalar>> sets;
  sets.reserve(players_.size());
  for (std::size_t nu = 0; nu < players_.size(); ++nu) {
    if (!players_[nu].set.is_compact())
      throw std::invalid_argument("NgnepProblem: strategy set of player " + std::to_string(nu) + " is not compact");
    if (!players_[nu].gradient) throw std::invalid_argument("NgnepProblem: missing gradient oracle");
    sets.push_back(players_[nu].set);
  }
  base_set_ = ProductSet<Scalar>(std::move(sets));

  membership_.assign(players_.size(), {});
  for (std::size_t s = 0; s < groups_.size(); ++s) {
    auto& g = groups_[s];
    const std::string tag = "constraint group " + std::to_string(s) + ": ";
    if (g.members.empty()) throw std::invalid_argument(tag + "members must be nonempty");
    for (std::size_t i = 0; i < g.members.size(); ++i) {
      if (g.members[i] >= players_.size()) throw std::invalid_argument(tag + "member index out of range");
      if (i > 0 && g.members[i] <= g.members[i - 1])
        throw std::invalid_argument(tag + "members must be sorted and duplicate-free");
    }
    Index width = 0;
    for (std::size_t nu : g.members) width += layout().width(nu);
    if (g.A.rows() == 0) g.A.resize(0, width);
    if (g.E.rows() == 0) g.E.resize(0, width);
    if (g.A.cols() != width || g.E.cols() != width)
      throw std::invalid_argument(tag + "matrix column count must equal the member block widths (" +
                                  std::to_string(width) + ")");
    if (g.b.size() != g.A.rows()) throw std::invalid_argument(tag + "b length must equal rows of A");
    if (g.d.size() != g.E.rows()) throw std::invalid_argument(tag + "d length must equal rows of E");
    if (g.A.rows() == 0 && g.E.rows() == 0) throw std::invalid_argument(tag + "group has no constraints");
    for (std::size_t nu : g.members) membership_[nu].push_back(s);
    group_width_.push_back(width);
    norm_A_.push_back(spectral_norm<Scalar>(g.A));
    norm_E_.push_back(spectral_norm<Scalar>(g.E));
  }
}

template <typename Scalar>
BlockVector<Scalar> eval_joint_gradient(const NgnepProblem<Scalar>& problem, const BlockVector<Scalar>& x) {
  if (x.layout() != problem.layout()) throw std::invalid_argument("eval_joint_gradient: block structure mismatch");
  return BlockVector<Scalar>(problem.layout(), problem.joint_gradient(x.data()));
}

/// Per-group ‖max{0, A_s x − b_s}‖ and ‖E_s x − d_s‖.
template <typename Scalar>
std::vector<GroupResidual> group_residuals(const NgnepProblem<Scalar>& problem, const std::type_identity_t<Vector<Scalar>>& x) {
  if (x.size() != problem.dimension()) throw std::invalid_argument("group_residuals: dimension mismatch");
  std::vector<GroupResidual> out;
  out.reserve(problem.num_groups());
  for (std::size_t s = 0; s < problem.num_groups(); ++s) {
    const auto& g = problem.group(s);
    const Vector<Scalar> xs = problem.gather(s, x);
    GroupResidual r;
    if (g.A.rows() > 0) r.ineq_violation = double((g.A * xs - g.b).cwiseMax(Scalar(0)).norm());
    if (g.E.rows() > 0) r.eq_violation = double((g.E * xs - g.d).norm());
    out.push_back(r);
  }
  return out;
}

template <typename Scalar>
std::vector<GroupResidual> group_residuals(const NgnepProblem<Scalar>& problem, const BlockVector<Scalar>& x) {
  return group_residuals(problem, x.data());
}

/// max over groups of max(ineq, eq) violation.
inline double max_violation(const std::vector<GroupResidual>& residuals) {
  double m = 0.0;
  for (const auto& r : residuals) m = std::max({m, r.ineq_violation, r.eq_violation});
  return m;
}

/// Uniform-in-bounding-box point pushed onto the set.
template <typename Scalar, typename Rng>
Vector<Scalar> sample_point(const SimpleSet<Scalar>& set, Rng& rng) {
  auto [lo, hi] = set.bounding_box();
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vector<Scalar> p(lo.size());
  for (Index i = 0; i < p.size(); ++i) p[i] = lo[i] + Scalar(u(rng)) * (hi[i] - lo[i]);
  if (std::holds_alternative<Simplex<Scalar>>(set.variant())) {
    // Exponential spacings give a uniform draw on the simplex.
    std::exponential_distribution<double> e(1.0);
    for (Index i = 0; i < p.size(); ++i) p[i] = Scalar(e(rng));
    p *= std::get<Simplex<Scalar>>(set.variant()).scale / p.sum();
  }
  return set.project(p);
}

template <typename Scalar, typename Rng>
Vector<Scalar> sample_point(const ProductSet<Scalar>& set, Rng& rng) {
  Vector<Scalar> x(set.dimension());
  for (std::size_t i = 0; i < set.factors().size(); ++i)
    x.segment(set.layout().start(i), set.layout().width(i)) = sample_point(set.factors()[i], rng);
  return x;
}

struct ConstantEstimate {
  double ltheta = 0.0;     ///< max over sampled pairs and players of ‖v_ν(x) − v_ν(x')‖/‖x − x'‖
  double alpha = 0.0;      ///< min over sampled pairs of (x − x')ᵀ(v(x) − v(x'))/‖x − x'‖²
  double min_monotone_product = 0.0;  ///< min over pairs of (x − x')ᵀ(v(x) − v(x'))
  std::vector<std::string> warnings;
};

/// Empirical estimate of ℓ_θ and α from random pairs in X̂, with warnings
/// when the declared constants are inconsistent with the samples.
template <typename Scalar>
ConstantEstimate estimate_constants(const NgnepProblem<Scalar>& problem, int pairs, std::uint64_t seed,
                                    double tolerance = 1e-8) {
  std::mt19937_64 rng(seed);
  ConstantEstimate est;
  est.alpha = std::numeric_limits<double>::infinity();
  est.min_monotone_product = std::numeric_limits<double>::infinity();
  const auto& layout = problem.layout();
  for (int i = 0; i < pairs; ++i) {
    const Vector<Scalar> x = sample_point(problem.base_set(), rng);
    const Vector<Scalar> y = sample_point(problem.base_set(), rng);
    const Scalar dist2 = (x - y).squaredNorm();
    if (dist2 == Scalar(0)) continue;
    const Vector<Scalar> gx = problem.joint_gradient(x);
    const Vector<Scalar> gy = problem.joint_gradient(y);
    const double prod = double((x - y).dot(gx - gy));
    est.min_monotone_product = std::min(est.min_monotone_product, prod);
    est.alpha = std::min(est.alpha, prod / double(dist2));
    for (std::size_t nu = 0; nu < problem.num_players(); ++nu) {
      const Scalar diff = (gx.segment(layout.start(nu), layout.width(nu)) - gy.segment(layout.start(nu), layout.width(nu))).norm();
      est.ltheta = std::max(est.ltheta, double(diff) / std::sqrt(double(dist2)));
    }
  }
  if (!std::isfinite(est.alpha)) est.alpha = 0.0;
  if (est.min_monotone_product < -tolerance)
    est.warnings.push_back("sampled field is not monotone (min pair product " + std::to_string(est.min_monotone_product) + ")");
  if (est.ltheta > double(problem.ltheta()) * (1.0 + 1e-9) + tolerance)
    est.warnings.push_back("declared Lipschitz constant " + std::to_string(double(problem.ltheta())) +
                           " is below the sampled value " + std::to_string(est.ltheta));
  if (double(problem.alpha()) > est.alpha + tolerance)
    est.warnings.push_back("declared strong monotonicity " + std::to_string(double(problem.alpha())) +
                           " exceeds the sampled value " + std::to_string(est.alpha));
  return est;
}

}  // namespace ngnep
