#pragma once

#include "ngnep/block_vector.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ngnep {

template <typename Scalar>
struct Box {
  Vector<Scalar> lower;
  Vector<Scalar> upper;
};

template <typename Scalar>
struct Ball {
  Vector<Scalar> center;
  Scalar radius;
};

/// {x ≥ 0 : Σ x_i = scale}
template <typename Scalar>
struct Simplex {
  Index dimension;
  Scalar scale;
};

/// {x ≥ 0}, optionally intersected with {x ≤ cap}.
template <typename Scalar>
struct NonnegativeOrthant {
  Index dimension;
  std::optional<Scalar> cap;
};

/// A private strategy set with a closed-form Euclidean projection.
template <typename Scalar>
class SimpleSet {
 public:
  using Variant = std::variant<Box<Scalar>, Ball<Scalar>, Simplex<Scalar>, NonnegativeOrthant<Scalar>>;

  static SimpleSet box(Vector<Scalar> lower, Vector<Scalar> upper) {
    if (lower.size() != upper.size() || lower.size() < 1)
      throw std::invalid_argument("Box: bounds must have equal positive length");
    for (Index i = 0; i < lower.size(); ++i) {
      if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]))
        throw std::invalid_argument("Box: bounds must be finite");
      if (lower[i] > upper[i]) throw std::invalid_argument("Box: lower bound exceeds upper bound");
    }
    return SimpleSet(Box<Scalar>{std::move(lower), std::move(upper)});
  }

  static SimpleSet box(Index dim, Scalar lower, Scalar upper) {
    return box(Vector<Scalar>::Constant(dim, lower), Vector<Scalar>::Constant(dim, upper));
  }

  static SimpleSet ball(Vector<Scalar> center, Scalar radius) {
    if (center.size() < 1) throw std::invalid_argument("Ball: dimension must be positive");
    if (!(radius > Scalar(0)) || !std::isfinite(radius)) throw std::invalid_argument("Ball: radius must be > 0");
    return SimpleSet(Ball<Scalar>{std::move(center), radius});
  }

  static SimpleSet simplex(Index dim, Scalar scale) {
    if (dim < 1) throw std::invalid_argument("Simplex: dimension must be positive");
    if (!(scale > Scalar(0)) || !std::isfinite(scale)) throw std::invalid_argument("Simplex: scale must be > 0");
    return SimpleSet(Simplex<Scalar>{dim, scale});
  }

  static SimpleSet orthant(Index dim, std::optional<Scalar> cap = std::nullopt) {
    if (dim < 1) throw std::invalid_argument("NonnegativeOrthant: dimension must be positive");
    if (cap && !(*cap > Scalar(0))) throw std::invalid_argument("NonnegativeOrthant: cap must be > 0");
    return SimpleSet(NonnegativeOrthant<Scalar>{dim, cap});
  }

  const Variant& variant() const { return set_; }

  Index dimension() const {
    return std::visit(
        [](const auto& s) -> Index {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Box<Scalar>>) return s.lower.size();
          else if constexpr (std::is_same_v<T, Ball<Scalar>>) return s.center.size();
          else return s.dimension;
        },
        set_);
  }

  bool is_compact() const {
    if (const auto* o = std::get_if<NonnegativeOrthant<Scalar>>(&set_)) return o->cap.has_value() && std::isfinite(*o->cap);
    return true;
  }

  /// Upper bound on sup ‖x − y‖ over the set; +∞ for an uncapped orthant.
  Scalar diameter() const {
    return std::visit(
        [](const auto& s) -> Scalar {
          using T = std::decay_t<decltype(s)>;
          using std::sqrt;
          if constexpr (std::is_same_v<T, Box<Scalar>>) {
            return (s.upper - s.lower).norm();
          } else if constexpr (std::is_same_v<T, Ball<Scalar>>) {
            return Scalar(2) * s.radius;
          } else if constexpr (std::is_same_v<T, Simplex<Scalar>>) {
            return s.dimension == 1 ? Scalar(0) : s.scale * sqrt(Scalar(2));
          } else {
            if (!s.cap) return std::numeric_limits<Scalar>::infinity();
            return *s.cap * sqrt(Scalar(s.dimension));
          }
        },
        set_);
  }

  /// Axis-aligned bounding box (lower, upper).
  std::pair<Vector<Scalar>, Vector<Scalar>> bounding_box() const {
    return std::visit(
        [](const auto& s) -> std::pair<Vector<Scalar>, Vector<Scalar>> {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Box<Scalar>>) {
            return {s.lower, s.upper};
          } else if constexpr (std::is_same_v<T, Ball<Scalar>>) {
            return {s.center.array() - s.radius, s.center.array() + s.radius};
          } else if constexpr (std::is_same_v<T, Simplex<Scalar>>) {
            return {Vector<Scalar>::Zero(s.dimension), Vector<Scalar>::Constant(s.dimension, s.scale)};
          } else {
            const Scalar hi = s.cap ? *s.cap : std::numeric_limits<Scalar>::infinity();
            return {Vector<Scalar>::Zero(s.dimension), Vector<Scalar>::Constant(s.dimension, hi)};
          }
        },
        set_);
  }

  bool contains(const Vector<Scalar>& x, Scalar tol = Scalar(1e-12)) const {
    if (x.size() != dimension()) return false;
    return std::visit(
        [&](const auto& s) -> bool {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Box<Scalar>>) {
            return ((x - s.lower).array() >= -tol).all() && ((s.upper - x).array() >= -tol).all();
          } else if constexpr (std::is_same_v<T, Ball<Scalar>>) {
            return (x - s.center).norm() <= s.radius + tol;
          } else if constexpr (std::is_same_v<T, Simplex<Scalar>>) {
            using std::abs;
            return (x.array() >= -tol).all() && abs(x.sum() - s.scale) <= tol * Scalar(x.size());
          } else {
            if ((x.array() < -tol).any()) return false;
            return !s.cap || (x.array() <= *s.cap + tol).all();
          }
        },
        set_);
  }

  Vector<Scalar> project(const Vector<Scalar>& point) const {
    if (point.size() != dimension())
      throw std::invalid_argument("project: point dimension " + std::to_string(point.size()) +
                                  " does not match set dimension " + std::to_string(dimension()));
    return std::visit([&](const auto& s) { return project_onto(s, point); }, set_);
  }

 private:
  explicit SimpleSet(Variant v) : set_(std::move(v)) {}

  static Vector<Scalar> project_onto(const Box<Scalar>& s, const Vector<Scalar>& p) {
    return p.cwiseMax(s.lower).cwiseMin(s.upper);
  }

  static Vector<Scalar> project_onto(const Ball<Scalar>& s, const Vector<Scalar>& p) {
    const Vector<Scalar> d = p - s.center;
    const Scalar r = d.norm();
    if (r <= s.radius) return p;
    return s.center + (s.radius / r) * d;
  }

  // Sort-and-threshold: find τ with Σ max(p_i − τ, 0) = scale.
  static Vector<Scalar> project_onto(const Simplex<Scalar>& s, const Vector<Scalar>& p) {
    std::vector<Scalar> sorted(p.data(), p.data() + p.size());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    Scalar cumsum(0);
    Scalar tau(0);
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      cumsum += sorted[i];
      const Scalar t = (cumsum - s.scale) / Scalar(i + 1);
      if (sorted[i] - t > Scalar(0)) tau = t;
    }
    Vector<Scalar> out = (p.array() - tau).cwiseMax(Scalar(0));
    // Rounding can leave Σ out a few ulps away from scale; push the residue onto the largest entry.
    Index imax;
    out.maxCoeff(&imax);
    out[imax] = std::max(Scalar(0), out[imax] + (s.scale - out.sum()));
    return out;
  }

  static Vector<Scalar> project_onto(const NonnegativeOrthant<Scalar>& s, const Vector<Scalar>& p) {
    Vector<Scalar> out = p.cwiseMax(Scalar(0));
    if (s.cap) out = out.cwiseMin(*s.cap);
    return out;
  }

  Variant set_;
};

/// Cartesian product X̂ = Π X̂_ν laid out along a BlockLayout.
template <typename Scalar>
class ProductSet {
 public:
  ProductSet() = default;
  explicit ProductSet(std::vector<SimpleSet<Scalar>> factors) : factors_(std::move(factors)) {
    std::vector<Index> widths;
    widths.reserve(factors_.size());
    for (const auto& f : factors_) widths.push_back(f.dimension());
    layout_ = BlockLayout::from_widths(widths);
  }

  const BlockLayout& layout() const { return layout_; }
  const std::vector<SimpleSet<Scalar>>& factors() const { return factors_; }
  Index dimension() const { return layout_.size(); }

  Vector<Scalar> project(const Vector<Scalar>& x) const {
    if (x.size() != dimension()) throw std::invalid_argument("ProductSet::project: dimension mismatch");
    Vector<Scalar> out(x.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const Index s = layout_.start(i), w = layout_.width(i);
      out.segment(s, w) = factors_[i].project(x.segment(s, w));
    }
    return out;
  }

  bool contains(const Vector<Scalar>& x, Scalar tol = Scalar(1e-12)) const {
    if (x.size() != dimension()) return false;
    for (std::size_t i = 0; i < factors_.size(); ++i)
      if (!factors_[i].contains(x.segment(layout_.start(i), layout_.width(i)), tol)) return false;
    return true;
  }

  Scalar diameter() const {
    Scalar sq(0);
    for (const auto& f : factors_) {
      const Scalar d = f.diameter();
      sq += d * d;
    }
    using std::sqrt;
    return sqrt(sq);
  }

  std::pair<Vector<Scalar>, Vector<Scalar>> bounding_box() const {
    Vector<Scalar> lo(dimension()), hi(dimension());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      auto [l, h] = factors_[i].bounding_box();
      lo.segment(layout_.start(i), layout_.width(i)) = l;
      hi.segment(layout_.start(i), layout_.width(i)) = h;
    }
    return {lo, hi};
  }

 private:
  std::vector<SimpleSet<Scalar>> factors_;
  BlockLayout layout_;
};

}  // namespace ngnep
