#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ngnep/library.hpp"
#include "ngnep/problem.hpp"

#include <random>

using namespace ngnep;
using Vec = Vector<double>;

namespace {

Vec vec(std::initializer_list<double> v) {
  Vec out(Index(v.size()));
  Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

std::vector<SimpleSet<double>> catalog() {
  return {SimpleSet<double>::box(vec({-1.0, 0.0, 2.0}), vec({1.0, 0.5, 3.0})),
          SimpleSet<double>::ball(vec({0.5, -0.5, 1.0}), 1.5),
          SimpleSet<double>::simplex(3, 2.0),
          SimpleSet<double>::orthant(3, 1.25)};
}

Vec random_point(std::mt19937_64& rng, Index n, double scale) {
  std::normal_distribution<double> g(0.0, scale);
  Vec p(n);
  for (Index i = 0; i < n; ++i) p[i] = g(rng);
  return p;
}

// Two scalar players with identity-like oracles, used for structural tests.
NgnepProblem<double> two_scalar_players(std::vector<ConstraintGroup<double>> groups) {
  std::vector<Player<double>> players;
  for (int nu = 0; nu < 2; ++nu)
    players.push_back({SimpleSet<double>::box(1, 0.0, 1.0), [nu](const Vec& x) { return Vec::Constant(1, x[nu]); }});
  return NgnepProblem<double>(std::move(players), std::move(groups), 1.0, 0.0);
}

}  // namespace

TEST_CASE("block layout offsets and block round trip") {
  const auto layout = BlockLayout::from_widths({2, 1, 3});
  CHECK(layout.num_blocks() == 3);
  CHECK(layout.size() == 6);
  CHECK(layout.offsets() == std::vector<Index>{0, 2, 3, 6});
  CHECK(layout.width(2) == 3);
  CHECK_THROWS_AS(BlockLayout::from_widths({2, 0}), std::invalid_argument);

  std::mt19937_64 rng(7);
  const BlockVector<double> x(layout, random_point(rng, 6, 1.0));
  const auto blocks = x.blocks();
  const auto back = BlockVector<double>::assemble(blocks);
  CHECK(back.layout() == layout);
  CHECK(back.data() == x.data());
  CHECK_THROWS_AS(BlockVector<double>(layout, Vec::Zero(5)), std::invalid_argument);
}

TEST_CASE("projection examples") {
  const auto box = SimpleSet<double>::box(2, 0.0, 1.0);
  CHECK(box.project(vec({2.0, -1.0})) == vec({1.0, 0.0}));

  const auto s3 = SimpleSet<double>::simplex(3, 1.0);
  const Vec third = Vec::Constant(3, 1.0 / 3.0);
  CHECK((s3.project(third) - third).norm() < 1e-15);

  CHECK_THROWS_AS(box.project(vec({1.0, 2.0, 3.0})), std::invalid_argument);
}

TEST_CASE("simplex projection agrees with a grid search") {
  // Brute-force nearest point on {y ≥ 0, y1 + y2 = 1} for p = (0.8, 0.6).
  const Vec p = vec({0.8, 0.6});
  double best = 1e300;
  Vec arg(2);
  for (int i = 0; i <= 100000; ++i) {
    const double t = i / 100000.0;
    const double d = std::hypot(t - p[0], 1.0 - t - p[1]);
    if (d < best) {
      best = d;
      arg = vec({t, 1.0 - t});
    }
  }
  const Vec y = SimpleSet<double>::simplex(2, 1.0).project(p);
  CHECK((y - arg).norm() < 1e-5);
  CHECK((y - vec({0.6, 0.4})).norm() < 1e-12);
}

TEST_CASE("projection is idempotent, feasible, nonexpansive and optimal") {
  std::mt19937_64 rng(11);
  for (const auto& set : catalog()) {
    CAPTURE(set.dimension());
    CHECK(set.is_compact());
    CHECK(std::isfinite(set.diameter()));
    for (int i = 0; i < 1000; ++i) {
      const Vec p = random_point(rng, 3, 3.0);
      const Vec q = random_point(rng, 3, 3.0);
      const Vec pp = set.project(p), pq = set.project(q);
      REQUIRE(set.contains(pp));
      CHECK((set.project(pp) - pp).norm() <= 1e-12);
      CHECK((pp - pq).norm() <= (p - q).norm() + 1e-12);
      const Vec y = sample_point(set, rng);
      CHECK((pp - p).norm() <= (y - p).norm() + 1e-10);
    }
  }
}

TEST_CASE("sampled diameter never exceeds the reported bound") {
  std::mt19937_64 rng(3);
  for (const auto& set : catalog()) {
    double widest = 0.0;
    for (int i = 0; i < 2000; ++i) widest = std::max(widest, (sample_point(set, rng) - sample_point(set, rng)).norm());
    CHECK(widest <= set.diameter() + 1e-12);
  }
}

TEST_CASE("invalid sets are rejected") {
  CHECK_THROWS_AS(SimpleSet<double>::box(vec({0.0}), vec({-1.0})), std::invalid_argument);
  CHECK_THROWS_AS(SimpleSet<double>::box(vec({0.0}), vec({INFINITY})), std::invalid_argument);
  CHECK_THROWS_AS(SimpleSet<double>::ball(vec({0.0}), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(SimpleSet<double>::simplex(2, -1.0), std::invalid_argument);
  CHECK_FALSE(SimpleSet<double>::orthant(2).is_compact());

  std::vector<Player<double>> players{{SimpleSet<double>::orthant(1), [](const Vec& x) { return x; }}};
  CHECK_THROWS_AS(NgnepProblem<double>(players, {}, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("joint gradient examples") {
  // Cournot duopoly a = 1, b = 1, no production cost: v_ν = 2x^ν + x^{−ν} − 1.
  InstanceSpec spec;
  spec.family = Family::cournot;
  const auto cournot = build_instance(spec);
  const auto layout = cournot.layout();
  auto at = [&](Vec x) { return eval_joint_gradient(cournot, BlockVector<double>(layout, std::move(x))).data(); };
  CHECK((at(vec({0.0, 0.0})) - vec({-1.0, -1.0})).norm() < 1e-15);
  CHECK(at(vec({1.0 / 3.0, 1.0 / 3.0})).norm() < 1e-15);

  std::vector<Player<double>> single{{SimpleSet<double>::box(2, -5.0, 5.0), [](const Vec& x) { return x; }}};
  const NgnepProblem<double> quadratic(single, {}, 1.0, 1.0);
  CHECK(quadratic.joint_gradient(vec({3.0, -2.0})) == vec({3.0, -2.0}));
}

TEST_CASE("oracle width mismatch is a hard error") {
  std::vector<Player<double>> players{{SimpleSet<double>::box(2, 0.0, 1.0), [](const Vec&) { return Vec::Zero(3); }}};
  const NgnepProblem<double> p(players, {}, 1.0, 0.0);
  CHECK_THROWS_AS(p.joint_gradient(Vec::Zero(2)), std::runtime_error);
  CHECK_THROWS_AS(p.joint_gradient(Vec::Zero(4)), std::invalid_argument);
}

TEST_CASE("group structure validation and membership index") {
  ConstraintGroup<double> g;
  g.members = {1, 0};
  g.A = Matrix<double>::Ones(1, 2);
  g.b = Vec::Ones(1);
  CHECK_THROWS_AS(two_scalar_players({g}), std::invalid_argument);
  g.members = {0, 1};
  g.A = Matrix<double>::Ones(1, 3);
  CHECK_THROWS_AS(two_scalar_players({g}), std::invalid_argument);

  ConstraintGroup<double> a, b;
  a.members = {0, 1};
  a.A = Matrix<double>::Ones(1, 2);
  a.b = Vec::Ones(1);
  b.members = {1};
  b.E = Matrix<double>::Ones(1, 1);
  b.d = Vec::Zero(1);
  const auto p = two_scalar_players({a, b});
  CHECK(p.memberships(0) == std::vector<std::size_t>{0});
  CHECK(p.memberships(1) == std::vector<std::size_t>{0, 1});
}

TEST_CASE("group residual examples") {
  ConstraintGroup<double> ineq;
  ineq.members = {0, 1};
  ineq.A = Matrix<double>::Ones(1, 2);
  ineq.b = Vec::Ones(1);
  const auto p = two_scalar_players({ineq});
  CHECK(group_residuals(p, vec({0.2, 0.3}))[0].ineq_violation == 0.0);
  CHECK(group_residuals(p, vec({1.0, 1.0}))[0].ineq_violation == doctest::Approx(1.0));

  ConstraintGroup<double> eq;
  eq.members = {0, 1};
  eq.E.resize(1, 2);
  eq.E << 1.0, -1.0;
  eq.d = Vec::Zero(1);
  const auto q = two_scalar_players({eq});
  CHECK(group_residuals(q, vec({0.7, 0.2}))[0].eq_violation == doctest::Approx(0.5));
}

TEST_CASE("group residuals vanish on feasible points and scale with violation") {
  std::mt19937_64 rng(5);
  ConstraintGroup<double> g;
  g.members = {0, 1};
  g.A.resize(2, 2);
  g.A << 1.0, 2.0, -1.0, 0.5;
  g.b = vec({1.0, 0.2});
  const auto p = two_scalar_players({g});
  for (int i = 0; i < 200; ++i) {
    const Vec x = sample_point(p.base_set(), rng);
    const Vec ax = g.A * x;
    const auto r = group_residuals(p, x)[0];
    if ((ax.array() <= g.b.array()).all()) CHECK(r.ineq_violation == 0.0);
  }
  // Only row 0 active along the direction (1, 0): violation grows linearly with t.
  const Vec base = vec({0.0, 0.5});
  const double v1 = group_residuals(p, Vec(base + 0.1 * vec({1.0, 0.0})))[0].ineq_violation;
  const double v2 = group_residuals(p, Vec(base + 0.2 * vec({1.0, 0.0})))[0].ineq_violation;
  CHECK(v1 == doctest::Approx(0.1));
  CHECK(v2 == doctest::Approx(2.0 * v1));
}

TEST_CASE("built-in generators are monotone on sampled pairs") {
  for (const auto& name : builtin_names()) {
    CAPTURE(name);
    const auto spec = *builtin_instance(name, 9);
    const auto problem = build_instance(spec);
    std::mt19937_64 rng(17);
    for (int i = 0; i < 1000; ++i) {
      const Vec x = sample_point(problem.base_set(), rng), y = sample_point(problem.base_set(), rng);
      const double prod = (x - y).dot(problem.joint_gradient(x) - problem.joint_gradient(y));
      REQUIRE(prod >= problem.alpha() * (x - y).squaredNorm() - 1e-8);
      REQUIRE(prod >= -1e-10);
    }
  }
}

TEST_CASE("constant estimation agrees with declared constants") {
  InstanceSpec spec;
  spec.family = Family::cournot;
  spec.players = 3;
  spec.kappa = {0.5, 0.0, 1.0};
  const auto p = build_instance(spec);
  const auto est = estimate_constants(p, 2000, 1);
  CHECK(est.warnings.empty());
  CHECK(est.ltheta <= p.ltheta() + 1e-12);
  CHECK(est.alpha >= p.alpha() - 1e-9);

  // Declaring α larger than the field supports produces a warning.
  std::vector<Player<double>> players{{SimpleSet<double>::box(1, 0.0, 1.0), [](const Vec& x) { return 0.5 * x; }}};
  const NgnepProblem<double> over(players, {}, 1.0, 1.0);
  CHECK_FALSE(estimate_constants(over, 200, 1).warnings.empty());
}
