#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ngnep/diagnostics.hpp"
#include "ngnep/library.hpp"
#include "ngnep/problem_io.hpp"

#include <random>

using namespace ngnep;
using Vec = Vector<double>;

TEST_CASE("family field examples") {
  InstanceSpec t;
  t.family = Family::transport;
  t.players = 1;
  t.sources = 1;
  t.sinks = 1;
  t.supply = {2.0};
  t.demand = {2.0};
  t.costs = {0.7};
  CHECK(build_instance(t).joint_gradient(Vec::Constant(1, 1.3))[0] == 0.7);

  InstanceSpec a;
  a.family = Family::auction;
  a.players = 1;
  a.resources = 1;
  a.costs = {0.8};
  a.q = {1.5};
  a.d = {2.0};
  CHECK(build_instance(a).joint_gradient(Vec::Zero(1))[0] == doctest::Approx(1.0 - 0.8 * 1.5 / 2.0));

  InstanceSpec m;
  m.family = Family::market;
  m.players = 2;
  m.categories = 2;
  m.costs = {0.1, 0.2};
  m.prices = {1.0, 2.0, 3.0, 4.0};
  const Vec v = build_instance(m).joint_gradient(Vec::Constant(4, 0.3));
  CHECK((v - Vec{{-0.9, -1.9, -2.8, -3.8}}).norm() < 1e-15);
}

TEST_CASE("Cournot constants follow the Jacobian b(I + 11ᵀ) + diag(κ)") {
  InstanceSpec c;
  c.family = Family::cournot;
  c.players = 3;
  c.b = 0.7;
  const auto desc = describe(c);
  CHECK(desc.alpha == doctest::Approx(0.7));
  // Row norm of the Jacobian: √((N−1)b² + (2b)²).
  CHECK(desc.ltheta == doctest::Approx(std::sqrt(2.0 * 0.49 + 1.96)));
}

TEST_CASE("auction gradients match finite differences of the cost") {
  InstanceSpec a;
  a.family = Family::auction;
  a.players = 3;
  a.resources = 2;
  a.seed = 12;
  const auto desc = describe(a);
  const auto p = make_problem(desc);
  const auto layout = p.layout();
  // θ_ν(x) = Σ_s x_s^ν − c_ν q_s x_s^ν / (d_s + Σ_j x_s^j).
  auto theta = [&](std::size_t nu, const Vec& x) {
    const auto& cost = std::get<AuctionCost>(desc.players[nu].cost);
    double total = 0.0;
    for (Index s = 0; s < 2; ++s) {
      double all = cost.d[std::size_t(s)];
      for (std::size_t j = 0; j < 3; ++j) all += x[layout.start(j) + s];
      const double mine = x[layout.start(nu) + s];
      total += mine - cost.gain * cost.q[std::size_t(s)] * mine / all;
    }
    return total;
  };
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    const Vec x = sample_point(p.base_set(), rng);
    const Vec v = p.joint_gradient(x);
    for (std::size_t nu = 0; nu < 3; ++nu)
      for (Index s = 0; s < 2; ++s) {
        const Index i = layout.start(nu) + s;
        const double h = 1e-5;
        Vec xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        const double fd = (theta(nu, xp) - theta(nu, xm)) / (2.0 * h);
        REQUIRE(std::abs(fd - v[i]) <= 1e-6 * std::max(1.0, std::abs(v[i])));
      }
  }
}

TEST_CASE("known solutions match hand-derived equilibria") {
  const auto inactive = *known_solution(*builtin_instance("cournot"));
  CHECK((inactive.x - Vec::Constant(2, 1.0 / 3.0)).norm() < 1e-12);
  CHECK(inactive.multipliers.lambda[0][0] == 0.0);

  // Symmetric KKT: 2x + x − 1 + λ = 0 with 2x = 0.5 gives x = 0.25, λ = 0.25.
  const auto active = *known_solution(*builtin_instance("cournot-active"));
  CHECK((active.x - Vec::Constant(2, 0.25)).norm() < 1e-12);
  CHECK(active.multipliers.lambda[0][0] == doctest::Approx(0.25));

  // Projection of (2, 2) onto x₁ + x₂ = 1: (0.5, 0.5) with μ = 1.5.
  const auto eq = *known_solution(*builtin_instance("n1-equality"));
  CHECK((eq.x - Vec::Constant(2, 0.5)).norm() < 1e-12);
  CHECK(eq.multipliers.mu[0][0] == doctest::Approx(1.5));

  CHECK_FALSE(known_solution(*builtin_instance("market")).has_value());
  CHECK_FALSE(known_solution(*builtin_instance("auction")).has_value());
}

TEST_CASE("known solutions are KKT points of their instances") {
  std::vector<InstanceSpec> specs;
  for (const std::string name : {"cournot", "cournot-active", "n1-equality", "bilinear", "strongly-monotone"})
    specs.push_back(*builtin_instance(name));
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    InstanceSpec s;
    s.family = Family::synthetic_linear;
    s.players = 2;
    s.width = 2;
    s.seed = seed;
    ConstraintGroup<double> g;
    g.members = {0, 1};
    g.A = Matrix<double>::Ones(1, 4);
    g.b = Vec::Constant(1, 1.0);
    s.groups = {g};
    specs.push_back(s);
    InstanceSpec c;
    c.family = Family::cournot;
    c.players = 3;
    c.kappa = {0.0, 0.5, 1.0};
    c.shared_caps = {0.2 * double(seed)};
    specs.push_back(c);
  }
  for (const auto& spec : specs) {
    CAPTURE(spec.name);
    const auto sol = known_solution(spec);
    REQUIRE(sol.has_value());
    const auto r = kkt_residuals(build_instance(spec), sol->x, sol->multipliers);
    CHECK(r.r_f <= 1e-8);
    CHECK(r.r_o <= 1e-8);
    CHECK(r.r_c <= 1e-8);
  }
}

TEST_CASE("generators reject invalid specifications") {
  InstanceSpec t;
  t.family = Family::transport;
  t.supply = {1.0, 1.0};
  t.demand = {1.0, 2.0};
  CHECK_THROWS_AS(describe(t), std::invalid_argument);

  InstanceSpec a;
  a.family = Family::auction;
  a.players = 1;
  a.resources = 1;
  a.costs = {1.0};
  a.q = {2.0};
  a.d = {1.0};
  CHECK_THROWS_AS(describe(a), std::invalid_argument);

  InstanceSpec s;
  s.family = Family::synthetic_linear;
  s.players = 2;
  s.matrix = -Matrix<double>::Identity(2, 2);
  s.offset = Vec::Zero(2);
  CHECK_THROWS_AS(describe(s), std::invalid_argument);

  InstanceSpec c;
  c.family = Family::cournot;
  c.capacities = {1.0, -1.0};
  CHECK_THROWS_AS(describe(c), std::invalid_argument);
}

TEST_CASE("generators are deterministic in the seed") {
  for (Family f : {Family::market, Family::transport, Family::auction, Family::synthetic_linear}) {
    InstanceSpec s;
    s.family = f;
    s.seed = 42;
    const std::string a = serialize_problem(describe(s)), b = serialize_problem(describe(s));
    CHECK(a == b);
    s.seed = 43;
    CHECK(serialize_problem(describe(s)) != a);
  }
  CHECK(family_from_string("transport") == Family::transport);
  CHECK_FALSE(family_from_string("oligopoly").has_value());
  CHECK_FALSE(builtin_instance("nope").has_value());
}
