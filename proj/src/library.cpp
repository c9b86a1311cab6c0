#include "ngnep/library.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace ngnep {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::vector<double> uniform_fill(std::mt19937_64& rng, std::size_t count, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> out(count);
  for (auto& v : out) v = u(rng);
  return out;
}

void require_size(const std::vector<double>& v, std::size_t n, const char* what) {
  if (v.size() != n)
    throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(n) + " values, got " +
                                std::to_string(v.size()));
}

Vector<double> to_vector(const std::vector<double>& v) { return Eigen::Map<const Vector<double>>(v.data(), Index(v.size())); }

ConstraintGroup<double> sum_cap_group(std::vector<std::size_t> members, Index width, double cap) {
  ConstraintGroup<double> g;
  g.members = std::move(members);
  g.A = Matrix<double>::Ones(1, width);
  g.b = Vector<double>::Constant(1, cap);
  return g;
}

}  // namespace

const char* cost_model_name(const CostModel& model) {
  return std::visit(overloaded{[](const MarketCost&) { return "market"; },
                               [](const TransportCost&) { return "transport"; },
                               [](const CournotCost&) { return "cournot"; },
                               [](const AuctionCost&) { return "auction"; },
                               [](const LinearQuadraticCost&) { return "custom_linear_quadratic"; }},
                    model);
}

const char* to_string(Family f) {
  switch (f) {
    case Family::market: return "market";
    case Family::transport: return "transport";
    case Family::cournot: return "cournot";
    case Family::auction: return "auction";
    case Family::synthetic_linear: return "synthetic_linear";
  }
  return "?";
}

std::optional<Family> family_from_string(const std::string& name) {
  for (Family f : {Family::market, Family::transport, Family::cournot, Family::auction, Family::synthetic_linear})
    if (name == to_string(f)) return f;
  return std::nullopt;
}

NgnepProblem<double> make_problem(const ProblemDescription& desc) {
  if (desc.players.empty()) throw std::invalid_argument("problem has no players");
  std::vector<Index> widths;
  for (const auto& p : desc.players) widths.push_back(p.set.dimension());
  const BlockLayout layout = BlockLayout::from_widths(widths);
  const Index n = layout.size();
  const std::size_t N = desc.players.size();

  std::vector<Player<double>> players;
  players.reserve(N);
  for (std::size_t nu = 0; nu < N; ++nu) {
    const Index w = layout.width(nu);
    const std::string tag = "player " + std::to_string(nu) + " (" + cost_model_name(desc.players[nu].cost) + "): ";
    GradientOracle<double> oracle = std::visit(
        overloaded{
            [&](const MarketCost& c) -> GradientOracle<double> {
              if (Index(c.prices.size()) != w) throw std::invalid_argument(tag + "prices must match the block width");
              Vector<double> g = Vector<double>::Constant(w, c.marginal_cost) - to_vector(c.prices);
              return [g](const Vector<double>&) { return g; };
            },
            [&](const TransportCost& c) -> GradientOracle<double> {
              if (Index(c.unit_costs.size()) != w) throw std::invalid_argument(tag + "unit costs must match the block width");
              Vector<double> g = to_vector(c.unit_costs);
              return [g](const Vector<double>&) { return g; };
            },
            [&](const CournotCost& c) -> GradientOracle<double> {
              if (w != 1 || n != Index(N)) throw std::invalid_argument(tag + "cournot players require scalar strategies for every player");
              const Index i = layout.start(nu);
              return [c, i](const Vector<double>& x) {
                return Vector<double>::Constant(1, c.kappa * x[i] - c.a + c.b * x.sum() + c.b * x[i]);
              };
            },
            [&](const AuctionCost& c) -> GradientOracle<double> {
              if (Index(c.q.size()) != w || Index(c.d.size()) != w)
                throw std::invalid_argument(tag + "q and d must match the block width");
              for (std::size_t j = 0; j < N; ++j)
                if (layout.width(j) != w) throw std::invalid_argument(tag + "auction requires equal block widths");
              for (double dv : c.d)
                if (!(dv > 0.0)) throw std::invalid_argument(tag + "entry barriers must be > 0");
              std::vector<Index> starts(layout.offsets().begin(), layout.offsets().end() - 1);
              const Index self = layout.start(nu);
              return [c, starts, self, w](const Vector<double>& x) {
                Vector<double> g(w);
                for (Index s = 0; s < w; ++s) {
                  double total = c.d[s];
                  for (Index st : starts) total += x[st + s];
                  const double others = total - x[self + s];
                  g[s] = 1.0 - c.gain * c.q[s] * others / (total * total);
                }
                return g;
              };
            },
            [&](const LinearQuadraticCost& c) -> GradientOracle<double> {
              if (c.M.rows() != w || c.M.cols() != n || c.q.size() != w)
                throw std::invalid_argument(tag + "M must be n_nu x n and q of length n_nu");
              return [c](const Vector<double>& x) -> Vector<double> { return c.M * x + c.q; };
            }},
        desc.players[nu].cost);
    players.push_back(Player<double>{desc.players[nu].set, std::move(oracle)});
  }
  return NgnepProblem<double>(std::move(players), desc.groups, desc.ltheta, desc.alpha);
}

ProblemDescription describe(const InstanceSpec& spec) {
  ProblemDescription desc;
  desc.name = spec.name.empty() ? to_string(spec.family) : spec.name;
  std::mt19937_64 rng(spec.seed);
  const std::size_t N = spec.players;
  if (N == 0) throw std::invalid_argument("instance needs at least one player");
  std::vector<std::size_t> everyone(N);
  std::iota(everyone.begin(), everyone.end(), 0);

  switch (spec.family) {
    case Family::market: {
      const std::size_t K = spec.categories;
      auto c = spec.costs.empty() ? uniform_fill(rng, N, 0.0, 0.5) : spec.costs;
      auto p = spec.prices.empty() ? uniform_fill(rng, N * K, 1.0, 3.0) : spec.prices;
      auto cap = spec.capacities.empty() ? uniform_fill(rng, N, 1.0, 2.0) : spec.capacities;
      auto dem = spec.demand.empty() ? uniform_fill(rng, K, 0.5, 1.5) : spec.demand;
      require_size(c, N, "market costs");
      require_size(p, N * K, "market prices");
      require_size(cap, N, "market capacities");
      require_size(dem, K, "market demand");
      for (std::size_t nu = 0; nu < N; ++nu) {
        if (!(cap[nu] > 0.0)) throw std::invalid_argument("market capacities must be > 0");
        desc.players.push_back({SimpleSet<double>::orthant(Index(K), cap[nu]),
                                MarketCost{c[nu], std::vector<double>(p.begin() + nu * K, p.begin() + (nu + 1) * K)}});
        desc.groups.push_back(sum_cap_group({nu}, Index(K), cap[nu]));
      }
      ConstraintGroup<double> pub;
      pub.members = everyone;
      pub.A = Matrix<double>::Zero(Index(K), Index(N * K));
      for (std::size_t nu = 0; nu < N; ++nu) pub.A.block(0, Index(nu * K), Index(K), Index(K)).setIdentity();
      pub.b = to_vector(dem);
      desc.groups.push_back(std::move(pub));
      desc.ltheta = 1.0;
      desc.alpha = 0.0;
      break;
    }
    case Family::transport: {
      const std::size_t R = spec.sources, T = spec.sinks, RT = R * T;
      auto sup = spec.supply.empty() ? uniform_fill(rng, R, 1.0, 2.0) : spec.supply;
      std::vector<double> dem = spec.demand;
      require_size(sup, R, "transport supply");
      if (dem.empty()) {
        dem = uniform_fill(rng, T, 1.0, 2.0);
        const double scale = std::accumulate(sup.begin(), sup.end(), 0.0) / std::accumulate(dem.begin(), dem.end(), 0.0);
        for (auto& v : dem) v *= scale;
      }
      require_size(dem, T, "transport demand");
      const double total_sup = std::accumulate(sup.begin(), sup.end(), 0.0);
      const double total_dem = std::accumulate(dem.begin(), dem.end(), 0.0);
      if (std::abs(total_sup - total_dem) > 1e-9 * std::max(1.0, total_sup))
        throw std::invalid_argument("transport: total supply must equal total demand");
      for (double v : sup)
        if (v < 0.0) throw std::invalid_argument("transport: capacities must be nonnegative");
      for (double v : dem)
        if (v < 0.0) throw std::invalid_argument("transport: demands must be nonnegative");
      auto cost = spec.costs.empty() ? uniform_fill(rng, N * RT, 0.0, 1.0) : spec.costs;
      require_size(cost, N * RT, "transport costs");
      Vector<double> upper(static_cast<Index>(RT));
      for (std::size_t r = 0; r < R; ++r)
        for (std::size_t t = 0; t < T; ++t) upper[Index(r * T + t)] = std::min(sup[r], dem[t]);
      for (std::size_t nu = 0; nu < N; ++nu)
        desc.players.push_back({SimpleSet<double>::box(Vector<double>::Zero(Index(RT)), upper),
                                TransportCost{std::vector<double>(cost.begin() + nu * RT, cost.begin() + (nu + 1) * RT)}});
      ConstraintGroup<double> g;
      g.members = everyone;
      g.E = Matrix<double>::Zero(Index(R + T), Index(N * RT));
      for (std::size_t nu = 0; nu < N; ++nu)
        for (std::size_t r = 0; r < R; ++r)
          for (std::size_t t = 0; t < T; ++t) {
            const Index col = Index(nu * RT + r * T + t);
            g.E(Index(r), col) = 1.0;
            g.E(Index(R + t), col) = 1.0;
          }
      g.d.resize(Index(R + T));
      for (std::size_t r = 0; r < R; ++r) g.d[Index(r)] = sup[r];
      for (std::size_t t = 0; t < T; ++t) g.d[Index(R + t)] = dem[t];
      desc.groups.push_back(std::move(g));
      desc.ltheta = 1.0;
      desc.alpha = 0.0;
      break;
    }
    case Family::cournot: {
      if (!(spec.a > 0.0) || !(spec.b > 0.0)) throw std::invalid_argument("cournot: a and b must be > 0");
      auto kappa = spec.kappa.empty() ? std::vector<double>(N, 0.0) : spec.kappa;
      auto cap = spec.capacities.empty() ? std::vector<double>(N, 1.0) : spec.capacities;
      require_size(kappa, N, "cournot kappa");
      require_size(cap, N, "cournot capacities");
      double ltheta = 0.0, kmin = kappa.front();
      for (std::size_t nu = 0; nu < N; ++nu) {
        if (kappa[nu] < 0.0) throw std::invalid_argument("cournot: kappa must be >= 0");
        if (!(cap[nu] > 0.0)) throw std::invalid_argument("cournot: capacities must be > 0");
        desc.players.push_back({SimpleSet<double>::box(1, 0.0, cap[nu]), CournotCost{spec.a, spec.b, kappa[nu]}});
        ltheta = std::max(ltheta, std::hypot(std::sqrt(double(N - 1)) * spec.b, 2.0 * spec.b + kappa[nu]));
        kmin = std::min(kmin, kappa[nu]);
      }
      auto members = spec.cap_groups.empty() ? std::vector<std::vector<std::size_t>>{everyone} : spec.cap_groups;
      auto caps = spec.shared_caps.empty() ? std::vector<double>(members.size(), 10.0) : spec.shared_caps;
      require_size(caps, members.size(), "cournot shared caps");
      for (std::size_t s = 0; s < members.size(); ++s) {
        if (caps[s] < 0.0) throw std::invalid_argument("cournot: shared caps must be >= 0");
        desc.groups.push_back(sum_cap_group(members[s], Index(members[s].size()), caps[s]));
      }
      desc.ltheta = ltheta;
      desc.alpha = spec.b + kmin;
      break;
    }
    case Family::auction: {
      const std::size_t S = spec.resources;
      auto gain = spec.costs.empty() ? uniform_fill(rng, N, 0.5, 1.0) : spec.costs;
      auto q = spec.q.empty() ? uniform_fill(rng, S, 1.0, 2.0) : spec.q;
      require_size(gain, N, "auction gains");
      require_size(q, S, "auction q");
      std::vector<double> d = spec.d;
      if (d.empty()) {
        const double cmax = *std::max_element(gain.begin(), gain.end());
        d.resize(S);
        for (std::size_t s = 0; s < S; ++s) d[s] = 1.5 * cmax * q[s];
      }
      require_size(d, S, "auction d");
      auto budget = spec.capacities.empty() ? std::vector<double>(N, 1.0) : spec.capacities;
      auto bid_cap = spec.bid_caps.empty() ? std::vector<double>(S, 0.6 * double(N)) : spec.bid_caps;
      require_size(budget, N, "auction budgets");
      require_size(bid_cap, S, "auction bid caps");
      double ltheta = 0.0;
      for (std::size_t s = 0; s < S; ++s) {
        if (!(d[s] > 0.0)) throw std::invalid_argument("auction: entry barriers must be > 0");
        if (q[s] < 0.0 || bid_cap[s] < 0.0) throw std::invalid_argument("auction: q and bid caps must be >= 0");
        for (double c : gain) {
          if (c < 0.0) throw std::invalid_argument("auction: gains must be >= 0");
          if (c * q[s] > d[s] * (1.0 + 1e-12)) throw std::invalid_argument("auction: requires c_nu * q_s <= d_s");
          ltheta = std::max(ltheta, c * q[s] / (d[s] * d[s]) * std::sqrt(double(N) + 3.0));
        }
      }
      for (std::size_t nu = 0; nu < N; ++nu) {
        if (!(budget[nu] > 0.0)) throw std::invalid_argument("auction: budgets must be > 0");
        desc.players.push_back({SimpleSet<double>::box(Index(S), 0.0, budget[nu]), AuctionCost{gain[nu], q, d}});
        desc.groups.push_back(sum_cap_group({nu}, Index(S), budget[nu]));
      }
      ConstraintGroup<double> pub;
      pub.members = everyone;
      pub.A = Matrix<double>::Zero(Index(S), Index(N * S));
      for (std::size_t nu = 0; nu < N; ++nu) pub.A.block(0, Index(nu * S), Index(S), Index(S)).setIdentity();
      pub.b = to_vector(bid_cap);
      desc.groups.push_back(std::move(pub));
      desc.ltheta = ltheta > 0.0 ? ltheta : 1.0;
      desc.alpha = 0.0;
      break;
    }
    case Family::synthetic_linear: {
      const Index w = Index(spec.width), n = Index(N) * w;
      Matrix<double> M = spec.matrix;
      Vector<double> q = spec.offset;
      if (M.size() == 0) {
        std::normal_distribution<double> g(0.0, 1.0);
        Matrix<double> R(n, n);
        for (Index i = 0; i < R.size(); ++i) R.data()[i] = g(rng);
        M = 0.5 * (R - R.transpose()) + 0.5 * Matrix<double>::Identity(n, n);
      }
      if (q.size() == 0) {
        std::normal_distribution<double> g(0.0, 1.0);
        q.resize(n);
        for (Index i = 0; i < n; ++i) q[i] = g(rng);
      }
      if (M.rows() != n || M.cols() != n || q.size() != n)
        throw std::invalid_argument("synthetic_linear: matrix must be n x n and offset of length n");
      if (!(spec.lower < spec.upper)) throw std::invalid_argument("synthetic_linear: lower must be < upper");
      const Matrix<double> sym = 0.5 * (M + M.transpose());
      double lmin = Eigen::SelfAdjointEigenSolver<Matrix<double>>(sym, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
      if (lmin < -1e-10) throw std::invalid_argument("synthetic_linear: matrix is not monotone");
      if (std::abs(lmin) < 1e-12) lmin = 0.0;
      double ltheta = 0.0;
      for (std::size_t nu = 0; nu < N; ++nu) {
        Matrix<double> rows = M.middleRows(Index(nu) * w, w);
        desc.players.push_back({SimpleSet<double>::box(w, spec.lower, spec.upper),
                                LinearQuadraticCost{rows, q.segment(Index(nu) * w, w)}});
        ltheta = std::max(ltheta, double(Eigen::JacobiSVD<Matrix<double>>(rows).singularValues()(0)));
      }
      desc.groups = spec.groups;
      desc.ltheta = ltheta > 0.0 ? ltheta : 1.0;
      desc.alpha = std::max(0.0, std::min(lmin, std::sqrt(double(N)) * desc.ltheta));
      break;
    }
  }
  return desc;
}

NgnepProblem<double> build_instance(const InstanceSpec& spec) {
  NgnepProblem<double> problem = make_problem(describe(spec));
  if (spec.family == Family::auction) {
    const ConstantEstimate est = estimate_constants(problem, 1000, spec.seed);
    if (est.min_monotone_product < -1e-10)
      throw std::invalid_argument("auction: sampled field is not monotone; reduce gains or raise entry barriers");
  }
  return problem;
}

std::optional<KnownSolution> known_solution(const InstanceSpec& spec) {
  if (spec.family != Family::cournot && spec.family != Family::synthetic_linear) return std::nullopt;
  const ProblemDescription desc = describe(spec);
  std::vector<Index> widths;
  for (const auto& p : desc.players) widths.push_back(p.set.dimension());
  const BlockLayout layout = BlockLayout::from_widths(widths);
  const Index n = layout.size();

  // Linear field v(x) = M x + q assembled from the cost coefficients.
  Matrix<double> M = Matrix<double>::Zero(n, n);
  Vector<double> q = Vector<double>::Zero(n);
  Vector<double> lo(n), hi(n);
  for (std::size_t nu = 0; nu < desc.players.size(); ++nu) {
    const Index s = layout.start(nu), w = layout.width(nu);
    if (const auto* c = std::get_if<CournotCost>(&desc.players[nu].cost)) {
      M.row(s).setConstant(c->b);
      M(s, s) += c->b + c->kappa;
      q[s] = -c->a;
    } else if (const auto* c = std::get_if<LinearQuadraticCost>(&desc.players[nu].cost)) {
      M.middleRows(s, w) = c->M;
      q.segment(s, w) = c->q;
    } else {
      return std::nullopt;
    }
    const auto* box = std::get_if<Box<double>>(&desc.players[nu].set.variant());
    if (!box) return std::nullopt;
    lo.segment(s, w) = box->lower;
    hi.segment(s, w) = box->upper;
  }

  // Inequalities gᵀx ≤ h: box bounds then shared rows; equalities eᵀx = d.
  std::vector<Vector<double>> G;
  std::vector<double> h;
  std::vector<std::pair<std::size_t, Index>> shared_row;  // (group, row) for shared inequalities
  for (Index i = 0; i < n; ++i) {
    G.push_back(-Vector<double>::Unit(n, i));
    h.push_back(-lo[i]);
    G.push_back(Vector<double>::Unit(n, i));
    h.push_back(hi[i]);
  }
  const std::size_t n_box = G.size();
  std::vector<Vector<double>> Eq;
  std::vector<double> dq;
  std::vector<std::pair<std::size_t, Index>> eq_row;
  for (std::size_t s = 0; s < desc.groups.size(); ++s) {
    const auto& g = desc.groups[s];
    auto full_row = [&](const Matrix<double>& A, Index r) {
      Vector<double> row = Vector<double>::Zero(n);
      Index pos = 0;
      for (std::size_t nu : g.members) {
        row.segment(layout.start(nu), layout.width(nu)) = A.row(r).segment(pos, layout.width(nu)).transpose();
        pos += layout.width(nu);
      }
      return row;
    };
    for (Index r = 0; r < g.A.rows(); ++r) {
      G.push_back(full_row(g.A, r));
      h.push_back(g.b[r]);
      shared_row.emplace_back(s, r);
    }
    for (Index r = 0; r < g.E.rows(); ++r) {
      Eq.push_back(full_row(g.E, r));
      dq.push_back(g.d[r]);
      eq_row.emplace_back(s, r);
    }
  }
  const std::size_t nI = G.size(), nE = Eq.size();
  if (nI > 24) return std::nullopt;

  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << nI); ++mask) {
    const std::size_t active = std::size_t(std::popcount(mask));
    if (active + nE > std::size_t(n)) continue;
    bool clash = false;
    for (Index i = 0; i < n && !clash; ++i)
      clash = ((mask >> (2 * i)) & 1) && ((mask >> (2 * i + 1)) & 1) && lo[i] != hi[i];
    if (clash) continue;
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < nI; ++j)
      if ((mask >> j) & 1) idx.push_back(j);
    const Index m = Index(idx.size() + nE);
    Matrix<double> K = Matrix<double>::Zero(n + m, n + m);
    Vector<double> rhs(n + m);
    K.topLeftCorner(n, n) = M;
    rhs.head(n) = -q;
    for (std::size_t j = 0; j < idx.size(); ++j) {
      K.block(0, n + Index(j), n, 1) = G[idx[j]];
      K.block(n + Index(j), 0, 1, n) = G[idx[j]].transpose();
      rhs[n + Index(j)] = h[idx[j]];
    }
    for (std::size_t j = 0; j < nE; ++j) {
      const Index r = n + Index(idx.size() + j);
      K.block(0, r, n, 1) = Eq[j];
      K.block(r, 0, 1, n) = Eq[j].transpose();
      rhs[r] = dq[j];
    }
    Eigen::FullPivLU<Matrix<double>> lu(K);
    if (!lu.isInvertible()) continue;
    const Vector<double> sol = lu.solve(rhs);
    const Vector<double> x = sol.head(n);
    bool ok = true;
    for (std::size_t j = 0; j < idx.size() && ok; ++j) ok = sol[n + Index(j)] >= -1e-10;
    for (std::size_t j = 0; j < nI && ok; ++j) ok = G[j].dot(x) <= h[j] + 1e-10;
    if (!ok) continue;

    KnownSolution out;
    out.x = x.cwiseMax(lo).cwiseMin(hi);
    out.multipliers.beta.assign(desc.groups.size(), 1.0);
    out.multipliers.rho.assign(desc.groups.size(), 1.0);
    for (const auto& g : desc.groups) {
      out.multipliers.lambda.push_back(Vector<double>::Zero(g.A.rows()));
      out.multipliers.mu.push_back(Vector<double>::Zero(g.E.rows()));
    }
    for (std::size_t j = 0; j < idx.size(); ++j) {
      if (idx[j] < n_box) continue;
      const auto [s, r] = shared_row[idx[j] - n_box];
      out.multipliers.lambda[s][r] = std::max(0.0, sol[n + Index(j)]);
    }
    for (std::size_t j = 0; j < nE; ++j) {
      const auto [s, r] = eq_row[j];
      out.multipliers.mu[s][r] = sol[n + Index(idx.size() + j)];
    }
    return out;
  }
  return std::nullopt;
}

std::optional<InstanceSpec> builtin_instance(const std::string& name, std::uint64_t seed) {
  InstanceSpec spec;
  spec.name = name;
  spec.seed = seed;
  if (name == "cournot") {
    spec.family = Family::cournot;
    spec.shared_caps = {10.0};
  } else if (name == "cournot-active") {
    spec.family = Family::cournot;
    spec.shared_caps = {0.5};
  } else if (name == "n1-equality") {
    spec.family = Family::synthetic_linear;
    spec.players = 1;
    spec.width = 2;
    spec.matrix = Matrix<double>::Identity(2, 2);
    spec.offset = Vector<double>::Constant(2, -2.0);
    spec.lower = 0.0;
    spec.upper = 3.0;
    ConstraintGroup<double> g;
    g.members = {0};
    g.E = Matrix<double>::Ones(1, 2);
    g.d = Vector<double>::Constant(1, 1.0);
    spec.groups = {g};
  } else if (name == "market") {
    spec.family = Family::market;
  } else if (name == "transport") {
    spec.family = Family::transport;
  } else if (name == "auction") {
    spec.family = Family::auction;
  } else if (name == "bilinear") {
    // Zero-sum matching-pennies style game on [0,1]² with a shared budget row.
    spec.family = Family::synthetic_linear;
    spec.players = 2;
    spec.width = 1;
    spec.matrix.resize(2, 2);
    spec.matrix << 0.0, 1.0, -1.0, 0.0;
    spec.offset = Vector<double>(2);
    spec.offset << -0.5, 0.5;
    ConstraintGroup<double> g;
    g.members = {0, 1};
    g.A = Matrix<double>::Ones(1, 2);
    g.b = Vector<double>::Constant(1, 0.6);
    spec.groups = {g};
  } else if (name == "strongly-monotone") {
    spec.family = Family::synthetic_linear;
    spec.players = 2;
    spec.width = 1;
    spec.matrix.resize(2, 2);
    spec.matrix << 2.0, 1.0, -1.0, 2.0;
    spec.offset = Vector<double>(2);
    spec.offset << -2.0, -1.5;
    ConstraintGroup<double> g;
    g.members = {0, 1};
    g.A = Matrix<double>::Ones(1, 2);
    g.b = Vector<double>::Constant(1, 0.6);
    spec.groups = {g};
  } else {
    return std::nullopt;
  }
  return spec;
}

std::vector<std::string> builtin_names() {
  return {"cournot", "cournot-active", "n1-equality", "market", "transport", "auction", "bilinear", "strongly-monotone"};
}

}  // namespace ngnep
