#pragma once

#include "ngnep/penalties.hpp"
#include "ngnep/problem.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ngnep {

// Cost models. Each describes the partial gradient v_ν of one player.

/// θ_ν = c_ν Σ_k x_k − Σ_k p_k x_k, so v_ν = c_ν·1 − p.
struct MarketCost {
  double marginal_cost = 0.0;
  std::vector<double> prices;
};

/// θ_ν = Σ c_rt x_rt, so v_ν = c (constant).
struct TransportCost {
  std::vector<double> unit_costs;
};

/// θ_ν = ½κ (x^ν)² − x^ν(a − b x̄) with x̄ the total supply of all players.
struct CournotCost {
  double a = 1.0;
  double b = 1.0;
  double kappa = 0.0;
};

/// θ_ν = Σ_s (x_s^ν − c q_s x_s^ν/(d_s + Σ_j x_s^j)).
struct AuctionCost {
  double gain = 0.0;
  std::vector<double> q;
  std::vector<double> d;
};

/// v_ν = M x + q with M of size n_ν × n.
struct LinearQuadraticCost {
  Matrix<double> M;
  Vector<double> q;
};

using CostModel = std::variant<MarketCost, TransportCost, CournotCost, AuctionCost, LinearQuadraticCost>;

const char* cost_model_name(const CostModel& model);

struct PlayerSpec {
  SimpleSet<double> set;
  CostModel cost;
};

/// Data-only form of an NGNEP: what the problem file stores.
struct ProblemDescription {
  std::string name;
  std::vector<PlayerSpec> players;
  std::vector<ConstraintGroup<double>> groups;
  double ltheta = 1.0;
  double alpha = 0.0;
};

/// Builds the problem with analytic gradient oracles. Throws
/// std::invalid_argument on inconsistent cost-model shapes.
NgnepProblem<double> make_problem(const ProblemDescription& description);

enum class Family { market, transport, cournot, auction, synthetic_linear };

const char* to_string(Family f);
std::optional<Family> family_from_string(const std::string& name);

/// Parameters of a generated instance. Empty coefficient vectors are
/// filled deterministically from `seed`.
struct InstanceSpec {
  Family family = Family::cournot;
  std::string name;
  std::size_t players = 2;
  std::size_t categories = 2;  ///< market: |K|
  std::size_t sources = 2;     ///< transport: |R|
  std::size_t sinks = 2;       ///< transport: |T|
  std::size_t resources = 2;   ///< auction: |S|
  std::size_t width = 1;       ///< synthetic_linear: per-player block width

  std::vector<double> costs;      ///< market c_ν, auction c_ν, transport c^ν_rt (flattened ν-major)
  std::vector<double> prices;     ///< market p^ν_k (flattened ν-major)
  double a = 1.0, b = 1.0;        ///< cournot inverse demand a − b x̄
  std::vector<double> kappa;      ///< cournot marginal-cost curvature κ_ν
  std::vector<double> capacities; ///< per-player caps: market C^ν, cournot C_ν, auction budget b^ν
  std::vector<double> demand;     ///< market D_k, transport D_t
  std::vector<double> supply;     ///< transport C_r
  std::vector<double> bid_caps;   ///< auction C_s
  std::vector<double> q, d;       ///< auction totals and entry barriers
  std::vector<std::vector<std::size_t>> cap_groups;  ///< cournot shared-cap member sets (default: all players)
  std::vector<double> shared_caps;                   ///< cournot C_s, one per cap group

  Matrix<double> matrix;          ///< synthetic_linear M (n × n)
  Vector<double> offset;          ///< synthetic_linear q
  double lower = 0.0, upper = 1.0;  ///< synthetic_linear box
  std::vector<ConstraintGroup<double>> groups;  ///< synthetic_linear shared constraints

  std::uint64_t seed = 1;
};

/// Fills defaults and returns the data-only description of the instance.
ProblemDescription describe(const InstanceSpec& spec);

/// make_problem(describe(spec)); auction instances are additionally
/// checked for sampled monotonicity.
NgnepProblem<double> build_instance(const InstanceSpec& spec);

/// Reference variational equilibrium with shared multipliers.
struct KnownSolution {
  Vector<double> x;
  PenaltyState<double> multipliers;
};

/// Reference solution from a dense active-set KKT enumeration on the
/// instance's linear field. Available for cournot and synthetic_linear
/// instances with box-type strategy sets; nullopt otherwise.
std::optional<KnownSolution> known_solution(const InstanceSpec& spec);

/// Named instances: cournot, cournot-active, n1-equality, market, transport,
/// auction, bilinear, strongly-monotone.
std::optional<InstanceSpec> builtin_instance(const std::string& name, std::uint64_t seed = 1);
std::vector<std::string> builtin_names();

}  // namespace ngnep
