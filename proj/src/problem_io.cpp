#include "ngnep/problem_io.hpp"

#include <fstream>
#include <sstream>

namespace ngnep {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

[[noreturn]] void schema_error(const std::string& pointer, const std::string& what) {
  throw ParseError(pointer + ": " + what, 0, 0, pointer);
}

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) schema_error(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(path, "missing key '" + key + "'");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) schema_error(path, "expected a number");
  return j.get<double>();
}

std::vector<double> numbers(const json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], path + "/" + std::to_string(i)));
  return out;
}

Vector<double> vector_of(const json& j, const std::string& path) {
  auto v = numbers(j, path);
  return Eigen::Map<Vector<double>>(v.data(), Index(v.size()));
}

/// Row-major matrix given as an array of equal-length rows.
Matrix<double> matrix_of(const json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array of rows");
  if (j.empty()) return {};
  const auto first = numbers(j[0], path + "/0");
  Matrix<double> M(Index(j.size()), Index(first.size()));
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string rp = path + "/" + std::to_string(r);
    const auto row = numbers(j[r], rp);
    if (row.size() != first.size()) schema_error(rp, "row length differs from the first row");
    for (std::size_t c = 0; c < row.size(); ++c) M(Index(r), Index(c)) = row[c];
  }
  return M;
}

json matrix_json(const Matrix<double>& M) {
  json rows = json::array();
  for (Index r = 0; r < M.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < M.cols(); ++c) row.push_back(M(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const Vector<double>& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

SimpleSet<double> parse_set(const json& j, const std::string& path) {
  const json& type = field(j, "type", path);
  if (!type.is_string()) schema_error(path + "/type", "expected a string");
  const std::string t = type.get<std::string>();
  try {
    if (t == "box") return SimpleSet<double>::box(vector_of(field(j, "lower", path), path + "/lower"),
                                                  vector_of(field(j, "upper", path), path + "/upper"));
    if (t == "ball") return SimpleSet<double>::ball(vector_of(field(j, "center", path), path + "/center"),
                                                    number(field(j, "radius", path), path + "/radius"));
    if (t == "simplex") return SimpleSet<double>::simplex(Index(number(field(j, "dimension", path), path + "/dimension")),
                                                          number(field(j, "scale", path), path + "/scale"));
    if (t == "orthant") {
      std::optional<double> cap;
      if (j.contains("cap")) cap = number(j["cap"], path + "/cap");
      return SimpleSet<double>::orthant(Index(number(field(j, "dimension", path), path + "/dimension")), cap);
    }
  } catch (const std::invalid_argument& e) {
    schema_error(path, e.what());
  }
  schema_error(path + "/type", "unknown set type '" + t + "' (expected box, ball, simplex or orthant)");
}

json set_json(const SimpleSet<double>& set) {
  return std::visit(overloaded{[](const Box<double>& s) {
                                 return json{{"type", "box"}, {"lower", vector_json(s.lower)}, {"upper", vector_json(s.upper)}};
                               },
                               [](const Ball<double>& s) {
                                 return json{{"type", "ball"}, {"center", vector_json(s.center)}, {"radius", s.radius}};
                               },
                               [](const Simplex<double>& s) {
                                 return json{{"type", "simplex"}, {"dimension", s.dimension}, {"scale", s.scale}};
                               },
                               [](const NonnegativeOrthant<double>& s) {
                                 json j{{"type", "orthant"}, {"dimension", s.dimension}};
                                 if (s.cap) j["cap"] = *s.cap;
                                 return j;
                               }},
                    set.variant());
}

CostModel parse_cost(const json& j, const std::string& path) {
  const json& model = field(j, "model", path);
  if (!model.is_string()) schema_error(path + "/model", "expected a string");
  const std::string m = model.get<std::string>();
  if (m == "market")
    return MarketCost{number(field(j, "marginal_cost", path), path + "/marginal_cost"),
                      numbers(field(j, "prices", path), path + "/prices")};
  if (m == "transport") return TransportCost{numbers(field(j, "unit_costs", path), path + "/unit_costs")};
  if (m == "cournot")
    return CournotCost{number(field(j, "a", path), path + "/a"), number(field(j, "b", path), path + "/b"),
                       j.contains("kappa") ? number(j["kappa"], path + "/kappa") : 0.0};
  if (m == "auction")
    return AuctionCost{number(field(j, "gain", path), path + "/gain"), numbers(field(j, "q", path), path + "/q"),
                       numbers(field(j, "d", path), path + "/d")};
  if (m == "custom_linear_quadratic")
    return LinearQuadraticCost{matrix_of(field(j, "M", path), path + "/M"), vector_of(field(j, "q", path), path + "/q")};
  schema_error(path + "/model", "unknown cost model '" + m +
                                    "' (expected market, transport, cournot, auction or custom_linear_quadratic)");
}

json cost_json(const CostModel& cost) {
  return std::visit(
      overloaded{[](const MarketCost& c) {
                   return json{{"model", "market"}, {"marginal_cost", c.marginal_cost}, {"prices", c.prices}};
                 },
                 [](const TransportCost& c) { return json{{"model", "transport"}, {"unit_costs", c.unit_costs}}; },
                 [](const CournotCost& c) {
                   return json{{"model", "cournot"}, {"a", c.a}, {"b", c.b}, {"kappa", c.kappa}};
                 },
                 [](const AuctionCost& c) {
                   return json{{"model", "auction"}, {"gain", c.gain}, {"q", c.q}, {"d", c.d}};
                 },
                 [](const LinearQuadraticCost& c) {
                   return json{{"model", "custom_linear_quadratic"}, {"M", matrix_json(c.M)}, {"q", vector_json(c.q)}};
                 }},
      cost);
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

ProblemDescription parse_problem(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    auto [line, column] = line_column(text, e.byte);
    throw ParseError("syntax error at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                         e.what(),
                     line, column);
  }

  ProblemDescription desc;
  if (!doc.is_object()) schema_error("", "top-level value must be an object");
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) schema_error("/name", "expected a string");
    desc.name = doc["name"].get<std::string>();
  }
  const json& players = field(doc, "players", "");
  if (!players.is_array() || players.empty()) schema_error("/players", "expected a nonempty array");
  for (std::size_t i = 0; i < players.size(); ++i) {
    const std::string p = "/players/" + std::to_string(i);
    desc.players.push_back({parse_set(field(players[i], "set", p), p + "/set"),
                            parse_cost(field(players[i], "cost", p), p + "/cost")});
  }
  if (doc.contains("groups")) {
    const json& groups = doc["groups"];
    if (!groups.is_array()) schema_error("/groups", "expected an array");
    for (std::size_t i = 0; i < groups.size(); ++i) {
      const std::string p = "/groups/" + std::to_string(i);
      const json& g = groups[i];
      ConstraintGroup<double> group;
      const json& members = field(g, "members", p);
      if (!members.is_array()) schema_error(p + "/members", "expected an array of player indices");
      for (std::size_t k = 0; k < members.size(); ++k) {
        if (!members[k].is_number_unsigned()) schema_error(p + "/members/" + std::to_string(k), "expected a player index");
        group.members.push_back(members[k].get<std::size_t>());
      }
      if (g.contains("A")) group.A = matrix_of(g["A"], p + "/A");
      if (g.contains("b")) group.b = vector_of(g["b"], p + "/b");
      if (g.contains("E")) group.E = matrix_of(g["E"], p + "/E");
      if (g.contains("d")) group.d = vector_of(g["d"], p + "/d");
      desc.groups.push_back(std::move(group));
    }
  }
  const json& constants = field(doc, "constants", "");
  desc.ltheta = number(field(constants, "ltheta", "/constants"), "/constants/ltheta");
  desc.alpha = constants.contains("alpha") ? number(constants["alpha"], "/constants/alpha") : 0.0;
  return desc;
}

ProblemDescription load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open problem file '" + path + "'", 0, 0);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_problem(buffer.str());
}

json to_json(const ProblemDescription& desc) {
  json players = json::array();
  for (const auto& p : desc.players) players.push_back(json{{"set", set_json(p.set)}, {"cost", cost_json(p.cost)}});
  json groups = json::array();
  for (const auto& g : desc.groups) {
    json jg{{"members", g.members}};
    if (g.A.rows() > 0) {
      jg["A"] = matrix_json(g.A);
      jg["b"] = vector_json(g.b);
    }
    if (g.E.rows() > 0) {
      jg["E"] = matrix_json(g.E);
      jg["d"] = vector_json(g.d);
    }
    groups.push_back(std::move(jg));
  }
  return json{{"name", desc.name},
              {"players", std::move(players)},
              {"groups", std::move(groups)},
              {"constants", {{"ltheta", desc.ltheta}, {"alpha", desc.alpha}}}};
}

std::string serialize_problem(const ProblemDescription& desc) { return to_json(desc).dump(2) + "\n"; }

}  // namespace ngnep
