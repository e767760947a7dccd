#include "capsac/gscp.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "capsac/generator.hpp"
#include "capsac/geometry.hpp"
#include "capsac/oracle.hpp"

#include "json.hpp"

namespace capsac {

void check_gscp(const GscpInstance& g) {
  if (g.points.empty()) throw ValidationError("gscp: needs at least one point");
  if (!(g.side > 0.0)) throw ValidationError("gscp: side must be positive");
  if (g.k < 1) throw ValidationError("gscp: k must be at least 1");
}

GscpInstance parse_gscp(const std::string& json_text) {
  GscpInstance g;
  try {
    auto j = nlohmann::json::parse(json_text);
    for (const auto& p : j.at("points"))
      g.points.push_back({p.at("x").get<double>(), p.at("y").get<double>()});
    g.side = j.at("side").get<double>();
    g.k = j.at("k").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("gscp: bad document: ") + e.what());
  }
  check_gscp(g);
  return g;
}

std::string write_gscp(const GscpInstance& g) {
  nlohmann::ordered_json j;
  j["points"] = nlohmann::ordered_json::array();
  for (const auto& p : g.points)
    j["points"].push_back(nlohmann::ordered_json{{"x", p.x}, {"y", p.y}});
  j["side"] = g.side;
  j["k"] = g.k;
  return j.dump(2) + "\n";
}

std::vector<std::vector<int>> induced_collection(
    const std::vector<GscpInstance::Point>& points, double side) {
  if (points.empty()) throw ValidationError("gscp: needs at least one point");
  std::set<double> xs, ys;
  for (const auto& p : points) {
    xs.insert(p.x);
    ys.insert(p.y);
  }
  std::set<std::vector<int>> seen;
  for (double x0 : xs)
    for (double y0 : ys) {
      std::vector<int> members;
      for (std::size_t i = 0; i < points.size(); ++i)
        if (x0 <= points[i].x && points[i].x <= x0 + side && y0 <= points[i].y &&
            points[i].y <= y0 + side)
          members.push_back(static_cast<int>(i));
      if (!members.empty()) seen.insert(std::move(members));
    }
  return {seen.begin(), seen.end()};
}

GscpReduction reduce_to_capsac(const GscpInstance& g, std::uint64_t seed) {
  check_gscp(g);
  GscpReduction out;
  out.big = g.k + 2.0;

  Instance& inst = out.instance;
  inst.name = "gscp";
  inst.sigma = 1;
  inst.t_hat = kUnbounded;
  for (int d = 0; d < g.k; ++d)
    inst.drones.push_back({"d" + std::to_string(d + 1), true});
  for (std::size_t i = 0; i < g.points.size(); ++i)
    inst.photos.push_back({"p" + std::to_string(i + 1), g.points[i].x,
                           g.points[i].y, 1.0, 1.0, "d1"});
  std::mt19937_64 rng(seed);
  for (auto [a, b] : random_tree(g.k, rng))
    inst.links.push_back({"d" + std::to_string(a + 1),
                          "d" + std::to_string(b + 1), 1e12});
  check_instance(inst);

  std::set<std::vector<int>> cheap;
  for (auto& s : induced_collection(g.points, g.side)) cheap.insert(s);
  out.catalog = build_catalog(inst, true);
  for (auto& e : out.catalog.entries) {
    if (e.members.empty()) continue;  // padding stays free
    e.t = cheap.count(e.members) ? 1.0 : out.big;
  }
  return out;
}

bool answer_gscp(const GscpInstance& g, const std::string& solver,
                 const SolveOptions& opts, std::uint64_t seed) {
  GscpReduction red = reduce_to_capsac(g, seed);
  double objective = 0.0;
  if (solver == "oracle") {
    OracleResult res = brute_force_catalog(red.instance, red.catalog);
    if (res.status != SolveStatus::Optimal)
      throw ValidationError(std::string("gscp: oracle returned ") +
                            to_string(res.status));
    objective = res.objective;
  } else if (solver == "milp") {
    RcapsacModel built = build_rcapsac(red.instance, red.catalog);
    ModelSolution sol = solve_external(built.model, opts);
    if (sol.status != SolveStatus::Optimal)
      throw ValidationError(std::string("gscp: solver returned ") +
                            to_string(sol.status) +
                            (sol.message.empty() ? "" : ": " + sol.message));
    objective = sol.objective;
  } else {
    throw ValidationError("gscp: unknown solver '" + solver + "'");
  }
  return objective <= 1.0 + 1e-6;
}

}  // namespace capsac
