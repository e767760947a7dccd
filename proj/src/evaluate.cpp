#include "capsac/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace capsac {

using nlohmann::ordered_json;

std::string write_solution(const CapsacSolution& sol) {
  ordered_json j;
  j["status"] = to_string(sol.status);
  j["objective"] = sol.objective;
  j["regions"] = ordered_json::array();
  for (const auto& r : sol.regions) {
    ordered_json jr;
    jr["boundary"] = {{"left", r.boundary.left},
                      {"right", r.boundary.right},
                      {"bottom", r.boundary.bottom},
                      {"top", r.boundary.top}};
    jr["members"] = r.members;
    jr["drones"] = r.drones;
    j["regions"].push_back(std::move(jr));
  }
  return j.dump(2) + "\n";
}

CapsacSolution parse_solution(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const std::exception& e) {
    throw ValidationError(std::string("solution is not valid JSON: ") +
                          e.what());
  }
  CapsacSolution sol;
  try {
    sol.status = status_from_string(j.value("status", std::string("optimal")));
    sol.objective = j.at("objective").get<double>();
    for (const auto& jr : j.at("regions")) {
      SolutionRegion r;
      const auto& jb = jr.at("boundary");
      r.boundary.left = jb.at("left").get<double>();
      r.boundary.right = jb.at("right").get<double>();
      r.boundary.bottom = jb.at("bottom").get<double>();
      r.boundary.top = jb.at("top").get<double>();
      for (const auto& mid : jr.at("members"))
        r.members.push_back(mid.get<std::string>());
      for (const auto& did : jr.at("drones"))
        r.drones.push_back(did.get<std::string>());
      std::sort(r.members.begin(), r.members.end());
      std::sort(r.drones.begin(), r.drones.end());
      sol.regions.push_back(std::move(r));
    }
  } catch (const ValidationError&) {
    throw;
  } catch (const std::exception& e) {
    throw ValidationError(std::string("malformed solution document: ") +
                          e.what());
  }
  return sol;
}

double makespan(const Instance& inst, const CapsacSolution& sol) {
  std::map<std::string, double> load;
  for (const auto& d : inst.drones) load[d.id] = 0.0;
  for (const auto& r : sol.regions) {
    double t = 0.0;
    for (const auto& pid : r.members) {
      int p = inst.photo_index(pid);
      if (p < 0) throw ValidationError("makespan: unknown photo id " + pid);
      t += inst.photos[p].lambda;
    }
    for (const auto& did : r.drones) {
      auto it = load.find(did);
      if (it == load.end())
        throw ValidationError("makespan: unknown drone id " + did);
      it->second += t;  // a photo counts once per region per drone
    }
  }
  double best = 0.0;
  for (const auto& [id, t] : load) best = std::max(best, t);
  return best;
}

double makespan_dedup(const Instance& inst, const CapsacSolution& sol) {
  std::map<std::string, std::set<int>> seen;  // drone -> distinct photos
  for (const auto& r : sol.regions)
    for (const auto& did : r.drones) {
      if (inst.drone_index(did) < 0)
        throw ValidationError("makespan: unknown drone id " + did);
      for (const auto& pid : r.members) {
        int p = inst.photo_index(pid);
        if (p < 0) throw ValidationError("makespan: unknown photo id " + pid);
        seen[did].insert(p);
      }
    }
  double best = 0.0;
  for (const auto& [id, photos] : seen) {
    double t = 0.0;
    for (int p : photos) t += inst.photos[p].lambda;
    best = std::max(best, t);
  }
  return best;
}

std::vector<Demand> active_demands(const Instance& inst,
                                   const CapsacSolution& sol) {
  std::map<std::pair<std::string, std::string>, double> vol;
  for (const auto& r : sol.regions)
    for (const auto& did : r.drones)
      for (const auto& pid : r.members) {
        int p = inst.photo_index(pid);
        if (p < 0)
          throw ValidationError("active_demands: unknown photo id " + pid);
        const auto& owner = inst.photos[p].stored_on;
        if (owner == did) continue;  // already local
        vol[{owner, did}] += inst.photos[p].mu;
      }
  std::vector<Demand> out;
  for (const auto& [key, v] : vol)
    if (v > 0.0) out.push_back(Demand{key.first, key.second, v});
  return out;  // map order = sorted by (from, to)
}

FeasibilityReport validate(const Instance& inst, const CapsacSolution& sol) {
  FeasibilityReport rep;
  rep.coverage_ok = rep.replication_ok = rep.convexity_ok = rep.drones_ok =
      rep.transmission_ok = true;
  auto flag = [&](bool& bit, const std::string& msg) {
    bit = false;
    rep.violations.push_back(msg);
  };

  std::set<std::string> covered;
  bool ids_resolve = true;  // transfers are only computable with real ids
  for (std::size_t i = 0; i < sol.regions.size(); ++i) {
    const auto& r = sol.regions[i];
    const std::string tag = "region " + std::to_string(i);

    for (const auto& did : r.drones) {
      int d = inst.drone_index(did);
      if (d < 0) {
        flag(rep.drones_ok, tag + ": unknown drone " + did);
        ids_resolve = false;
      } else if (!inst.drones[d].capable)
        flag(rep.drones_ok, tag + ": drone " + did + " cannot reconstruct");
    }
    if (static_cast<int>(r.drones.size()) < inst.sigma)
      flag(rep.replication_ok,
           tag + ": assigned to " + std::to_string(r.drones.size()) +
               " drones, needs " + std::to_string(inst.sigma));

    std::vector<int> members;
    bool ids_ok = true;
    for (const auto& pid : r.members) {
      int p = inst.photo_index(pid);
      if (p < 0) {
        flag(rep.coverage_ok, tag + ": unknown photo " + pid);
        ids_ok = false;
        ids_resolve = false;
        continue;
      }
      members.push_back(p);
      covered.insert(pid);
    }
    if (ids_ok) {
      auto inside = photos_in_rectangle(inst.photos, r.boundary);
      std::sort(members.begin(), members.end());
      if (inside != members)
        flag(rep.convexity_ok,
             tag + ": members differ from the photos inside the boundary");
    }
  }

  for (const auto& p : inst.photos)
    if (!covered.count(p.id))
      flag(rep.coverage_ok, "photo " + p.id + " is not covered");

  std::vector<Demand> demands;
  if (ids_resolve) demands = active_demands(inst, sol);
  if (!demands.empty() && inst.bounded_deadline()) {
    auto alloc = mmf_allocate(inst, demands);
    auto times = transmission_times(demands, alloc.rate);
    for (std::size_t i = 0; i < demands.size(); ++i) {
      rep.demand_times.push_back(DemandTime{demands[i].from, demands[i].to,
                                            demands[i].volume, alloc.rate[i],
                                            times[i]});
      if (times[i] > inst.t_hat + 1e-9)
        flag(rep.transmission_ok,
             "transfer " + demands[i].from + " -> " + demands[i].to +
                 " takes " + format_number(times[i]) + " s, deadline " +
                 format_number(inst.t_hat) + " s");
    }
  } else if (!demands.empty()) {
    auto alloc = mmf_allocate(inst, demands);
    auto times = transmission_times(demands, alloc.rate);
    for (std::size_t i = 0; i < demands.size(); ++i)
      rep.demand_times.push_back(DemandTime{demands[i].from, demands[i].to,
                                            demands[i].volume, alloc.rate[i],
                                            times[i]});
  }
  return rep;
}

}  // namespace capsac
