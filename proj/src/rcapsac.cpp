#include "capsac/rcapsac.hpp"

#include <algorithm>
#include <cmath>

#include "capsac/evaluate.hpp"
#include "capsac/network.hpp"

namespace capsac {

namespace {

std::string nm(const std::string& stem, int a) {
  return stem + std::to_string(a);
}
std::string nm(const std::string& stem, int a, const std::string& s2, int b) {
  return stem + std::to_string(a) + s2 + std::to_string(b);
}
std::string nm(const std::string& stem, int a, const std::string& s2, int b,
               const std::string& s3, int c) {
  return stem + std::to_string(a) + s2 + std::to_string(b) + s3 +
         std::to_string(c);
}

}  // namespace

SubsetCatalog build_catalog(const Instance& inst, bool empty_subset) {
  SubsetCatalog cat;
  if (empty_subset) {
    SubsetCatalog::Entry none;
    none.boundary = bounding_rect(inst.photos, {});  // reversed: holds nothing
    cat.entries.push_back(std::move(none));
    cat.has_empty = true;
  }
  Axes axes = build_axes(inst.photos);
  for (const RectEntry& re : enumerate_rectangles(inst.photos, axes)) {
    SubsetCatalog::Entry e;
    e.boundary = re.boundary;
    e.members = re.members;
    for (int p : re.members) {
      e.t += inst.photos[p].lambda;
      int h = inst.drone_index(inst.photos[p].stored_on);
      e.volume_from[h] += inst.photos[p].mu;
    }
    cat.entries.push_back(std::move(e));
  }
  return cat;
}

RcapsacModel build_rcapsac(const Instance& inst, const RcapsacConfig& cfg) {
  return build_rcapsac(inst, build_catalog(inst, cfg.empty_subset), cfg);
}

RcapsacModel build_rcapsac(const Instance& inst, const SubsetCatalog& catalog,
                           const RcapsacConfig& cfg) {
  check_instance(inst);
  RcapsacModel out;
  out.catalog = catalog;
  out.cap = inst.capable_indices();
  out.sigma = cfg.sigma.value_or(inst.sigma);
  out.t_hat = cfg.t_hat.value_or(inst.t_hat);
  if (out.sigma < 1 || out.sigma > static_cast<int>(out.cap.size()))
    throw ValidationError("sigma must be in [1, capable drone count]");
  if (!(out.t_hat > 0.0))
    throw ValidationError("t_hat must be positive or unbounded");

  const int m = static_cast<int>(out.cap.size());
  const int ns = static_cast<int>(catalog.entries.size());
  const int np = static_cast<int>(inst.photos.size());
  const bool bounded = out.t_hat != kUnbounded;
  if (m > ns)
    throw ValidationError("catalog has only " + std::to_string(ns) +
                          " subsets for " + std::to_string(m) +
                          " sub-regions; enable the empty subset or add more");

  LinearModel& M = out.model;
  M.name = inst.name.empty() ? "capsac" : inst.name;
  RcapsacVars& V = out.vars;

  // ---------- variables ----------
  V.o.resize(ns);
  for (int s = 0; s < ns; ++s) V.o[s] = M.add_binary(nm("o_s", s));
  V.q.assign(ns, std::vector<int>(m));
  for (int s = 0; s < ns; ++s)
    for (int d = 0; d < m; ++d)
      V.q[s][d] = M.add_binary(nm("q_s", s, "_d", out.cap[d]));
  V.tmax = M.add_continuous("tmax", 0.0, kUnbounded);

  // ---------- coverage ----------
  std::vector<std::vector<int>> holding(np);  // photo -> catalog entries
  for (int s = 0; s < ns; ++s)
    for (int p : catalog.entries[s].members) holding[p].push_back(s);
  for (int p = 0; p < np; ++p) {
    if (holding[p].empty())
      throw ValidationError("catalog covers photo " + inst.photos[p].id +
                            " with no subset");
    std::vector<std::pair<int, double>> t;
    for (int s : holding[p]) t.emplace_back(V.o[s], 1.0);
    M.add_con(nm("cover_p", p), std::move(t), Sense::GE, 1.0);
  }

  // ---------- selection count and replication ----------
  {
    std::vector<std::pair<int, double>> t;
    for (int s = 0; s < ns; ++s) t.emplace_back(V.o[s], 1.0);
    M.add_con("sel", std::move(t), Sense::EQ, m);
  }
  for (int s = 0; s < ns; ++s) {
    std::vector<std::pair<int, double>> t{{V.o[s], -double(out.sigma)}};
    for (int d = 0; d < m; ++d) t.emplace_back(V.q[s][d], 1.0);
    M.add_con(nm("rep_s", s), std::move(t), Sense::GE, 0.0);
    for (int d = 0; d < m; ++d)
      M.add_con(nm("qo_s", s, "_d", out.cap[d]),
                {{V.q[s][d], 1.0}, {V.o[s], -1.0}}, Sense::LE, 0.0);
  }

  // ---------- makespan ----------
  for (int d = 0; d < m; ++d) {
    std::vector<std::pair<int, double>> t{{V.tmax, -1.0}};
    for (int s = 0; s < ns; ++s)
      if (catalog.entries[s].t != 0.0)
        t.emplace_back(V.q[s][d], catalog.entries[s].t);
    M.add_con(nm("load_d", out.cap[d]), std::move(t), Sense::LE, 0.0);
  }
  M.objective = {{V.tmax, 1.0}};

  // ---------- transmission deadline ----------
  if (bounded) {
    const int nd = static_cast<int>(inst.drones.size());
    const int nlinks = static_cast<int>(inst.links.size());
    std::map<std::pair<int, int>, std::vector<int>> paths;
    std::vector<std::vector<std::pair<int, int>>> crossing(nlinks);
    for (int h = 0; h < nd; ++h)
      for (int d = 0; d < m; ++d) {
        if (h == out.cap[d]) continue;
        auto key = std::make_pair(h, d);
        paths[key] = unique_path(inst, inst.drones[h].id,
                                 inst.drones[out.cap[d]].id);
        for (int k : paths[key]) crossing[k].push_back(key);
        V.z[key] = M.add_binary(nm("z_h", h, "_d", out.cap[d]));
        V.ph[key] =
            M.add_continuous(nm("ph_h", h, "_d", out.cap[d]), 0.0, kUnbounded);
        for (int k : paths[key])
          V.w[{h, d, k}] =
              M.add_binary(nm("w_h", h, "_d", out.cap[d], "_a", k));
      }
    V.u.resize(nlinks);
    for (int k = 0; k < nlinks; ++k)
      V.u[k] = M.add_continuous(nm("u_a", k), 0.0, kUnbounded);

    for (auto& [key, path] : paths) {
      auto [h, d] = key;
      std::vector<std::pair<int, double>> cnt{{V.z[key], 1.0}};
      std::vector<std::pair<int, double>> vol{{V.ph[key], out.t_hat}};
      bool any = false;
      for (int s = 0; s < ns; ++s) {
        auto it = catalog.entries[s].volume_from.find(h);
        if (it == catalog.entries[s].volume_from.end() || it->second <= 0.0)
          continue;
        cnt.emplace_back(V.q[s][d], -it->second);
        vol.emplace_back(V.q[s][d], -it->second);
        any = true;
      }
      M.add_con(nm("zdat_h", h, "_d", out.cap[d]), std::move(cnt), Sense::LE,
                0.0);
      double cbar = bottleneck_capacity(inst, inst.drones[h].id,
                                        inst.drones[out.cap[d]].id);
      M.add_con(nm("rate_h", h, "_d", out.cap[d]),
                {{V.ph[key], 1.0}, {V.z[key], -cbar}}, Sense::LE, 0.0);
      if (any)
        M.add_con(nm("need_h", h, "_d", out.cap[d]), std::move(vol), Sense::GE,
                  0.0);

      std::vector<std::pair<int, double>> wsum{{V.z[key], -1.0}};
      for (int k : path) wsum.emplace_back(V.w[{h, d, k}], 1.0);
      M.add_con(nm("bneck_h", h, "_d", out.cap[d]), std::move(wsum), Sense::GE,
                0.0);
      for (int k : path) {
        double ck = inst.links[k].capacity;
        M.add_con(nm("wz_h", h, "_d", out.cap[d], "_a", k),
                  {{V.w[{h, d, k}], 1.0}, {V.z[key], -1.0}}, Sense::LE, 0.0);
        // witness link must be saturated: sum of crossing rates >= ck * w
        std::vector<std::pair<int, double>> sat{{V.w[{h, d, k}], -ck}};
        for (auto& other : crossing[k]) sat.emplace_back(V.ph[other], 1.0);
        M.add_con(nm("bsat_h", h, "_d", out.cap[d], "_a", k), std::move(sat),
                  Sense::GE, 0.0);
        M.add_con(nm("bmax_h", h, "_d", out.cap[d], "_a", k),
                  {{V.u[k], 1.0}, {V.ph[key], -1.0}, {V.w[{h, d, k}], ck}},
                  Sense::LE, ck);
      }
    }
    for (int k = 0; k < nlinks; ++k) {
      std::vector<std::pair<int, double>> t;
      for (auto& key : crossing[k]) t.emplace_back(V.ph[key], 1.0);
      if (!t.empty())
        M.add_con(nm("lcap_a", k), std::move(t), Sense::LE,
                  inst.links[k].capacity);
      for (auto& key : crossing[k])
        M.add_con(nm("lmax_h", key.first, "_d", out.cap[key.second], "_a", k),
                  {{V.u[k], 1.0}, {V.ph[key], -1.0}}, Sense::GE, 0.0);
    }
  }

  return out;
}

CapsacSolution decode_rcapsac(const Instance& inst, const RcapsacModel& built,
                              const ModelSolution& sol) {
  CapsacSolution out;
  out.status = sol.status;
  out.objective = sol.objective;
  if (sol.status != SolveStatus::Optimal && sol.status != SolveStatus::Feasible &&
      sol.status != SolveStatus::TimeLimit)
    return out;

  const LinearModel& M = built.model;
  auto binval = [&](int idx) {
    double v = sol.value(M.vars[idx].name);
    if (std::fabs(v) > 1e-4 && std::fabs(v - 1.0) > 1e-4)
      throw ValidationError("decode: variable " + M.vars[idx].name +
                            " is fractional: " + format_number(v));
    return v > 0.5;
  };

  const int m = static_cast<int>(built.cap.size());
  const int ns = static_cast<int>(built.catalog.entries.size());
  for (int s = 0; s < ns; ++s) {
    if (!binval(built.vars.o[s])) continue;
    const auto& e = built.catalog.entries[s];
    SolutionRegion reg;
    reg.boundary = e.boundary;
    for (int p : e.members) reg.members.push_back(inst.photos[p].id);
    for (int d = 0; d < m; ++d)
      if (binval(built.vars.q[s][d]))
        reg.drones.push_back(inst.drones[built.cap[d]].id);
    std::sort(reg.members.begin(), reg.members.end());
    std::sort(reg.drones.begin(), reg.drones.end());
    out.regions.push_back(std::move(reg));
  }
  if (static_cast<int>(out.regions.size()) != m)
    throw ValidationError("decode: expected " + std::to_string(m) +
                          " selected subsets, found " +
                          std::to_string(out.regions.size()));
  return out;
}

}  // namespace capsac
