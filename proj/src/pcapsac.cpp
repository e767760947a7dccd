#include "capsac/pcapsac.hpp"

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

PcapsacModel build_pcapsac(const Instance& inst, const PcapsacConfig& cfg) {
  check_instance(inst);
  PcapsacModel out;
  out.cap = inst.capable_indices();
  out.axes = build_axes(inst.photos);
  out.sigma = cfg.sigma.value_or(inst.sigma);
  out.t_hat = cfg.t_hat.value_or(inst.t_hat);
  if (out.sigma < 1 || out.sigma > static_cast<int>(out.cap.size()))
    throw ValidationError("sigma must be in [1, capable drone count]");
  if (!(out.t_hat > 0.0))
    throw ValidationError("t_hat must be positive or unbounded");

  LinearModel& M = out.model;
  M.name = inst.name.empty() ? "capsac" : inst.name;
  PcapsacVars& V = out.vars;

  const int np = static_cast<int>(inst.photos.size());
  const int m = static_cast<int>(out.cap.size());
  const int nc = static_cast<int>(out.axes.lngs.size());
  const int nl = static_cast<int>(out.axes.lats.size());
  const bool bounded = out.t_hat != kUnbounded;

  // ---------- variables ----------
  V.y.assign(m, std::vector<int>(np));
  for (int r = 0; r < m; ++r)
    for (int p = 0; p < np; ++p)
      V.y[r][p] = M.add_binary(nm("y_r", r, "_p", p));

  V.x.assign(m, std::vector<int>(m));
  for (int r = 0; r < m; ++r)
    for (int d = 0; d < m; ++d)
      V.x[r][d] = M.add_binary(nm("x_r", r, "_d", out.cap[d]));

  V.g.assign(m, std::vector<std::vector<int>>(m, std::vector<int>(np)));
  for (int r = 0; r < m; ++r)
    for (int d = 0; d < m; ++d)
      for (int p = 0; p < np; ++p)
        V.g[r][d][p] = M.add_binary(nm("g_r", r, "_d", out.cap[d], "_p", p));

  V.al.assign(m, std::vector<int>(nc));
  V.be.assign(m, std::vector<int>(nc));
  V.ga.assign(m, std::vector<int>(nl));
  V.om.assign(m, std::vector<int>(nl));
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < nc; ++c) {
      V.al[r][c] = M.add_binary(nm("al_r", r, "_c", c));
      V.be[r][c] = M.add_binary(nm("be_r", r, "_c", c));
    }
    for (int l = 0; l < nl; ++l) {
      V.ga[r][l] = M.add_binary(nm("ga_r", r, "_l", l));
      V.om[r][l] = M.add_binary(nm("om_r", r, "_l", l));
    }
  }

  V.tmax = M.add_continuous("tmax", 0.0, kUnbounded);

  // ---------- coverage and replication ----------
  for (int p = 0; p < np; ++p) {
    std::vector<std::pair<int, double>> t;
    for (int r = 0; r < m; ++r) t.emplace_back(V.y[r][p], 1.0);
    M.add_con(nm("cover_p", p), std::move(t), Sense::GE, 1.0);
  }
  for (int r = 0; r < m; ++r) {
    std::vector<std::pair<int, double>> t;
    for (int d = 0; d < m; ++d) t.emplace_back(V.x[r][d], 1.0);
    M.add_con(nm("rep_r", r), std::move(t), Sense::GE, out.sigma);
  }

  // ---------- linearized x*y products ----------
  for (int r = 0; r < m; ++r)
    for (int d = 0; d < m; ++d)
      for (int p = 0; p < np; ++p) {
        M.add_con(nm("mcx_r", r, "_d", out.cap[d], "_p", p),
                  {{V.g[r][d][p], 1.0}, {V.x[r][d], -1.0}}, Sense::LE, 0.0);
        M.add_con(nm("mcy_r", r, "_d", out.cap[d], "_p", p),
                  {{V.g[r][d][p], 1.0}, {V.y[r][p], -1.0}}, Sense::LE, 0.0);
        M.add_con(nm("mcb_r", r, "_d", out.cap[d], "_p", p),
                  {{V.g[r][d][p], 1.0},
                   {V.x[r][d], -1.0},
                   {V.y[r][p], -1.0}},
                  Sense::GE, -1.0);
      }

  // ---------- one border per side ----------
  for (int r = 0; r < m; ++r) {
    std::vector<std::pair<int, double>> aa, bb, gg, oo;
    for (int c = 0; c < nc; ++c) {
      aa.emplace_back(V.al[r][c], 1.0);
      bb.emplace_back(V.be[r][c], 1.0);
    }
    for (int l = 0; l < nl; ++l) {
      gg.emplace_back(V.ga[r][l], 1.0);
      oo.emplace_back(V.om[r][l], 1.0);
    }
    M.add_con(nm("onel_r", r), std::move(aa), Sense::EQ, 1.0);
    M.add_con(nm("oner_r", r), std::move(bb), Sense::EQ, 1.0);
    M.add_con(nm("oneb_r", r), std::move(gg), Sense::EQ, 1.0);
    M.add_con(nm("onet_r", r), std::move(oo), Sense::EQ, 1.0);
  }

  // ---------- boundary consistency ----------
  std::vector<BorderSets> bs;
  bs.reserve(np);
  for (const auto& p : inst.photos) bs.push_back(border_index_sets(p, out.axes));

  // members must sit inside all four borders
  for (int r = 0; r < m; ++r)
    for (int p = 0; p < np; ++p) {
      auto row = [&](const char* tag, const std::vector<int>& set,
                     const std::vector<int>& vars) {
        std::vector<std::pair<int, double>> t{{V.y[r][p], 1.0}};
        for (int i : set) t.emplace_back(vars[i], -1.0);
        M.add_con(std::string(tag) + std::to_string(r) + "_p" +
                      std::to_string(p),
                  std::move(t), Sense::LE, 0.0);
      };
      row("inl_r", bs[p].left, V.al[r]);
      row("inr_r", bs[p].right, V.be[r]);
      row("inb_r", bs[p].bottom, V.ga[r]);
      row("int_r", bs[p].top, V.om[r]);
    }

  // non-members must fall outside at least one border
  for (int r = 0; r < m; ++r)
    for (int p = 0; p < np; ++p) {
      if (cfg.bc == PcapsacConfig::Bc::Bc0Bar) {
        // sum over excluding border positions >= 1 - y
        std::vector<std::pair<int, double>> t{{V.y[r][p], 1.0}};
        for (int c = 0; c < nc; ++c) {
          if (out.axes.lngs[c] > inst.photos[p].lng)
            t.emplace_back(V.al[r][c], 1.0);
          if (out.axes.lngs[c] < inst.photos[p].lng)
            t.emplace_back(V.be[r][c], 1.0);
        }
        for (int l = 0; l < nl; ++l) {
          if (out.axes.lats[l] > inst.photos[p].lat)
            t.emplace_back(V.ga[r][l], 1.0);
          if (out.axes.lats[l] < inst.photos[p].lat)
            t.emplace_back(V.om[r][l], 1.0);
        }
        M.add_con(nm("out_r", r, "_p", p), std::move(t), Sense::GE, 1.0);
      } else {
        // at most three including borders unless the photo is a member
        std::vector<std::pair<int, double>> t{{V.y[r][p], -1.0}};
        for (int i : bs[p].left) t.emplace_back(V.al[r][i], 1.0);
        for (int i : bs[p].right) t.emplace_back(V.be[r][i], 1.0);
        for (int i : bs[p].bottom) t.emplace_back(V.ga[r][i], 1.0);
        for (int i : bs[p].top) t.emplace_back(V.om[r][i], 1.0);
        M.add_con(nm("out_r", r, "_p", p), std::move(t), Sense::LE, 3.0);
      }
    }

  // ---------- border ordering cuts ----------
  if (cfg.ordering_cuts) {
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < nc; ++c) {
        // right border at or beyond the left one, and vice versa
        std::vector<std::pair<int, double>> t{{V.al[r][c], 1.0}};
        for (int j = c; j < nc; ++j) t.emplace_back(V.be[r][j], -1.0);
        M.add_con(nm("ordl_r", r, "_c", c), std::move(t), Sense::LE, 0.0);
        std::vector<std::pair<int, double>> t2{{V.be[r][c], 1.0}};
        for (int j = 0; j <= c; ++j) t2.emplace_back(V.al[r][j], -1.0);
        M.add_con(nm("ordr_r", r, "_c", c), std::move(t2), Sense::LE, 0.0);
      }
      for (int l = 0; l < nl; ++l) {
        std::vector<std::pair<int, double>> t{{V.ga[r][l], 1.0}};
        for (int j = l; j < nl; ++j) t.emplace_back(V.om[r][j], -1.0);
        M.add_con(nm("ordb_r", r, "_l", l), std::move(t), Sense::LE, 0.0);
        std::vector<std::pair<int, double>> t2{{V.om[r][l], 1.0}};
        for (int j = 0; j <= l; ++j) t2.emplace_back(V.ga[r][j], -1.0);
        M.add_con(nm("ordt_r", r, "_l", l), std::move(t2), Sense::LE, 0.0);
      }
    }
  }

  // ---------- makespan ----------
  for (int d = 0; d < m; ++d) {
    std::vector<std::pair<int, double>> t{{V.tmax, -1.0}};
    for (int r = 0; r < m; ++r)
      for (int p = 0; p < np; ++p)
        t.emplace_back(V.g[r][d][p], inst.photos[p].lambda);
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
      // data present on h for regions processed by cap[d]
      std::vector<std::pair<int, double>> cnt{{V.z[key], 1.0}};
      std::vector<std::pair<int, double>> vol{{V.ph[key], out.t_hat}};
      bool any = false;
      for (int r = 0; r < m; ++r)
        for (int p = 0; p < np; ++p) {
          if (inst.photos[p].stored_on != inst.drones[h].id) continue;
          cnt.emplace_back(V.g[r][d][p], -1.0);
          vol.emplace_back(V.g[r][d][p], -inst.photos[p].mu);
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

      // each active transfer owns a saturated link where its rate is maximal
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

  // ---------- symmetry fixing ----------
  if (cfg.symmetry_fix)
    for (int r = 0; r < m; ++r) M.fix(V.x[r][r], 1.0);

  // ---------- branching hints ----------
  if (cfg.branch != PcapsacConfig::Branch::Default) {
    int border_prio = cfg.branch == PcapsacConfig::Branch::BordersFirst ? 2 : 1;
    int member_prio = cfg.branch == PcapsacConfig::Branch::BordersFirst ? 1 : 2;
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < nc; ++c) {
        M.priority[M.vars[V.al[r][c]].name] = border_prio;
        M.priority[M.vars[V.be[r][c]].name] = border_prio;
      }
      for (int l = 0; l < nl; ++l) {
        M.priority[M.vars[V.ga[r][l]].name] = border_prio;
        M.priority[M.vars[V.om[r][l]].name] = border_prio;
      }
      for (int p = 0; p < np; ++p)
        M.priority[M.vars[V.y[r][p]].name] = member_prio;
    }
  }

  return out;
}

CapsacSolution decode_pcapsac(const Instance& inst, const PcapsacModel& built,
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
  const int np = static_cast<int>(inst.photos.size());
  for (int r = 0; r < m; ++r) {
    SolutionRegion reg;
    for (int p = 0; p < np; ++p)
      if (binval(built.vars.y[r][p])) reg.members.push_back(inst.photos[p].id);
    for (int d = 0; d < m; ++d)
      if (binval(built.vars.x[r][d]))
        reg.drones.push_back(inst.drones[built.cap[d]].id);
    auto pick = [&](const std::vector<int>& vars,
                    const std::vector<double>& axis) {
      for (std::size_t i = 0; i < vars.size(); ++i)
        if (binval(vars[i])) return axis[i];
      throw ValidationError("decode: a region is missing a border");
    };
    reg.boundary.left = pick(built.vars.al[r], built.axes.lngs);
    reg.boundary.right = pick(built.vars.be[r], built.axes.lngs);
    reg.boundary.bottom = pick(built.vars.ga[r], built.axes.lats);
    reg.boundary.top = pick(built.vars.om[r], built.axes.lats);
    std::sort(reg.members.begin(), reg.members.end());
    std::sort(reg.drones.begin(), reg.drones.end());
    out.regions.push_back(std::move(reg));
  }
  return out;
}

}  // namespace capsac
