#include "capsac/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace capsac {

namespace {

// adjacency as (neighbour node, link index) lists
std::vector<std::vector<std::pair<int, int>>> adjacency(const Instance& inst) {
  std::vector<std::vector<std::pair<int, int>>> adj(inst.drones.size());
  for (std::size_t k = 0; k < inst.links.size(); ++k) {
    int a = inst.drone_index(inst.links[k].a);
    int b = inst.drone_index(inst.links[k].b);
    adj[a].emplace_back(b, static_cast<int>(k));
    adj[b].emplace_back(a, static_cast<int>(k));
  }
  return adj;
}

}  // namespace

std::vector<int> unique_path(const Instance& inst, const std::string& from,
                             const std::string& to) {
  int s = inst.drone_index(from);
  int t = inst.drone_index(to);
  if (s < 0 || t < 0)
    throw ValidationError("unique_path: unknown drone '" + (s < 0 ? from : to) +
                          "'");
  if (s == t) return {};
  auto adj = adjacency(inst);
  // iterative DFS over the tree; remember the incoming link per node
  std::vector<int> via_link(inst.drones.size(), -1);
  std::vector<int> parent(inst.drones.size(), -1);
  std::vector<int> stack{s};
  parent[s] = s;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    if (u == t) break;
    for (auto [v, k] : adj[u]) {
      if (parent[v] != -1) continue;
      parent[v] = u;
      via_link[v] = k;
      stack.push_back(v);
    }
  }
  std::vector<int> path;
  for (int u = t; u != s; u = parent[u]) path.push_back(via_link[u]);
  std::reverse(path.begin(), path.end());
  return path;
}

double bottleneck_capacity(const Instance& inst, const std::string& from,
                           const std::string& to) {
  double cap = std::numeric_limits<double>::infinity();
  for (int k : unique_path(inst, from, to))
    cap = std::min(cap, inst.links[k].capacity);
  return cap;
}

MmfAllocation mmf_allocate(const Instance& inst,
                           const std::vector<Demand>& demands) {
  const int nd = static_cast<int>(demands.size());
  const int nl = static_cast<int>(inst.links.size());
  std::vector<std::vector<int>> path(nd);
  std::vector<std::vector<int>> crossing(nl);  // link -> demand indices
  for (int i = 0; i < nd; ++i) {
    if (demands[i].from == demands[i].to)
      throw ValidationError("mmf_allocate: demand from a drone to itself");
    path[i] = unique_path(inst, demands[i].from, demands[i].to);
    for (int k : path[i]) crossing[k].push_back(i);
  }

  MmfAllocation out;
  out.rate.assign(nd, 0.0);
  out.witness_link.assign(nd, -1);
  std::vector<bool> frozen(nd, false);
  int remaining = nd;
  double level = 0.0;  // common rate of all unfrozen demands

  while (remaining > 0) {
    // next saturation level over links still carrying unfrozen demands
    double next = std::numeric_limits<double>::infinity();
    int tight = -1;
    for (int k = 0; k < nl; ++k) {
      double used = 0.0;
      int open = 0;
      for (int i : crossing[k]) {
        if (frozen[i])
          used += out.rate[i];
        else
          ++open;
      }
      if (open == 0) continue;
      double cand = (inst.links[k].capacity - used) / open;
      if (cand < next - 1e-12) {
        next = cand;
        tight = k;
      }
    }
    if (tight < 0) {
      // no capacity constraint applies (demands with empty paths cannot
      // occur: from != to on a tree means at least one link)
      throw ValidationError("mmf_allocate: no saturating link found");
    }
    level = next;
    // freeze every unfrozen demand on any link saturating at this level
    for (int k = 0; k < nl; ++k) {
      double used = 0.0;
      int open = 0;
      for (int i : crossing[k]) {
        if (frozen[i])
          used += out.rate[i];
        else
          ++open;
      }
      if (open == 0) continue;
      double cand = (inst.links[k].capacity - used) / open;
      if (cand <= level + 1e-9) {
        for (int i : crossing[k]) {
          if (frozen[i]) continue;
          frozen[i] = true;
          out.rate[i] = level;
          out.witness_link[i] = k;
          --remaining;
        }
      }
    }
  }
  return out;
}

std::vector<double> transmission_times(const std::vector<Demand>& demands,
                                       const std::vector<double>& rates) {
  if (demands.size() != rates.size())
    throw ValidationError("transmission_times: size mismatch");
  std::vector<double> out(demands.size());
  for (std::size_t i = 0; i < demands.size(); ++i) {
    if (!(rates[i] > 0.0))
      throw ValidationError("transmission_times: nonpositive rate");
    out[i] = demands[i].volume / rates[i];
  }
  return out;
}

}  // namespace capsac
