#include "capsac/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <utility>

#include "capsac/network.hpp"

namespace capsac {

namespace {

double choose(double n, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= (n - i) / (i + 1);
  return r;
}

}  // namespace

OracleResult brute_force_optimum(const Instance& inst,
                                 const OracleLimits& limits) {
  return brute_force_catalog(inst, build_catalog(inst, true), limits);
}

OracleResult brute_force_catalog(const Instance& inst,
                                 const SubsetCatalog& catalog,
                                 const OracleLimits& limits) {
  check_instance(inst);
  const std::vector<int> cap = inst.capable_indices();
  const int m = static_cast<int>(cap.size());
  const int ns = static_cast<int>(catalog.entries.size());
  const int np = static_cast<int>(inst.photos.size());
  const int sigma = inst.sigma;
  const double t_hat = inst.t_hat;
  const bool bounded = inst.bounded_deadline();

  if (static_cast<std::size_t>(ns) > limits.max_catalog)
    throw ValidationError("oracle: catalog has " + std::to_string(ns) +
                          " subsets, limit is " +
                          std::to_string(limits.max_catalog));
  double estimate = choose(double(ns) + m - 1, m);
  if (sigma == 1 && bounded) {
    double fact = 1.0;
    for (int i = 2; i <= m; ++i) fact *= i;
    estimate *= fact;
  } else if (sigma >= 2) {
    estimate *= std::pow(choose(m, sigma), m);
  }
  if (estimate > limits.max_candidates)
    throw ValidationError("oracle: about " + format_number(estimate) +
                          " candidates, limit is " +
                          format_number(limits.max_candidates));

  // coverage bitmasks per catalog entry
  const int words = (np + 63) / 64;
  std::vector<std::vector<std::uint64_t>> mask(
      ns, std::vector<std::uint64_t>(words, 0));
  for (int s = 0; s < ns; ++s)
    for (int p : catalog.entries[s].members)
      mask[s][p >> 6] |= std::uint64_t(1) << (p & 63);
  std::vector<std::uint64_t> full(words, 0);
  for (int p = 0; p < np; ++p) full[p >> 6] |= std::uint64_t(1) << (p & 63);

  // assignment building blocks: singletons for sigma = 1, otherwise every
  // sigma-subset of the capable positions, lexicographic
  std::vector<std::vector<int>> droneSets;
  if (sigma == 1) {
    for (int d = 0; d < m; ++d) droneSets.push_back({d});
  } else {
    std::vector<int> pick(sigma);
    for (int i = 0; i < sigma; ++i) pick[i] = i;
    for (;;) {
      droneSets.push_back(pick);
      int i = sigma - 1;
      while (i >= 0 && pick[i] == m - sigma + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < sigma; ++j) pick[j] = pick[j - 1] + 1;
    }
  }

  double best = std::numeric_limits<double>::infinity();
  std::vector<int> bestSlots;
  std::vector<std::vector<int>> bestSets;
  std::uint64_t examined = 0;
  std::map<std::vector<std::pair<int, int>>, std::vector<double>> rateMemo;

  auto evaluate = [&](const std::vector<int>& slots,
                      const std::vector<const std::vector<int>*>& assign) {
    ++examined;
    std::vector<double> load(m, 0.0);
    for (int i = 0; i < m; ++i)
      for (int d : *assign[i]) load[d] += catalog.entries[slots[i]].t;
    double mk = 0.0;
    for (double v : load) mk = std::max(mk, v);
    if (mk >= best) return;  // cannot strictly improve; first hit wins ties
    if (bounded) {
      std::map<std::pair<int, int>, double> vol;  // (holder, position) -> MB
      for (int i = 0; i < m; ++i) {
        const auto& e = catalog.entries[slots[i]];
        for (int d : *assign[i])
          for (const auto& [h, v] : e.volume_from)
            if (h != cap[d]) vol[{h, d}] += v;
      }
      if (!vol.empty()) {
        std::vector<std::pair<int, int>> key;
        key.reserve(vol.size());
        for (const auto& kv : vol) key.push_back(kv.first);
        auto it = rateMemo.find(key);
        if (it == rateMemo.end()) {
          std::vector<Demand> ds;  // rates ignore volumes
          for (const auto& hd : key)
            ds.push_back({inst.drones[hd.first].id,
                          inst.drones[cap[hd.second]].id, 1.0});
          it = rateMemo.emplace(key, mmf_allocate(inst, ds).rate).first;
        }
        std::size_t j = 0;
        for (const auto& kv : vol)
          if (kv.second / it->second[j++] > t_hat + 1e-9) return;
      }
    }
    best = mk;
    bestSlots = slots;
    bestSets.clear();
    for (const auto* a : assign) bestSets.push_back(*a);
  };

  std::vector<const std::vector<int>*> diag(m);
  for (int d = 0; d < m; ++d) diag[d] = &droneSets[d];

  std::vector<int> slots(m);
  auto handle = [&]() {
    std::vector<std::uint64_t> got(words, 0);
    for (int i = 0; i < m; ++i)
      for (int w = 0; w < words; ++w) got[w] |= mask[slots[i]][w];
    if (got != full) {
      ++examined;
      return;
    }
    if (sigma == 1 && !bounded) {
      evaluate(slots, diag);  // pairing is irrelevant without a deadline
    } else if (sigma == 1) {
      std::vector<int> seq = slots;  // non-decreasing, so permutations start
      do {
        evaluate(seq, diag);
      } while (std::next_permutation(seq.begin(), seq.end()));
    } else {
      const int nsets = static_cast<int>(droneSets.size());
      std::vector<int> choice(m, 0);
      std::vector<const std::vector<int>*> assign(m);
      for (;;) {
        for (int i = 0; i < m; ++i) assign[i] = &droneSets[choice[i]];
        evaluate(slots, assign);
        int i = m - 1;
        while (i >= 0 && ++choice[i] == nsets) choice[i--] = 0;
        if (i < 0) break;
      }
    }
  };
  std::function<void(int, int)> rec = [&](int i, int lo) {
    if (i == m) {
      handle();
      return;
    }
    for (int s = lo; s < ns; ++s) {
      slots[i] = s;
      rec(i + 1, s);
    }
  };
  rec(0, 0);

  OracleResult out;
  out.examined = examined;
  if (!std::isfinite(best)) {
    out.status = SolveStatus::Infeasible;
    out.solution.status = SolveStatus::Infeasible;
    return out;
  }
  out.status = SolveStatus::Optimal;
  out.objective = best;
  out.solution.status = SolveStatus::Optimal;
  out.solution.objective = best;
  for (int i = 0; i < m; ++i) {
    const auto& e = catalog.entries[bestSlots[i]];
    SolutionRegion reg;
    reg.boundary = e.boundary;
    for (int p : e.members) reg.members.push_back(inst.photos[p].id);
    for (int d : bestSets[i]) reg.drones.push_back(inst.drones[cap[d]].id);
    std::sort(reg.members.begin(), reg.members.end());
    std::sort(reg.drones.begin(), reg.drones.end());
    out.solution.regions.push_back(std::move(reg));
  }
  return out;
}

}  // namespace capsac
