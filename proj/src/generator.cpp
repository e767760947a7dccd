#include "capsac/generator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace capsac {

std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t n) {
  // modulo is fine here: n is tiny compared to 2^64, bias is negligible
  return n == 0 ? 0 : rng() % n;
}

double rand_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double rand_normal(std::mt19937_64& rng, double mean, double stddev) {
  // Box-Muller without the cached second value, so draw counts stay obvious
  double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
  double u2 = rand_unit(rng);
  double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  return mean + stddev * z;
}

std::vector<std::pair<int, int>> random_tree(int n, std::mt19937_64& rng) {
  std::vector<std::pair<int, int>> edges;
  if (n <= 1) return edges;
  if (n == 2) {
    edges.emplace_back(0, 1);
    return edges;
  }
  // uniform Pruefer sequence, then the standard decode
  std::vector<int> seq(n - 2);
  for (auto& v : seq) v = static_cast<int>(rand_below(rng, n));
  std::vector<int> degree(n, 1);
  for (int v : seq) ++degree[v];
  std::set<int> leaves;
  for (int i = 0; i < n; ++i)
    if (degree[i] == 1) leaves.insert(i);
  for (int v : seq) {
    int leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    edges.emplace_back(leaf, v);
    if (--degree[v] == 1) leaves.insert(v);
  }
  int a = *leaves.begin();
  int b = *std::next(leaves.begin());
  edges.emplace_back(a, b);
  return edges;
}

Instance generate_grid_instance(const GridOptions& opt) {
  if (opt.rows < 1 || opt.cols < 1)
    throw ValidationError("grid needs at least one row and one column");
  if (opt.drones < 1) throw ValidationError("need at least one drone");
  if (opt.capable < 1 || opt.capable > opt.drones)
    throw ValidationError("capable count must be in [1, drones]");
  if (!(opt.spacing > 0.0)) throw ValidationError("spacing must be positive");
  if (opt.storage != "sweep" && opt.storage != "random")
    throw ValidationError("unknown storage policy '" + opt.storage +
                          "' (expected sweep or random)");

  std::mt19937_64 rng(opt.seed);
  Instance inst;
  inst.name = opt.name;
  inst.sigma = opt.sigma;
  inst.t_hat = opt.t_hat;

  for (int d = 0; d < opt.drones; ++d) {
    Drone dr;
    dr.id = "d" + std::to_string(d + 1);
    dr.capable = d < opt.capable;
    inst.drones.push_back(std::move(dr));
  }
  for (auto [a, b] : random_tree(opt.drones, rng)) {
    Link l;
    l.a = inst.drones[a].id;
    l.b = inst.drones[b].id;
    l.capacity = opt.capacity;
    inst.links.push_back(std::move(l));
  }

  // photos column by column so the sweep order below matches flight lines
  int k = 0;
  for (int c = 0; c < opt.cols; ++c) {
    for (int r = 0; r < opt.rows; ++r) {
      Photo p;
      p.id = "p" + std::to_string(++k);
      p.lng = c * opt.spacing;
      p.lat = r * opt.spacing;
      p.lambda = opt.lambda;
      p.mu = opt.mu;
      inst.photos.push_back(std::move(p));
    }
  }

  const int np = static_cast<int>(inst.photos.size());
  if (opt.storage == "random") {
    for (auto& p : inst.photos)
      p.stored_on = inst.drones[rand_below(rng, opt.drones)].id;
  } else {
    // boustrophedon over the flight lines: odd columns are flown downwards
    std::vector<int> order;
    order.reserve(np);
    for (int c = 0; c < opt.cols; ++c) {
      if (c % 2 == 0)
        for (int r = 0; r < opt.rows; ++r) order.push_back(c * opt.rows + r);
      else
        for (int r = opt.rows - 1; r >= 0; --r) order.push_back(c * opt.rows + r);
    }
    // split the sweep into contiguous, near-equal segments, one per drone
    int pos = 0;
    for (int d = 0; d < opt.drones; ++d) {
      int len = np / opt.drones + (d < np % opt.drones ? 1 : 0);
      for (int i = 0; i < len; ++i)
        inst.photos[order[pos++]].stored_on = inst.drones[d].id;
    }
  }

  check_instance(inst);
  return inst;
}

namespace {

struct GridIndex {
  std::vector<double> lngs, lats;           // distinct sorted coordinates
  std::map<std::pair<int, int>, int> cell;  // (ci, li) -> photo index
};

GridIndex index_grid(const Instance& inst) {
  GridIndex g;
  std::set<double> xs, ys;
  for (const auto& p : inst.photos) {
    xs.insert(p.lng);
    ys.insert(p.lat);
  }
  g.lngs.assign(xs.begin(), xs.end());
  g.lats.assign(ys.begin(), ys.end());
  auto pos = [](const std::vector<double>& v, double x) {
    return static_cast<int>(std::lower_bound(v.begin(), v.end(), x) - v.begin());
  };
  for (std::size_t i = 0; i < inst.photos.size(); ++i) {
    const auto& p = inst.photos[i];
    auto key = std::make_pair(pos(g.lngs, p.lng), pos(g.lats, p.lat));
    if (!g.cell.emplace(key, static_cast<int>(i)).second)
      throw ValidationError("two photos share a grid cell; weighted recipe "
                            "needs one photo per coordinate pair");
  }
  if (g.cell.size() != g.lngs.size() * g.lats.size())
    throw ValidationError("photos do not form a full coordinate grid");
  return g;
}

}  // namespace

Instance apply_weighted_recipe(const Instance& inst, const WeightOptions& opt) {
  GridIndex grid = index_grid(inst);
  const int nc = static_cast<int>(grid.lngs.size());
  const int nl = static_cast<int>(grid.lats.size());
  const int wanted =
      static_cast<int>(std::ceil(static_cast<double>(inst.photos.size()) * 0.1));
  if (nc < 3 || nl < 3)
    throw ValidationError("grid too small to host the required number of "
                          "disjoint 3x3 blocks");

  std::mt19937_64 rng(opt.seed);

  // candidate block anchors (bottom-left cell of a 3x3 block)
  std::vector<std::pair<int, int>> anchors;
  for (int c = 0; c + 2 < nc; ++c)
    for (int l = 0; l + 2 < nl; ++l) anchors.emplace_back(c, l);

  auto overlaps = [](const std::pair<int, int>& a, const std::pair<int, int>& b) {
    return std::abs(a.first - b.first) < 3 && std::abs(a.second - b.second) < 3;
  };

  // shuffled greedy picks; a handful of restarts covers unlucky shuffles
  std::vector<std::pair<int, int>> chosen;
  for (int attempt = 0; attempt < 64 && static_cast<int>(chosen.size()) < wanted;
       ++attempt) {
    chosen.clear();
    for (std::size_t i = anchors.size(); i > 1; --i)
      std::swap(anchors[i - 1], anchors[rand_below(rng, i)]);
    for (const auto& a : anchors) {
      bool free = true;
      for (const auto& c : chosen)
        if (overlaps(a, c)) {
          free = false;
          break;
        }
      if (free) {
        chosen.push_back(a);
        if (static_cast<int>(chosen.size()) == wanted) break;
      }
    }
  }
  if (static_cast<int>(chosen.size()) < wanted) {
    // aligned tiling as a deterministic fallback before giving up
    chosen.clear();
    for (int c = 0; c + 2 < nc && static_cast<int>(chosen.size()) < wanted; c += 3)
      for (int l = 0; l + 2 < nl && static_cast<int>(chosen.size()) < wanted; l += 3)
        chosen.emplace_back(c, l);
    if (static_cast<int>(chosen.size()) < wanted)
      throw ValidationError("grid too small to host the required number of "
                            "disjoint 3x3 blocks");
  }

  std::sort(chosen.begin(), chosen.end());
  Instance out = inst;
  for (const auto& [c0, l0] : chosen) {
    double lam = rand_normal(rng, opt.mean, opt.stddev);
    if (lam < 1e-3) lam = 1e-3;  // keep loads positive
    for (int dc = 0; dc < 3; ++dc)
      for (int dl = 0; dl < 3; ++dl)
        out.photos[grid.cell.at({c0 + dc, l0 + dl})].lambda = lam;
  }
  if (!out.name.empty() && out.name[0] == 'u') out.name[0] = 'w';
  return out;
}

}  // namespace capsac
