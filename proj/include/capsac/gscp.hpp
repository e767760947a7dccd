#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "capsac/instance.hpp"
#include "capsac/rcapsac.hpp"
#include "capsac/solver.hpp"

namespace capsac {

// Unweighted geometric set covering with axis-aligned s x s squares:
// can k squares cover all the points?
struct GscpInstance {
  struct Point {
    double x = 0.0, y = 0.0;
  };
  std::vector<Point> points;
  double side = 1.0;
  int k = 1;
};

void check_gscp(const GscpInstance& g);
GscpInstance parse_gscp(const std::string& json_text);
std::string write_gscp(const GscpInstance& g);  // deterministic JSON

// Distinct point subsets a square can cover.  Candidate placements put the
// square's left edge on some point's x and its bottom edge on some point's
// y; that grid realizes every achievable subset.  Sorted, deduplicated.
std::vector<std::vector<int>> induced_collection(
    const std::vector<GscpInstance::Point>& points, double side);

struct GscpReduction {
  Instance instance;      // points as photos, k drones, sigma = 1
  SubsetCatalog catalog;  // subset cost 1 when square-coverable, else `big`
  double big = 0.0;       // k + 2: poisons any non-coverable selection
};

// Covering-assignment instance whose optimal makespan answers the GSCP
// question: k squares suffice iff the optimum is 1.  The drone tree is
// seeded but immaterial (huge capacities, no transmission deadline).
GscpReduction reduce_to_capsac(const GscpInstance& g, std::uint64_t seed = 1);

// solver: "oracle" (exhaustive) or "milp" (external backend via opts).
bool answer_gscp(const GscpInstance& g, const std::string& solver = "oracle",
                 const SolveOptions& opts = {}, std::uint64_t seed = 1);

}  // namespace capsac
