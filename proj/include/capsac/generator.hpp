#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "capsac/instance.hpp"

namespace capsac {

struct GridOptions {
  int rows = 1;         // distinct latitudes
  int cols = 1;         // distinct longitudes
  double spacing = 1.0; // grid pitch in both axes
  int drones = 1;
  int capable = 1;      // first `capable` drones get the reconstruction flag
  double capacity = 10.0;
  double lambda = 26.72;
  double mu = 5.0;
  std::string storage = "sweep";  // "sweep" or "random"
  int sigma = 1;
  double t_hat = kUnbounded;
  std::uint64_t seed = 0;
  std::string name;     // optional label stamped on the instance
};

// Full rows x cols photo grid over a random spanning tree of drones.
// Deterministic for a fixed option set (seed included).
Instance generate_grid_instance(const GridOptions& opt);

struct WeightOptions {
  double mean = 26.72;
  double stddev = 5.0;
  std::uint64_t seed = 0;
};

// Re-draws lambda on ceil(|P| * 0.1) disjoint 3x3 photo blocks: one normal
// draw per block shared by its nine photos, clamped positive.  Requires the
// photos to form a full coordinate grid.
Instance apply_weighted_recipe(const Instance& inst, const WeightOptions& opt);

// Seed-stable randomness helpers.  The std:: distributions are not pinned
// across standard libraries, so sampling is spelled out here.
std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t n);
double rand_unit(std::mt19937_64& rng);                 // [0, 1)
double rand_normal(std::mt19937_64& rng, double mean, double stddev);

// Uniform random labelled tree on n nodes; returns edge list (a, b) pairs.
std::vector<std::pair<int, int>> random_tree(int n, std::mt19937_64& rng);

}  // namespace capsac
