#pragma once

#include <cstdint>

#include "capsac/evaluate.hpp"
#include "capsac/instance.hpp"
#include "capsac/rcapsac.hpp"

namespace capsac {

struct OracleLimits {
  std::size_t max_catalog = 4096;     // rectangle subsets incl. the empty one
  double max_candidates = 5e7;        // selection x assignment combinations
};

struct OracleResult {
  SolveStatus status = SolveStatus::Error;
  double objective = 0.0;
  CapsacSolution solution;
  std::uint64_t examined = 0;  // candidates actually evaluated
};

// Exhaustive optimum over rectangle selections, small instances only.
// Selections are multisets of m = capable-count subsets (empty allowed).
// With sigma = 1 each slot goes to its own capable drone (candidates are the
// distinct orderings of the multiset; a single canonical one suffices when
// no transmission deadline applies).  With sigma > 1 every slot tries every
// sigma-subset of capable drones.  Throws when the limits are exceeded.
OracleResult brute_force_optimum(const Instance& inst,
                                 const OracleLimits& limits = {});

// Same search over a caller-supplied catalog (custom per-subset costs).
OracleResult brute_force_catalog(const Instance& inst,
                                 const SubsetCatalog& catalog,
                                 const OracleLimits& limits = {});

}  // namespace capsac
