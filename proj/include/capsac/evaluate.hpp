#pragma once

#include <string>
#include <vector>

#include "capsac/geometry.hpp"
#include "capsac/instance.hpp"
#include "capsac/network.hpp"
#include "capsac/solver.hpp"

namespace capsac {

struct SolutionRegion {
  Rect boundary;                     // reversed boundary = empty region
  std::vector<std::string> members;  // photo ids, sorted
  std::vector<std::string> drones;   // assigned drone ids, sorted
};

struct CapsacSolution {
  SolveStatus status = SolveStatus::Error;
  double objective = 0.0;
  std::vector<SolutionRegion> regions;
};

std::string write_solution(const CapsacSolution& sol);  // deterministic JSON
CapsacSolution parse_solution(const std::string& json_text);

// Heaviest per-drone processing load: photos are charged once per region
// that contains them, per drone the region is assigned to.
double makespan(const Instance& inst, const CapsacSolution& sol);

// Physical variant: a photo is charged at most once per drone, however many
// of that drone's regions contain it.
double makespan_dedup(const Instance& inst, const CapsacSolution& sol);

// One demand per (storing drone, processing drone) pair with data to move,
// volume = total MB the processor is missing locally.  Sorted by (from, to).
std::vector<Demand> active_demands(const Instance& inst,
                                   const CapsacSolution& sol);

struct DemandTime {
  std::string from, to;
  double volume = 0.0, rate = 0.0, seconds = 0.0;
};

struct FeasibilityReport {
  bool coverage_ok = false;
  bool replication_ok = false;
  bool convexity_ok = false;
  bool drones_ok = false;
  bool transmission_ok = false;
  std::vector<std::string> violations;
  std::vector<DemandTime> demand_times;
  bool ok() const {
    return coverage_ok && replication_ok && convexity_ok && drones_ok &&
           transmission_ok;
  }
};

FeasibilityReport validate(const Instance& inst, const CapsacSolution& sol);

}  // namespace capsac
