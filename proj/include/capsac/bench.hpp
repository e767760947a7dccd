#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "capsac/evaluate.hpp"
#include "capsac/instance.hpp"
#include "capsac/pcapsac.hpp"
#include "capsac/rcapsac.hpp"
#include "capsac/solver.hpp"

namespace capsac {

// One (instance, configuration) benchmark outcome.
struct RunRecord {
  std::string instance;
  std::string formulation;  // tag the profile groups by
  std::string config;       // human-readable flag summary
  SolveStatus status = SolveStatus::Error;
  double objective = 0.0;
  double root_bound = 0.0;   // LP relaxation objective
  double final_bound = 0.0;  // dual bound when the run stopped
  double gap0 = 0.0;         // percent: best value vs root bound
  double gap = 0.0;          // percent: best value vs final bound
  double root_seconds = 0.0;
  double total_seconds = 0.0;
  std::optional<long long> nodes;
  std::string message;  // single line; backend noise or the error
};

struct BenchConfig {
  std::string label = "P";
  std::string formulation = "pcapsac";  // "pcapsac" or "rcapsac"
  PcapsacConfig pc;                     // honored by pcapsac
  RcapsacConfig rc;                     // honored by rcapsac
};

std::string describe_config(const BenchConfig& cfg);

// Cartesian product of instances x configs.  Runs up to `workers` backend
// processes in parallel (0 = auto); per-run failures land in the record
// instead of throwing.  Output is sorted by (instance, formulation, config).
std::vector<RunRecord> run_benchmark(const std::vector<Instance>& instances,
                                     const std::vector<BenchConfig>& configs,
                                     const SolveOptions& opts, int workers = 0);

std::string records_to_csv(const std::vector<RunRecord>& records);
std::vector<RunRecord> records_from_csv(const std::string& text);

struct ProfileTable {
  std::vector<double> taus;               // sorted distinct finite ratios
  std::vector<std::string> formulations;  // sorted tags
  std::vector<std::vector<double>> rho;   // [formulation][tau] in [0, 1]
};

// Time ratios against the per-instance fastest formulation, then the
// cumulative distribution over the ratio grid.  Runs that errored out or
// proved infeasibility count as infinitely slow; timed-out runs enter with
// their recorded (limit) time.  Throws when an (instance, formulation)
// pair is absent or duplicated.
ProfileTable performance_profile(const std::vector<RunRecord>& records);

std::string profile_to_csv(const ProfileTable& table);
std::string render_profile_svg(const ProfileTable& table);

// ---- sensitivity sweeps ----

struct SweepOutcome {
  SolveStatus status = SolveStatus::Error;
  double objective = 0.0;
  double bound = 0.0;
  CapsacSolution solution;  // seeds the deadline sweep's starting point
};
using SweepSolver = std::function<SweepOutcome(const Instance&)>;

struct SweepRow {
  double key = 0.0;  // sigma value or deadline seconds
  SolveStatus status = SolveStatus::Error;
  double objective = 0.0;
  double bound = 0.0;
  std::string note;  // monotonicity breaches and such
};

std::vector<SweepRow> sigma_sweep(const Instance& inst,
                                  const SweepSolver& solve,
                                  const std::vector<int>& sigmas);

// Solves unconstrained, reads off the slowest transfer, then tightens the
// deadline by `step` per row until the first infeasible row.
std::vector<SweepRow> t_hat_sweep(const Instance& inst,
                                  const SweepSolver& solve, double step = 0.5);

std::string sweep_to_csv(const std::vector<SweepRow>& rows,
                         const std::string& key_name);
std::string render_sweep_svg(const std::vector<SweepRow>& rows,
                             const std::string& key_label);

}  // namespace capsac
