#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "capsac/geometry.hpp"
#include "capsac/instance.hpp"
#include "capsac/linear_model.hpp"
#include "capsac/solver.hpp"

namespace capsac {

// Forward decl; full definition lives with the evaluator.
struct CapsacSolution;

struct PcapsacConfig {
  enum class Bc { Bc0, Bc0Bar };
  enum class Branch { Default, BordersFirst, MembersFirst };

  Bc bc = Bc::Bc0Bar;
  bool ordering_cuts = false;  // border-order valid inequalities
  bool symmetry_fix = true;    // pin region r to the r-th capable drone
  Branch branch = Branch::Default;
  std::optional<int> sigma;     // override the instance value
  std::optional<double> t_hat;  // override the instance value
};

// Variable index tables for one built model.  Regions are indexed 0..m-1
// where m is the capable drone count; d below always means a capable drone's
// position in `cap`.
struct PcapsacVars {
  std::vector<std::vector<int>> y;               // [r][p] membership
  std::vector<std::vector<int>> x;               // [r][d] assignment
  std::vector<std::vector<std::vector<int>>> g;  // [r][d][p] product
  std::vector<std::vector<int>> al, be;          // [r][lng index] left/right
  std::vector<std::vector<int>> ga, om;          // [r][lat index] bottom/top
  int tmax = -1;
  // transmission block (bounded deadline only); h is a drone index
  std::map<std::pair<int, int>, int> z;               // (h, d) activation
  std::map<std::pair<int, int>, int> ph;              // (h, d) rate
  std::map<std::tuple<int, int, int>, int> w;         // (h, d, link) witness
  std::vector<int> u;                                 // per link max rate
};

struct PcapsacModel {
  LinearModel model;
  PcapsacVars vars;
  Axes axes;
  std::vector<int> cap;  // capable drone indices, ascending
  int sigma = 1;
  double t_hat = kUnbounded;
};

PcapsacModel build_pcapsac(const Instance& inst, const PcapsacConfig& cfg = {});

// Reads region memberships, assignments and boundaries out of a solved
// model.  Throws when binaries stray from {0,1} by more than 1e-4.
CapsacSolution decode_pcapsac(const Instance& inst, const PcapsacModel& built,
                              const ModelSolution& sol);

}  // namespace capsac
