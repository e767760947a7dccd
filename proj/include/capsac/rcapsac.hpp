#pragma once

#include <map>
#include <optional>
#include <vector>

#include "capsac/geometry.hpp"
#include "capsac/instance.hpp"
#include "capsac/linear_model.hpp"
#include "capsac/solver.hpp"

namespace capsac {

struct CapsacSolution;

// Pre-enumerated sub-region candidates for the subset formulation.  Entry 0
// is the artificial empty subset when enabled; the rest are the distinct
// non-empty rectangle subsets with their tightest boundaries.
struct SubsetCatalog {
  struct Entry {
    Rect boundary;
    std::vector<int> members;  // photo indices, sorted
    double t = 0.0;            // processing cost of the whole subset
    // transfer volume into a processor, per storing drone index
    std::map<int, double> volume_from;
  };
  std::vector<Entry> entries;
  bool has_empty = false;  // entry 0 is the empty subset
};

// Standard catalog: t = sum of member lambdas, volumes from the storage map.
SubsetCatalog build_catalog(const Instance& inst, bool empty_subset = true);

struct RcapsacConfig {
  bool empty_subset = true;
  std::optional<int> sigma;
  std::optional<double> t_hat;
};

struct RcapsacVars {
  std::vector<int> o;               // subset selected
  std::vector<std::vector<int>> q;  // [subset][capable] assignment
  int tmax = -1;
  std::map<std::pair<int, int>, int> z;   // (h, d) transfer active
  std::map<std::pair<int, int>, int> ph;  // (h, d) rate
  std::map<std::tuple<int, int, int>, int> w;
  std::vector<int> u;
};

struct RcapsacModel {
  LinearModel model;
  SubsetCatalog catalog;
  RcapsacVars vars;
  std::vector<int> cap;
  int sigma = 1;
  double t_hat = kUnbounded;
};

RcapsacModel build_rcapsac(const Instance& inst, const RcapsacConfig& cfg = {});
// Caller-supplied catalog, e.g. with overridden subset costs.
RcapsacModel build_rcapsac(const Instance& inst, const SubsetCatalog& catalog,
                           const RcapsacConfig& cfg = {});

CapsacSolution decode_rcapsac(const Instance& inst, const RcapsacModel& built,
                              const ModelSolution& sol);

}  // namespace capsac
