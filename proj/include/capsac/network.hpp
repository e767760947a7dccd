#pragma once

#include <string>
#include <vector>

#include "capsac/instance.hpp"

namespace capsac {

// A pending transfer: everything drone `to` must fetch from drone `from`.
struct Demand {
  std::string from;
  std::string to;
  double volume = 0.0;  // MB
};

// Link indices along the unique tree path between two drones.
std::vector<int> unique_path(const Instance& inst, const std::string& from,
                             const std::string& to);

// Smallest capacity on the path; the hard ceiling for any single rate.
double bottleneck_capacity(const Instance& inst, const std::string& from,
                           const std::string& to);

struct MmfAllocation {
  std::vector<double> rate;       // MB/s per demand, input order
  std::vector<int> witness_link;  // saturated link certifying each rate
};

// Max-min fair rates via progressive filling.  Rates depend only on which
// demands are present (their paths), not on the volumes.  Every demand gets
// a witness link that is saturated and on which its rate is maximal.
MmfAllocation mmf_allocate(const Instance& inst,
                           const std::vector<Demand>& demands);

// volume / rate, elementwise
std::vector<double> transmission_times(const std::vector<Demand>& demands,
                                       const std::vector<double>& rates);

}  // namespace capsac
