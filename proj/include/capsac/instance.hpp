#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace capsac {

// Thrown for malformed documents, inconsistent inputs and bad CLI arguments.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Photo {
  std::string id;
  double lng = 0.0;        // planar x coordinate
  double lat = 0.0;        // planar y coordinate
  double lambda = 0.0;     // processing load, seconds
  double mu = 0.0;         // payload size, MB
  std::string stored_on;   // drone that holds the shot
};

struct Drone {
  std::string id;
  bool capable = false;    // can run the 3-D reconstruction
};

struct Link {
  std::string a;
  std::string b;
  double capacity = 0.0;   // MB/s, symmetric
};

// Sentinel for "no transmission deadline".
inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

struct Instance {
  std::string name;
  std::vector<Photo> photos;
  std::vector<Drone> drones;
  std::vector<Link> links;   // must form a spanning tree over the drones
  int sigma = 1;             // replication requirement per sub-region
  double t_hat = kUnbounded; // transmission deadline, seconds

  int photo_index(const std::string& id) const;  // -1 when absent
  int drone_index(const std::string& id) const;
  int capable_count() const;
  std::vector<int> capable_indices() const;
  bool bounded_deadline() const { return t_hat != kUnbounded; }
};

// Structural checks: unique ids, positive weights, tree topology, sigma
// within the capable fleet.  Throws ValidationError with a specific message.
void check_instance(const Instance& inst);

Instance parse_instance(const std::string& json_text);
std::string write_instance(const Instance& inst);  // deterministic byte output
Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

// Benchmark family naming: {u|w}-P{photos}D{drones}%D{capable_pct}.
struct NameSpec {
  bool weighted = false;
  int photos = 0;
  int drones = 0;
  int capable_pct = 0;
  int capable_count = 0;  // floor(drones * capable_pct / 100)
};

NameSpec parse_instance_name(const std::string& name);
std::string format_instance_name(const NameSpec& spec);

}  // namespace capsac
