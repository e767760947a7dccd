#pragma once

#include <vector>

#include "capsac/instance.hpp"

namespace capsac {

// Distinct photo coordinates, sorted ascending.  Sub-region borders snap to
// these values, so they double as the border-variable index spaces.
struct Axes {
  std::vector<double> lngs;  // candidate left/right border positions
  std::vector<double> lats;  // candidate bottom/top border positions

  int lng_pos(double v) const;  // index in lngs, -1 when absent
  int lat_pos(double v) const;
};

Axes build_axes(const std::vector<Photo>& photos);

// Axis-aligned closed rectangle in coordinate space.  left > right or
// bottom > top encodes a reversed (empty) boundary.
struct Rect {
  double left = 0.0, right = 0.0, bottom = 0.0, top = 0.0;

  bool ordered() const { return left <= right && bottom <= top; }
  bool contains(double lng, double lat) const {
    return ordered() && left <= lng && lng <= right && bottom <= lat &&
           lat <= top;
  }
};

// Indices of photos inside the rectangle; reversed boundaries hold nothing.
std::vector<int> photos_in_rectangle(const std::vector<Photo>& photos,
                                     const Rect& r);

// Tightest axis-aligned rectangle around the given member photos.
Rect bounding_rect(const std::vector<Photo>& photos,
                   const std::vector<int>& members);

// A member set is spatially convex when it equals the photo content of its
// own bounding rectangle.  The empty set qualifies.
bool is_spatial_convex(const std::vector<Photo>& photos,
                       const std::vector<int>& members);

// Border index sets used by the coverage constraints: positions where a
// border keeps photo p inside the sub-region (comparisons are inclusive).
struct BorderSets {
  std::vector<int> left;    // lngs[i] <= lng_p
  std::vector<int> right;   // lngs[i] >= lng_p
  std::vector<int> bottom;  // lats[i] <= lat_p
  std::vector<int> top;     // lats[i] >= lat_p
};

BorderSets border_index_sets(const Photo& p, const Axes& axes);

// One catalog entry per distinct non-empty photo subset cut out by some
// boundary choice; the boundary kept is the tightest one (the members' bbox).
struct RectEntry {
  Rect boundary;
  std::vector<int> members;  // photo indices, sorted ascending
};

std::vector<RectEntry> enumerate_rectangles(const std::vector<Photo>& photos,
                                            const Axes& axes);

// Ordered boundary choices before deduplication: the catalog size bound.
long long boundary_choice_count(const Axes& axes);

}  // namespace capsac
