#include "capsac/geometry.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace capsac {

namespace {

int position(const std::vector<double>& v, double x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x) return -1;
  return static_cast<int>(it - v.begin());
}

}  // namespace

int Axes::lng_pos(double v) const { return position(lngs, v); }
int Axes::lat_pos(double v) const { return position(lats, v); }

Axes build_axes(const std::vector<Photo>& photos) {
  std::set<double> xs, ys;
  for (const auto& p : photos) {
    xs.insert(p.lng);
    ys.insert(p.lat);
  }
  Axes ax;
  ax.lngs.assign(xs.begin(), xs.end());
  ax.lats.assign(ys.begin(), ys.end());
  return ax;
}

std::vector<int> photos_in_rectangle(const std::vector<Photo>& photos,
                                     const Rect& r) {
  std::vector<int> out;
  if (!r.ordered()) return out;
  for (std::size_t i = 0; i < photos.size(); ++i)
    if (r.contains(photos[i].lng, photos[i].lat))
      out.push_back(static_cast<int>(i));
  return out;
}

Rect bounding_rect(const std::vector<Photo>& photos,
                   const std::vector<int>& members) {
  if (members.empty())
    return Rect{1.0, 0.0, 1.0, 0.0};  // reversed: holds nothing
  Rect r{photos[members[0]].lng, photos[members[0]].lng,
         photos[members[0]].lat, photos[members[0]].lat};
  for (int i : members) {
    r.left = std::min(r.left, photos[i].lng);
    r.right = std::max(r.right, photos[i].lng);
    r.bottom = std::min(r.bottom, photos[i].lat);
    r.top = std::max(r.top, photos[i].lat);
  }
  return r;
}

bool is_spatial_convex(const std::vector<Photo>& photos,
                       const std::vector<int>& members) {
  std::vector<int> sorted = members;
  std::sort(sorted.begin(), sorted.end());
  return photos_in_rectangle(photos, bounding_rect(photos, sorted)) == sorted;
}

BorderSets border_index_sets(const Photo& p, const Axes& axes) {
  BorderSets bs;
  for (std::size_t i = 0; i < axes.lngs.size(); ++i) {
    if (axes.lngs[i] <= p.lng) bs.left.push_back(static_cast<int>(i));
    if (axes.lngs[i] >= p.lng) bs.right.push_back(static_cast<int>(i));
  }
  for (std::size_t i = 0; i < axes.lats.size(); ++i) {
    if (axes.lats[i] <= p.lat) bs.bottom.push_back(static_cast<int>(i));
    if (axes.lats[i] >= p.lat) bs.top.push_back(static_cast<int>(i));
  }
  return bs;
}

std::vector<RectEntry> enumerate_rectangles(const std::vector<Photo>& photos,
                                            const Axes& axes) {
  // distinct member sets, keyed so the first (any) hit can be tightened after
  std::map<std::vector<int>, Rect> seen;
  const int nc = static_cast<int>(axes.lngs.size());
  const int nl = static_cast<int>(axes.lats.size());
  for (int c1 = 0; c1 < nc; ++c1)
    for (int c2 = c1; c2 < nc; ++c2)
      for (int l1 = 0; l1 < nl; ++l1)
        for (int l2 = l1; l2 < nl; ++l2) {
          Rect r{axes.lngs[c1], axes.lngs[c2], axes.lats[l1], axes.lats[l2]};
          auto members = photos_in_rectangle(photos, r);
          if (members.empty()) continue;
          seen.emplace(std::move(members), r);  // keep first, tighten below
        }
  std::vector<RectEntry> out;
  out.reserve(seen.size());
  for (auto& [members, rect] : seen) {
    RectEntry e;
    e.members = members;
    e.boundary = bounding_rect(photos, members);  // tightest representative
    (void)rect;
    out.push_back(std::move(e));
  }
  return out;
}

long long boundary_choice_count(const Axes& axes) {
  long long nc = static_cast<long long>(axes.lngs.size());
  long long nl = static_cast<long long>(axes.lats.size());
  return nc * (nc + 1) / 2 * (nl * (nl + 1) / 2);
}

}  // namespace capsac
