#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ovalsieve {

/// An arrangement of disjoint circles (ovals) on the sphere, encoded as the
/// free tree whose vertices are the complement regions and whose edges are the
/// ovals separating them. A scheme with l ovals has l+1 regions; there is no
/// distinguished outer region.
class SphereScheme {
 public:
  SphereScheme();  // empty curve: one region, no ovals

  static SphereScheme from_edges(int regions, std::vector<std::pair<int, int>> edges);

  int region_count() const { return static_cast<int>(adj_.size()); }
  int oval_count() const { return static_cast<int>(edges_.size()); }
  int degree(int region) const { return static_cast<int>(adj_[region].size()); }
  // A region bounded by k circles is a sphere with k disks removed.
  long long region_chi(int region) const { return 2 - degree(region); }

  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<std::vector<int>>& adjacency() const { return adj_; }

  /// Regions on the `side` endpoint's side of edge `oval`.
  std::vector<int> side_regions(int oval, int side) const;

  /// Canonical notation; equal strings iff isomorphic free trees.
  const std::string& canonical() const;

 private:
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adj_;
  mutable std::string canonical_;
};

/// The proper 2-coloring of the region tree into the two halves B0/B1 of the
/// sphere, with per-part Euler characteristics. Each same-colored region is
/// one connected component of its part.
struct PartLabeling {
  std::vector<std::uint8_t> color;                    // region -> {0,1}
  long long chi[2] = {0, 0};                          // chi[c] = sum over color-c regions
  std::array<std::vector<long long>, 2> component_chis;
  int b0_index = -1;  // color class with chi == 0 (mod 4); -1 when l is odd

  bool ambiguous() const { return b0_index < 0; }
  long long chi_b0() const;
  long long chi_b1() const;
};

SphereScheme parse_scheme(const std::string& text);
std::string render_canonical(const SphereScheme& s);
PartLabeling euler_parts(const SphereScheme& s);

/// chi(B1 ∩ D) mod 2 for either disk D bounded by the oval; requires an even
/// oval count (both sides agree exactly then).
int x_of_oval(const SphereScheme& s, int oval);
std::vector<int> x_table(const SphereScheme& s);

/// A scheme together with a candidate complex orientation. The per-oval sign
/// is relative to the boundary orientation induced by the adjacent B0 region
/// when that region carries the ambient orientation.
struct OrientedScheme {
  SphereScheme base;
  std::vector<int> oval_sign;  // +1 / -1 per oval
};

/// Notation with optional per-term sign suffixes "^+" / "^-" (default "+").
OrientedScheme parse_oriented_scheme(const std::string& text);

/// Ovals whose assigned orientation disagrees with the boundary orientation
/// induced by their adjacent B0 component under the given component signs.
/// `b0_orient` maps every B0-colored region to +1/-1.
std::vector<int> disorienting_set(const OrientedScheme& o, const PartLabeling& labeling,
                                  const std::map<int, int>& b0_orient);

/// Arrangement of null-homotopic ovals in the projective plane, encoded as a
/// rooted forest: region 0 is the non-orientable outer region.
class PlaneScheme {
 public:
  PlaneScheme();

  int region_count() const { return static_cast<int>(children_.size()); }
  int oval_count() const { return region_count() - 1; }
  int parent(int region) const { return parent_[region]; }
  const std::vector<int>& children(int region) const { return children_[region]; }
  long long region_chi(int region) const { return 1 - static_cast<long long>(children_[region].size()); }

  static PlaneScheme from_parents(std::vector<int> parents);

 private:
  std::vector<int> parent_;
  std::vector<std::vector<int>> children_;
};

struct PlanePart {
  long long chi = 0;
  bool orientable = false;
  std::vector<long long> component_chis;
};

PlaneScheme parse_plane_scheme(const std::string& text);

/// Both halves of the plane bounded by the curve; parts[0] contains the outer
/// region and is the non-orientable one. chi values sum to 1.
std::array<PlanePart, 2> plane_euler_parts(const PlaneScheme& p);

}  // namespace ovalsieve
