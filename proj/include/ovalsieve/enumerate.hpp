#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ovalsieve/scheme.hpp"

namespace ovalsieve {

inline constexpr int kDefaultEnumCap = 20;

/// All sphere schemes with `ovals` ovals, one canonical representative per
/// isomorphism class, sorted by canonical string.
std::vector<std::string> enumerate_schemes(int ovals, int cap = kDefaultEnumCap);

/// Streaming form; `emit` receives canonical strings in sorted order.
void enumerate_schemes(int ovals, const std::function<void(const std::string&)>& emit,
                       int cap = kDefaultEnumCap);

/// Max over region triples of the number of ovals separating the triple into
/// a 1|2 split (= the Steiner tree size of the triple). A transversal circle
/// through the triple meets the curve in at least twice this many points, so a
/// bidegree-(d,d) curve requires the bound to stay <= d.
int bezout_triple_bound(const SphereScheme& s);

/// Same, with an achieving triple for failure witnesses.
int bezout_triple_bound(const SphereScheme& s, std::array<int, 3>& witness);

/// Nesting level of an oval: length of the longest region path on its shallow
/// side, counting the oval itself.
int oval_nesting_level(const SphereScheme& s, int oval);

struct FilterConfig {
  int d = 1;
  bool use_harnack = true;
  bool use_bezout_triple = true;
  std::optional<int> max_depth;  // bound on max oval nesting level
  std::optional<int> max_nests;  // bound on the number of ovals with level >= 2
};

struct FilterFailure {
  std::string name;
  std::string witness;
};

struct FilterReport {
  std::string scheme;
  bool passed = true;
  std::vector<FilterFailure> failures;
};

FilterReport apply_filters(const SphereScheme& s, const FilterConfig& cfg);

}  // namespace ovalsieve
