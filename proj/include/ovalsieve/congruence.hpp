#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ovalsieve/enumerate.hpp"
#include "ovalsieve/scheme.hpp"
#include "ovalsieve/verdict.hpp"

namespace ovalsieve {

enum class CurveType { Unknown, TypeI, TypeII };

struct CharacteristicNumbers {
  long long w_self = 0;   // d^2 - 2*chi(B0), self-intersection of B0 u CA/conj
  long long w1_self = 0;  // d^2 - chi(B1)
};

long long harnack_bound(long long d);

/// Characteristic numbers for the labeling that declares `b0_color` to be B0.
CharacteristicNumbers characteristic_numbers(const SphereScheme& s, long long d, int b0_color);

/// Odd-degree congruence battery: M / M-1 / M-2 clauses plus the type-I
/// mod-4 clause when a type is claimed.
Verdict theorem1_verdict(const SphereScheme& s, long long d, CurveType claimed = CurveType::Unknown);

/// chi(B0) residue mod 8 forced by a given Brown invariant (exploration mode
/// for deficiencies the clause battery does not cover).
long long theorem1_general_residue(long long d, long long beta);

/// Even-degree M-curve congruence: requires every component of B1 to have
/// even Euler characteristic.
Verdict theorem2a_verdict(const SphereScheme& s, long long d);

/// Even-degree type-I congruence for a candidate complex orientation: looks
/// for an orientation of B0 making every disorienting oval have x = 0.
Verdict theorem2b_verdict(const OrientedScheme& o, long long d);

struct ClassifyOptions {
  long long d = 3;
  std::optional<int> l_min;
  std::optional<int> l_max;
  bool filter_harnack = true;
  bool filter_bezout = true;
  std::optional<int> max_depth;
  std::optional<int> max_nests;
  CurveType claimed = CurveType::Unknown;
  std::optional<std::string> family;  // family pattern, e.g. "a+1<b>"
  int enum_cap = kDefaultEnumCap;
  int workers = 1;
  std::optional<std::string> cache_dir;
};

struct SchemeRow {
  std::string scheme;
  int l = 0;
  long long chi0 = 0;  // chi(B0) when determined, else the canonical root's color class
  long long chi1 = 0;
  bool b0_determined = false;
  std::map<std::string, long long> family_assignment;
  Verdict verdict;
};

struct ClassificationReport {
  long long d = 0;
  std::vector<SchemeRow> rows;
};

ClassificationReport classify(const ClassifyOptions& options);

struct FamilyInstance {
  std::map<std::string, long long> assignment;
  std::string notation;
};

/// All assignments of the pattern's variables producing `total_ovals` ovals.
/// Variables are single lowercase letters standing for counts of empty ovals;
/// a variable nested inside angle brackets takes values >= 1, a top-level one
/// values >= 0.
std::vector<FamilyInstance> family_instances(const std::string& pattern, int total_ovals);

}  // namespace ovalsieve
