#pragma once

#include <string>
#include <vector>

namespace ovalsieve {

enum class Status {
  NoConstraint,            // not restricted by the implemented battery
  HypothesisNotSatisfied,  // the clause's hypothesis does not hold
  TypeIOnly,               // realizable only by type I curves
  Prohibited,              // violates a congruence; cannot be realized
};

const char* status_name(Status s);

/// One evaluated congruence clause, with both sides reduced.
struct ClauseCheck {
  std::string clause;
  Status status = Status::NoConstraint;
  int modulus = 0;            // 0 when no residue comparison was made
  long long value = 0;        // left-hand side reduced mod modulus
  std::vector<int> allowed;   // admissible residues
  std::string note;
};

struct Verdict {
  Status status = Status::NoConstraint;
  std::vector<ClauseCheck> checks;

  void add(ClauseCheck check);
};

/// Severity order used when merging clause results into one verdict.
int status_rank(Status s);

}  // namespace ovalsieve
