#pragma once

#include <algorithm>
#include <cmath>
#include <string>

namespace corners {

// Two independently computed sides of an identity plus their discrepancy.
// For max-over-pairs checks lhs/rhs hold the worst pair and the discrepancy
// fields the maximum over all pairs. `tail_bound` is recorded whenever a
// series or integral was truncated; `pass` applies the verifier's own rule.
struct IdentityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_discrepancy = 0.0;
  double rel_discrepancy = 0.0;
  double tail_bound = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string notes;
};

inline double rel_diff(double a, double b) {
  double d = std::abs(a - b);
  double scale = std::max(std::abs(a), std::abs(b));
  return scale > 0.0 ? d / scale : d;
}

}  // namespace corners
