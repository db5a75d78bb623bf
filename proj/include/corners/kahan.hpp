#pragma once

namespace corners {

// Compensated accumulator; keeps long sums of slowly decaying terms near
// working precision.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    double y = x - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

}  // namespace corners
