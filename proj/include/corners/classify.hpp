#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "corners/families.hpp"

namespace corners {

enum class TriState { Yes, No, Unknown };

const char* tristate_name(TriState t);

struct ClassVerdict {
  bool psd = false;
  bool bounded = false;
  bool compact = false;
  TriState trace_class = TriState::No;
};

enum class EmpiricalTag { Bounded, Unbounded, Inconclusive };

const char* empirical_name(EmpiricalTag t);

// Boundedness / compactness / trace-class classification straight from the
// case analysis of each family.
ClassVerdict analytic_classification(const FamilyParams& p);

// Perpendicular distance from (tau, rho) to the nearest of the family's
// classification threshold lines.
double boundary_distance(Family family, double tau, double rho);

struct RegionVerdict {
  double tau = 0.0;
  double rho = 0.0;
  ClassVerdict analytic;
  EmpiricalTag empirical = EmpiricalTag::Inconclusive;
  std::vector<std::pair<std::int64_t, double>> lambda_max_by_size;
  bool near_boundary = false;
  std::string note;
};

struct ScanGrid {
  double tau_min = -2.5, tau_max = 2.5;
  double rho_min = -2.5, rho_max = 2.5;
  int tau_steps = 15, rho_steps = 15;
};

struct ScanOptions {
  std::vector<std::int64_t> sizes = {64, 128, 256, 512, 1024, 2048, 4096};
  std::uint64_t seed = 0;
  int threads = 0;          // 0: machine parallelism, capped by SPECTRAL_CORNERS_THREADS
  int lanczos_max_iter = 200;
  double band = 0.1;        // boundary-exclusion band for the agreement metric
};

// Growth diagnosis of lambda_max over truncation sizes at every grid point;
// points are independent and the result order is by grid index regardless of
// scheduling. q is required for family A.
std::vector<RegionVerdict> empirical_scan(Family family, const ScanGrid& grid,
                                          const ScanOptions& opts, double q = 0.5);

// Fraction of conclusive off-band points whose empirical tag matches the
// analytic boundedness verdict. Returns -1 when the denominator is empty.
double scan_agreement(const std::vector<RegionVerdict>& verdicts, double band, Family family);

enum class WitnessKind { Diagonal, Column, Rayleigh, LambdaMax };

struct GrowthReport {
  WitnessKind kind = WitnessKind::Diagonal;
  std::string description;
  std::vector<std::pair<std::int64_t, double>> values;  // (N, value)
  bool increasing = false;
  bool saturating = false;
  double sigma = 0.0;  // Rayleigh witness exponent, when applicable
};

// Growth of the paper's witness quantity for an analytically unbounded point;
// throws std::invalid_argument when the verdict is bounded.
GrowthReport unboundedness_witness(const FamilyParams& p, std::int64_t n,
                                   std::optional<double> sigma = std::nullopt);

// Vertices (rho, tau) of the bounded-compact region clipped to the square
// [lo, hi]^2, counter-clockwise starting at the upper-left region corner.
std::vector<std::pair<double, double>> region_polygon(Family family, double lo, double hi);

struct Figure1Data {
  Family family = Family::A;
  int resolution = 15;
  std::vector<RegionVerdict> verdicts;
  double agreement = -1.0;
  double band = 0.1;
};

Figure1Data figure1_dataset(Family family, int resolution, const ScanOptions& opts, double q = 0.5);

std::string figure1_csv(const Figure1Data& data);
std::string figure1_svg(const Figure1Data& data);

}  // namespace corners
