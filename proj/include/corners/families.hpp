#pragma once

#include <cstdint>
#include <vector>

#include "corners/report.hpp"

namespace corners {

enum class Family { A, B, C };

char family_letter(Family f);
Family family_from_letter(char c);

// Which family plus (tau, rho) and, for A only, the base q in (0,1).
struct FamilyParams {
  Family family = Family::A;
  double tau = 0.0;
  double rho = 0.0;
  double q = 0.0;  // meaningful for family A only

  static FamilyParams a(double tau, double rho, double q);
  static FamilyParams b(double tau, double rho);
  static FamilyParams c(double tau, double rho);

  // 0 for A (indices over N_0), 1 for B and C (indices over N).
  std::int64_t origin() const { return family == Family::A ? 0 : 1; }
  void validate() const;
};

// N x N real symmetric truncation; `origin` records the index of the first
// row/column in the family's own indexing.
struct DenseSymMatrix {
  std::int64_t n = 0;
  std::int64_t origin = 0;
  std::vector<double> a;  // row-major

  double& at(std::int64_t i, std::int64_t j) { return a[static_cast<std::size_t>(i * n + j)]; }
  double at(std::int64_t i, std::int64_t j) const { return a[static_cast<std::size_t>(i * n + j)]; }
  double trace() const;
  double frobenius() const;
};

// Plain square matrix for the (non-symmetric) multiplicative Toeplitz factor.
struct SquareMatrix {
  std::int64_t n = 0;
  std::vector<double> a;  // row-major, 1-based indices stored at (i-1, j-1)

  double& at(std::int64_t i, std::int64_t j) { return a[static_cast<std::size_t>(i * n + j)]; }
  double at(std::int64_t i, std::int64_t j) const { return a[static_cast<std::size_t>(i * n + j)]; }
};

// Matrix entry in the family's own indexing (A: n,m >= 0; B,C: n,m >= 1).
// Entries that overflow double range throw std::range_error rather than
// returning +-inf; underflow to subnormal/zero is allowed.
double entry(const FamilyParams& p, std::int64_t n, std::int64_t m);

DenseSymMatrix dense_truncation(const FamilyParams& p, std::int64_t n);

// Scaling relation: A_{n+k,m+k} = q^{-rho k} A_{n,m} for A,
// entry(kn,km) = k^{-rho} entry(n,m) for B and C.
IdentityReport scaling_check(const FamilyParams& p, std::int64_t k, std::int64_t n, std::int64_t m);

// Worst relative scaling discrepancy over all n,m <= max_index.
IdentityReport scaling_check_exhaustive(const FamilyParams& p, std::int64_t k, std::int64_t max_index);

// Sequences alpha, beta with entry(tau) + entry(-tau) = alpha_n beta_m + beta_n alpha_m.
// Families A and B only.
struct RankTwoDecomposition {
  std::vector<double> alpha;
  std::vector<double> beta;
};

RankTwoDecomposition rank_two_decomposition(const FamilyParams& p, std::int64_t n);

// Max residual of the rank-two identity over all pairs n,m < N (A) or <= N
// (B), relative to the scale of the four terms involved.
IdentityReport rank_two_residual(const FamilyParams& p, std::int64_t n);

// Entry of C(tau,rho) assembled as the product over primes p | nm of
// A(tau,rho; q=1/p) entries at the prime exponents of n and m.
double tensor_factor_entry(const FamilyParams& p, std::int64_t n, std::int64_t m);

// Max relative deviation between tensor_factor_entry and entry over n,m <= max_index.
IdentityReport tensor_factor_check(const FamilyParams& p, std::int64_t max_index);

// T_{m,n} = (m/n)^{-tau/2} when n | m, zero otherwise (1-based).
SquareMatrix multiplicative_toeplitz(double tau, std::int64_t n);

}  // namespace corners
