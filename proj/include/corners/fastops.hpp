#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "corners/families.hpp"
#include "corners/linop.hpp"
#include "corners/report.hpp"

namespace corners {

// Structure-exploiting matrix-vector product for a finite truncation.
//
//   A = D_w T_r D_w   with w_n = q^{rho n/2}, (T_r)_{nm} = r^{|n-m|}, r = q^{tau/2};
//                     applied in O(N) by forward/backward geometric recurrences.
//                     For tau < 0 (r > 1 would overflow) the rank-two reduction
//                     A(tau) = -A(-tau) + alpha beta^T + beta alpha^T is used instead.
//   B = D_w L D_w     with w_n = n^{(tau-rho)/2}, L_{nm} = (n v m)^{-tau};
//                     applied in O(N) by prefix/suffix sums.
//   C = D_v G D_v     with v_n = n^{-(tau+rho)/2}, G_{nm} = (n,m)^tau
//                     = sum_{d | (n,m)} J_tau(d); applied in O(N log N) by two
//                     harmonic (multiples-of-d) passes over precomputed J_tau.
//
// Construction is single-threaded; apply() is read-only on the handle and safe
// to call concurrently on distinct vectors.
class LinearOperatorHandle final : public SymmetricOperator {
 public:
  LinearOperatorHandle(const FamilyParams& params, std::int64_t n);

  std::int64_t dim() const override { return n_; }
  const FamilyParams& params() const { return params_; }
  // True when some weight underflowed double range and was zeroed.
  bool weights_clamped() const { return weights_clamped_; }

  void apply(std::span<const double> x, std::span<double> y) const override;
  using SymmetricOperator::apply;

 private:
  void apply_a(std::span<const double> x, std::span<double> y) const;
  void apply_b(std::span<const double> x, std::span<double> y) const;
  void apply_c(std::span<const double> x, std::span<double> y) const;

  FamilyParams params_;
  std::int64_t n_ = 0;
  bool weights_clamped_ = false;

  std::vector<double> weight_;   // A: q^{rho n/2} (0-based); B: n^{(tau-rho)/2}; C: n^{-(tau+rho)/2}
  double ratio_ = 0.0;           // A: q^{|tau|/2}
  std::vector<double> lpart_;    // B: n^{-tau}
  std::vector<double> jordan_;   // C: J_tau(d), d = 1..N (index 0 unused)
  std::vector<double> alpha_, beta_;  // A with tau < 0: rank-two correction
};

// Entrywise check of (n,m)^tau = sum_{d | n, d | m} J_tau(d) over n,m <= N;
// for tau > 0 additionally reports whether every J_tau(d) >= 0.
IdentityReport gram_factor_check(double tau, std::int64_t n);

}  // namespace corners
