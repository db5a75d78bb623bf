#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "corners/families.hpp"
#include "corners/report.hpp"

namespace corners {

// Finitely supported coefficient sequence of a polynomial (family A, power
// series from n = 0) or a Dirichlet polynomial (families B/C, from n = 1).
struct CoefficientVector {
  std::vector<std::complex<double>> coeffs;

  double norm_sq() const;
};

// Fourier coefficient of the Poisson kernel of the disk at q^{tau/2}:
// quadrature of (1-q^tau)|1-q^{tau/2}e^{i theta}|^{-2} e^{in theta} against
// q^{tau|n|/2}. `grid` is the minimum number of uniform quadrature nodes; it
// is enlarged when the kernel's Fourier tail at that grid would alias above
// 1e-13 (the effective grid is recorded in the notes).
IdentityReport verify_poisson_circle(double q, double tau, std::int64_t n, std::int64_t grid);

// Quadratic-form identity for family A: circle quadrature of
// (1-q^tau)|(1-q^{tau/2}e^{i theta})^{-1} f(q^{rho/2}e^{i theta})|^2 against
// sum A_{nm} f_n conj(f_m).
IdentityReport verify_quadform_a(const FamilyParams& p, const CoefficientVector& f, std::int64_t grid);

// Half-plane Poisson integral (tau/2pi) int cos(t log(n/m))/(t^2+tau^2/4) dt
// against (nm)^{tau/2}/(n v m)^tau, truncated at T with tail bound tau/(pi T).
IdentityReport verify_halfplane_poisson(double tau, std::int64_t n, std::int64_t m, double trunc = 0.0);

// Divisor-parametrised partial sums sum_{j<=K} (j^2 ab)^{-tau/2}, a = n/(n,m),
// b = m/(n,m), against zeta(tau)(nm)^{tau/2}/[n,m]^tau. Requires tau > 2.
IdentityReport verify_divisor_sum_zeta(double tau, std::int64_t n, std::int64_t m, std::int64_t kmax);

// (T^T T)/zeta(tau) on the leading block against dense C(tau, 0), where T is
// the multiplicative Toeplitz matrix over indices <= kmax. Requires tau > 2.
IdentityReport verify_multiplier_gram(double tau, std::int64_t n, std::int64_t kmax);

// Determinant of the N x N GCD matrix in exact integer arithmetic versus the
// Euler phi product. Guarded to N <= 24 where everything fits in 128 bits.
struct SmithResult {
  __int128 det = 0;
  __int128 phi_product = 0;
  bool equal = false;
};

SmithResult smith_determinant(std::int64_t n);

// (min, max) of the Poisson-kernel symbol of the Toeplitz matrix A(tau, 0):
// ((1-r)/(1+r), (1+r)/(1-r)) with r = q^{tau/2}.
std::pair<double, double> toeplitz_symbol_range(double tau, double q);

}  // namespace corners
