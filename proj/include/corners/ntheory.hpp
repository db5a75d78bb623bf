#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace corners {

struct PrimePower {
  std::int64_t prime = 0;
  int exponent = 0;
};

// Prime factorisation, primes strictly increasing; n = 1 has no factors.
struct Factorization {
  std::int64_t n = 1;
  std::vector<PrimePower> factors;
};

// Returns (gcd, lcm). Throws std::overflow_error when the lcm does not fit
// in 64 bits; truncation sizes in normal use stay far below that.
std::pair<std::int64_t, std::int64_t> gcd_lcm(std::int64_t n, std::int64_t m);

Factorization factorize(std::int64_t n);

// Moebius function, in {-1, 0, 1}.
int mobius(std::int64_t n);

std::int64_t euler_phi(std::int64_t n);

// Jordan totient J_t(d), the Moebius inversion of d -> d^t, evaluated via the
// factorisation product d^t * prod_{p|d} (1 - p^{-t}).
double jordan_totient(std::int64_t d, double t);

// Same quantity through the divisor sum sum_{e|d} mu(d/e) e^t; slower and
// kept as the independent route for cross-checks.
double jordan_totient_divisor_sum(std::int64_t d, double t);

// All divisors of n, ascending.
std::vector<std::int64_t> divisors(std::int64_t n);

// Riemann zeta for real t > 1 + 1e-9 (throws std::domain_error otherwise).
// Absolute error <= 1e-12; the partial-sum cutoff is chosen adaptively from
// the Euler-Maclaurin remainder bound, no hard-coded term count.
double zeta(double t);

// Smallest-prime-factor table for 1..n; factorises any 2 <= d <= n in
// O(log d) lookups.
class SpfSieve {
 public:
  explicit SpfSieve(std::int64_t n);
  std::int64_t size() const { return static_cast<std::int64_t>(spf_.size()) - 1; }
  std::int32_t operator[](std::int64_t d) const { return spf_[static_cast<std::size_t>(d)]; }

 private:
  std::vector<std::int32_t> spf_;
};

// J_t(d) for all d = 1..n, built multiplicatively over the sieve.
std::vector<double> jordan_totient_table(std::int64_t n, double t, const SpfSieve& sieve);

}  // namespace corners
