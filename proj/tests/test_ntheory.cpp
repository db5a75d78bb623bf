#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "corners/kahan.hpp"
#include "corners/ntheory.hpp"

using namespace corners;

TEST_CASE("gcd_lcm basics") {
  CHECK(gcd_lcm(4, 6) == std::pair<std::int64_t, std::int64_t>{2, 12});
  CHECK(gcd_lcm(1, 17) == std::pair<std::int64_t, std::int64_t>{1, 17});
  CHECK(gcd_lcm(12, 12) == std::pair<std::int64_t, std::int64_t>{12, 12});
  CHECK_THROWS_AS(gcd_lcm(0, 3), std::invalid_argument);
}

TEST_CASE("gcd_lcm product identity, exhaustive n,m <= 200") {
  for (std::int64_t n = 1; n <= 200; ++n)
    for (std::int64_t m = 1; m <= 200; ++m) {
      auto [g, l] = gcd_lcm(n, m);
      CHECK(n % g == 0);
      CHECK(m % g == 0);
      CHECK(l % n == 0);
      CHECK(l % m == 0);
      CHECK(g * l == n * m);
    }
}

TEST_CASE("gcd_lcm overflow is an error, not a wrap") {
  // two large coprime numbers whose product exceeds 2^63
  CHECK_THROWS_AS(gcd_lcm(3037000507, 3037000493), std::overflow_error);
}

TEST_CASE("factorize") {
  auto f = factorize(12);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0].prime == 2);
  CHECK(f.factors[0].exponent == 2);
  CHECK(f.factors[1].prime == 3);
  CHECK(f.factors[1].exponent == 1);

  CHECK(factorize(1).factors.empty());

  auto p = factorize(97);
  REQUIRE(p.factors.size() == 1);
  CHECK(p.factors[0].prime == 97);
  CHECK(p.factors[0].exponent == 1);
}

TEST_CASE("factorize reconstructs n with increasing primes") {
  for (std::int64_t n = 1; n <= 5000; ++n) {
    auto f = factorize(n);
    std::int64_t prod = 1;
    std::int64_t last_prime = 0;
    for (const auto& pp : f.factors) {
      CHECK(pp.prime > last_prime);
      CHECK(pp.exponent >= 1);
      last_prime = pp.prime;
      for (int e = 0; e < pp.exponent; ++e) prod *= pp.prime;
    }
    CHECK(prod == n);
  }
}

TEST_CASE("mobius and euler_phi point values") {
  CHECK(mobius(1) == 1);
  CHECK(euler_phi(1) == 1);
  CHECK(mobius(4) == 0);
  CHECK(euler_phi(8) == 4);
  CHECK(mobius(6) == 1);
  CHECK(euler_phi(7) == 6);
}

TEST_CASE("divisor sums of phi and mu, n <= 1000") {
  for (std::int64_t n = 1; n <= 1000; ++n) {
    std::int64_t phi_sum = 0;
    std::int64_t mu_sum = 0;
    for (std::int64_t d : divisors(n)) {
      phi_sum += euler_phi(d);
      mu_sum += mobius(d);
    }
    CHECK(phi_sum == n);
    CHECK(mu_sum == (n == 1 ? 1 : 0));
  }
}

TEST_CASE("jordan totient point values") {
  for (double t : {-1.5, 0.5, 1.0, 2.0, 3.0}) CHECK(jordan_totient(1, t) == 1.0);
  CHECK(jordan_totient(6, 2.0) == doctest::Approx(24.0).epsilon(1e-13));
  for (std::int64_t p : {2, 3, 5, 7, 97})
    CHECK(jordan_totient(p, 1.0) == doctest::Approx(static_cast<double>(p - 1)).epsilon(1e-13));
}

TEST_CASE("jordan totient: divisor sum over d | n recovers n^t") {
  // For t < 0 the divisor sum cancels O(1) terms down to a tiny n^t, so the
  // check carries the rounding floor of its own double-precision summands on
  // top of the 1e-12 relative target.
  for (double t : {-1.5, 0.5, 1.0, 2.0, 3.0}) {
    for (std::int64_t n = 1; n <= 1000; ++n) {
      KahanSum acc;
      double term_mass = 0.0;
      for (std::int64_t d : divisors(n)) {
        double j = jordan_totient(d, t);
        acc.add(j);
        term_mass += std::abs(j);
      }
      double expect = std::pow(static_cast<double>(n), t);
      double floor = 4.0 * std::numeric_limits<double>::epsilon() * term_mass;
      CHECK(std::abs(acc.value() - expect) <= 1e-12 * std::abs(expect) + floor);
    }
  }
}

TEST_CASE("jordan totient: product form agrees with divisor-sum form") {
  for (double t : {-1.5, 0.5, 1.0, 2.0, 3.0})
    for (std::int64_t d = 1; d <= 400; ++d) {
      double a = jordan_totient(d, t);
      double b = jordan_totient_divisor_sum(d, t);
      CHECK(std::abs(a - b) <= 1e-12 * std::max({std::abs(a), std::abs(b), 1.0}));
    }
}

TEST_CASE("jordan totient nonnegative for t > 0") {
  for (double t : {0.5, 1.0, 2.0})
    for (std::int64_t d = 1; d <= 1000; ++d) CHECK(jordan_totient(d, t) >= 0.0);
}

TEST_CASE("jordan_totient_table matches the scalar route") {
  SpfSieve sieve(600);
  for (double t : {-0.5, 1.0, 2.5}) {
    auto table = jordan_totient_table(600, t, sieve);
    for (std::int64_t d = 1; d <= 600; ++d) {
      double ref = jordan_totient(d, t);
      CHECK(std::abs(table[static_cast<std::size_t>(d)] - ref) <=
            1e-12 * std::max(std::abs(ref), 1.0));
    }
  }
}

TEST_CASE("zeta reference values") {
  const double pi = std::numbers::pi;
  CHECK(std::abs(zeta(2.0) - pi * pi / 6.0) <= 1e-12);
  CHECK(std::abs(zeta(4.0) - pi * pi * pi * pi / 90.0) <= 1e-12);
}

TEST_CASE("zeta decreases to 1 as t grows") {
  double prev = zeta(1.5);
  for (double t : {2.0, 3.0, 5.0, 10.0, 30.0, 80.0}) {
    double z = zeta(t);
    CHECK(z < prev);
    CHECK(z >= 1.0);
    prev = z;
  }
  CHECK(zeta(200.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("zeta domain guard") {
  CHECK_THROWS_AS(zeta(1.0), std::domain_error);
  CHECK_THROWS_AS(zeta(0.5), std::domain_error);
  CHECK_THROWS_AS(zeta(1.0 + 1e-10), std::domain_error);
}

TEST_CASE("zeta lies between partial sum and partial sum plus tail bound") {
  for (double t : {1.5, 2.0, 3.0}) {
    double z = zeta(t);
    for (std::int64_t n : {10, 100}) {
      KahanSum partial;
      for (std::int64_t k = 1; k <= n; ++k) partial.add(std::pow(static_cast<double>(k), -t));
      double tail = std::pow(static_cast<double>(n), 1.0 - t) / (t - 1.0);
      CHECK(z > partial.value());
      CHECK(z < partial.value() + tail);
    }
  }
}
