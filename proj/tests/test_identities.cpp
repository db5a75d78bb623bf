#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "corners/identities.hpp"
#include "corners/ntheory.hpp"
#include "corners/spectra.hpp"

using namespace corners;

namespace {

// independent (z4) oracle: the geometric double series
// (1-q^tau) sum_{l-k=n, k,l>=0} q^{tau(k+l)/2} summed until the tail is dust
double poisson_series_oracle(double q, double tau, std::int64_t n) {
  double r = std::pow(q, 0.5 * tau);
  double sum = 0.0;
  double term = std::pow(r, static_cast<double>(std::llabs(n)));
  for (int k = 0; k < 100000 && term > 1e-20; ++k) {
    sum += term;
    term *= r * r;
  }
  return (1.0 - q * tau == 0.0 ? 0.0 : (1.0 - std::pow(q, tau))) * sum;
}

// exact integer determinant by Leibniz expansion, usable for N <= 7
std::int64_t leibniz_gcd_det(int n) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  std::int64_t det = 0;
  auto gcd_entry = [](int i, int j) { return std::gcd(i + 1, j + 1); };
  do {
    int sign = 1;
    {
      std::vector<bool> seen(static_cast<std::size_t>(n), false);
      for (int i = 0; i < n; ++i) {
        if (seen[static_cast<std::size_t>(i)]) continue;
        int len = 0;
        for (int j = i; !seen[static_cast<std::size_t>(j)]; j = perm[static_cast<std::size_t>(j)]) {
          seen[static_cast<std::size_t>(j)] = true;
          ++len;
        }
        if (len % 2 == 0) sign = -sign;
      }
    }
    std::int64_t prod = sign;
    for (int i = 0; i < n; ++i) prod *= gcd_entry(i, perm[static_cast<std::size_t>(i)]);
    det += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

CoefficientVector random_poly(int degree, std::uint64_t seed) {
  CoefficientVector f;
  std::uint64_t s = seed;
  auto rnd = [&s] {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return 2.0 * (static_cast<double>(s >> 11) * 0x1.0p-53) - 1.0;
  };
  for (int i = 0; i <= degree; ++i) f.coeffs.emplace_back(rnd(), rnd());
  return f;
}

double quadform_lhs(const FamilyParams& p, const CoefficientVector& f) {
  return verify_quadform_a(p, f, 1024).lhs;
}

}  // namespace

TEST_CASE("poisson circle: unit mass at n = 0") {
  for (double q : {0.25, 0.9})
    for (double tau : {0.5, 2.0}) {
      auto r = verify_poisson_circle(q, tau, 0, 512);
      CHECK(r.pass);
      CHECK(r.rhs == 1.0);
      CHECK(std::abs(r.lhs - 1.0) <= 1e-10);
    }
}

TEST_CASE("poisson circle vs the geometric double-series oracle") {
  auto r = verify_poisson_circle(0.25, 2.0, 1, 512);
  CHECK(r.rhs == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(std::abs(r.lhs - poisson_series_oracle(0.25, 2.0, 1)) <= 1e-10);
  CHECK(r.pass);
}

TEST_CASE("poisson circle: even in n") {
  for (std::int64_t n : {1, 5, 17}) {
    auto plus = verify_poisson_circle(0.5, 1.0, n, 512);
    auto minus = verify_poisson_circle(0.5, 1.0, -n, 512);
    CHECK(plus.lhs == doctest::Approx(minus.lhs).epsilon(1e-13));
    CHECK(plus.rhs == minus.rhs);
  }
}

TEST_CASE("poisson circle rejects tau <= 0 and tiny grids") {
  CHECK_THROWS_AS(verify_poisson_circle(0.5, 0.0, 1, 512), std::domain_error);
  CHECK_THROWS_AS(verify_poisson_circle(0.5, -1.0, 1, 512), std::domain_error);
  CHECK_THROWS_AS(verify_poisson_circle(0.5, 1.0, 1, 4), std::invalid_argument);
}

TEST_CASE("poisson circle at the acceptance grid") {
  for (double q : {0.25, 0.5, 0.9})
    for (double tau : {0.5, 1.0, 2.0})
      for (std::int64_t n = -20; n <= 20; n += 5) {
        auto r = verify_poisson_circle(q, tau, n, 512);
        CHECK(r.abs_discrepancy <= 1e-10);
      }
}

TEST_CASE("quadform A: single-coefficient polynomials hit the diagonal") {
  FamilyParams p = FamilyParams::a(1.0, 1.0, 0.5);
  CoefficientVector unit;
  unit.coeffs = {1.0};
  auto r = verify_quadform_a(p, unit, 1024);
  CHECK(r.rhs == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.pass);

  CoefficientVector e1;
  e1.coeffs = {0.0, 1.0};
  auto r1 = verify_quadform_a(p, e1, 1024);
  CHECK(r1.rhs == doctest::Approx(0.5).epsilon(1e-14));  // q^rho
  CHECK(r1.pass);

  for (int n = 2; n <= 10; ++n) {
    CoefficientVector en;
    en.coeffs.assign(static_cast<std::size_t>(n + 1), 0.0);
    en.coeffs.back() = 1.0;
    auto rn = verify_quadform_a(p, en, 1024);
    CHECK(rel_diff(rn.lhs, std::pow(p.q, p.rho * n)) <= 1e-8);
  }
}

TEST_CASE("quadform A: random degree-8 polynomials, 20 trials") {
  FamilyParams p = FamilyParams::a(1.0, 1.0, 0.5);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto r = verify_quadform_a(p, random_poly(8, seed), 1024);
    CHECK(r.rel_discrepancy <= 1e-8);
    CHECK(r.pass);
  }
}

TEST_CASE("quadform A rejects tau <= 0 and empty input") {
  CoefficientVector f;
  f.coeffs = {1.0};
  CHECK_THROWS_AS(verify_quadform_a(FamilyParams::a(-1.0, 1.0, 0.5), f, 512), std::domain_error);
  CoefficientVector empty;
  CHECK_THROWS_AS(verify_quadform_a(FamilyParams::a(1.0, 1.0, 0.5), empty, 512), std::invalid_argument);
}

TEST_CASE("polarization ties the quadratic form to matrix entries") {
  FamilyParams p = FamilyParams::a(1.0, 1.0, 0.5);
  auto dense = dense_truncation(p, 8);
  for (int n = 0; n < 6; ++n)
    for (int m = n + 1; m < 6; ++m) {
      CoefficientVector en, em, sum, isum;
      en.coeffs.assign(static_cast<std::size_t>(m + 1), 0.0);
      em.coeffs.assign(static_cast<std::size_t>(m + 1), 0.0);
      sum.coeffs.assign(static_cast<std::size_t>(m + 1), 0.0);
      isum.coeffs.assign(static_cast<std::size_t>(m + 1), 0.0);
      en.coeffs[static_cast<std::size_t>(n)] = 1.0;
      em.coeffs[static_cast<std::size_t>(m)] = 1.0;
      sum.coeffs[static_cast<std::size_t>(n)] = 1.0;
      sum.coeffs[static_cast<std::size_t>(m)] = 1.0;
      isum.coeffs[static_cast<std::size_t>(n)] = 1.0;
      isum.coeffs[static_cast<std::size_t>(m)] = std::complex<double>(0.0, 1.0);

      double qn = quadform_lhs(p, en);
      double qm = quadform_lhs(p, em);
      double re = 0.5 * (quadform_lhs(p, sum) - qn - qm);
      double im = 0.5 * (quadform_lhs(p, isum) - qn - qm);
      CHECK(std::abs(re - dense.at(n, m)) <= 1e-8);
      CHECK(std::abs(im) <= 1e-8);  // entries are real
    }
}

TEST_CASE("half-plane Poisson integral") {
  auto same = verify_halfplane_poisson(1.0, 7, 7);
  CHECK(same.rhs == 1.0);
  CHECK(same.pass);

  auto r = verify_halfplane_poisson(2.0, 1, 2);
  CHECK(r.rhs == doctest::Approx(0.5).epsilon(1e-15));  // e^{-log 2}
  CHECK(r.pass);

  auto ab = verify_halfplane_poisson(1.5, 3, 5);
  auto ba = verify_halfplane_poisson(1.5, 5, 3);
  CHECK(ab.lhs == doctest::Approx(ba.lhs).epsilon(1e-13));

  CHECK_THROWS_AS(verify_halfplane_poisson(0.0, 1, 2), std::domain_error);
  CHECK_THROWS_AS(verify_halfplane_poisson(1.0, 0, 2), std::invalid_argument);
}

TEST_CASE("half-plane integral at several scales") {
  for (double tau : {0.5, 1.0, 2.0})
    for (std::int64_t n : {1, 4, 9})
      for (std::int64_t m : {1, 6}) {
        auto r = verify_halfplane_poisson(tau, n, m);
        CHECK(r.abs_discrepancy <= 1e-4 + r.tail_bound);
      }
}

TEST_CASE("divisor-sum zeta identity") {
  // n = m = 1 reduces to the zeta partial sum itself
  auto unit = verify_divisor_sum_zeta(4.0, 1, 1, 2000);
  CHECK(unit.pass);
  CHECK(std::abs(unit.rhs - zeta(4.0)) <= 1e-12);

  auto r = verify_divisor_sum_zeta(4.0, 2, 4, 10000);
  CHECK(r.rhs == doctest::Approx(zeta(4.0) * 0.25).epsilon(1e-13));
  CHECK(r.pass);

  // partial sums increase in K
  double prev = 0.0;
  for (std::int64_t k : {10, 100, 1000}) {
    auto s = verify_divisor_sum_zeta(2.5, 3, 5, k);
    CHECK(s.lhs > prev);
    CHECK(s.pass);
    prev = s.lhs;
  }

  CHECK_THROWS_AS(verify_divisor_sum_zeta(2.0, 1, 1, 100), std::domain_error);
}

TEST_CASE("multiplier gram block comparison") {
  auto r = verify_multiplier_gram(4.0, 8, 4096);
  CHECK(r.pass);
  CHECK(r.abs_discrepancy < 1e-4);

  // entry (1,1) is the partial zeta ratio, approaching 1
  auto one = verify_multiplier_gram(4.0, 1, 8192);
  CHECK(one.lhs == doctest::Approx(1.0).epsilon(1e-4));

  CHECK_THROWS_AS(verify_multiplier_gram(1.5, 4, 64), std::domain_error);
  CHECK_THROWS_AS(verify_multiplier_gram(4.0, 16, 8), std::invalid_argument);
}

TEST_CASE("multiplier gram sparsity pattern at small K") {
  // with K below the lcm the (n,m) cross term has no pairs k,l with km = ln
  double tau = 3.0;
  std::vector<std::vector<double>> cols(7);
  const std::int64_t kmax = 10;
  for (std::int64_t c = 1; c <= 7; ++c) {
    cols[static_cast<std::size_t>(c - 1)].assign(kmax + 1, 0.0);
    for (std::int64_t k = c; k <= kmax; k += c)
      cols[static_cast<std::size_t>(c - 1)][static_cast<std::size_t>(k)] =
          std::pow(static_cast<double>(k) / c, -0.5 * tau);
  }
  double dot = 0.0;  // columns 3 and 7: lcm 21 > 10
  for (std::int64_t k = 1; k <= kmax; ++k)
    dot += cols[2][static_cast<std::size_t>(k)] * cols[6][static_cast<std::size_t>(k)];
  CHECK(dot == 0.0);
}

TEST_CASE("smith determinant equals the phi product") {
  auto r1 = smith_determinant(1);
  CHECK(r1.det == 1);
  CHECK(r1.phi_product == 1);
  CHECK(r1.equal);

  auto r3 = smith_determinant(3);
  CHECK(r3.det == 2);
  CHECK(r3.equal);

  auto r8 = smith_determinant(8);
  CHECK(r8.det == 768);
  CHECK(r8.phi_product == 768);
  CHECK(r8.equal);

  for (int n = 1; n <= 7; ++n) {
    auto r = smith_determinant(n);
    CHECK(static_cast<std::int64_t>(r.det) == leibniz_gcd_det(n));
  }
  for (int n = 9; n <= 20; ++n) CHECK(smith_determinant(n).equal);

  CHECK_THROWS_AS(smith_determinant(25), std::invalid_argument);
  CHECK_THROWS_AS(smith_determinant(0), std::invalid_argument);
}

TEST_CASE("toeplitz symbol range") {
  auto [lo, hi] = toeplitz_symbol_range(2.0, 0.25);
  CHECK(lo == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(hi == doctest::Approx(5.0 / 3.0).epsilon(1e-14));

  // r -> 0 pushes both ends to 1 (identity matrix limit)
  auto [l2, h2] = toeplitz_symbol_range(40.0, 0.25);
  CHECK(l2 == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(h2 == doctest::Approx(1.0).epsilon(1e-10));

  CHECK_THROWS_AS(toeplitz_symbol_range(-1.0, 0.5), std::domain_error);
}

TEST_CASE("A(2,0;0.25) truncation extremes approach the symbol range from inside") {
  auto [lo, hi] = toeplitz_symbol_range(2.0, 0.25);
  auto s = eig_dense(dense_truncation(FamilyParams::a(2.0, 0.0, 0.25), 128));
  CHECK(s.eigenvalues.front() < hi);
  CHECK(s.eigenvalues.back() > lo);
  CHECK(hi - s.eigenvalues.front() < 5e-2);
  CHECK(s.eigenvalues.back() - lo < 5e-2);
}
