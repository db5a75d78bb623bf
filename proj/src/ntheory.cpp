#include "corners/ntheory.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "corners/kahan.hpp"

namespace corners {

namespace {

void require_positive(std::int64_t n, const char* what) {
  if (n < 1) throw std::invalid_argument(std::string(what) + " must be >= 1");
}

}  // namespace

std::pair<std::int64_t, std::int64_t> gcd_lcm(std::int64_t n, std::int64_t m) {
  require_positive(n, "n");
  require_positive(m, "m");
  std::int64_t g = std::gcd(n, m);
  std::int64_t q = n / g;
  std::int64_t l = 0;
  if (__builtin_mul_overflow(q, m, &l))
    throw std::overflow_error("gcd_lcm: lcm exceeds 64-bit range");
  return {g, l};
}

Factorization factorize(std::int64_t n) {
  require_positive(n, "n");
  Factorization f;
  f.n = n;
  std::int64_t rest = n;
  for (std::int64_t p = 2; p * p <= rest; p += (p == 2) ? 1 : 2) {
    if (rest % p != 0) continue;
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    f.factors.push_back({p, e});
  }
  if (rest > 1) f.factors.push_back({rest, 1});
  return f;
}

int mobius(std::int64_t n) {
  Factorization f = factorize(n);
  for (const auto& pp : f.factors)
    if (pp.exponent > 1) return 0;
  return (f.factors.size() % 2 == 0) ? 1 : -1;
}

std::int64_t euler_phi(std::int64_t n) {
  Factorization f = factorize(n);
  std::int64_t phi = n;
  for (const auto& pp : f.factors) phi -= phi / pp.prime;
  return phi;
}

double jordan_totient(std::int64_t d, double t) {
  require_positive(d, "d");
  if (d == 1) return 1.0;
  double result = std::pow(static_cast<double>(d), t);
  for (const auto& pp : factorize(d).factors)
    result *= 1.0 - std::pow(static_cast<double>(pp.prime), -t);
  return result;
}

double jordan_totient_divisor_sum(std::int64_t d, double t) {
  require_positive(d, "d");
  KahanSum acc;
  for (std::int64_t e : divisors(d)) {
    int mu = mobius(d / e);
    if (mu != 0) acc.add(mu * std::pow(static_cast<double>(e), t));
  }
  return acc.value();
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  require_positive(n, "n");
  std::vector<std::int64_t> divs{1};
  for (const auto& pp : factorize(n).factors) {
    std::size_t count = divs.size();
    std::int64_t pe = 1;
    for (int e = 1; e <= pp.exponent; ++e) {
      pe *= pp.prime;
      for (std::size_t i = 0; i < count; ++i) divs.push_back(divs[i] * pe);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

double zeta(double t) {
  if (!(t > 1.0 + 1e-9)) throw std::domain_error("zeta: requires t > 1");

  // Euler-Maclaurin: zeta(t) = sum_{k<=N} k^-t + N^{1-t}/(t-1) - N^-t/2
  //   + t N^{-t-1}/12 - t(t+1)(t+2) N^{-t-3}/720 + R,
  // |R| <= t(t+1)(t+2)(t+3)(t+4) N^{-t-5}/30240. Pick N from that bound.
  const double tol = 1e-13;
  const double coeff = t * (t + 1) * (t + 2) * (t + 3) * (t + 4) / 30240.0;
  double n_real = std::pow(coeff / tol, 1.0 / (t + 5.0));
  std::int64_t n = std::max<std::int64_t>(16, static_cast<std::int64_t>(std::ceil(n_real)));

  KahanSum partial;
  for (std::int64_t k = 1; k <= n; ++k) partial.add(std::pow(static_cast<double>(k), -t));

  const double nd = static_cast<double>(n);
  double value = partial.value();
  value += std::pow(nd, 1.0 - t) / (t - 1.0);
  value -= 0.5 * std::pow(nd, -t);
  value += t * std::pow(nd, -t - 1.0) / 12.0;
  value -= t * (t + 1) * (t + 2) * std::pow(nd, -t - 3.0) / 720.0;
  return value;
}

SpfSieve::SpfSieve(std::int64_t n) {
  require_positive(n, "n");
  spf_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (std::int64_t i = 2; i <= n; ++i) {
    if (spf_[static_cast<std::size_t>(i)] != 0) continue;
    for (std::int64_t j = i; j <= n; j += i)
      if (spf_[static_cast<std::size_t>(j)] == 0)
        spf_[static_cast<std::size_t>(j)] = static_cast<std::int32_t>(i);
  }
}

std::vector<double> jordan_totient_table(std::int64_t n, double t, const SpfSieve& sieve) {
  if (sieve.size() < n) throw std::invalid_argument("jordan_totient_table: sieve too small");
  std::vector<double> table(static_cast<std::size_t>(n) + 1, 0.0);
  if (n >= 1) table[1] = 1.0;
  for (std::int64_t d = 2; d <= n; ++d) {
    std::int64_t p = sieve[d];
    std::int64_t core = d;
    int k = 0;
    while (core % p == 0) {
      core /= p;
      ++k;
    }
    if (core == 1) {
      // d = p^k: J_t(p^k) = p^{kt} - p^{(k-1)t}
      double pd = static_cast<double>(p);
      table[static_cast<std::size_t>(d)] =
          std::pow(pd, k * t) - std::pow(pd, (k - 1) * t);
    } else {
      // multiplicative split into coprime parts, both already computed
      table[static_cast<std::size_t>(d)] =
          table[static_cast<std::size_t>(core)] * table[static_cast<std::size_t>(d / core)];
    }
  }
  return table;
}

}  // namespace corners
