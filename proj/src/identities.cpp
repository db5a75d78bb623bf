#include "corners/identities.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "corners/kahan.hpp"
#include "corners/ntheory.hpp"

namespace corners {

namespace {

constexpr double kPi = std::numbers::pi;

// Smallest grid at which the Poisson-kernel Fourier tail r^{grid - shift}
// aliases below 1e-13; uniform rules on periodic integrands are exact up to
// that tail.
std::int64_t alias_safe_grid(std::int64_t grid, double r, std::int64_t shift) {
  if (grid < 8) throw std::invalid_argument("circle quadrature: grid must be >= 8");
  if (r <= 0.0) return grid;
  double needed = static_cast<double>(shift) + 8.0 + std::log(1e-13) / std::log(r);
  std::int64_t g = grid;
  while (g < needed && g < (1 << 22)) g *= 2;
  return g;
}

}  // namespace

double CoefficientVector::norm_sq() const {
  KahanSum acc;
  for (const auto& c : coeffs) acc.add(std::norm(c));
  return acc.value();
}

IdentityReport verify_poisson_circle(double q, double tau, std::int64_t n, std::int64_t grid) {
  if (!(tau > 0.0)) throw std::domain_error("verify_poisson_circle: requires tau > 0");
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("verify_poisson_circle: requires 0 < q < 1");

  const double r = std::pow(q, 0.5 * tau);
  const std::int64_t m = alias_safe_grid(grid, r, std::llabs(n));

  // mean over the uniform grid of the Poisson kernel times e^{in theta};
  // the imaginary part cancels by symmetry and is folded into the error
  KahanSum acc;
  const double mass = 1.0 - std::pow(q, tau);  // = 1 - r^2
  for (std::int64_t j = 0; j < m; ++j) {
    double theta = -kPi + 2.0 * kPi * static_cast<double>(j) / static_cast<double>(m);
    double denom = 1.0 - 2.0 * r * std::cos(theta) + r * r;
    acc.add(mass / denom * std::cos(static_cast<double>(n) * theta));
  }

  IdentityReport rep;
  rep.name = "poisson-circle";
  rep.lhs = acc.value() / static_cast<double>(m);
  rep.rhs = std::pow(q, 0.5 * tau * static_cast<double>(std::llabs(n)));
  rep.abs_discrepancy = std::abs(rep.lhs - rep.rhs);
  rep.rel_discrepancy = rel_diff(rep.lhs, rep.rhs);
  rep.tolerance = 1e-10;
  rep.pass = rep.abs_discrepancy <= rep.tolerance;
  rep.notes = "grid=" + std::to_string(m) + " (requested " + std::to_string(grid) + ")";
  return rep;
}

IdentityReport verify_quadform_a(const FamilyParams& p, const CoefficientVector& f, std::int64_t grid) {
  p.validate();
  if (p.family != Family::A) throw std::invalid_argument("verify_quadform_a: family A only");
  if (!(p.tau > 0.0)) throw std::domain_error("verify_quadform_a: requires tau > 0");
  if (f.coeffs.empty()) throw std::invalid_argument("verify_quadform_a: empty polynomial");

  const double r = std::pow(p.q, 0.5 * p.tau);
  const double w = std::pow(p.q, 0.5 * p.rho);
  const std::int64_t deg = static_cast<std::int64_t>(f.coeffs.size()) - 1;
  const std::int64_t m = alias_safe_grid(std::max<std::int64_t>(grid, 1024), r, 2 * deg);

  KahanSum acc;
  const double mass = 1.0 - std::pow(p.q, p.tau);
  for (std::int64_t j = 0; j < m; ++j) {
    double theta = -kPi + 2.0 * kPi * static_cast<double>(j) / static_cast<double>(m);
    std::complex<double> zc = std::polar(1.0, theta);
    std::complex<double> fz = 0.0;
    for (std::size_t i = f.coeffs.size(); i-- > 0;) fz = fz * (w * zc) + f.coeffs[i];
    std::complex<double> kernel = 1.0 / (1.0 - r * zc);
    acc.add(mass * std::norm(kernel * fz));
  }

  // matrix side through the dense truncation
  DenseSymMatrix a = dense_truncation(p, deg + 1);
  KahanSum form;
  for (std::int64_t i = 0; i <= deg; ++i)
    for (std::int64_t j = 0; j <= deg; ++j)
      form.add(a.at(i, j) *
               (f.coeffs[static_cast<std::size_t>(i)] * std::conj(f.coeffs[static_cast<std::size_t>(j)])).real());

  IdentityReport rep;
  rep.name = "quadform-a";
  rep.lhs = acc.value() / static_cast<double>(m);
  rep.rhs = form.value();
  rep.abs_discrepancy = std::abs(rep.lhs - rep.rhs);
  rep.rel_discrepancy = rel_diff(rep.lhs, rep.rhs);
  rep.tolerance = 1e-8;
  rep.pass = rep.rel_discrepancy <= rep.tolerance;
  rep.notes = "grid=" + std::to_string(m) + " degree=" + std::to_string(deg);
  return rep;
}

IdentityReport verify_halfplane_poisson(double tau, std::int64_t n, std::int64_t m, double trunc) {
  if (!(tau > 0.0)) throw std::domain_error("verify_halfplane_poisson: requires tau > 0");
  if (n < 1 || m < 1) throw std::invalid_argument("verify_halfplane_poisson: indices start at 1");

  const double lg = std::log(static_cast<double>(n) / static_cast<double>(m));
  const double t_max = trunc > 0.0 ? trunc : std::max(1e4, 1e4 * tau);
  // step fine enough for the cos(t log(n/m)) oscillation and for the
  // Lorentzian peak of width tau/2
  double step = std::min({0.1, tau / 16.0, std::abs(lg) > 0.0 ? 1.0 / (4.0 * std::abs(lg)) : 0.1});
  std::int64_t intervals = static_cast<std::int64_t>(std::ceil(t_max / step));
  intervals += intervals % 2;  // Simpson needs an even count
  step = t_max / static_cast<double>(intervals);

  // integrand is even in t: integrate [0, T] and double
  auto g = [&](double t) { return std::cos(t * lg) / (t * t + 0.25 * tau * tau); };
  KahanSum simpson;
  simpson.add(g(0.0));
  simpson.add(g(t_max));
  for (std::int64_t i = 1; i < intervals; ++i)
    simpson.add((i % 2 == 1 ? 4.0 : 2.0) * g(step * static_cast<double>(i)));
  double integral = 2.0 * simpson.value() * step / 3.0;

  IdentityReport rep;
  rep.name = "halfplane-poisson";
  rep.lhs = tau / (2.0 * kPi) * integral;
  rep.rhs = std::exp(-std::abs(lg) * 0.5 * tau);
  rep.tail_bound = tau / (kPi * t_max);
  rep.abs_discrepancy = std::abs(rep.lhs - rep.rhs);
  rep.rel_discrepancy = rel_diff(rep.lhs, rep.rhs);
  rep.tolerance = 1e-4;
  rep.pass = rep.abs_discrepancy <= rep.tolerance + rep.tail_bound;
  rep.notes = "T=" + std::to_string(t_max) + " intervals=" + std::to_string(intervals);
  return rep;
}

IdentityReport verify_divisor_sum_zeta(double tau, std::int64_t n, std::int64_t m, std::int64_t kmax) {
  if (!(tau > 2.0)) throw std::domain_error("verify_divisor_sum_zeta: requires tau > 2");
  if (n < 1 || m < 1) throw std::invalid_argument("verify_divisor_sum_zeta: indices start at 1");
  if (kmax < 1) throw std::invalid_argument("verify_divisor_sum_zeta: K must be >= 1");

  auto [g, l] = gcd_lcm(n, m);
  const double ab = static_cast<double>(n / g) * static_cast<double>(m / g);

  KahanSum acc;
  for (std::int64_t j = 1; j <= kmax; ++j) {
    double jj = static_cast<double>(j);
    acc.add(std::pow(jj * jj * ab, -0.5 * tau));
  }

  IdentityReport rep;
  rep.name = "zeta-divisor";
  rep.lhs = acc.value();
  double nm = static_cast<double>(n) * static_cast<double>(m);
  rep.rhs = zeta(tau) * std::pow(nm, 0.5 * tau) / std::pow(static_cast<double>(l), tau);
  // remaining terms: (ab)^{-tau/2} sum_{j>K} j^-tau < (ab)^{-tau/2} K^{1-tau}/(tau-1)
  rep.tail_bound = std::pow(ab, -0.5 * tau) * std::pow(static_cast<double>(kmax), 1.0 - tau) / (tau - 1.0);
  rep.abs_discrepancy = std::abs(rep.lhs - rep.rhs);
  rep.rel_discrepancy = rel_diff(rep.lhs, rep.rhs);
  rep.tolerance = 1e-12 * std::max(std::abs(rep.lhs), std::abs(rep.rhs));
  rep.pass = rep.abs_discrepancy <= rep.tolerance + rep.tail_bound;
  rep.notes = "K=" + std::to_string(kmax) + " a=" + std::to_string(n / g) + " b=" + std::to_string(m / g);
  return rep;
}

IdentityReport verify_multiplier_gram(double tau, std::int64_t n, std::int64_t kmax) {
  if (!(tau > 2.0)) throw std::domain_error("verify_multiplier_gram: requires tau > 2");
  if (n < 1) throw std::invalid_argument("verify_multiplier_gram: N must be >= 1");
  if (kmax < n) throw std::invalid_argument("verify_multiplier_gram: K must be >= N");

  // columns 1..N of the multiplicative Toeplitz factor over row indices <= K
  std::vector<std::vector<double>> cols(static_cast<std::size_t>(n));
  for (std::int64_t c = 1; c <= n; ++c) {
    auto& col = cols[static_cast<std::size_t>(c - 1)];
    col.assign(static_cast<std::size_t>(kmax) + 1, 0.0);
    for (std::int64_t k = c; k <= kmax; k += c)
      col[static_cast<std::size_t>(k)] = std::pow(static_cast<double>(k) / static_cast<double>(c), -0.5 * tau);
  }

  const double z = zeta(tau);
  DenseSymMatrix c_ref = dense_truncation(FamilyParams::c(tau, 0.0), n);

  IdentityReport rep;
  rep.name = "multiplier-gram";
  double worst = 0.0, worst_tail = 0.0;
  for (std::int64_t i = 1; i <= n; ++i) {
    for (std::int64_t j = i; j <= n; ++j) {
      KahanSum dot;
      const auto& ci = cols[static_cast<std::size_t>(i - 1)];
      const auto& cj = cols[static_cast<std::size_t>(j - 1)];
      auto [g, l] = gcd_lcm(i, j);
      for (std::int64_t k = l; k <= kmax; k += l) dot.add(ci[static_cast<std::size_t>(k)] * cj[static_cast<std::size_t>(k)]);
      double lhs = dot.value() / z;
      double rhs = c_ref.at(i - 1, j - 1);
      double d = std::abs(lhs - rhs);
      // dropped terms of the j-parametrised series beyond J = floor(K/lcm)
      double jj = std::floor(static_cast<double>(kmax) / static_cast<double>(l));
      double ab = static_cast<double>(i / g) * static_cast<double>(j / g);
      double tail = std::pow(ab, -0.5 * tau) * std::pow(jj, 1.0 - tau) / ((tau - 1.0) * z);
      worst_tail = std::max(worst_tail, tail);
      if (d >= worst) {
        worst = d;
        rep.lhs = lhs;
        rep.rhs = rhs;
        rep.notes = "worst entry n=" + std::to_string(i) + " m=" + std::to_string(j) +
                    " K=" + std::to_string(kmax);
      }
    }
  }
  rep.abs_discrepancy = worst;
  rep.rel_discrepancy = worst;  // reference entries are O(1) on the block
  rep.tail_bound = worst_tail;
  rep.tolerance = 1e-12;
  rep.pass = worst <= rep.tail_bound + rep.tolerance;
  return rep;
}

namespace {

__int128 checked_mul(__int128 a, __int128 b) {
  __int128 out;
  if (__builtin_mul_overflow(a, b, &out))
    throw std::overflow_error("smith_determinant: 128-bit overflow");
  return out;
}

}  // namespace

SmithResult smith_determinant(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("smith_determinant: N must be >= 1");
  if (n > 24) throw std::invalid_argument("smith_determinant: N exceeds exact-arithmetic guard 24");

  // Bareiss fraction-free elimination; every division is exact.
  std::vector<__int128> a(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = 0; j < n; ++j)
      a[static_cast<std::size_t>(i * n + j)] = std::gcd(i + 1, j + 1);

  auto at = [&](std::int64_t i, std::int64_t j) -> __int128& {
    return a[static_cast<std::size_t>(i * n + j)];
  };
  __int128 prev = 1;
  for (std::int64_t k = 0; k < n - 1; ++k) {
    if (at(k, k) == 0) throw std::runtime_error("smith_determinant: zero pivot");
    for (std::int64_t i = k + 1; i < n; ++i) {
      for (std::int64_t j = k + 1; j < n; ++j) {
        __int128 num = checked_mul(at(k, k), at(i, j));
        num -= checked_mul(at(i, k), at(k, j));
        at(i, j) = num / prev;
      }
    }
    prev = at(k, k);
  }

  SmithResult r;
  r.det = at(n - 1, n - 1);
  r.phi_product = 1;
  for (std::int64_t k = 1; k <= n; ++k) r.phi_product = checked_mul(r.phi_product, euler_phi(k));
  r.equal = (r.det == r.phi_product);
  return r;
}

std::pair<double, double> toeplitz_symbol_range(double tau, double q) {
  if (!(tau > 0.0)) throw std::domain_error("toeplitz_symbol_range: requires tau > 0");
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("toeplitz_symbol_range: requires 0 < q < 1");
  double r = std::pow(q, 0.5 * tau);
  return {(1.0 - r) / (1.0 + r), (1.0 + r) / (1.0 - r)};
}

}  // namespace corners
