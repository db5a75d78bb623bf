#include "corners/families.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "corners/kahan.hpp"
#include "corners/ntheory.hpp"

namespace corners {

char family_letter(Family f) {
  switch (f) {
    case Family::A: return 'A';
    case Family::B: return 'B';
    case Family::C: return 'C';
  }
  return '?';
}

Family family_from_letter(char c) {
  switch (c) {
    case 'A': case 'a': return Family::A;
    case 'B': case 'b': return Family::B;
    case 'C': case 'c': return Family::C;
  }
  throw std::invalid_argument("unknown family, expected A, B or C");
}

FamilyParams FamilyParams::a(double tau, double rho, double q) {
  FamilyParams p{Family::A, tau, rho, q};
  p.validate();
  return p;
}

FamilyParams FamilyParams::b(double tau, double rho) {
  FamilyParams p{Family::B, tau, rho, 0.0};
  p.validate();
  return p;
}

FamilyParams FamilyParams::c(double tau, double rho) {
  FamilyParams p{Family::C, tau, rho, 0.0};
  p.validate();
  return p;
}

void FamilyParams::validate() const {
  if (!std::isfinite(tau) || !std::isfinite(rho))
    throw std::invalid_argument("FamilyParams: tau, rho must be finite");
  if (family == Family::A && !(q > 0.0 && q < 1.0))
    throw std::invalid_argument("FamilyParams: family A requires 0 < q < 1");
}

double DenseSymMatrix::trace() const {
  KahanSum acc;
  for (std::int64_t i = 0; i < n; ++i) acc.add(at(i, i));
  return acc.value();
}

double DenseSymMatrix::frobenius() const {
  KahanSum acc;
  for (double v : a) acc.add(v * v);
  return std::sqrt(acc.value());
}

namespace {

void check_index(const FamilyParams& p, std::int64_t n, std::int64_t m) {
  if (n < p.origin() || m < p.origin())
    throw std::invalid_argument(std::string("entry: index below origin for family ") +
                                family_letter(p.family));
}

double checked(double v, const FamilyParams& p, std::int64_t n, std::int64_t m) {
  if (!std::isfinite(v))
    throw std::range_error(std::string("entry overflow for family ") + family_letter(p.family) +
                           " at (" + std::to_string(n) + "," + std::to_string(m) + ")");
  return v;
}

}  // namespace

double entry(const FamilyParams& p, std::int64_t n, std::int64_t m) {
  check_index(p, n, m);
  switch (p.family) {
    case Family::A: {
      // q^{tau|n-m|/2} q^{rho(n+m)/2}
      double e = 0.5 * (p.tau * static_cast<double>(std::llabs(n - m)) +
                        p.rho * static_cast<double>(n + m));
      return checked(std::pow(p.q, e), p, n, m);
    }
    case Family::B: {
      // (nm)^{(tau-rho)/2} (n v m)^{-tau}
      double nm = static_cast<double>(n) * static_cast<double>(m);
      double v = std::pow(nm, 0.5 * (p.tau - p.rho)) *
                 std::pow(static_cast<double>(std::max(n, m)), -p.tau);
      return checked(v, p, n, m);
    }
    case Family::C: {
      // GCD form (n,m)^tau (nm)^{-(tau+rho)/2}; avoids the large lcm power.
      double g = static_cast<double>(std::gcd(n, m));
      double nm = static_cast<double>(n) * static_cast<double>(m);
      double v = std::pow(g, p.tau) * std::pow(nm, -0.5 * (p.tau + p.rho));
      return checked(v, p, n, m);
    }
  }
  return 0.0;
}

DenseSymMatrix dense_truncation(const FamilyParams& p, std::int64_t n) {
  p.validate();
  if (n < 1) throw std::invalid_argument("dense_truncation: N must be >= 1");
  DenseSymMatrix m;
  m.n = n;
  m.origin = p.origin();
  m.a.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = i; j < n; ++j) {
      double v = entry(p, i + m.origin, j + m.origin);
      m.at(i, j) = v;
      m.at(j, i) = v;
    }
  }
  return m;
}

IdentityReport scaling_check(const FamilyParams& p, std::int64_t k, std::int64_t n, std::int64_t m) {
  p.validate();
  if (k < 1) throw std::invalid_argument("scaling_check: k must be >= 1");
  check_index(p, n, m);
  IdentityReport r;
  r.name = "scaling";
  if (p.family == Family::A) {
    r.lhs = entry(p, n + k, m + k);
    r.rhs = std::pow(p.q, p.rho * static_cast<double>(k)) * entry(p, n, m);
  } else {
    r.lhs = entry(p, k * n, k * m);
    r.rhs = std::pow(static_cast<double>(k), -p.rho) * entry(p, n, m);
  }
  r.abs_discrepancy = std::abs(r.lhs - r.rhs);
  r.rel_discrepancy = rel_diff(r.lhs, r.rhs);
  r.tolerance = 1e-12;
  r.pass = r.rel_discrepancy <= r.tolerance;
  r.notes = "k=" + std::to_string(k) + " n=" + std::to_string(n) + " m=" + std::to_string(m);
  return r;
}

IdentityReport scaling_check_exhaustive(const FamilyParams& p, std::int64_t k, std::int64_t max_index) {
  IdentityReport worst;
  worst.name = "scaling";
  worst.tolerance = 1e-12;
  worst.pass = true;
  for (std::int64_t n = p.origin(); n <= max_index; ++n) {
    for (std::int64_t m = n; m <= max_index; ++m) {
      IdentityReport r = scaling_check(p, k, n, m);
      if (r.rel_discrepancy >= worst.rel_discrepancy) {
        r.tolerance = worst.tolerance;
        r.pass = r.rel_discrepancy <= r.tolerance;
        worst = r;
      }
    }
  }
  return worst;
}

RankTwoDecomposition rank_two_decomposition(const FamilyParams& p, std::int64_t n) {
  p.validate();
  if (p.family == Family::C)
    throw std::invalid_argument("rank_two_decomposition: no such formula for family C");
  RankTwoDecomposition d;
  d.alpha.resize(static_cast<std::size_t>(n));
  d.beta.resize(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    if (p.family == Family::A) {
      d.alpha[static_cast<std::size_t>(i)] = std::pow(p.q, 0.5 * (p.rho + p.tau) * static_cast<double>(i));
      d.beta[static_cast<std::size_t>(i)] = std::pow(p.q, 0.5 * (p.rho - p.tau) * static_cast<double>(i));
    } else {
      double x = static_cast<double>(i + 1);
      d.alpha[static_cast<std::size_t>(i)] = std::pow(x, -0.5 * (p.rho + p.tau));
      d.beta[static_cast<std::size_t>(i)] = std::pow(x, -0.5 * (p.rho - p.tau));
    }
  }
  return d;
}

IdentityReport rank_two_residual(const FamilyParams& p, std::int64_t n) {
  RankTwoDecomposition d = rank_two_decomposition(p, n);
  FamilyParams flipped = p;
  flipped.tau = -p.tau;

  IdentityReport r;
  r.name = "rank-two";
  r.tolerance = 1e-12;
  std::int64_t o = p.origin();
  double worst = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = i; j < n; ++j) {
      double plus = entry(p, i + o, j + o);
      double minus = entry(flipped, i + o, j + o);
      double cross1 = d.alpha[static_cast<std::size_t>(i)] * d.beta[static_cast<std::size_t>(j)];
      double cross2 = d.beta[static_cast<std::size_t>(i)] * d.alpha[static_cast<std::size_t>(j)];
      double lhs = plus + minus;
      double rhs = cross1 + cross2;
      double scale = std::max({std::abs(plus), std::abs(minus), std::abs(cross1), std::abs(cross2), 1e-300});
      double resid = std::abs(lhs - rhs) / scale;
      if (resid >= worst) {
        worst = resid;
        r.lhs = lhs;
        r.rhs = rhs;
        r.abs_discrepancy = std::abs(lhs - rhs);
        r.notes = "worst pair n=" + std::to_string(i + o) + " m=" + std::to_string(j + o);
      }
    }
  }
  r.rel_discrepancy = worst;
  r.pass = worst <= r.tolerance;
  return r;
}

double tensor_factor_entry(const FamilyParams& p, std::int64_t n, std::int64_t m) {
  p.validate();
  if (p.family != Family::C)
    throw std::invalid_argument("tensor_factor_entry: family C only");
  if (n < 1 || m < 1) throw std::invalid_argument("tensor_factor_entry: indices start at 1");

  Factorization fn = factorize(n);
  Factorization fm = factorize(m);
  double product = 1.0;
  std::size_t i = 0, j = 0;
  auto factor = [&](std::int64_t prime, int kp, int jp) {
    FamilyParams ap = FamilyParams::a(p.tau, p.rho, 1.0 / static_cast<double>(prime));
    product *= entry(ap, kp, jp);
  };
  while (i < fn.factors.size() || j < fm.factors.size()) {
    if (j >= fm.factors.size() ||
        (i < fn.factors.size() && fn.factors[i].prime < fm.factors[j].prime)) {
      factor(fn.factors[i].prime, fn.factors[i].exponent, 0);
      ++i;
    } else if (i >= fn.factors.size() || fm.factors[j].prime < fn.factors[i].prime) {
      factor(fm.factors[j].prime, 0, fm.factors[j].exponent);
      ++j;
    } else {
      factor(fn.factors[i].prime, fn.factors[i].exponent, fm.factors[j].exponent);
      ++i;
      ++j;
    }
  }
  return product;
}

IdentityReport tensor_factor_check(const FamilyParams& p, std::int64_t max_index) {
  IdentityReport r;
  r.name = "tensor-factor";
  r.tolerance = 1e-12;
  double worst = 0.0;
  for (std::int64_t n = 1; n <= max_index; ++n) {
    for (std::int64_t m = n; m <= max_index; ++m) {
      double lhs = tensor_factor_entry(p, n, m);
      double rhs = entry(p, n, m);
      double d = rel_diff(lhs, rhs);
      if (d >= worst) {
        worst = d;
        r.lhs = lhs;
        r.rhs = rhs;
        r.abs_discrepancy = std::abs(lhs - rhs);
        r.notes = "worst pair n=" + std::to_string(n) + " m=" + std::to_string(m);
      }
    }
  }
  r.rel_discrepancy = worst;
  r.pass = worst <= r.tolerance;
  return r;
}

SquareMatrix multiplicative_toeplitz(double tau, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("multiplicative_toeplitz: N must be >= 1");
  SquareMatrix t;
  t.n = n;
  t.a.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  for (std::int64_t row = 1; row <= n; ++row)
    for (std::int64_t col = 1; col <= n; ++col)
      if (row % col == 0)
        t.at(row - 1, col - 1) = std::pow(static_cast<double>(row) / static_cast<double>(col), -0.5 * tau);
  return t;
}

}  // namespace corners
