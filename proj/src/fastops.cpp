#include "corners/fastops.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "corners/kahan.hpp"
#include "corners/ntheory.hpp"

namespace corners {

void DenseOperator::apply(std::span<const double> x, std::span<double> y) const {
  if (static_cast<std::int64_t>(x.size()) != m_.n || static_cast<std::int64_t>(y.size()) != m_.n)
    throw std::invalid_argument("DenseOperator::apply: size mismatch");
  for (std::int64_t i = 0; i < m_.n; ++i) {
    KahanSum acc;
    const double* row = m_.a.data() + i * m_.n;
    for (std::int64_t j = 0; j < m_.n; ++j) acc.add(row[j] * x[static_cast<std::size_t>(j)]);
    y[static_cast<std::size_t>(i)] = acc.value();
  }
}

namespace {

double checked_weight(double v, bool& clamped) {
  if (!std::isfinite(v)) throw std::range_error("operator weight overflows double range");
  if (v != 0.0 && std::abs(v) < std::numeric_limits<double>::min()) {
    clamped = true;
    return 0.0;
  }
  return v;
}

}  // namespace

LinearOperatorHandle::LinearOperatorHandle(const FamilyParams& params, std::int64_t n)
    : params_(params), n_(n) {
  params_.validate();
  if (n < 1) throw std::invalid_argument("LinearOperatorHandle: N must be >= 1");
  weight_.resize(static_cast<std::size_t>(n));

  switch (params_.family) {
    case Family::A: {
      ratio_ = std::pow(params_.q, 0.5 * std::abs(params_.tau));
      for (std::int64_t i = 0; i < n; ++i)
        weight_[static_cast<std::size_t>(i)] =
            checked_weight(std::pow(params_.q, 0.5 * params_.rho * static_cast<double>(i)),
                           weights_clamped_);
      if (params_.tau < 0.0) {
        RankTwoDecomposition d = rank_two_decomposition(params_, n);
        alpha_ = std::move(d.alpha);
        beta_ = std::move(d.beta);
        for (double& v : alpha_) v = checked_weight(v, weights_clamped_);
        for (double& v : beta_) v = checked_weight(v, weights_clamped_);
      }
      break;
    }
    case Family::B: {
      lpart_.resize(static_cast<std::size_t>(n));
      for (std::int64_t i = 0; i < n; ++i) {
        double x = static_cast<double>(i + 1);
        weight_[static_cast<std::size_t>(i)] =
            checked_weight(std::pow(x, 0.5 * (params_.tau - params_.rho)), weights_clamped_);
        lpart_[static_cast<std::size_t>(i)] =
            checked_weight(std::pow(x, -params_.tau), weights_clamped_);
      }
      break;
    }
    case Family::C: {
      for (std::int64_t i = 0; i < n; ++i) {
        double x = static_cast<double>(i + 1);
        weight_[static_cast<std::size_t>(i)] =
            checked_weight(std::pow(x, -0.5 * (params_.tau + params_.rho)), weights_clamped_);
      }
      SpfSieve sieve(n);
      jordan_ = jordan_totient_table(n, params_.tau, sieve);
      break;
    }
  }
}

void LinearOperatorHandle::apply(std::span<const double> x, std::span<double> y) const {
  if (static_cast<std::int64_t>(x.size()) != n_ || static_cast<std::int64_t>(y.size()) != n_)
    throw std::invalid_argument("LinearOperatorHandle::apply: size mismatch");
  switch (params_.family) {
    case Family::A: apply_a(x, y); break;
    case Family::B: apply_b(x, y); break;
    case Family::C: apply_c(x, y); break;
  }
}

namespace {

// keeps geometric recurrences out of the subnormal range, where arithmetic
// falls off the fast path
inline double flush_tiny(double v) {
  return std::abs(v) < std::numeric_limits<double>::min() ? 0.0 : v;
}

}  // namespace

void LinearOperatorHandle::apply_a(std::span<const double> x, std::span<double> y) const {
  const std::size_t n = static_cast<std::size_t>(n_);

  // (T_r w)_i = u_i + v_i - w_i with u the forward and v the backward
  // geometric recurrence (both contractions for r < 1); u lands in y, the
  // backward pass combines in place.
  double run = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    run = flush_tiny(ratio_ * run + weight_[i] * x[i]);
    y[i] = run;
  }
  run = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    double w = weight_[i] * x[i];
    run = flush_tiny(ratio_ * run + w);
    y[i] = weight_[i] * (y[i] + run - w);
  }

  if (params_.tau < 0.0) {
    // A(tau) = -A(-tau) + alpha beta^T + beta alpha^T
    KahanSum adot, bdot;
    for (std::size_t i = 0; i < n; ++i) {
      adot.add(alpha_[i] * x[i]);
      bdot.add(beta_[i] * x[i]);
    }
    for (std::size_t i = 0; i < n; ++i)
      y[i] = -y[i] + alpha_[i] * bdot.value() + beta_[i] * adot.value();
  }
}

void LinearOperatorHandle::apply_b(std::span<const double> x, std::span<double> y) const {
  const std::size_t n = static_cast<std::size_t>(n_);

  // (L w)_i = a_i * sum_{m <= i} w_m + sum_{m > i} a_m w_m with w = D_w x;
  // suffix sums live in y until the forward pass consumes them.
  KahanSum back;
  for (std::size_t i = n; i-- > 0;) {
    back.add(lpart_[i] * weight_[i] * x[i]);
    y[i] = back.value();
  }
  KahanSum prefix;
  for (std::size_t i = 0; i < n; ++i) {
    prefix.add(weight_[i] * x[i]);
    double suffix = i + 1 < n ? y[i + 1] : 0.0;
    y[i] = weight_[i] * (lpart_[i] * prefix.value() + suffix);
  }
}

void LinearOperatorHandle::apply_c(std::span<const double> x, std::span<double> y) const {
  const std::size_t n = static_cast<std::size_t>(n_);
  // 1-based scratch; z_m lives at y[m-1].
  //
  // Both harmonic passes are split at B ~ sqrt(N) -- direct multiples-of-d
  // loops for d <= B, the transposed (cofactor j <= N/B) form for d > B --
  // and every loop walks one index segment at a time so the read-modify-write
  // arrays stay cache-resident. Per-d cursor positions make the segment
  // restarts free of divisions.
  std::size_t split = 1;
  while (split * split < n) ++split;
  split = std::min(split, n);
  const std::size_t n_over = n / (split + 1);     // largest j with j*(split+1) <= n
  constexpr std::size_t kSegment = std::size_t(1) << 15;

  std::vector<double> w(n + 1, 0.0), sums(n + 1, 0.0), comp(n + 1, 0.0);
  std::vector<std::size_t> pos(split + 1);
  for (std::size_t i = 0; i < n; ++i) w[i + 1] = weight_[i] * x[i];

  // S_d = sum over multiples of d of w_m, Kahan-compensated per d
  for (std::size_t d = 1; d <= split; ++d) pos[d] = d;
  for (std::size_t lo = 1; lo <= n; lo += kSegment) {
    const std::size_t hi = std::min(n, lo + kSegment - 1);
    for (std::size_t d = 1; d <= split; ++d) {
      double s = sums[d], c = comp[d];
      std::size_t m = pos[d];
      for (; m <= hi; m += d) {
        double t = w[m] - c;
        double s2 = s + t;
        c = (s2 - s) - t;
        s = s2;
      }
      pos[d] = m;
      sums[d] = s;
      comp[d] = c;
    }
    for (std::size_t j = 1; j <= n_over; ++j) {
      std::size_t d = std::max(split + 1, (lo + j - 1) / j);
      for (; d * j <= hi; ++d) {
        double t = w[d * j] - comp[d];
        double s = sums[d] + t;
        comp[d] = (s - sums[d]) - t;
        sums[d] = s;
      }
    }
  }
  for (std::size_t d = 1; d <= n; ++d) sums[d] *= jordan_[d];

  // (G w)_m = sum_{d | m} S_d, compensated per coordinate
  std::fill(comp.begin(), comp.end(), 0.0);
  for (std::size_t i = 0; i < n; ++i) y[i] = 0.0;
  for (std::size_t d = 1; d <= split; ++d) pos[d] = d;
  for (std::size_t lo = 1; lo <= n; lo += kSegment) {
    const std::size_t hi = std::min(n, lo + kSegment - 1);
    for (std::size_t d = 1; d <= split; ++d) {
      const double term = sums[d];
      std::size_t m = pos[d];
      for (; m <= hi; m += d) {
        double t = term - comp[m];
        double s = y[m - 1] + t;
        comp[m] = (s - y[m - 1]) - t;
        y[m - 1] = s;
      }
      pos[d] = m;
    }
    for (std::size_t j = 1; j <= n_over; ++j) {
      std::size_t d = std::max(split + 1, (lo + j - 1) / j);
      for (; d * j <= hi; ++d) {
        const std::size_t m = d * j;
        double t = sums[d] - comp[m];
        double s = y[m - 1] + t;
        comp[m] = (s - y[m - 1]) - t;
        y[m - 1] = s;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) y[i] *= weight_[i];
}

IdentityReport gram_factor_check(double tau, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("gram_factor_check: N must be >= 1");
  SpfSieve sieve(n);
  std::vector<double> jordan = jordan_totient_table(n, tau, sieve);

  // Divisor sums DS[g] = sum_{d | g} J_tau(d) via one harmonic pass; every
  // g <= N occurs as gcd(g, g), so scanning g covers all pairs n,m <= N.
  std::vector<double> ds(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<double> comp(static_cast<std::size_t>(n) + 1, 0.0);
  for (std::int64_t d = 1; d <= n; ++d) {
    double jd = jordan[static_cast<std::size_t>(d)];
    for (std::int64_t m = d; m <= n; m += d) {
      double t = jd - comp[static_cast<std::size_t>(m)];
      double s = ds[static_cast<std::size_t>(m)] + t;
      comp[static_cast<std::size_t>(m)] = (s - ds[static_cast<std::size_t>(m)]) - t;
      ds[static_cast<std::size_t>(m)] = s;
    }
  }

  IdentityReport r;
  r.name = "gram-factor";
  r.tolerance = 1e-12;
  bool jordan_nonneg = true;
  double worst = 0.0;
  for (std::int64_t g = 1; g <= n; ++g) {
    if (jordan[static_cast<std::size_t>(g)] < 0.0) jordan_nonneg = false;
    double lhs = ds[static_cast<std::size_t>(g)];
    double rhs = std::pow(static_cast<double>(g), tau);
    double d = rel_diff(lhs, rhs);
    if (d >= worst) {
      worst = d;
      r.lhs = lhs;
      r.rhs = rhs;
      r.abs_discrepancy = std::abs(lhs - rhs);
      r.notes = "worst gcd g=" + std::to_string(g);
    }
  }
  r.rel_discrepancy = worst;
  r.pass = worst <= r.tolerance;
  if (tau > 0.0) {
    r.notes += jordan_nonneg ? "; all J_tau(d) >= 0" : "; negative J_tau found";
    if (!jordan_nonneg) r.pass = false;
  }
  return r;
}

}  // namespace corners
