#include "corners/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "corners/kahan.hpp"

namespace corners {

namespace {

constexpr std::int64_t kJacobiSizeGuard = 2048;
constexpr int kJacobiSweepCap = 30;

double off_diagonal_norm(const std::vector<double>& a, std::int64_t n) {
  KahanSum acc;
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = i + 1; j < n; ++j) {
      double v = a[static_cast<std::size_t>(i * n + j)];
      acc.add(2.0 * v * v);
    }
  return std::sqrt(acc.value());
}

}  // namespace

JacobiResult jacobi_eigen(const DenseSymMatrix& m, bool want_vectors) {
  const std::int64_t n = m.n;
  if (n < 1) throw std::invalid_argument("jacobi_eigen: empty matrix");
  if (n > kJacobiSizeGuard) throw std::invalid_argument("jacobi_eigen: N exceeds dense guard 2048");

  std::vector<double> a = m.a;  // working copy; only the upper triangle is kept current
  std::vector<double> d(static_cast<std::size_t>(n));
  std::vector<double> b(static_cast<std::size_t>(n));
  std::vector<double> z(static_cast<std::size_t>(n), 0.0);
  for (std::int64_t i = 0; i < n; ++i) b[static_cast<std::size_t>(i)] = d[static_cast<std::size_t>(i)] = m.at(i, i);

  JacobiResult out;
  if (want_vectors) {
    out.vectors.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    for (std::int64_t i = 0; i < n; ++i) out.vectors[static_cast<std::size_t>(i * n + i)] = 1.0;
  }

  const double fro = m.frobenius();
  const double target = 1e-12 * fro;
  auto elem = [&](std::int64_t i, std::int64_t j) -> double& {
    return a[static_cast<std::size_t>(i * n + j)];
  };

  out.converged = false;
  int sweep = 0;
  for (; sweep < kJacobiSweepCap; ++sweep) {
    double sm = 0.0;
    for (std::int64_t p = 0; p < n - 1; ++p)
      for (std::int64_t q = p + 1; q < n; ++q) sm += std::abs(elem(p, q));
    if (sm == 0.0 || off_diagonal_norm(a, n) <= target) {
      out.converged = true;
      break;
    }
    // rotating on tiny elements early just churns; threshold off for later sweeps
    double tresh = (sweep < 3) ? 0.2 * sm / static_cast<double>(n * n) : 0.0;

    for (std::int64_t p = 0; p < n - 1; ++p) {
      for (std::int64_t q = p + 1; q < n; ++q) {
        double apq = elem(p, q);
        double g = 100.0 * std::abs(apq);
        if (sweep > 4 &&
            std::abs(d[static_cast<std::size_t>(p)]) + g == std::abs(d[static_cast<std::size_t>(p)]) &&
            std::abs(d[static_cast<std::size_t>(q)]) + g == std::abs(d[static_cast<std::size_t>(q)])) {
          elem(p, q) = 0.0;
          continue;
        }
        if (std::abs(apq) <= tresh) continue;

        double h = d[static_cast<std::size_t>(q)] - d[static_cast<std::size_t>(p)];
        double t;
        if (std::abs(h) + g == std::abs(h)) {
          t = apq / h;
        } else {
          double theta = 0.5 * h / apq;
          t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
          if (theta < 0.0) t = -t;
        }
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = t * c;
        double tau = s / (1.0 + c);
        double hh = t * apq;
        z[static_cast<std::size_t>(p)] -= hh;
        z[static_cast<std::size_t>(q)] += hh;
        d[static_cast<std::size_t>(p)] -= hh;
        d[static_cast<std::size_t>(q)] += hh;
        elem(p, q) = 0.0;

        auto rotate = [&](double& x, double& y) {
          double gx = x, hy = y;
          x = gx - s * (hy + gx * tau);
          y = hy + s * (gx - hy * tau);
        };
        for (std::int64_t j = 0; j < p; ++j) rotate(elem(j, p), elem(j, q));
        for (std::int64_t j = p + 1; j < q; ++j) rotate(elem(p, j), elem(j, q));
        for (std::int64_t j = q + 1; j < n; ++j) rotate(elem(p, j), elem(q, j));
        if (want_vectors) {
          double* vp = out.vectors.data();
          for (std::int64_t j = 0; j < n; ++j) rotate(vp[j * n + p], vp[j * n + q]);
        }
      }
    }
    for (std::int64_t i = 0; i < n; ++i) {
      b[static_cast<std::size_t>(i)] += z[static_cast<std::size_t>(i)];
      d[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(i)];
      z[static_cast<std::size_t>(i)] = 0.0;
    }
  }
  out.sweeps = sweep;

  // sort descending, carrying eigenvector columns along
  std::vector<std::int64_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::int64_t x, std::int64_t y) {
    return d[static_cast<std::size_t>(x)] > d[static_cast<std::size_t>(y)];
  });
  out.eigenvalues.resize(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    std::int64_t src = order[static_cast<std::size_t>(i)];
    out.eigenvalues[static_cast<std::size_t>(i)] = d[static_cast<std::size_t>(src)];
  }
  if (want_vectors) {
    std::vector<double> sorted(out.vectors.size());
    for (std::int64_t j = 0; j < n; ++j) {
      std::int64_t src = order[static_cast<std::size_t>(j)];
      for (std::int64_t i = 0; i < n; ++i)
        sorted[static_cast<std::size_t>(i * n + j)] = out.vectors[static_cast<std::size_t>(i * n + src)];
    }
    out.vectors = std::move(sorted);
  }
  return out;
}

SpectralSummary summarize(const DenseSymMatrix& m, std::vector<double> eigenvalues) {
  std::sort(eigenvalues.begin(), eigenvalues.end(), std::greater<double>());
  SpectralSummary s;
  s.eigenvalues = std::move(eigenvalues);
  s.trace = m.trace();
  s.frobenius = m.frobenius();
  Inertia in = inertia(s, 1e-10);
  s.n_pos = in.n_pos;
  s.n_neg = in.n_neg;
  s.n_zero = in.n_zero;
  return s;
}

SpectralSummary eig_dense(const DenseSymMatrix& m) {
  JacobiResult r = jacobi_eigen(m, false);
  if (!r.converged) throw std::runtime_error("eig_dense: Jacobi sweep cap hit before convergence");
  return summarize(m, std::move(r.eigenvalues));
}

Inertia inertia(const SpectralSummary& s, double tol) {
  if (tol < 0.0) throw std::invalid_argument("inertia: tol must be >= 0");
  double max_abs = 0.0;
  for (double v : s.eigenvalues) max_abs = std::max(max_abs, std::abs(v));
  double cut = tol * max_abs;
  Inertia in;
  for (double v : s.eigenvalues) {
    if (std::abs(v) <= cut)
      ++in.n_zero;
    else if (v > 0.0)
      ++in.n_pos;
    else
      ++in.n_neg;
  }
  return in;
}

namespace {

// Implicit-shift QL on a symmetric tridiagonal; eigenvectors accumulate into
// `z` (row-major m x m, starts as identity). Classic EISPACK-style kernel.
void tridiag_ql(std::vector<double>& diag, std::vector<double>& sub, std::vector<double>& z) {
  const std::int64_t n = static_cast<std::int64_t>(diag.size());
  if (n == 0) return;
  sub.resize(static_cast<std::size_t>(n), 0.0);  // sub[i] couples i and i+1

  auto dv = [&](std::int64_t i) -> double& { return diag[static_cast<std::size_t>(i)]; };
  auto ev = [&](std::int64_t i) -> double& { return sub[static_cast<std::size_t>(i)]; };

  for (std::int64_t l = 0; l < n; ++l) {
    int iter = 0;
    while (true) {
      std::int64_t m;
      for (m = l; m < n - 1; ++m) {
        double dd = std::abs(dv(m)) + std::abs(dv(m + 1));
        if (std::abs(ev(m)) + dd == dd) break;
      }
      if (m == l) break;
      if (++iter > 60) throw std::runtime_error("tridiag_ql: too many iterations");

      double g = (dv(l + 1) - dv(l)) / (2.0 * ev(l));
      double r = std::hypot(g, 1.0);
      g = dv(m) - dv(l) + ev(l) / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow = false;
      for (std::int64_t i = m - 1; i >= l; --i) {
        double f = s * ev(i);
        double bb = c * ev(i);
        r = std::hypot(f, g);
        ev(i + 1) = r;
        if (r == 0.0) {
          dv(i + 1) -= p;
          ev(m) = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = dv(i + 1) - p;
        r = (dv(i) - g) * s + 2.0 * c * bb;
        p = s * r;
        dv(i + 1) = g + p;
        g = c * r - bb;
        for (std::int64_t k = 0; k < n; ++k) {
          double z0 = z[static_cast<std::size_t>(k * n + i)];
          double z1 = z[static_cast<std::size_t>(k * n + i + 1)];
          z[static_cast<std::size_t>(k * n + i + 1)] = s * z0 + c * z1;
          z[static_cast<std::size_t>(k * n + i)] = c * z0 - s * z1;
        }
      }
      if (underflow) continue;
      dv(l) -= p;
      ev(l) = g;
      ev(m) = 0.0;
    }
  }
}

// portable deterministic start vector in [-1, 1)
std::vector<double> seeded_vector(std::int64_t n, std::uint64_t seed) {
  std::vector<double> v(static_cast<std::size_t>(n));
  std::uint64_t state = seed;
  for (auto& x : v) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t w = state;
    w = (w ^ (w >> 30)) * 0xbf58476d1ce4e5b9ULL;
    w = (w ^ (w >> 27)) * 0x94d049bb133111ebULL;
    w ^= w >> 31;
    x = 2.0 * (static_cast<double>(w >> 11) * 0x1.0p-53) - 1.0;
  }
  return v;
}

}  // namespace

LanczosResult lanczos_extremes(const SymmetricOperator& op, int k, int max_iter,
                               std::uint64_t seed, double tol, LanczosWant want) {
  const std::int64_t n = op.dim();
  if (k < 1) throw std::invalid_argument("lanczos_extremes: k must be >= 1");
  if (k > n) k = static_cast<int>(n);
  int m_max = static_cast<int>(std::min<std::int64_t>(max_iter, n));
  if (m_max < 1) throw std::invalid_argument("lanczos_extremes: max_iter must be >= 1");

  std::vector<std::vector<double>> basis;
  basis.reserve(static_cast<std::size_t>(m_max));
  std::vector<double> alpha, beta;  // beta[j] couples v_j and v_{j+1}

  {
    std::vector<double> v = seeded_vector(n, seed);
    double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    for (double& x : v) x /= norm;
    basis.push_back(std::move(v));
  }

  LanczosResult out;
  std::vector<double> w(static_cast<std::size_t>(n));
  double scale = 0.0;

  auto extract = [&](int steps, double next_beta) {
    std::vector<double> diag(alpha.begin(), alpha.begin() + steps);
    std::vector<double> sub(static_cast<std::size_t>(steps), 0.0);
    for (int i = 0; i + 1 < steps; ++i) sub[static_cast<std::size_t>(i)] = beta[static_cast<std::size_t>(i)];
    std::vector<double> z(static_cast<std::size_t>(steps) * static_cast<std::size_t>(steps), 0.0);
    for (int i = 0; i < steps; ++i) z[static_cast<std::size_t>(i) * static_cast<std::size_t>(steps) + static_cast<std::size_t>(i)] = 1.0;
    tridiag_ql(diag, sub, z);

    std::vector<int> order(static_cast<std::size_t>(steps));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return diag[static_cast<std::size_t>(x)] > diag[static_cast<std::size_t>(y)]; });

    auto ritz = [&](int idx) {
      int col = order[static_cast<std::size_t>(idx)];
      RitzPair p;
      p.value = diag[static_cast<std::size_t>(col)];
      // ||A y - theta y|| = beta_m * |last component of the tridiag eigenvector|
      p.residual = std::abs(next_beta * z[static_cast<std::size_t>(steps - 1) * static_cast<std::size_t>(steps) +
                                          static_cast<std::size_t>(col)]);
      return p;
    };
    int kk = std::min(k, steps);
    out.top.clear();
    out.bottom.clear();
    for (int i = 0; i < kk; ++i) out.top.push_back(ritz(i));
    for (int i = 0; i < kk; ++i) out.bottom.push_back(ritz(steps - 1 - i));
    out.iterations = steps;

    double vmax = std::max(std::abs(out.top.front().value), std::abs(out.bottom.front().value));
    bool ok = steps >= k;
    if (want != LanczosWant::Bottom)
      for (const auto& p : out.top) ok = ok && p.residual <= tol * std::max(vmax, 1e-300);
    if (want != LanczosWant::Top)
      for (const auto& p : out.bottom) ok = ok && p.residual <= tol * std::max(vmax, 1e-300);
    out.converged = ok;
  };

  int next_check = std::max(k, 8);
  for (int j = 0; j < m_max; ++j) {
    op.apply(basis[static_cast<std::size_t>(j)], w);
    if (j > 0) {
      double bprev = beta[static_cast<std::size_t>(j - 1)];
      const std::vector<double>& prev = basis[static_cast<std::size_t>(j - 1)];
      for (std::int64_t i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] -= bprev * prev[static_cast<std::size_t>(i)];
    }
    const std::vector<double>& cur = basis[static_cast<std::size_t>(j)];
    double a = std::inner_product(w.begin(), w.end(), cur.begin(), 0.0);
    alpha.push_back(a);
    for (std::int64_t i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] -= a * cur[static_cast<std::size_t>(i)];

    // full reorthogonalisation; second pass only if the first one removed a
    // noticeable component ("twice is enough")
    double norm_before = std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : basis) {
        double proj = std::inner_product(w.begin(), w.end(), u.begin(), 0.0);
        if (proj == 0.0) continue;
        for (std::int64_t i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] -= proj * u[static_cast<std::size_t>(i)];
      }
      double norm_after = std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
      if (norm_after >= 0.707 * norm_before) break;
      norm_before = norm_after;
    }

    double b = std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
    if (!std::isfinite(a) || !std::isfinite(b))
      throw std::range_error("lanczos_extremes: operator values left double range");
    scale = std::max({scale, std::abs(a), b});

    bool last = (j + 1 == m_max);
    if (b <= 1e-14 * std::max(scale, 1e-300)) {
      out.breakdown = true;
      extract(j + 1, 0.0);
      return out;
    }
    // geometric checkpoint schedule keeps the cumulative tridiagonal solves
    // around the cost of the final one
    if (last || j + 1 == next_check || j + 1 == k) {
      if (j + 1 == next_check) next_check += std::max(8, next_check / 2);
      extract(j + 1, b);
      if (out.converged && j + 1 >= k && !last) return out;
    }
    if (!last) {
      beta.push_back(b);
      for (double& x : w) x /= b;
      basis.push_back(w);
    }
  }
  return out;
}

DecayFit decay_fit(const SpectralSummary& s, DecayModel model, std::int64_t first, std::int64_t last) {
  const std::int64_t n = static_cast<std::int64_t>(s.eigenvalues.size());
  if (first < 1 || last > n || first > last)
    throw std::invalid_argument("decay_fit: bad fit range");
  std::vector<double> xs, ys;
  for (std::int64_t i = first; i <= last; ++i) {
    double lambda = s.eigenvalues[static_cast<std::size_t>(i - 1)];
    if (!(lambda > 0.0))
      throw std::domain_error("decay_fit: non-positive eigenvalue in fit range");
    xs.push_back(model == DecayModel::Exponential ? static_cast<double>(i)
                                                  : std::log(static_cast<double>(i)));
    ys.push_back(std::log(lambda));
  }
  const std::size_t m = xs.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("decay_fit: degenerate fit range");
  double slope = sxy / sxx;
  double intercept = my - slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double r = ys[i] - (intercept + slope * xs[i]);
    rss += r * r;
  }
  DecayFit fit;
  fit.model = model;
  fit.rate = slope;
  fit.first = first;
  fit.last = last;
  fit.residual = std::sqrt(rss / static_cast<double>(m));
  return fit;
}

}  // namespace corners
