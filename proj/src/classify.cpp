#include "corners/classify.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "corners/fastops.hpp"
#include "corners/io.hpp"
#include "corners/kahan.hpp"
#include "corners/spectra.hpp"

namespace corners {

const char* tristate_name(TriState t) {
  switch (t) {
    case TriState::Yes: return "yes";
    case TriState::No: return "no";
    case TriState::Unknown: return "unknown";
  }
  return "?";
}

const char* empirical_name(EmpiricalTag t) {
  switch (t) {
    case EmpiricalTag::Bounded: return "bounded";
    case EmpiricalTag::Unbounded: return "unbounded";
    case EmpiricalTag::Inconclusive: return "inconclusive";
  }
  return "?";
}

ClassVerdict analytic_classification(const FamilyParams& p) {
  p.validate();
  const double tau = p.tau, rho = p.rho;
  ClassVerdict v;
  v.psd = tau >= 0.0;
  switch (p.family) {
    case Family::A:
      v.bounded = (tau > 0.0 && rho >= 0.0) || (tau == 0.0 && rho > 0.0) ||
                  (tau < 0.0 && rho + tau > 0.0);
      v.compact = v.bounded && !(tau > 0.0 && rho == 0.0);
      v.trace_class = v.compact ? TriState::Yes : TriState::No;
      break;
    case Family::B:
      v.bounded = (tau > 0.0 && rho >= 1.0) || (tau == 0.0 && rho > 1.0) ||
                  (tau < 0.0 && rho + tau > 1.0);
      v.compact = v.bounded && !(tau > 0.0 && rho == 1.0);
      v.trace_class = v.compact ? TriState::Yes : TriState::No;
      break;
    case Family::C:
      v.bounded = (tau > 0.0 && rho > 0.0 && rho + tau > 1.0) ||
                  (tau > 0.0 && rho == 0.0 && tau > 2.0) ||
                  (tau == 0.0 && rho > 1.0) || (tau < 0.0 && rho + tau > 1.0);
      v.compact = v.bounded && !(rho == 0.0 && tau > 2.0);
      if (!v.compact) {
        v.trace_class = TriState::No;
      } else if (tau > 0.0) {
        v.trace_class = rho > 1.0 ? TriState::Yes : TriState::No;
      } else {
        // tau < 0 with rho+tau > 1 is trace class; tau = 0 bounded is rank one
        v.trace_class = TriState::Yes;
      }
      break;
  }
  return v;
}

double boundary_distance(Family family, double tau, double rho) {
  const double inv_sqrt2 = 0.70710678118654752;
  switch (family) {
    case Family::A:
      return std::min({std::abs(tau), std::abs(rho), std::abs(rho + tau) * inv_sqrt2});
    case Family::B:
      return std::min({std::abs(tau), std::abs(rho - 1.0), std::abs(rho + tau - 1.0) * inv_sqrt2});
    case Family::C:
      return std::min({std::abs(tau), std::abs(rho), std::abs(rho + tau - 1.0) * inv_sqrt2});
  }
  return 0.0;
}

namespace {

int scan_thread_count(int requested) {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  int n = requested > 0 ? requested : hw;
  if (const char* env = std::getenv("SPECTRAL_CORNERS_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1) n = std::min(n, cap);
  }
  return std::max(1, n);
}

EmpiricalTag diagnose(const std::vector<std::pair<std::int64_t, double>>& lam, bool overflowed) {
  if (overflowed) return EmpiricalTag::Unbounded;
  const std::size_t k = lam.size();
  if (k < 3) return EmpiricalTag::Inconclusive;
  double l0 = lam[k - 3].second, l1 = lam[k - 2].second, l2 = lam[k - 1].second;
  if (!std::isfinite(l2)) return EmpiricalTag::Unbounded;
  bool saturated = std::abs(l2 - l1) <= 0.01 * std::abs(l2) && std::abs(l2 - l0) <= 0.01 * std::abs(l2);
  if (saturated) return EmpiricalTag::Bounded;
  if (l0 != 0.0 && l2 / l0 > 1.05) return EmpiricalTag::Unbounded;  // N_max vs N_max/4
  return EmpiricalTag::Inconclusive;
}

}  // namespace

std::vector<RegionVerdict> empirical_scan(Family family, const ScanGrid& grid,
                                          const ScanOptions& opts, double q) {
  if (grid.tau_steps < 2 || grid.rho_steps < 2)
    throw std::invalid_argument("empirical_scan: need at least 2 steps per axis");
  if (opts.sizes.size() < 3)
    throw std::invalid_argument("empirical_scan: need at least 3 truncation sizes");

  const std::int64_t total = static_cast<std::int64_t>(grid.tau_steps) * grid.rho_steps;
  std::vector<RegionVerdict> verdicts(static_cast<std::size_t>(total));

  auto run_point = [&](std::int64_t index) {
    int it = static_cast<int>(index / grid.rho_steps);
    int ir = static_cast<int>(index % grid.rho_steps);
    double tau = grid.tau_min + (grid.tau_max - grid.tau_min) * it / (grid.tau_steps - 1);
    double rho = grid.rho_min + (grid.rho_max - grid.rho_min) * ir / (grid.rho_steps - 1);

    RegionVerdict& v = verdicts[static_cast<std::size_t>(index)];
    v.tau = tau;
    v.rho = rho;
    FamilyParams p{family, tau, rho, q};
    v.analytic = analytic_classification(p);
    v.near_boundary = boundary_distance(family, tau, rho) < opts.band;

    bool overflowed = false;
    for (std::int64_t n : opts.sizes) {
      double lmax = std::numeric_limits<double>::infinity();
      try {
        LinearOperatorHandle h(p, n);
        // the growth diagnosis compares lambda_max at the 1% level, so a
        // moderate residual tolerance is enough and converges much sooner
        LanczosResult lr = lanczos_extremes(h, 1, opts.lanczos_max_iter,
                                            opts.seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(index),
                                            1e-7, LanczosWant::Top);
        lmax = lr.top.front().value;
        if (!std::isfinite(lmax)) {
          overflowed = true;
          v.note = "non-finite lambda_max at N=" + std::to_string(n);
        }
      } catch (const std::range_error&) {
        overflowed = true;
        v.note = "entry overflow at N=" + std::to_string(n);
      }
      v.lambda_max_by_size.emplace_back(n, lmax);
      if (overflowed) break;
    }
    v.empirical = diagnose(v.lambda_max_by_size, overflowed);
  };

  int threads = scan_thread_count(opts.threads);
  if (threads == 1 || total == 1) {
    for (std::int64_t i = 0; i < total; ++i) run_point(i);
  } else {
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::int64_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) run_point(i);
      });
    for (auto& th : pool) th.join();
  }
  return verdicts;
}

double scan_agreement(const std::vector<RegionVerdict>& verdicts, double band, Family family) {
  std::int64_t agree = 0, considered = 0;
  for (const auto& v : verdicts) {
    if (boundary_distance(family, v.tau, v.rho) < band) continue;
    if (v.empirical == EmpiricalTag::Inconclusive) continue;
    ++considered;
    bool emp_bounded = v.empirical == EmpiricalTag::Bounded;
    if (emp_bounded == v.analytic.bounded) ++agree;
  }
  if (considered == 0) return -1.0;
  return static_cast<double>(agree) / static_cast<double>(considered);
}

namespace {

std::vector<std::int64_t> witness_sizes(std::int64_t n) {
  std::vector<std::int64_t> sizes;
  std::int64_t s = std::max<std::int64_t>(16, n / 16);
  while (s < n) {
    sizes.push_back(s);
    s *= 2;
  }
  sizes.push_back(n);
  return sizes;
}

void finish_growth(GrowthReport& g) {
  g.increasing = g.values.size() >= 2;
  for (std::size_t i = 1; i < g.values.size(); ++i) {
    double prev = g.values[i - 1].second, cur = g.values[i].second;
    if (std::isinf(cur) && cur > 0.0) continue;  // off the scale counts as growth
    if (!(cur > prev)) g.increasing = false;
  }
  if (g.values.size() >= 2) {
    double prev = g.values[g.values.size() - 2].second;
    double last = g.values.back().second;
    g.saturating = std::isfinite(last) && std::abs(last - prev) < 0.005 * std::abs(last);
  }
}

}  // namespace

GrowthReport unboundedness_witness(const FamilyParams& p, std::int64_t n, std::optional<double> sigma) {
  p.validate();
  ClassVerdict verdict = analytic_classification(p);
  if (verdict.bounded)
    throw std::invalid_argument("unboundedness_witness: refused, the analytic verdict is bounded");
  if (n < 32) throw std::invalid_argument("unboundedness_witness: N too small");

  GrowthReport g;
  const std::int64_t origin = p.origin();
  auto sizes = witness_sizes(n);

  if (p.rho < 0.0) {
    g.kind = WitnessKind::Diagonal;
    g.description = "diagonal entry at index N (grows when rho < 0)";
    for (std::int64_t s : sizes) {
      double val;
      try {
        val = entry(p, s - 1 + origin, s - 1 + origin);
      } catch (const std::range_error&) {
        val = std::numeric_limits<double>::infinity();
      }
      g.values.emplace_back(s, val);
    }
    finish_growth(g);
    return g;
  }

  if (p.family == Family::B && p.tau > 0.0 && p.rho < 1.0) {
    // Rayleigh quotient along x_n = n^-sigma, sigma in (1/2, 1 - rho/2)
    double lo = 0.5, hi = 1.0 - 0.5 * p.rho;
    double sg = sigma.value_or(0.5 * (lo + hi));
    if (!(sg > lo && sg < hi))
      throw std::invalid_argument("unboundedness_witness: sigma must lie in (1/2, 1 - rho/2)");
    g.kind = WitnessKind::Rayleigh;
    g.sigma = sg;
    g.description = "Rayleigh quotient along x_n = n^-sigma, sigma=" + fmt17(sg);
    for (std::int64_t s : sizes) {
      std::vector<double> x(static_cast<std::size_t>(s));
      for (std::int64_t i = 0; i < s; ++i)
        x[static_cast<std::size_t>(i)] = std::pow(static_cast<double>(i + 1), -sg);
      LinearOperatorHandle h(p, s);
      std::vector<double> y = h.apply(x);
      KahanSum num, den;
      for (std::int64_t i = 0; i < s; ++i) {
        num.add(x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)]);
        den.add(x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)]);
      }
      g.values.emplace_back(s, num.value() / den.value());
    }
    finish_growth(g);
    return g;
  }

  bool column_witness = false;
  switch (p.family) {
    case Family::A: column_witness = p.tau + p.rho <= 0.0; break;
    case Family::B: column_witness = p.tau <= 0.0 && p.tau + p.rho <= 1.0; break;
    case Family::C: column_witness = p.tau + p.rho <= 1.0; break;
  }
  if (column_witness) {
    g.kind = WitnessKind::Column;
    g.description = "squared l2 norm of the first matrix column, partial sums";
    KahanSum acc;
    bool off_scale = false;
    std::size_t next = 0;
    for (std::int64_t i = 0; i < sizes.back() && next < sizes.size(); ++i) {
      if (!off_scale) {
        try {
          double e = entry(p, i + origin, origin);
          acc.add(e * e);
          if (std::isinf(acc.value())) off_scale = true;
        } catch (const std::range_error&) {
          off_scale = true;
        }
      }
      while (next < sizes.size() && i + 1 == sizes[next]) {
        g.values.emplace_back(sizes[next],
                              off_scale ? std::numeric_limits<double>::infinity() : acc.value());
        ++next;
      }
    }
    finish_growth(g);
    return g;
  }

  // remaining regime: C with rho = 0, 0 < tau <= 2 (multiplier threshold);
  // no elementary witness vector, fall back to the lambda_max ladder
  g.kind = WitnessKind::LambdaMax;
  g.description = "lambda_max of truncations (no elementary witness in this regime; growth may be slow)";
  for (std::int64_t s : sizes) {
    LinearOperatorHandle h(p, s);
    LanczosResult lr = lanczos_extremes(h, 1, 300, 0, 1e-9);
    g.values.emplace_back(s, lr.top.front().value);
  }
  finish_growth(g);
  return g;
}

std::vector<std::pair<double, double>> region_polygon(Family family, double lo, double hi) {
  // Bounded-compact region: {rho > a} intersect {rho + tau > c} with
  //   A: a=0, c=0;  B: a=1, c=1;  C: a=0, c=1.
  double a = 0.0, c = 0.0;
  switch (family) {
    case Family::A: a = 0.0; c = 0.0; break;
    case Family::B: a = 1.0; c = 1.0; break;
    case Family::C: a = 0.0; c = 1.0; break;
  }
  std::vector<std::pair<double, double>> poly;
  poly.emplace_back(a, hi);
  poly.emplace_back(hi, hi);
  double tau_at_hi = c - hi;
  if (tau_at_hi > lo) {
    poly.emplace_back(hi, tau_at_hi);
  } else {
    poly.emplace_back(hi, lo);
    double rho_at_lo = c - lo;
    if (rho_at_lo < hi && rho_at_lo > a) poly.emplace_back(rho_at_lo, lo);
  }
  poly.emplace_back(a, c - a);
  return poly;
}

Figure1Data figure1_dataset(Family family, int resolution, const ScanOptions& opts, double q) {
  if (resolution < 5) throw std::invalid_argument("figure1_dataset: resolution must be >= 5");
  ScanGrid grid;
  grid.tau_steps = resolution;
  grid.rho_steps = resolution;
  Figure1Data data;
  data.family = family;
  data.resolution = resolution;
  data.band = opts.band;
  data.verdicts = empirical_scan(family, grid, opts, q);
  data.agreement = scan_agreement(data.verdicts, opts.band, family);
  return data;
}

std::string figure1_csv(const Figure1Data& data) {
  std::string out = "family,tau,rho,psd,bounded,compact,trace_class,empirical,lmax_last\n";
  for (const auto& v : data.verdicts) {
    double lmax_last = v.lambda_max_by_size.empty() ? 0.0 : v.lambda_max_by_size.back().second;
    out += family_letter(data.family);
    out += ',';
    out += fmt17(v.tau);
    out += ',';
    out += fmt17(v.rho);
    out += ',';
    out += v.analytic.psd ? "true" : "false";
    out += ',';
    out += v.analytic.bounded ? "true" : "false";
    out += ',';
    out += v.analytic.compact ? "true" : "false";
    out += ',';
    out += tristate_name(v.analytic.trace_class);
    out += ',';
    out += empirical_name(v.empirical);
    out += ',';
    out += fmt17(lmax_last);
    out += '\n';
  }
  return out;
}

namespace {

struct SvgMap {
  double lo, hi;
  double margin = 50.0, span = 500.0;
  double x(double rho) const { return margin + (rho - lo) / (hi - lo) * span; }
  double y(double tau) const { return margin + (hi - tau) / (hi - lo) * span; }
};

std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

std::string figure1_svg(const Figure1Data& data) {
  const double lo = -2.5, hi = 2.5;
  SvgMap mp{lo, hi};
  const double w = 2 * mp.margin + mp.span;

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + svg_num(w) + "\" height=\"" +
       svg_num(w) + "\" viewBox=\"0 0 " + svg_num(w) + " " + svg_num(w) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // analytic bounded-compact region
  auto poly = region_polygon(data.family, lo, hi);
  s += "<polygon id=\"region\" points=\"";
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (i) s += ' ';
    s += svg_num(mp.x(poly[i].first)) + "," + svg_num(mp.y(poly[i].second));
  }
  s += "\" fill=\"#c8c8c8\" fill-opacity=\"0.6\" stroke=\"black\" stroke-width=\"2\"/>\n";
  // raw region vertices in (rho, tau) coordinates for downstream checks
  s += "<metadata id=\"region-vertices\">";
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (i) s += ' ';
    s += fmt17(poly[i].first) + "," + fmt17(poly[i].second);
  }
  s += "</metadata>\n";

  // axes
  s += "<line x1=\"" + svg_num(mp.x(lo)) + "\" y1=\"" + svg_num(mp.y(0)) + "\" x2=\"" +
       svg_num(mp.x(hi)) + "\" y2=\"" + svg_num(mp.y(0)) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  s += "<line x1=\"" + svg_num(mp.x(0)) + "\" y1=\"" + svg_num(mp.y(lo)) + "\" x2=\"" +
       svg_num(mp.x(0)) + "\" y2=\"" + svg_num(mp.y(hi)) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  s += "<text x=\"" + svg_num(mp.x(hi) + 8) + "\" y=\"" + svg_num(mp.y(0) + 4) + "\" font-size=\"14\">rho</text>\n";
  s += "<text x=\"" + svg_num(mp.x(0) - 10) + "\" y=\"" + svg_num(mp.y(hi) - 8) + "\" font-size=\"14\">tau</text>\n";
  s += std::string("<text x=\"12\" y=\"24\" font-size=\"16\">") + family_letter(data.family) +
       "(tau,rho)  agreement=" + svg_num(data.agreement) + "</text>\n";

  // empirical grid: agreement in green/red, inconclusive or in-band in grey
  for (const auto& v : data.verdicts) {
    const char* color = "#999999";
    bool off_band = boundary_distance(data.family, v.tau, v.rho) >= data.band;
    if (off_band && v.empirical != EmpiricalTag::Inconclusive) {
      bool agree = (v.empirical == EmpiricalTag::Bounded) == v.analytic.bounded;
      color = agree ? "#1a7f37" : "#c01020";
    }
    s += "<circle cx=\"" + svg_num(mp.x(v.rho)) + "\" cy=\"" + svg_num(mp.y(v.tau)) +
         "\" r=\"3.5\" fill=\"" + color + "\"/>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace corners
