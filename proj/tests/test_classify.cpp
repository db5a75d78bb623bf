#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <doctest.h>

#include <cmath>
#include <vector>

#include "corners/classify.hpp"
#include "corners/kahan.hpp"
#include "corners/spectra.hpp"

using namespace corners;

TEST_CASE("analytic classification: paper case lists") {
  auto a = analytic_classification(FamilyParams::a(1.0, 1.0, 0.5));
  CHECK(a.psd);
  CHECK(a.bounded);
  CHECK(a.compact);
  CHECK(a.trace_class == TriState::Yes);

  // A(tau>0, rho=0): bounded, not compact
  auto a0 = analytic_classification(FamilyParams::a(2.0, 0.0, 0.25));
  CHECK(a0.bounded);
  CHECK_FALSE(a0.compact);
  CHECK(a0.trace_class == TriState::No);

  // C(1, 0.5): bounded and compact but not trace class
  auto c = analytic_classification(FamilyParams::c(1.0, 0.5));
  CHECK(c.bounded);
  CHECK(c.compact);
  CHECK(c.trace_class == TriState::No);

  // B(-0.5, 1.2): rho + tau = 0.7 <= 1, unbounded
  auto b = analytic_classification(FamilyParams::b(-0.5, 1.2));
  CHECK_FALSE(b.bounded);
  CHECK_FALSE(b.psd);

  // C(tau=4, rho=0): the bounded, non-compact multiplier regime
  auto cm = analytic_classification(FamilyParams::c(4.0, 0.0));
  CHECK(cm.bounded);
  CHECK_FALSE(cm.compact);
  // and below the multiplier threshold it is unbounded
  CHECK_FALSE(analytic_classification(FamilyParams::c(1.5, 0.0)).bounded);

  // B(tau>0, rho=1): bounded, not compact
  auto b1 = analytic_classification(FamilyParams::b(1.0, 1.0));
  CHECK(b1.bounded);
  CHECK_FALSE(b1.compact);

  // rank-one tau = 0 cases
  CHECK(analytic_classification(FamilyParams::a(0.0, 0.5, 0.5)).bounded);
  CHECK_FALSE(analytic_classification(FamilyParams::b(0.0, 1.0)).bounded);
  CHECK(analytic_classification(FamilyParams::c(0.0, 1.5)).trace_class == TriState::Yes);
}

TEST_CASE("implication chain trace => compact => bounded on random draws") {
  std::uint64_t s = 42;
  auto rnd = [&s] {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return 6.0 * (static_cast<double>(s >> 11) * 0x1.0p-53) - 3.0;
  };
  for (int i = 0; i < 10000; ++i) {
    for (Family f : {Family::A, Family::B, Family::C}) {
      FamilyParams p{f, rnd(), rnd(), 0.5};
      auto v = analytic_classification(p);
      if (v.trace_class == TriState::Yes) CHECK(v.compact);
      if (v.compact) CHECK(v.bounded);
    }
  }
}

TEST_CASE("psd verdict matches dense spectra at N = 128") {
  std::vector<std::pair<double, double>> pts = {{0.6, 1.4}, {1.2, 0.8}, {2.2, 2.0}, {0.3, 2.5}};
  for (Family f : {Family::A, Family::B, Family::C}) {
    for (auto [tau, rho] : pts) {
      FamilyParams p{f, tau, rho, 0.5};
      REQUIRE(analytic_classification(p).psd);
      auto summary = eig_dense(dense_truncation(p, 128));
      CHECK(inertia(summary, 1e-10).n_neg == 0);
    }
  }
}

TEST_CASE("trace-class verdicts match the diagonal summability criterion") {
  // For PSD matrices trace class <=> summable diagonal: compare the Cauchy
  // tail of the diagonal sums between N = 2^11 and 2^12.
  auto diag_sum = [](const FamilyParams& p, std::int64_t n) {
    KahanSum acc;
    for (std::int64_t i = 0; i < n; ++i) acc.add(entry(p, i + p.origin(), i + p.origin()));
    return acc.value();
  };
  std::vector<FamilyParams> yes = {FamilyParams::a(1.0, 1.0, 0.5), FamilyParams::b(0.8, 1.5),
                                   FamilyParams::c(1.0, 1.4)};
  std::vector<FamilyParams> no = {FamilyParams::a(2.0, 0.0, 0.5), FamilyParams::b(1.0, 1.0),
                                  FamilyParams::c(0.9, 0.5)};
  for (const auto& p : yes) {
    REQUIRE(analytic_classification(p).trace_class == TriState::Yes);
    double s1 = diag_sum(p, 1 << 11), s2 = diag_sum(p, 1 << 12);
    CHECK((s2 - s1) / s2 < 0.01);
  }
  for (const auto& p : no) {
    REQUIRE(analytic_classification(p).psd);
    REQUIRE(analytic_classification(p).trace_class == TriState::No);
    double s1 = diag_sum(p, 1 << 11), s2 = diag_sum(p, 1 << 12);
    CHECK((s2 - s1) / s2 >= 0.01);
  }
}

TEST_CASE("boundary distance") {
  CHECK(boundary_distance(Family::A, 1.0, 0.05) == doctest::Approx(0.05));
  CHECK(boundary_distance(Family::B, 2.0, 1.0) == doctest::Approx(0.0));
  CHECK(boundary_distance(Family::C, 0.5, 0.5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(boundary_distance(Family::C, 2.0, 2.0) > 0.5);
}

TEST_CASE("witness: B(1, 0.5) Rayleigh quotient grows") {
  auto g = unboundedness_witness(FamilyParams::b(1.0, 0.5), 4096, 0.7);
  CHECK(g.kind == WitnessKind::Rayleigh);
  CHECK(g.sigma == doctest::Approx(0.7));
  CHECK(g.increasing);
  CHECK_FALSE(g.saturating);
}

TEST_CASE("witness: A(-1, 0.5; 0.5) column norm diverges") {
  auto g = unboundedness_witness(FamilyParams::a(-1.0, 0.5, 0.5), 2048, std::nullopt);
  CHECK(g.kind == WitnessKind::Column);
  CHECK(g.increasing);
  CHECK_FALSE(g.saturating);
}

TEST_CASE("witness: C(0.4, 0.3) column norm grows like N^0.3") {
  auto g = unboundedness_witness(FamilyParams::c(0.4, 0.3), 1 << 15, std::nullopt);
  CHECK(g.kind == WitnessKind::Column);
  CHECK(g.increasing);
  // squared-norm partial sums ~ N^{1 - (tau+rho)} = N^0.3; fit the log-log slope
  REQUIRE(g.values.size() >= 3);
  double x0 = std::log(static_cast<double>(g.values.front().first));
  double x1 = std::log(static_cast<double>(g.values.back().first));
  double y0 = std::log(g.values.front().second);
  double y1 = std::log(g.values.back().second);
  double slope = (y1 - y0) / (x1 - x0);
  CHECK(std::abs(slope - 0.3) <= 0.15 * 0.3);
}

TEST_CASE("witness: diagonal blow-up for rho < 0") {
  auto g = unboundedness_witness(FamilyParams::c(1.0, -0.5), 4096, std::nullopt);
  CHECK(g.kind == WitnessKind::Diagonal);
  CHECK(g.increasing);
}

TEST_CASE("witness refuses bounded parameters") {
  CHECK_THROWS_AS(unboundedness_witness(FamilyParams::b(1.0, 1.5), 1024, std::nullopt),
                  std::invalid_argument);
  CHECK_THROWS_AS(unboundedness_witness(FamilyParams::b(1.0, 0.5), 1024, 0.95),
                  std::invalid_argument);  // sigma outside (1/2, 1 - rho/2)
}

TEST_CASE("region polygons match the analytic boundary lines") {
  using P = std::vector<std::pair<double, double>>;
  CHECK(region_polygon(Family::A, -2.5, 2.5) ==
        P{{0.0, 2.5}, {2.5, 2.5}, {2.5, -2.5}, {0.0, 0.0}});
  CHECK(region_polygon(Family::B, -2.5, 2.5) ==
        P{{1.0, 2.5}, {2.5, 2.5}, {2.5, -1.5}, {1.0, 0.0}});
  CHECK(region_polygon(Family::C, -2.5, 2.5) ==
        P{{0.0, 2.5}, {2.5, 2.5}, {2.5, -1.5}, {0.0, 1.0}});
}

TEST_CASE("empirical scan smoke test: fields, monotonicity, determinism") {
  ScanGrid grid;
  grid.tau_steps = 5;
  grid.rho_steps = 5;
  ScanOptions opts;
  opts.sizes = {64, 128, 256, 512};
  opts.threads = 2;

  auto run1 = empirical_scan(Family::C, grid, opts);
  auto run2 = empirical_scan(Family::C, grid, opts);
  REQUIRE(run1.size() == 25);
  for (std::size_t i = 0; i < run1.size(); ++i) {
    const auto& v = run1[i];
    // interlacing makes lambda_max nondecreasing in N
    for (std::size_t k = 1; k < v.lambda_max_by_size.size(); ++k) {
      double prev = v.lambda_max_by_size[k - 1].second;
      double cur = v.lambda_max_by_size[k].second;
      if (std::isfinite(prev) && std::isfinite(cur)) CHECK(cur >= prev - 1e-9 * std::abs(cur));
    }
    // identical config reproduces identical values bit for bit
    CHECK(run1[i].lambda_max_by_size == run2[i].lambda_max_by_size);
    CHECK(run1[i].empirical == run2[i].empirical);
  }

  double agreement = scan_agreement(run1, 0.1, Family::C);
  CHECK(agreement >= 0.0);
}

TEST_CASE("figure1 dataset carries csv and svg") {
  ScanOptions opts;
  opts.sizes = {64, 128, 256};
  opts.threads = 2;
  auto data = figure1_dataset(Family::B, 5, opts);
  auto csv = figure1_csv(data);
  CHECK(csv.rfind("family,tau,rho,psd,bounded,compact,trace_class,empirical,lmax_last\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 26);  // header + 25 rows

  auto svg = figure1_svg(data);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("region-vertices") != std::string::npos);
  CHECK_THROWS_AS(figure1_dataset(Family::B, 3, opts), std::invalid_argument);
}
