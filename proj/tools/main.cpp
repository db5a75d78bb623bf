// spectral-corners: construction, spectra, identity verification and region
// scans for the three matrix families, with machine-readable output.

#include <CLI11.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "corners/classify.hpp"
#include "corners/fastops.hpp"
#include "corners/identities.hpp"
#include "corners/io.hpp"
#include "corners/spectra.hpp"

using namespace corners;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitUsage = 2;

struct CommonParams {
  std::string family = "A";
  double tau = 0.0;
  double rho = 0.0;
  double q = 0.0;
};

void add_family_options(CLI::App* cmd, CommonParams& p, bool need_tau_rho = true) {
  cmd->add_option("--family", p.family, "family A, B or C")->required();
  if (need_tau_rho) {
    cmd->add_option("--tau", p.tau, "tau parameter")->required();
    cmd->add_option("--rho", p.rho, "rho parameter")->required();
  }
  cmd->add_option("--q", p.q, "base q in (0,1); required iff family is A");
}

FamilyParams resolve(const CLI::App* cmd, const CommonParams& p) {
  Family fam = family_from_letter(p.family.empty() ? '?' : p.family[0]);
  bool has_q = cmd->count("--q") > 0;
  if (fam == Family::A && !has_q)
    throw CLI::ValidationError("--q", "family A requires --q");
  if (fam != Family::A && has_q)
    throw CLI::ValidationError("--q", "--q applies to family A only");
  FamilyParams out{fam, p.tau, p.rho, p.q};
  out.validate();
  return out;
}

void report_json(JsonWriter& w, const IdentityReport& r) {
  w.begin_object();
  w.key("name").value(r.name);
  w.key("lhs").value(r.lhs);
  w.key("rhs").value(r.rhs);
  w.key("abs_discrepancy").value(r.abs_discrepancy);
  w.key("rel_discrepancy").value(r.rel_discrepancy);
  w.key("tail_bound").value(r.tail_bound);
  w.key("tolerance").value(r.tolerance);
  w.key("pass").value(r.pass);
  w.key("notes").value(r.notes);
  w.end_object();
}

std::string reports_to_json(const std::vector<IdentityReport>& reports) {
  JsonWriter w;
  w.begin_array();
  for (const auto& r : reports) report_json(w, r);
  w.end_array();
  return w.str() + "\n";
}

std::string summary_to_json(const SpectralSummary& s) {
  JsonWriter w;
  w.begin_object();
  w.key("n").value(static_cast<std::int64_t>(s.eigenvalues.size()));
  w.key("eigenvalues").begin_array();
  for (double v : s.eigenvalues) w.value(v);
  w.end_array();
  w.key("n_pos").value(s.n_pos);
  w.key("n_neg").value(s.n_neg);
  w.key("n_zero").value(s.n_zero);
  w.key("trace").value(s.trace);
  w.key("frobenius").value(s.frobenius);
  w.end_object();
  return w.str() + "\n";
}

std::string lanczos_to_json(const LanczosResult& r) {
  JsonWriter w;
  w.begin_object();
  auto pairs = [&](const char* key, const std::vector<RitzPair>& v) {
    w.key(key).begin_array();
    for (const auto& p : v) {
      w.begin_object();
      w.key("value").value(p.value);
      w.key("residual").value(p.residual);
      w.end_object();
    }
    w.end_array();
  };
  pairs("top", r.top);
  pairs("bottom", r.bottom);
  w.key("iterations").value(r.iterations);
  w.key("breakdown").value(r.breakdown);
  w.key("converged").value(r.converged);
  w.end_object();
  return w.str() + "\n";
}

std::string growth_to_json(const GrowthReport& g) {
  JsonWriter w;
  w.begin_object();
  const char* kind = g.kind == WitnessKind::Diagonal   ? "diagonal"
                     : g.kind == WitnessKind::Column   ? "column"
                     : g.kind == WitnessKind::Rayleigh ? "rayleigh"
                                                       : "lambda-max";
  w.key("witness").value(std::string(kind));
  w.key("description").value(g.description);
  if (g.kind == WitnessKind::Rayleigh) w.key("sigma").value(g.sigma);
  w.key("values").begin_array();
  for (const auto& [n, v] : g.values) {
    w.begin_object();
    w.key("N").value(n);
    w.key("value").value(v);
    w.end_object();
  }
  w.end_array();
  w.key("increasing").value(g.increasing);
  w.key("saturating").value(g.saturating);
  w.end_object();
  return w.str() + "\n";
}

std::string matrix_to_json(const DenseSymMatrix& m) {
  JsonWriter w;
  w.begin_object();
  w.key("n").value(m.n);
  w.key("origin").value(m.origin);
  w.key("rows").begin_array();
  for (std::int64_t i = 0; i < m.n; ++i) {
    w.begin_array();
    for (std::int64_t j = 0; j < m.n; ++j) w.value(m.at(i, j));
    w.end_array();
  }
  w.end_array();
  w.end_object();
  return w.str() + "\n";
}

std::string matrix_to_csv(const DenseSymMatrix& m) {
  std::string out;
  for (std::int64_t i = 0; i < m.n; ++i) {
    for (std::int64_t j = 0; j < m.n; ++j) {
      if (j) out += ',';
      out += fmt17(m.at(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string scan_to_json(Family family, const std::vector<RegionVerdict>& verdicts,
                         double agreement) {
  JsonWriter w;
  w.begin_object();
  w.key("family").value(std::string(1, family_letter(family)));
  w.key("agreement").value(agreement);
  w.key("points").begin_array();
  for (const auto& v : verdicts) {
    w.begin_object();
    w.key("tau").value(v.tau);
    w.key("rho").value(v.rho);
    w.key("psd").value(v.analytic.psd);
    w.key("bounded").value(v.analytic.bounded);
    w.key("compact").value(v.analytic.compact);
    w.key("trace_class").value(std::string(tristate_name(v.analytic.trace_class)));
    w.key("empirical").value(std::string(empirical_name(v.empirical)));
    w.key("near_boundary").value(v.near_boundary);
    w.key("lambda_max_by_size").begin_array();
    for (const auto& [n, l] : v.lambda_max_by_size) {
      w.begin_object();
      w.key("N").value(n);
      w.key("lambda_max").value(l);
      w.end_object();
    }
    w.end_array();
    if (!v.note.empty()) w.key("note").value(v.note);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str() + "\n";
}

std::string scan_to_csv(Family family, const std::vector<RegionVerdict>& verdicts) {
  Figure1Data data;
  data.family = family;
  data.verdicts = verdicts;
  return figure1_csv(data);
}

// re-evaluates the pass flag when the user overrides the tolerance; each
// check keeps its own comparison rule
void apply_tolerance(IdentityReport& r, double tol, bool relative_rule) {
  r.tolerance = tol;
  r.pass = relative_rule ? r.rel_discrepancy <= tol
                         : r.abs_discrepancy <= tol + r.tail_bound;
}

std::vector<std::int64_t> parse_sizes(const std::string& csv) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    std::size_t comma = csv.find(',', pos);
    if (comma == std::string::npos) comma = csv.size();
    out.push_back(std::stoll(csv.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  if (out.empty()) throw CLI::ValidationError("--sizes", "empty size list");
  for (std::int64_t n : out)
    if (n < 1) throw CLI::ValidationError("--sizes", "sizes must be positive");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite truncations, spectra and identity checks for three matrix families"};
  app.require_subcommand(1);

  int exit_code = kExitOk;
  std::string out_path;

  // ---- entry ----
  auto* cmd_entry = app.add_subcommand("entry", "print one matrix entry");
  CommonParams entry_p;
  std::int64_t entry_n = 0, entry_m = 0;
  add_family_options(cmd_entry, entry_p);
  cmd_entry->add_option("--n", entry_n)->required();
  cmd_entry->add_option("--m", entry_m)->required();
  cmd_entry->callback([&] {
    FamilyParams p = resolve(cmd_entry, entry_p);
    write_text("", fmt17(entry(p, entry_n, entry_m)) + "\n");
  });

  // ---- dense ----
  auto* cmd_dense = app.add_subcommand("dense", "emit a dense truncation");
  CommonParams dense_p;
  std::int64_t dense_n = 0;
  std::string dense_format = "json";
  add_family_options(cmd_dense, dense_p);
  cmd_dense->add_option("--size", dense_n, "truncation size N")->required();
  cmd_dense->add_option("--format", dense_format)->check(CLI::IsMember({"json", "csv"}));
  cmd_dense->add_option("--out", out_path, "output path (default stdout)");
  cmd_dense->callback([&] {
    FamilyParams p = resolve(cmd_dense, dense_p);
    auto m = dense_truncation(p, dense_n);
    write_text(out_path, dense_format == "csv" ? matrix_to_csv(m) : matrix_to_json(m));
  });

  // ---- eig ----
  auto* cmd_eig = app.add_subcommand("eig", "dense spectrum of a truncation");
  CommonParams eig_p;
  std::int64_t eig_n = 0;
  add_family_options(cmd_eig, eig_p);
  cmd_eig->add_option("--size", eig_n)->required();
  cmd_eig->add_option("--out", out_path);
  cmd_eig->callback([&] {
    FamilyParams p = resolve(cmd_eig, eig_p);
    write_text(out_path, summary_to_json(eig_dense(dense_truncation(p, eig_n))));
  });

  // ---- lanczos ----
  auto* cmd_lanczos = app.add_subcommand("lanczos", "extreme eigenvalues via the fast operators");
  CommonParams lcz_p;
  std::int64_t lcz_n = 0;
  int lcz_k = 1, lcz_max_iter = 300;
  std::uint64_t lcz_seed = 0;
  add_family_options(cmd_lanczos, lcz_p);
  cmd_lanczos->add_option("--size", lcz_n)->required();
  cmd_lanczos->add_option("--k", lcz_k, "how many extremes per end");
  cmd_lanczos->add_option("--max-iter", lcz_max_iter);
  cmd_lanczos->add_option("--seed", lcz_seed);
  cmd_lanczos->add_option("--out", out_path);
  cmd_lanczos->callback([&] {
    FamilyParams p = resolve(cmd_lanczos, lcz_p);
    LinearOperatorHandle h(p, lcz_n);
    write_text(out_path, lanczos_to_json(lanczos_extremes(h, lcz_k, lcz_max_iter, lcz_seed)));
  });

  // ---- matvec-check ----
  auto* cmd_mv = app.add_subcommand("matvec-check", "fast matvec vs dense on all basis vectors");
  CommonParams mv_p;
  std::int64_t mv_n = 64;
  add_family_options(cmd_mv, mv_p);
  cmd_mv->add_option("--size", mv_n);
  cmd_mv->add_option("--out", out_path);
  cmd_mv->callback([&] {
    FamilyParams p = resolve(cmd_mv, mv_p);
    LinearOperatorHandle h(p, mv_n);
    auto dense = dense_truncation(p, mv_n);
    DenseOperator dop(dense);
    std::vector<double> e(static_cast<std::size_t>(mv_n), 0.0);
    IdentityReport r;
    r.name = "matvec-check";
    r.tolerance = 1e-12;
    double worst = 0.0;
    for (std::int64_t j = 0; j < mv_n; ++j) {
      e[static_cast<std::size_t>(j)] = 1.0;
      auto fast = h.apply(e);
      auto ref = dop.apply(e);
      e[static_cast<std::size_t>(j)] = 0.0;
      double scale = 0.0;
      for (double v : ref) scale = std::max(scale, std::abs(v));
      for (std::int64_t i = 0; i < mv_n; ++i) {
        double d = std::abs(fast[static_cast<std::size_t>(i)] - ref[static_cast<std::size_t>(i)]) /
                   std::max(scale, 1e-300);
        if (d >= worst) {
          worst = d;
          r.lhs = fast[static_cast<std::size_t>(i)];
          r.rhs = ref[static_cast<std::size_t>(i)];
          r.notes = "worst basis vector j=" + std::to_string(j) + " row i=" + std::to_string(i);
        }
      }
    }
    r.rel_discrepancy = worst;
    r.abs_discrepancy = std::abs(r.lhs - r.rhs);
    r.pass = worst <= r.tolerance;
    write_text(out_path, reports_to_json({r}));
    if (!r.pass) exit_code = kExitVerificationFailed;
  });

  // ---- verify ----
  auto* cmd_verify = app.add_subcommand("verify", "two-sided identity checks");
  cmd_verify->require_subcommand(1);
  double tol_override = -1.0;

  auto emit_reports = [&](const std::vector<IdentityReport>& reports) {
    write_text(out_path, reports_to_json(reports));
    for (const auto& r : reports)
      if (!r.pass) exit_code = kExitVerificationFailed;
  };

  // poisson-circle
  auto* v_pc = cmd_verify->add_subcommand("poisson-circle",
                                          "Fourier coefficients of the disk Poisson kernel");
  double pc_q = 0.0, pc_tau = 0.0;
  std::int64_t pc_n = 0, pc_grid = 512;
  v_pc->add_option("--q", pc_q)->required();
  v_pc->add_option("--tau", pc_tau)->required();
  v_pc->add_option("--n", pc_n)->required();
  v_pc->add_option("--grid", pc_grid);
  v_pc->add_option("--tolerance", tol_override);
  v_pc->add_option("--out", out_path);
  v_pc->callback([&] {
    auto r = verify_poisson_circle(pc_q, pc_tau, pc_n, pc_grid);
    if (tol_override >= 0.0) apply_tolerance(r, tol_override, false);
    emit_reports({r});
  });

  // quadform-a
  auto* v_qf = cmd_verify->add_subcommand("quadform-a", "A quadratic form vs circle quadrature");
  double qf_q = 0.0, qf_tau = 0.0, qf_rho = 0.0;
  int qf_degree = 8, qf_trials = 20;
  std::int64_t qf_grid = 1024;
  std::uint64_t qf_seed = 0;
  v_qf->add_option("--q", qf_q)->required();
  v_qf->add_option("--tau", qf_tau)->required();
  v_qf->add_option("--rho", qf_rho)->required();
  v_qf->add_option("--degree", qf_degree);
  v_qf->add_option("--trials", qf_trials);
  v_qf->add_option("--grid", qf_grid);
  v_qf->add_option("--seed", qf_seed);
  v_qf->add_option("--tolerance", tol_override);
  v_qf->add_option("--out", out_path);
  v_qf->callback([&] {
    FamilyParams p = FamilyParams::a(qf_tau, qf_rho, qf_q);
    std::vector<IdentityReport> reports;
    std::uint64_t s = qf_seed;
    auto next = [&s] {
      s = s * 6364136223846793005ULL + 1442695040888963407ULL;
      return 2.0 * (static_cast<double>(s >> 11) * 0x1.0p-53) - 1.0;
    };
    for (int t = 0; t < qf_trials; ++t) {
      CoefficientVector f;
      for (int i = 0; i <= qf_degree; ++i) {
        double re = next(), im = next();
        f.coeffs.emplace_back(re, im);
      }
      auto r = verify_quadform_a(p, f, qf_grid);
      r.notes += " trial=" + std::to_string(t);
      if (tol_override >= 0.0) apply_tolerance(r, tol_override, true);
      reports.push_back(r);
    }
    emit_reports(reports);
  });

  // halfplane
  auto* v_hp = cmd_verify->add_subcommand("halfplane", "half-plane Poisson integral");
  double hp_tau = 0.0, hp_T = 0.0;
  std::int64_t hp_n = 0, hp_m = 0;
  v_hp->add_option("--tau", hp_tau)->required();
  v_hp->add_option("--n", hp_n)->required();
  v_hp->add_option("--m", hp_m)->required();
  v_hp->add_option("--T", hp_T, "integration truncation (default max(1e4, 1e4 tau))");
  v_hp->add_option("--tolerance", tol_override);
  v_hp->add_option("--out", out_path);
  v_hp->callback([&] {
    auto r = verify_halfplane_poisson(hp_tau, hp_n, hp_m, hp_T);
    if (tol_override >= 0.0) apply_tolerance(r, tol_override, false);
    emit_reports({r});
  });

  // zeta-divisor
  auto* v_zd = cmd_verify->add_subcommand("zeta-divisor", "divisor-parametrised zeta identity");
  double zd_tau = 0.0;
  std::int64_t zd_n = 0, zd_m = 0, zd_k = 100000;
  v_zd->add_option("--tau", zd_tau)->required();
  v_zd->add_option("--n", zd_n)->required();
  v_zd->add_option("--m", zd_m)->required();
  v_zd->add_option("--K", zd_k);
  v_zd->add_option("--tolerance", tol_override);
  v_zd->add_option("--out", out_path);
  v_zd->callback([&] {
    auto r = verify_divisor_sum_zeta(zd_tau, zd_n, zd_m, zd_k);
    if (tol_override >= 0.0) apply_tolerance(r, tol_override, false);
    emit_reports({r});
  });

  // multiplier-gram
  auto* v_mg = cmd_verify->add_subcommand("multiplier-gram", "(T^T T)/zeta vs dense C(tau,0)");
  double mg_tau = 0.0;
  std::int64_t mg_n = 8, mg_k = 4096;
  v_mg->add_option("--tau", mg_tau)->required();
  v_mg->add_option("--size", mg_n);
  v_mg->add_option("--K", mg_k);
  v_mg->add_option("--tolerance", tol_override);
  v_mg->add_option("--out", out_path);
  v_mg->callback([&] {
    auto r = verify_multiplier_gram(mg_tau, mg_n, mg_k);
    if (tol_override >= 0.0) apply_tolerance(r, tol_override, false);
    emit_reports({r});
  });

  // rank-two
  auto* v_rt = cmd_verify->add_subcommand("rank-two", "rank-two reduction residual");
  CommonParams rt_p;
  std::int64_t rt_n = 64;
  add_family_options(v_rt, rt_p);
  v_rt->add_option("--size", rt_n);
  v_rt->add_option("--tolerance", tol_override);
  v_rt->add_option("--out", out_path);
  v_rt->callback([&] {
    FamilyParams p = resolve(v_rt, rt_p);
    auto r = rank_two_residual(p, rt_n);
    if (tol_override >= 0.0) apply_tolerance(r, tol_override, true);
    emit_reports({r});
  });

  // tensor
  auto* v_tf = cmd_verify->add_subcommand("tensor", "C as a tensor product of A over primes");
  double tf_tau = 0.0, tf_rho = 0.0;
  std::int64_t tf_n = 256;
  v_tf->add_option("--tau", tf_tau)->required();
  v_tf->add_option("--rho", tf_rho)->required();
  v_tf->add_option("--size", tf_n);
  v_tf->add_option("--tolerance", tol_override);
  v_tf->add_option("--out", out_path);
  v_tf->callback([&] {
    auto r = tensor_factor_check(FamilyParams::c(tf_tau, tf_rho), tf_n);
    if (tol_override >= 0.0) apply_tolerance(r, tol_override, true);
    emit_reports({r});
  });

  // scaling
  auto* v_sc = cmd_verify->add_subcommand("scaling", "homogeneity relations");
  CommonParams sc_p;
  std::int64_t sc_k = 2, sc_n = -1, sc_m = -1, sc_size = 128;
  add_family_options(v_sc, sc_p);
  v_sc->add_option("--k", sc_k);
  v_sc->add_option("--n", sc_n);
  v_sc->add_option("--m", sc_m);
  v_sc->add_option("--size", sc_size, "exhaustive sweep bound when --n/--m absent");
  v_sc->add_option("--tolerance", tol_override);
  v_sc->add_option("--out", out_path);
  v_sc->callback([&] {
    FamilyParams p = resolve(v_sc, sc_p);
    IdentityReport r = (sc_n >= 0 && sc_m >= 0)
                           ? scaling_check(p, sc_k, sc_n, sc_m)
                           : scaling_check_exhaustive(p, sc_k, p.origin() + sc_size - 1);
    if (tol_override >= 0.0) apply_tolerance(r, tol_override, true);
    emit_reports({r});
  });

  // smith
  auto* v_sm = cmd_verify->add_subcommand("smith", "GCD-matrix determinant vs the phi product");
  std::int64_t sm_n = 8;
  v_sm->add_option("--size", sm_n);
  v_sm->add_option("--out", out_path);
  v_sm->callback([&] {
    auto s = smith_determinant(sm_n);
    JsonWriter w;
    w.begin_object();
    w.key("n").value(sm_n);
    w.key("det").value(int128_to_string(s.det));
    w.key("phi_product").value(int128_to_string(s.phi_product));
    w.key("pass").value(s.equal);
    w.end_object();
    write_text(out_path, w.str() + "\n");
    if (!s.equal) exit_code = kExitVerificationFailed;
  });

  // symbol-range
  auto* v_sr = cmd_verify->add_subcommand("symbol-range", "Toeplitz symbol range of A(tau,0)");
  double sr_tau = 0.0, sr_q = 0.0;
  std::int64_t sr_size = 0;
  v_sr->add_option("--tau", sr_tau)->required();
  v_sr->add_option("--q", sr_q)->required();
  v_sr->add_option("--size", sr_size,
                   "when set, eig-check the truncation extremes against the range");
  v_sr->add_option("--out", out_path);
  v_sr->callback([&] {
    auto [lo, hi] = toeplitz_symbol_range(sr_tau, sr_q);
    JsonWriter w;
    w.begin_object();
    w.key("low").value(lo);
    w.key("high").value(hi);
    bool pass = true;
    if (sr_size > 0) {
      auto s = eig_dense(dense_truncation(FamilyParams::a(sr_tau, 0.0, sr_q), sr_size));
      pass = s.eigenvalues.front() < hi && s.eigenvalues.back() > lo;
      w.key("lambda_max").value(s.eigenvalues.front());
      w.key("lambda_min").value(s.eigenvalues.back());
      w.key("pass").value(pass);
    }
    w.end_object();
    write_text(out_path, w.str() + "\n");
    if (!pass) exit_code = kExitVerificationFailed;
  });

  // ---- scan ----
  auto* cmd_scan = app.add_subcommand("scan", "empirical region scan vs analytic classification");
  CommonParams scan_p;
  ScanGrid grid;
  std::string scan_sizes = "64,128,256,512,1024,2048,4096";
  std::string scan_format = "json";
  std::uint64_t scan_seed = 0;
  int scan_threads = 0;
  cmd_scan->add_option("--family", scan_p.family)->required();
  cmd_scan->add_option("--q", scan_p.q);
  cmd_scan->add_option("--tau-min", grid.tau_min);
  cmd_scan->add_option("--tau-max", grid.tau_max);
  cmd_scan->add_option("--tau-steps", grid.tau_steps);
  cmd_scan->add_option("--rho-min", grid.rho_min);
  cmd_scan->add_option("--rho-max", grid.rho_max);
  cmd_scan->add_option("--rho-steps", grid.rho_steps);
  cmd_scan->add_option("--sizes", scan_sizes, "comma-separated truncation sizes");
  cmd_scan->add_option("--seed", scan_seed);
  cmd_scan->add_option("--threads", scan_threads, "0 = machine parallelism");
  cmd_scan->add_option("--format", scan_format)->check(CLI::IsMember({"json", "csv"}));
  cmd_scan->add_option("--out", out_path);
  cmd_scan->callback([&] {
    Family fam = family_from_letter(scan_p.family[0]);
    bool has_q = cmd_scan->count("--q") > 0;
    if (fam == Family::A && !has_q) throw CLI::ValidationError("--q", "family A requires --q");
    if (fam != Family::A && has_q) throw CLI::ValidationError("--q", "--q applies to family A only");
    ScanOptions opts;
    opts.sizes = parse_sizes(scan_sizes);
    opts.seed = scan_seed;
    opts.threads = scan_threads;
    auto verdicts = empirical_scan(fam, grid, opts, scan_p.q);
    double agreement = scan_agreement(verdicts, opts.band, fam);
    write_text(out_path, scan_format == "csv" ? scan_to_csv(fam, verdicts)
                                              : scan_to_json(fam, verdicts, agreement));
  });

  // ---- figure1 ----
  auto* cmd_fig = app.add_subcommand("figure1", "region dataset and SVG diagram");
  CommonParams fig_p;
  int fig_resolution = 15;
  std::string fig_sizes = "64,128,256,512,1024,2048,4096";
  std::string fig_csv_path, fig_svg_path;
  std::uint64_t fig_seed = 0;
  int fig_threads = 0;
  cmd_fig->add_option("--family", fig_p.family)->required();
  cmd_fig->add_option("--q", fig_p.q);
  cmd_fig->add_option("--resolution", fig_resolution, "grid points per axis (>= 5)");
  cmd_fig->add_option("--sizes", fig_sizes);
  cmd_fig->add_option("--seed", fig_seed);
  cmd_fig->add_option("--threads", fig_threads);
  cmd_fig->add_option("--out-csv", fig_csv_path, "dataset path")->required();
  cmd_fig->add_option("--out-svg", fig_svg_path, "region plot path")->required();
  cmd_fig->callback([&] {
    Family fam = family_from_letter(fig_p.family[0]);
    bool has_q = cmd_fig->count("--q") > 0;
    if (fam == Family::A && !has_q) throw CLI::ValidationError("--q", "family A requires --q");
    if (fam != Family::A && has_q) throw CLI::ValidationError("--q", "--q applies to family A only");
    ScanOptions opts;
    opts.sizes = parse_sizes(fig_sizes);
    opts.seed = fig_seed;
    opts.threads = fig_threads;
    auto data = figure1_dataset(fam, fig_resolution, opts, fig_p.q);
    write_text(fig_csv_path, figure1_csv(data));
    write_text(fig_svg_path, figure1_svg(data));
    write_text("", "agreement " + fmt17(data.agreement) + "\n");
  });

  // ---- witness ----
  auto* cmd_wit = app.add_subcommand("witness", "growth along the unboundedness witness");
  CommonParams wit_p;
  std::int64_t wit_n = 4096;
  double wit_sigma = -1.0;
  add_family_options(cmd_wit, wit_p);
  cmd_wit->add_option("--size", wit_n);
  cmd_wit->add_option("--sigma", wit_sigma, "Rayleigh witness exponent (family B)");
  cmd_wit->add_option("--out", out_path);
  cmd_wit->callback([&] {
    FamilyParams p = resolve(cmd_wit, wit_p);
    std::optional<double> sigma;
    if (cmd_wit->count("--sigma") > 0) sigma = wit_sigma;
    write_text(out_path, growth_to_json(unboundedness_witness(p, wit_n, sigma)));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return exit_code;
}
