// negdep-qmc: sampling, discrepancy, covers, dependence reports, bound
// evaluation and batch studies from one binary.  Exit codes: 0 all verdicts
// pass, 1 usage / input error, 2 at least one verdict failed.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ndqmc/ndqmc.hpp"

using namespace ndqmc;
using nlohmann::json;

namespace {

struct GlobalOpts {
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out;
};

std::ostream& open_output(const GlobalOpts& g, std::ofstream& file) {
  if (g.out.empty()) return std::cout;
  file.open(g.out);
  if (!file) throw std::runtime_error("cannot open output file: " + g.out);
  return file;
}

SamplerKind parse_kind(const std::string& kind) {
  if (kind == "mc") return SamplerKind::MonteCarlo;
  if (kind == "lhs") return SamplerKind::Lhs;
  if (kind == "clhs") return SamplerKind::CenteredLhs;
  if (kind == "padded") return SamplerKind::PaddedLhs;
  throw CLI::ValidationError("--kind", "unknown sampler kind: " + kind);
}

SampleSpec build_spec(const std::string& kind, std::uint32_t n, std::uint32_t d,
                      std::optional<std::uint32_t> dlhs, std::uint64_t seed, std::uint64_t trial) {
  const SamplerKind k = parse_kind(kind);
  SampleSpec spec;
  spec.kind = k;
  spec.n = n;
  spec.d = d;
  spec.seed = seed;
  spec.trial = trial;
  switch (k) {
    case SamplerKind::MonteCarlo: spec.d_lhs = 0; break;
    case SamplerKind::Lhs:
    case SamplerKind::CenteredLhs: spec.d_lhs = d; break;
    case SamplerKind::PaddedLhs: spec.d_lhs = dlhs.value_or((d + 1) / 2); break;
  }
  if (dlhs && spec.d_lhs != *dlhs)
    throw CLI::ValidationError("--dlhs", "incompatible with --kind " + kind);
  return spec;
}

// region list syntax: "a1,..,ad:b1,..,bd[;more]"
std::vector<BoxDifference> parse_corners(const std::string& text, std::uint32_t d) {
  std::vector<BoxDifference> family;
  std::stringstream regions(text);
  std::string region_text;
  while (std::getline(regions, region_text, ';')) {
    const auto colon = region_text.find(':');
    if (colon == std::string::npos)
      throw CLI::ValidationError("--corners", "expected a1,..:b1,.. in \"" + region_text + "\"");
    auto parse_vec = [&](const std::string& s) {
      std::vector<double> v;
      std::stringstream parts(s);
      std::string tok;
      while (std::getline(parts, tok, ',')) v.push_back(std::stod(tok));
      if (v.size() != d)
        throw CLI::ValidationError("--corners", "corner dimension != " + std::to_string(d));
      return v;
    };
    BoxDifference r;
    r.inner = parse_vec(region_text.substr(0, colon));
    r.outer = parse_vec(region_text.substr(colon + 1));
    r.validate();
    family.push_back(std::move(r));
  }
  if (family.empty()) throw CLI::ValidationError("--corners", "no regions given");
  return family;
}

json dependence_to_json(const DependenceReport& report) {
  json regions = json::array();
  for (const auto& rd : report.regions) {
    json ratios = json::array();
    for (std::uint32_t k = 0; k < rd.upper_ratio.size(); ++k) {
      json row{{"k", k + 1},
               {"upper_ratio", rd.upper_ratio[k]},
               {"lower_ratio", rd.lower_ratio[k]}};
      if (!rd.upper_stderr.empty()) {
        row["upper_stderr"] = rd.upper_stderr[k];
        row["lower_stderr"] = rd.lower_stderr[k];
      }
      ratios.push_back(row);
    }
    regions.push_back({{"inner", rd.region.inner},
                       {"outer", rd.region.outer},
                       {"lambda", rd.lambda},
                       {"gamma_theorem", rd.gamma_theorem},
                       {"e_factors", rd.e_factors},
                       {"gamma_hat", rd.gamma_hat},
                       {"ratios", ratios}});
  }
  json out{{"kind", to_string(report.spec.kind)},
           {"n", report.spec.n},
           {"d", report.spec.d},
           {"d_lhs", report.spec.d_lhs},
           {"seed", report.spec.seed},
           {"method", report.method == DependenceMethod::Exact ? "exact-enumeration"
                                                               : "monte-carlo"},
           {"subset_reduction", DependenceReport::kSubsetReduction},
           {"gamma_hat", report.gamma_hat},
           {"gamma_theorem", report.gamma_theorem},
           {"rho_equivalent", report.rho_equivalent()},
           {"regions", regions}};
  if (report.method == DependenceMethod::MonteCarlo) {
    out["trials"] = report.trials;
    out["max_stderr"] = report.max_stderr;
  }
  return out;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"gamma-negatively dependent sampling and star-discrepancy toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global --seed/--format/--out may follow the subcommand

  GlobalOpts g;
  app.add_option("--seed", g.seed, "base seed for all randomized commands");
  app.add_option("--format", g.format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", g.out, "output file (default: stdout)");

  // ---- sample -------------------------------------------------------------
  auto* sample_cmd = app.add_subcommand("sample", "draw a point set and write the text format");
  std::string s_kind = "mc";
  std::uint32_t s_n = 16, s_d = 2;
  std::optional<std::uint32_t> s_dlhs;
  std::uint64_t s_trial = 0;
  sample_cmd->add_option("--kind", s_kind, "mc | lhs | clhs | padded");
  sample_cmd->add_option("--n", s_n, "number of points")->required();
  sample_cmd->add_option("--d", s_d, "dimension")->required();
  sample_cmd->add_option("--dlhs", s_dlhs, "LHS coordinates (padded kind)");
  sample_cmd->add_option("--trial", s_trial, "trial / stream index");

  // ---- discrepancy --------------------------------------------------------
  auto* disc_cmd = app.add_subcommand("discrepancy", "star discrepancy of a point-set file");
  std::string disc_input;
  bool disc_exact = false;
  double disc_delta = 0.0;
  disc_cmd->add_option("--input", disc_input, "point-set file")->required();
  disc_cmd->add_flag("--exact", disc_exact, "exact critical-grid computation");
  disc_cmd->add_option("--delta", disc_delta, "delta-cover two-sided estimate");

  // ---- cover --------------------------------------------------------------
  auto* cover_cmd = app.add_subcommand("cover", "build and check delta-covers");
  std::uint32_t c_d = 1;
  double c_delta = 0.1;
  bool c_verify = false;
  std::uint64_t c_probes = 1000;
  cover_cmd->add_option("--d", c_d, "dimension")->required();
  cover_cmd->add_option("--delta", c_delta, "cover resolution")->required();
  cover_cmd->add_flag("--verify", c_verify, "run the bracketing verifier");
  cover_cmd->add_option("--probes", c_probes, "random probes for --verify");

  // ---- negdep -------------------------------------------------------------
  auto* neg_cmd = app.add_subcommand("negdep", "dependence report for box differences");
  std::uint32_t g_n = 4, g_d = 1;
  std::optional<std::uint32_t> g_dlhs;
  std::string g_corners;
  std::string g_method = "exact";
  std::uint64_t g_trials = 10'000;
  neg_cmd->add_option("--n", g_n, "points per sample")->required();
  neg_cmd->add_option("--d", g_d, "dimension")->required();
  neg_cmd->add_option("--dlhs", g_dlhs, "LHS coordinates (default d)");
  neg_cmd->add_option("--corners", g_corners, "regions a1,..:b1,..[;..]")->required();
  neg_cmd->add_option("--method", g_method, "exact | mc")->check(CLI::IsMember({"exact", "mc"}));
  neg_cmd->add_option("--trials", g_trials, "trials for --method mc");

  // ---- bounds -------------------------------------------------------------
  auto* bounds_cmd = app.add_subcommand("bounds", "evaluate tail/discrepancy bounds");
  std::string b_mode = "constants";
  std::uint64_t b_n = 100;
  std::uint32_t b_d = 1;
  double b_rho = 0.0, b_gamma = 1.0, b_c = 3.0, b_q = 0.95, b_eps = 0.1, b_t = 1.0, b_sigma2 = 0.25;
  bool b_full = false;
  bounds_cmd->add_option("--mode", b_mode, "tail | success | confidence | inverse | constants")
      ->check(CLI::IsMember({"tail", "success", "confidence", "inverse", "constants"}));
  bounds_cmd->add_option("--n", b_n, "sample size");
  bounds_cmd->add_option("--d", b_d, "dimension");
  bounds_cmd->add_option("--rho", b_rho, "dependence exponent, gamma = e^(rho d)");
  bounds_cmd->add_option("--gamma", b_gamma, "dependence constant for tail mode");
  bounds_cmd->add_option("--c", b_c, "discrepancy coefficient");
  bounds_cmd->add_option("--q", b_q, "confidence level");
  bounds_cmd->add_option("--eps", b_eps, "target discrepancy");
  bounds_cmd->add_option("--t", b_t, "tail threshold");
  bounds_cmd->add_option("--sigma2", b_sigma2, "mean per-variable variance");
  bounds_cmd->add_flag("--full-precision", b_full,
                       "use fully derived constants instead of the published rounding");

  // ---- study --------------------------------------------------------------
  auto* study_cmd = app.add_subcommand("study", "batch studies with verdicts");
  std::string st_study = "success_prob", st_kind = "mc", st_corners;
  std::uint32_t st_n = 64, st_d = 2;
  std::optional<std::uint32_t> st_dlhs;
  std::uint64_t st_trials = 1000;
  std::vector<double> st_c, st_t;
  double st_delta = 0.0;
  bool st_timing = false, st_cover = false;
  unsigned st_threads = 0;
  study_cmd->add_option("--study", st_study,
                        "success_prob | tail | negdep | projection | cover_sandwich")
      ->check(CLI::IsMember({"success_prob", "tail", "negdep", "projection", "cover_sandwich"}));
  study_cmd->add_option("--kind", st_kind, "mc | lhs | clhs | padded");
  study_cmd->add_option("--n", st_n, "points per trial");
  study_cmd->add_option("--d", st_d, "dimension");
  study_cmd->add_option("--dlhs", st_dlhs, "LHS coordinates (padded kind)");
  study_cmd->add_option("--trials", st_trials, "number of trials");
  study_cmd->add_option("--c", st_c, "success thresholds c (D* <= c sqrt(d/N))");
  study_cmd->add_option("--t", st_t, "tail thresholds t (P(|S| >= t))");
  study_cmd->add_option("--delta", st_delta, "cover resolution (sandwich / cover mode)");
  study_cmd->add_option("--corners", st_corners, "region for tail/negdep studies");
  study_cmd->add_flag("--use-cover", st_cover, "success study: cover upper bound");
  study_cmd->add_flag("--timing", st_timing, "record wall-clock seconds (non-reproducible)");
  study_cmd->add_option("--threads", st_threads, "worker threads (0 = hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // help text, exit 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  std::ofstream file;
  std::ostream& os = open_output(g, file);

  if (sample_cmd->parsed()) {
    const auto spec = build_spec(s_kind, s_n, s_d, s_dlhs, g.seed, s_trial);
    write_pointset(os, sample(spec));
    return 0;
  }

  if (disc_cmd->parsed()) {
    std::ifstream in(disc_input);
    if (!in) throw std::runtime_error("cannot open point-set file: " + disc_input);
    const PointSet ps = read_pointset(in);
    if (!disc_exact && disc_delta <= 0.0)
      throw CLI::ValidationError("discrepancy", "choose --exact or --delta <delta>");
    double lower = 0.0, upper = 0.0;
    std::string method;
    if (disc_exact) {
      lower = upper = star_discrepancy_exact(ps);
      method = "exact";
    } else {
      const auto cover = ps.d == 1 ? build_cover_1d(disc_delta) : build_cover_grid(ps.d, disc_delta);
      std::tie(lower, upper) = star_discrepancy_cover(ps, cover);
      method = "delta-cover";
    }
    if (g.format == "csv") {
      os << "n,d,method,lower,upper\n"
         << ps.n() << ',' << ps.d << ',' << method << ',' << format_shortest(lower) << ','
         << format_shortest(upper) << '\n';
    } else {
      os << json{{"n", ps.n()}, {"d", ps.d}, {"method", method}, {"lower", lower},
                 {"upper", upper}}
                .dump(2)
         << '\n';
    }
    return 0;
  }

  if (cover_cmd->parsed()) {
    const auto cover = c_d == 1 ? build_cover_1d(c_delta) : build_cover_grid(c_d, c_delta);
    json out{{"d", c_d},
             {"delta", c_delta},
             {"grid_m", cover.grid_m},
             {"size", cover.size()},
             {"bound", cover_cardinality_bound(c_d, c_delta)}};
    if (c_verify) {
      const auto verdict = verify_cover(cover, c_probes, g.seed);
      out["verdict"] = verdict.valid ? "valid" : "counterexample";
      out["worst_gap"] = verdict.worst_gap;
      if (verdict.counterexample) out["counterexample"] = *verdict.counterexample;
      if (!verdict.valid) {
        os << out.dump(2) << '\n';
        return 2;
      }
    }
    if (g.format == "csv") {
      os << "d,delta,size,bound,verdict\n"
         << c_d << ',' << format_shortest(c_delta) << ',' << cover.size() << ','
         << format_shortest(cover_cardinality_bound(c_d, c_delta)) << ','
         << (c_verify ? "valid" : "unchecked") << '\n';
    } else {
      os << out.dump(2) << '\n';
    }
    return 0;
  }

  if (neg_cmd->parsed()) {
    const std::uint32_t dlhs = g_dlhs.value_or(g_d);
    SampleSpec spec;
    spec.n = g_n;
    spec.d = g_d;
    spec.d_lhs = dlhs;
    spec.seed = g.seed;
    spec.kind = dlhs == 0   ? SamplerKind::MonteCarlo
                : dlhs == g_d ? SamplerKind::Lhs
                              : SamplerKind::PaddedLhs;
    const auto family = parse_corners(g_corners, g_d);
    const auto report =
        dependence_report(spec, family,
                          g_method == "exact" ? DependenceMethod::Exact : DependenceMethod::MonteCarlo,
                          g_trials);
    os << dependence_to_json(report).dump(2) << '\n';
    bool ok = true;
    for (const auto& rd : report.regions)
      if (report.method == DependenceMethod::Exact && rd.gamma_hat > rd.gamma_theorem * (1 + 1e-12))
        ok = false;
    return ok ? 0 : 2;
  }

  if (bounds_cmd->parsed()) {
    auto constants = derive_constants();
    if (b_full) constants.published_rounding = false;
    json out{{"mode", b_mode}, {"published_rounding", constants.published_rounding}};
    if (b_mode == "tail") {
      const TailQuery q{b_n, b_gamma, b_t, b_sigma2};
      out["input"] = {{"n", b_n}, {"gamma", b_gamma}, {"t", b_t}, {"sigma2", b_sigma2}};
      out["hoeffding"] = hoeffding_tail(q);
      out["bernstein"] = bernstein_tail(q);
    } else if (b_mode == "success") {
      out["input"] = {{"c", b_c}, {"d", b_d}, {"rho", b_rho}};
      out["success_probability"] = success_probability(b_c, b_d, b_rho, constants);
    } else if (b_mode == "confidence") {
      out["input"] = {{"n", b_n}, {"d", b_d}, {"rho", b_rho}, {"q", b_q}};
      out["bound"] = bound_at_confidence(b_n, b_d, b_rho, b_q, constants);
    } else if (b_mode == "inverse") {
      out["input"] = {{"eps", b_eps}, {"d", b_d}, {"rho", b_rho}};
      out["min_coefficient"] = min_coefficient(b_rho, constants);
      out["n_star"] = inverse_discrepancy_bound(b_eps, b_d, b_rho, constants);
    } else {
      out["mu"] = constants.mu;
      out["tau_mu"] = constants.tau_mu;
      out["c_mu"] = constants.c_mu;
      out["c1"] = constants.c1;
      out["sigma"] = constants.sigma_const;
      out["vartheta"] = constants.vartheta;
      out["zeta"] = constants.zeta;
      out["amplification"] = constants.amplification;
      out["coeff_exp"] = constants.coeff_exp;
      out["coeff_off"] = constants.coeff_off;
      out["coeff_conf"] = constants.coeff_conf;
      out["c0_rho0"] = constants.c0(0.0);
      out["chaining_depth_n1e8_d1"] = chaining_depth(100'000'000, 1, constants);
    }
    os << out.dump(2) << '\n';
    return 0;
  }

  // study
  ExperimentConfig cfg;
  cfg.spec = build_spec(st_kind, st_n, st_d, st_dlhs, g.seed, 0);
  cfg.trials = st_trials;
  cfg.thresholds = st_c;
  cfg.delta = st_delta;
  cfg.use_cover = st_cover;
  cfg.threads = st_threads;
  cfg.record_timing = st_timing;
  if (!st_corners.empty()) cfg.region = parse_corners(st_corners, st_d).front();

  StudyResult result;
  if (st_study == "success_prob") {
    cfg.study = StudyKind::SuccessProb;
    if (cfg.thresholds.empty()) cfg.thresholds = {3.0, 4.0};
    result = run_success_study(cfg);
  } else if (st_study == "tail") {
    cfg.study = StudyKind::Tail;
    cfg.thresholds = st_t;
    if (cfg.thresholds.empty())
      for (int t = 1; t <= 20; ++t) cfg.thresholds.push_back(t);
    if (!cfg.region) throw CLI::ValidationError("--corners", "tail study needs a region");
    result = run_tail_study(cfg);
  } else if (st_study == "negdep") {
    cfg.study = StudyKind::NegDep;
    if (!cfg.region) throw CLI::ValidationError("--corners", "negdep study needs a region");
    result = run_negdep_study(cfg, {*cfg.region});
  } else if (st_study == "projection") {
    cfg.study = StudyKind::Projection;
    result = run_projection_study(cfg);
  } else {
    cfg.study = StudyKind::CoverSandwich;
    if (cfg.delta <= 0.0) cfg.delta = 0.05;
    result = run_cover_sandwich_study(cfg);
  }
  write_result(os, result, g.format == "csv" ? OutputFormat::Csv : OutputFormat::Json);
  return result.all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
