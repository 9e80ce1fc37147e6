#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "ndqmc/bounds.hpp"
#include "ndqmc/cover.hpp"
#include "ndqmc/discrepancy.hpp"
#include "ndqmc/negdep.hpp"
#include "ndqmc/pointset.hpp"

// Batch experiment runner: reproducible studies tying the samplers,
// discrepancy computations, dependence oracles and tail bounds together.
// Equal configurations produce byte-identical output files; wall-clock
// timing is only recorded when explicitly requested.

namespace ndqmc {

enum class StudyKind { SuccessProb, Tail, NegDep, Projection, CoverSandwich };

inline const char* to_string(StudyKind s) {
  switch (s) {
    case StudyKind::SuccessProb: return "success_prob";
    case StudyKind::Tail: return "tail";
    case StudyKind::NegDep: return "negdep";
    case StudyKind::Projection: return "projection";
    case StudyKind::CoverSandwich: return "cover_sandwich";
  }
  return "?";
}

struct ExperimentConfig {
  SampleSpec spec;  // template; the trial field is the loop index
  std::uint64_t trials = 1000;
  StudyKind study = StudyKind::SuccessProb;
  std::vector<double> thresholds;        // c values (success) or t values (tail)
  double delta = 0.0;                    // cover delta (sandwich, or success fallback)
  bool use_cover = false;                // success study: cover upper bound instead of exact
  std::optional<BoxDifference> region;   // tail / negdep studies
  unsigned threads = 0;                  // 0 = hardware concurrency
  bool record_timing = false;

  void validate() const {
    spec.validate();
    if (trials < 1) throw std::invalid_argument("ExperimentConfig: trials must be >= 1");
    if ((study == StudyKind::SuccessProb || study == StudyKind::Tail) && thresholds.empty())
      throw std::invalid_argument("ExperimentConfig: thresholds required for this study");
  }
};

struct ThresholdRow {
  std::string study;  // row label; usually the study name
  double threshold = 0.0;
  double empirical = 0.0;
  double stderr_ = 0.0;
  double theoretical = 0.0;
  bool pass = true;
};

struct StudyResult {
  std::string study;
  SampleSpec spec;
  std::uint64_t trials = 0;
  std::vector<ThresholdRow> rows;
  bool all_pass = true;
  double seconds = 0.0;
  std::string note;
};

namespace detail {

template <typename Fn>  // fn(trial, worker_index)
void parallel_trials(std::uint64_t trials, unsigned threads, Fn&& fn) {
  unsigned hw = std::thread::hardware_concurrency();
  if (threads == 0) threads = hw > 0 ? hw : 1;
  if (trials < threads) threads = static_cast<unsigned>(trials ? trials : 1);
  if (threads <= 1) {
    for (std::uint64_t t = 0; t < trials; ++t) fn(t, 0u);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      for (;;) {
        const std::uint64_t t = next.fetch_add(1, std::memory_order_relaxed);
        if (t >= trials) return;
        fn(t, w);
      }
    });
  for (auto& th : pool) th.join();
}

inline unsigned worker_count(std::uint64_t trials, unsigned threads) {
  unsigned hw = std::thread::hardware_concurrency();
  if (threads == 0) threads = hw > 0 ? hw : 1;
  if (trials < threads) threads = static_cast<unsigned>(trials ? trials : 1);
  return threads ? threads : 1;
}

inline double binomial_stderr(double p, std::uint64_t trials) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

/// Exact star discrepancy of a one-dimensional multiset.
inline double star_discrepancy_1d(std::vector<double>& xs) {
  const std::size_t n = xs.size();
  if (n == 0) throw std::invalid_argument("star_discrepancy_1d: empty");
  std::sort(xs.begin(), xs.end());
  const double inv_n = 1.0 / static_cast<double>(n);
  double best = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && xs[j] == xs[i]) ++j;
    const double v = xs[i];
    best = std::max(best, v - static_cast<double>(i) * inv_n);   // open box at v
    best = std::max(best, static_cast<double>(j) * inv_n - v);   // closed box at v
    i = j;
  }
  return best;
}

}  // namespace detail

/// Empirical P(D*_N <= c sqrt(d/N)) per threshold c against the guaranteed
/// lower bound, with rho = 0 for Monte Carlo and rho = 1 for (padded) LHS.
/// The verdict is one-sided: empirical >= guarantee - 3 stderr.
inline StudyResult run_success_study(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint32_t n = cfg.spec.n, d = cfg.spec.d;
  const double rho = cfg.spec.kind == SamplerKind::MonteCarlo ? 0.0 : 1.0;
  const double scale = std::sqrt(static_cast<double>(d) / n);

  std::optional<DeltaCover> cover;
  if (cfg.use_cover) cover = build_cover_grid(d, cfg.delta > 0 ? cfg.delta : 0.05);

  const unsigned workers = detail::worker_count(cfg.trials, cfg.threads);
  std::vector<std::vector<std::uint64_t>> counts(workers,
                                                 std::vector<std::uint64_t>(cfg.thresholds.size(), 0));
  std::vector<detail::StarDiscrepancyWorkspace> ws(workers);

  detail::parallel_trials(cfg.trials, cfg.threads, [&](std::uint64_t t, unsigned w) {
    SampleSpec s = cfg.spec;
    s.trial = t;
    const PointSet ps = sample(s);
    const double dstar = cover ? star_discrepancy_cover(ps, *cover).second
                               : detail::star_discrepancy_exact_impl(ps, 100'000'000, ws[w]);
    for (std::size_t i = 0; i < cfg.thresholds.size(); ++i)
      if (dstar <= cfg.thresholds[i] * scale) ++counts[w][i];
  });

  StudyResult res;
  res.study = to_string(cfg.study);
  res.spec = cfg.spec;
  res.trials = cfg.trials;
  for (std::size_t i = 0; i < cfg.thresholds.size(); ++i) {
    std::uint64_t cnt = 0;
    for (unsigned w = 0; w < workers; ++w) cnt += counts[w][i];
    ThresholdRow row;
    row.study = res.study;
    row.threshold = cfg.thresholds[i];
    row.empirical = static_cast<double>(cnt) / cfg.trials;
    row.stderr_ = detail::binomial_stderr(row.empirical, cfg.trials);
    row.theoretical = success_probability(cfg.thresholds[i], d, rho);
    row.pass = row.empirical >= row.theoretical - 3.0 * row.stderr_;
    res.all_pass = res.all_pass && row.pass;
    res.rows.push_back(row);
  }
  if (cfg.record_timing)
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

/// Empirical P(|S| >= t) for S = sum(1_D(X_i) - lambda(D)) per threshold t,
/// against the Hoeffding and Bernstein bounds with gamma from the region's
/// grid alignment.  Verdict: empirical <= each bound + 3 stderr.
inline StudyResult run_tail_study(const ExperimentConfig& cfg) {
  cfg.validate();
  if (!cfg.region) throw std::invalid_argument("run_tail_study: region required");
  const auto t0 = std::chrono::steady_clock::now();
  const BoxDifference& region = *cfg.region;
  region.validate();
  const std::uint32_t n = cfg.spec.n;
  const double lambda = region.volume();
  if (!(lambda > 0.0 && lambda < 1.0))
    throw std::invalid_argument("run_tail_study: degenerate region");
  const double gamma = gamma_for_boxdiff(region, n, cfg.spec.d_lhs);
  const double sigma2 = lambda * (1.0 - lambda);

  const unsigned workers = detail::worker_count(cfg.trials, cfg.threads);
  std::vector<std::vector<std::uint64_t>> counts(workers,
                                                 std::vector<std::uint64_t>(cfg.thresholds.size(), 0));

  detail::parallel_trials(cfg.trials, cfg.threads, [&](std::uint64_t t, unsigned w) {
    SampleSpec s = cfg.spec;
    s.trial = t;
    const PointSet ps = sample(s);
    std::uint64_t cnt = 0;
    for (std::uint32_t i = 0; i < n; ++i) cnt += region.contains(ps.point(i));
    const double dev = std::abs(static_cast<double>(cnt) - n * lambda);
    for (std::size_t i = 0; i < cfg.thresholds.size(); ++i)
      if (dev >= cfg.thresholds[i]) ++counts[w][i];
  });

  StudyResult res;
  res.study = to_string(cfg.study);
  res.spec = cfg.spec;
  res.trials = cfg.trials;
  for (std::size_t i = 0; i < cfg.thresholds.size(); ++i) {
    std::uint64_t cnt = 0;
    for (unsigned w = 0; w < workers; ++w) cnt += counts[w][i];
    TailQuery q{n, gamma, cfg.thresholds[i], sigma2};
    const double hoeff = hoeffding_tail(q);
    const double bern = bernstein_tail(q);
    ThresholdRow row;
    row.study = res.study;
    row.threshold = cfg.thresholds[i];
    row.empirical = static_cast<double>(cnt) / cfg.trials;
    row.stderr_ = detail::binomial_stderr(row.empirical, cfg.trials);
    row.theoretical = std::min(1.0, std::min(hoeff, bern));
    row.pass = row.empirical <= hoeff + 3.0 * row.stderr_ &&
               row.empirical <= bern + 3.0 * row.stderr_;
    res.all_pass = res.all_pass && row.pass;
    res.rows.push_back(row);
  }
  if (cfg.record_timing)
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

/// Exact 1-d star discrepancy of every LHS coordinate projection, checked
/// against the 1/N bound; Monte Carlo projections of the same size are
/// reported for contrast (median over trials and coordinates).
inline StudyResult run_projection_study(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.spec.d_lhs == 0)
    throw std::invalid_argument("run_projection_study: spec must have LHS coordinates");
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint32_t n = cfg.spec.n, d = cfg.spec.d, dl = cfg.spec.d_lhs;

  const unsigned workers = detail::worker_count(cfg.trials, cfg.threads);
  std::vector<double> worst(workers, 0.0);
  std::vector<double> mc_proj(cfg.trials * d, 0.0);

  detail::parallel_trials(cfg.trials, cfg.threads, [&](std::uint64_t t, unsigned w) {
    SampleSpec s = cfg.spec;
    s.trial = t;
    const PointSet ps = sample(s);
    std::vector<double> col(n);
    for (std::uint32_t j = 0; j < dl; ++j) {
      for (std::uint32_t i = 0; i < n; ++i) col[i] = ps(i, j);
      worst[w] = std::max(worst[w], detail::star_discrepancy_1d(col));
    }
    // independent Monte Carlo contrast sample on a disjoint trial stream
    SampleSpec mc = SampleSpec::monte_carlo(n, d, cfg.spec.seed, cfg.trials + t);
    const PointSet qs = sample(mc);
    for (std::uint32_t j = 0; j < d; ++j) {
      for (std::uint32_t i = 0; i < n; ++i) col[i] = qs(i, j);
      mc_proj[t * d + j] = detail::star_discrepancy_1d(col);
    }
  });

  double lhs_worst = 0.0;
  for (unsigned w = 0; w < workers; ++w) lhs_worst = std::max(lhs_worst, worst[w]);
  std::sort(mc_proj.begin(), mc_proj.end());
  const double mc_median = mc_proj[mc_proj.size() / 2];
  const double bound = 1.0 / n;

  StudyResult res;
  res.study = to_string(cfg.study);
  res.spec = cfg.spec;
  res.trials = cfg.trials;
  ThresholdRow lhs_row;
  lhs_row.study = res.study;
  lhs_row.threshold = bound;
  lhs_row.empirical = lhs_worst;
  lhs_row.theoretical = bound;
  lhs_row.pass = lhs_worst <= bound * (1.0 + 1e-12);
  res.rows.push_back(lhs_row);
  ThresholdRow mc_row;
  mc_row.study = "projection_mc";
  mc_row.threshold = 0.0;
  mc_row.empirical = mc_median;
  mc_row.theoretical = 0.0;
  mc_row.pass = true;
  res.rows.push_back(mc_row);
  res.all_pass = lhs_row.pass;
  res.note = "projection_mc row reports the median Monte Carlo projection discrepancy";
  if (cfg.record_timing)
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

/// Checks lower <= D* <= lower + delta on every trial for the grid cover.
inline StudyResult run_cover_sandwich_study(const ExperimentConfig& cfg) {
  cfg.validate();
  if (!(cfg.delta > 0.0 && cfg.delta <= 1.0))
    throw std::invalid_argument("run_cover_sandwich_study: delta in (0,1] required");
  const auto t0 = std::chrono::steady_clock::now();
  const DeltaCover cover = build_cover_grid(cfg.spec.d, cfg.delta);

  const unsigned workers = detail::worker_count(cfg.trials, cfg.threads);
  std::vector<std::uint64_t> violations(workers, 0);
  std::vector<double> max_gap(workers, 0.0);
  std::vector<detail::StarDiscrepancyWorkspace> ws(workers);

  detail::parallel_trials(cfg.trials, cfg.threads, [&](std::uint64_t t, unsigned w) {
    SampleSpec s = cfg.spec;
    s.trial = t;
    const PointSet ps = sample(s);
    const auto [lower, upper] = star_discrepancy_cover(ps, cover);
    const double exact = detail::star_discrepancy_exact_impl(ps, 100'000'000, ws[w]);
    if (!(lower <= exact * (1.0 + 1e-12) + 1e-15 && exact <= upper * (1.0 + 1e-12) + 1e-15))
      ++violations[w];
    max_gap[w] = std::max(max_gap[w], exact - lower);
  });

  std::uint64_t bad = 0;
  double gap = 0.0;
  for (unsigned w = 0; w < workers; ++w) {
    bad += violations[w];
    gap = std::max(gap, max_gap[w]);
  }

  StudyResult res;
  res.study = to_string(cfg.study);
  res.spec = cfg.spec;
  res.trials = cfg.trials;
  ThresholdRow row;
  row.study = res.study;
  row.threshold = cfg.delta;
  row.empirical = gap;  // largest observed D* - lower, always <= delta
  row.theoretical = cfg.delta;
  row.pass = bad == 0;
  res.rows.push_back(row);
  res.all_pass = row.pass;
  res.note = bad == 0 ? "no sandwich violations" : std::to_string(bad) + " sandwich violations";
  if (cfg.record_timing)
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

/// Monte Carlo dependence study: gamma_hat estimates per region compared
/// with the guarantee value, four standard errors of slack per ratio.
inline StudyResult run_negdep_study(const ExperimentConfig& cfg,
                                    const std::vector<BoxDifference>& family) {
  cfg.validate();
  if (family.empty()) throw std::invalid_argument("run_negdep_study: empty region family");
  const auto t0 = std::chrono::steady_clock::now();
  const DependenceReport report =
      dependence_report(cfg.spec, family, DependenceMethod::MonteCarlo, cfg.trials);

  StudyResult res;
  res.study = to_string(cfg.study);
  res.spec = cfg.spec;
  res.trials = cfg.trials;
  for (std::size_t r = 0; r < report.regions.size(); ++r) {
    const auto& rd = report.regions[r];
    bool ok = true;
    double se_at_max = 0.0;
    for (std::uint32_t k = 0; k < cfg.spec.n; ++k) {
      if (rd.upper_ratio[k] > rd.gamma_theorem + 4.0 * rd.upper_stderr[k]) ok = false;
      if (rd.lower_ratio[k] > rd.gamma_theorem + 4.0 * rd.lower_stderr[k]) ok = false;
      if (rd.upper_ratio[k] == rd.gamma_hat) se_at_max = rd.upper_stderr[k];
      if (rd.lower_ratio[k] == rd.gamma_hat) se_at_max = rd.lower_stderr[k];
    }
    ThresholdRow row;
    row.study = res.study;
    row.threshold = static_cast<double>(r + 1);  // region index
    row.empirical = rd.gamma_hat;
    row.stderr_ = se_at_max;
    row.theoretical = rd.gamma_theorem;
    row.pass = ok;
    res.all_pass = res.all_pass && ok;
    res.rows.push_back(row);
  }
  res.note = DependenceReport::kSubsetReduction;
  if (cfg.record_timing)
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

// ---------------------------------------------------------------------------
// Output: CSV with a fixed column set, or JSON mirroring the same fields.
// All numbers use shortest round-trip decimal formatting.

inline std::string format_shortest(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline constexpr const char* kCsvHeader =
    "study,kind,n,d,d_lhs,seed,trials,threshold,empirical,stderr,theoretical,verdict,seconds";

inline void write_csv(std::ostream& os, const StudyResult& res) {
  os << kCsvHeader << '\n';
  for (const auto& row : res.rows) {
    os << row.study << ',' << to_string(res.spec.kind) << ',' << res.spec.n << ',' << res.spec.d
       << ',' << res.spec.d_lhs << ',' << res.spec.seed << ',' << res.trials << ','
       << format_shortest(row.threshold) << ',' << format_shortest(row.empirical) << ','
       << format_shortest(row.stderr_) << ',' << format_shortest(row.theoretical) << ','
       << (row.pass ? "pass" : "fail") << ',' << format_shortest(res.seconds) << '\n';
  }
}

inline nlohmann::json to_json(const StudyResult& res) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : res.rows)
    rows.push_back({{"study", row.study},
                    {"threshold", row.threshold},
                    {"empirical", row.empirical},
                    {"stderr", row.stderr_},
                    {"theoretical", row.theoretical},
                    {"verdict", row.pass ? "pass" : "fail"}});
  return nlohmann::json{{"study", res.study},
                        {"kind", to_string(res.spec.kind)},
                        {"n", res.spec.n},
                        {"d", res.spec.d},
                        {"d_lhs", res.spec.d_lhs},
                        {"seed", res.spec.seed},
                        {"trials", res.trials},
                        {"seconds", res.seconds},
                        {"all_pass", res.all_pass},
                        {"note", res.note},
                        {"rows", rows}};
}

enum class OutputFormat { Json, Csv };

inline void write_result(std::ostream& os, const StudyResult& res, OutputFormat fmt) {
  if (fmt == OutputFormat::Csv) {
    write_csv(os, res);
  } else {
    os << to_json(res).dump(2) << '\n';
  }
}

}  // namespace ndqmc
