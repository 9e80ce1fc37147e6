#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ndqmc/errors.hpp"
#include "ndqmc/pointset.hpp"
#include "ndqmc/rational.hpp"
#include "ndqmc/region.hpp"

// Exact oracles for joint probabilities of LHS box indicators, the
// per-coordinate dependence factors delta_i in {1, e}, and empirical
// dependence checking against the gamma = prod(delta_i) guarantee.

namespace ndqmc {

/// One-dimensional event [a,b) against the LHS cell grid G^1_N =
/// {0, 1/N, ..., 1}.  alpha = ceil(N*a), beta = floor(N*b) and the
/// residuals eps_a, eps_b come from the IEEE double products N*a and N*b;
/// grid membership means that product is an integer, with no tolerance.
/// The residuals are exactly representable, so (alpha - eps_a)/N and
/// (beta + eps_b)/N reproduce the rounded products exactly.
struct IntervalEvent {
  std::uint32_t n;
  double a, b;
  double na, nb;  // IEEE products a*n, b*n
  std::int64_t alpha, beta;
  Rational eps_a_exact, eps_b_exact;  // alpha - N*a and N*b - beta, exact
  double eps_a, eps_b;                // rounded views of the residuals
  bool a_on_grid, b_on_grid;

  IntervalEvent(std::uint32_t n_, double a_, double b_) : n(n_), a(a_), b(b_) {
    if (n < 1) throw std::invalid_argument("IntervalEvent: n must be >= 1");
    if (!(a >= 0.0 && a <= b && b <= 1.0))
      throw std::invalid_argument("IntervalEvent: need 0 <= a <= b <= 1");
    na = a * n;
    nb = b * n;
    alpha = static_cast<std::int64_t>(std::ceil(na));
    beta = static_cast<std::int64_t>(std::floor(nb));
    eps_a_exact = Rational(alpha) - Rational(na);
    eps_b_exact = Rational(nb) - Rational(beta);
    eps_a = to_double(eps_a_exact);
    eps_b = to_double(eps_b_exact);
    a_on_grid = eps_a_exact == 0;
    b_on_grid = eps_b_exact == 0;
  }

  /// Snapped endpoints (alpha - eps_a)/N and (beta + eps_b)/N, exact.
  Rational lower() const { return Rational(na) / n; }
  Rational upper() const { return Rational(nb) / n; }
};

/// The dependence factor of one coordinate: 1 if a,b are both on G^1_N or
/// a = 0, else e.
inline double delta_factor(double a, double b, std::uint32_t n) {
  const IntervalEvent ev(n, a, b);
  return (a == 0.0 || (ev.a_on_grid && ev.b_on_grid)) ? 1.0 : std::exp(1.0);
}

/// Number of e-factors among the first d_lhs coordinates of the region.
inline std::uint32_t gamma_e_count(const BoxDifference& region, std::uint32_t n,
                                   std::uint32_t d_lhs) {
  region.validate();
  if (d_lhs > region.dim())
    throw std::invalid_argument("gamma_for_boxdiff: d_lhs exceeds region dimension");
  std::uint32_t cnt = 0;
  for (std::uint32_t i = 0; i < d_lhs; ++i)
    if (delta_factor(region.inner[i], region.outer[i], n) != 1.0) ++cnt;
  return cnt;
}

/// gamma = prod of delta_factor over the LHS coordinates; Monte Carlo
/// coordinates contribute factor 1.
inline double gamma_for_boxdiff(const BoxDifference& region, std::uint32_t n,
                                std::uint32_t d_lhs) {
  double g = 1.0;
  const std::uint32_t cnt = gamma_e_count(region, n, d_lhs);
  for (std::uint32_t i = 0; i < cnt; ++i) g *= std::exp(1.0);
  return g;
}

namespace detail {

// Cells of a 1-d LHS grouped by their overlap pattern with [0,a), [a,b),
// [b,1): at most five groups (left interior, cell containing a, middle,
// cell containing b, right interior).  When a and b share a cell, that
// cell carries all three overlaps.
struct CellGroup {
  std::int64_t count;
  Rational below, inside, above;  // per-cell fractions, each in [0,1]
};

inline std::vector<CellGroup> lhs_cell_groups(const IntervalEvent& ev) {
  const std::int64_t n = ev.n, alpha = ev.alpha, beta = ev.beta;
  const Rational &ea = ev.eps_a_exact, &eb = ev.eps_b_exact;
  std::vector<CellGroup> groups;
  auto push = [&](std::int64_t count, Rational below, Rational inside, Rational above) {
    if (count > 0) groups.push_back({count, std::move(below), std::move(inside), std::move(above)});
  };
  const bool merged = alpha >= 1 && alpha - 1 == beta;  // a and b in one cell
  push(alpha >= 1 ? alpha - 1 : 0, 1, 0, 0);
  if (merged) {
    push(1, 1 - ea, ea + eb - 1, 1 - eb);
  } else {
    if (alpha >= 1) push(1, 1 - ea, ea, 0);
    push(beta - alpha, 0, 1, 0);
    if (beta <= n - 1) push(1, 0, eb, 1 - eb);
  }
  push(n - 1 - beta, 0, 0, 1);
  return groups;
}

}  // namespace detail

/// Exact P( X_1..X_nu in I1 and X_{nu+1}..X_k in I2 ) for a 1-d LHS of
/// size N, where for sigma = 0: I1 = [a,b), I2 = [0,b) and for sigma = 1:
/// I1 = [b,1), I2 = [0,a) u [b,1).  Computed by exact summation over
/// injective assignments of the k points to the N cells: cells are grouped
/// by overlap (at most 5 groups) and a multinomial dynamic program over
/// group usage sums prod(overlaps) / FF(N,k).
inline Rational lhs1d_two_interval_prob_rational(const IntervalEvent& ev, int sigma,
                                                 std::uint32_t k, std::uint32_t nu) {
  if (sigma != 0 && sigma != 1) throw std::invalid_argument("sigma must be 0 or 1");
  if (k > ev.n) throw std::invalid_argument("lhs1d_two_interval_prob: k > n");
  if (nu > k) throw std::invalid_argument("lhs1d_two_interval_prob: nu > k");

  const auto groups = detail::lhs_cell_groups(ev);
  const std::uint32_t k2 = k - nu;

  // dp[u][v] = weighted count of ordered injective cell assignments for u
  // of the I1 slots and v of the I2 slots
  std::vector<std::vector<Rational>> dp(nu + 1, std::vector<Rational>(k2 + 1, Rational(0)));
  dp[0][0] = 1;
  for (const auto& g : groups) {
    const Rational w1 = sigma == 0 ? g.inside : g.above;
    const Rational w2 = sigma == 0 ? g.below + g.inside : g.below + g.above;
    std::vector<std::vector<Rational>> next(nu + 1, std::vector<Rational>(k2 + 1, Rational(0)));
    for (std::uint32_t u = 0; u <= nu; ++u)
      for (std::uint32_t v = 0; v <= k2; ++v) {
        if (dp[u][v] == 0) continue;
        const std::uint32_t maxj = w1 == 0 ? 0 : nu - u;
        for (std::uint32_t j = 0; j <= maxj; ++j) {
          if (j > static_cast<std::uint64_t>(g.count)) break;
          const std::uint32_t maxh = w2 == 0 ? 0 : k2 - v;
          Rational wj = dp[u][v] * Rational(binomial(nu - u, j)) * rational_pow(w1, j);
          for (std::uint32_t h = 0; h <= maxh; ++h) {
            if (j + h > static_cast<std::uint64_t>(g.count)) break;
            next[u + j][v + h] += wj * Rational(binomial(k2 - v, h)) * rational_pow(w2, h) *
                                  Rational(falling_factorial(g.count, j + h));
          }
        }
      }
    dp = std::move(next);
  }
  return dp[nu][k2] / Rational(falling_factorial(ev.n, k));
}

inline double lhs1d_two_interval_prob(std::uint32_t n, int sigma, double a, double b,
                                      std::uint32_t k, std::uint32_t nu) {
  return to_double(lhs1d_two_interval_prob_rational(IntervalEvent(n, a, b), sigma, k, nu));
}

/// Full table of the two-interval probabilities: entry [nu][k-nu] is the
/// probability for (k, nu).  One dynamic program capped at (n, n) serves
/// all pairs; the slot-choice binomials of the capped run are divided back
/// out per entry.
inline std::vector<std::vector<Rational>> lhs1d_two_interval_table(const IntervalEvent& ev,
                                                                   int sigma) {
  const std::uint32_t n = ev.n;
  const auto groups = detail::lhs_cell_groups(ev);
  std::vector<std::vector<Rational>> dp(n + 1, std::vector<Rational>(n + 1, Rational(0)));
  dp[0][0] = 1;
  for (const auto& g : groups) {
    const Rational w1 = sigma == 0 ? g.inside : g.above;
    const Rational w2 = sigma == 0 ? g.below + g.inside : g.below + g.above;
    std::vector<std::vector<Rational>> next(n + 1, std::vector<Rational>(n + 1, Rational(0)));
    for (std::uint32_t u = 0; u <= n; ++u)
      for (std::uint32_t v = 0; v + u <= n; ++v) {
        if (dp[u][v] == 0) continue;
        const std::uint32_t maxj = w1 == 0 ? 0 : n - u;
        for (std::uint32_t j = 0; j <= maxj; ++j) {
          if (j > static_cast<std::uint64_t>(g.count)) break;
          Rational wj = dp[u][v] * Rational(binomial(n - u, j)) * rational_pow(w1, j);
          const std::uint32_t maxh = w2 == 0 ? 0 : n - v;
          for (std::uint32_t h = 0; h <= maxh; ++h) {
            if (j + h > static_cast<std::uint64_t>(g.count)) break;
            if (u + j + v + h > n) break;
            next[u + j][v + h] += wj * Rational(binomial(n - v, h)) * rational_pow(w2, h) *
                                  Rational(falling_factorial(g.count, j + h));
          }
        }
      }
    dp = std::move(next);
  }
  for (std::uint32_t u = 0; u <= n; ++u)
    for (std::uint32_t v = 0; v + u <= n; ++v)
      dp[u][v] /= Rational(binomial(n, u)) * Rational(binomial(n, v)) *
                  Rational(falling_factorial(n, u + v));
  return dp;
}

/// Exact P( X_1..X_nu in [a,b) ) for a 1-d LHS of size N.  For
/// 0 <= m <= N-2 (m = beta - alpha) this is the three-term closed form
///   FF(m,nu)/FF(N,nu)
///   + nu * FF(m,nu-1)/FF(N,nu-1) * (eps_a+eps_b)/(N-nu+1)
///   + nu(nu-1) * FF(m,nu-2)/FF(N,nu-2) * eps_a*eps_b/((N-nu+2)(N-nu+1)).
/// The identity does not cover m = N-1 (only reachable with a = 0 and b in
/// the top cell) or m = -1 (a and b inside one cell); those cases go to
/// the exact cell-assignment enumeration above.
inline Rational lhs1d_interval_prob_rational(const IntervalEvent& ev, std::uint32_t nu) {
  if (nu > ev.n) throw std::invalid_argument("lhs1d_interval_prob: nu > n");
  if (nu == 0) return 1;
  const std::int64_t n = ev.n;
  const std::int64_t m = ev.beta - ev.alpha;
  if (m < 0 || m == n - 1) return lhs1d_two_interval_prob_rational(ev, 0, nu, nu);

  const Rational &ea = ev.eps_a_exact, &eb = ev.eps_b_exact;
  Rational p = Rational(falling_factorial(m, nu)) / Rational(falling_factorial(n, nu));
  p += Rational(nu) * Rational(falling_factorial(m, nu - 1)) /
       Rational(falling_factorial(n, nu - 1)) * (ea + eb) / Rational(n - nu + 1);
  if (nu >= 2)
    p += Rational(nu) * Rational(nu - 1) * Rational(falling_factorial(m, nu - 2)) /
         Rational(falling_factorial(n, nu - 2)) * ea * eb /
         (Rational(n - nu + 2) * Rational(n - nu + 1));
  return p;
}

inline double lhs1d_interval_prob(const IntervalEvent& ev, std::uint32_t nu) {
  return to_double(lhs1d_interval_prob_rational(ev, nu));
}

inline double lhs1d_interval_prob(std::uint32_t n, double a, double b, std::uint32_t nu) {
  return lhs1d_interval_prob(IntervalEvent(n, a, b), nu);
}

// ---------------------------------------------------------------------------
// Exact joint probabilities for LHS / padded LHS / Monte Carlo point sets by
// enumerating all permutation tuples of the LHS coordinates.  Conditioned on
// the cells, points are independent and the in-region probability is a
// product of per-axis cell overlaps.

enum class JointValue { In, Out };

struct JointProfile {
  // index k = 0..N: P(Z_1..Z_k all in D) and P(Z_1..Z_k all outside D).
  // Exchangeability makes these depend on k only, not on the index subset.
  std::vector<Rational> all_in;
  std::vector<Rational> all_out;
};

inline JointProfile joint_profile_exact(const SampleSpec& spec, const BoxDifference& region,
                                        std::size_t max_tuples = 1'000'000) {
  spec.validate();
  region.validate();
  if (region.dim() != spec.d) throw std::invalid_argument("joint_profile_exact: dimension mismatch");
  if (spec.kind == SamplerKind::CenteredLhs)
    throw std::invalid_argument("joint_profile_exact: centered LHS is not supported");

  const std::uint32_t n = spec.n, dl = spec.d_lhs;
  double tuple_count = 1.0;
  double fact = 1.0;
  for (std::uint32_t i = 2; i <= n; ++i) fact *= i;
  for (std::uint32_t t = 0; t < dl; ++t) tuple_count *= fact;
  if (tuple_count > static_cast<double>(max_tuples))
    throw BudgetError("joint_profile_exact: (N!)^d_lhs = " + std::to_string(tuple_count) +
                      " permutation tuples exceed the budget of " + std::to_string(max_tuples));

  // per-axis, per-cell fractions of [0, y): clamp(N*y - c, 0, 1), exact
  auto cell_fractions = [&](double y) {
    std::vector<Rational> f(n);
    const Rational ny = Rational(y) * n;
    for (std::uint32_t c = 0; c < n; ++c) {
      Rational v = ny - c;
      if (v < 0) v = 0;
      if (v > 1) v = 1;
      f[c] = v;
    }
    return f;
  };
  std::vector<std::vector<Rational>> frac_outer(dl), frac_inner(dl);
  for (std::uint32_t t = 0; t < dl; ++t) {
    frac_outer[t] = cell_fractions(region.outer[t]);
    frac_inner[t] = cell_fractions(region.inner[t]);
  }
  Rational mc_outer = 1, mc_inner = 1;
  for (std::uint32_t j = dl; j < spec.d; ++j) {
    mc_outer *= Rational(region.outer[j]);
    mc_inner *= Rational(region.inner[j]);
  }

  std::vector<std::vector<std::uint32_t>> perms;
  if (dl > 0) {
    std::vector<std::uint32_t> p(n);
    for (std::uint32_t i = 0; i < n; ++i) p[i] = i;
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
  }

  JointProfile profile;
  profile.all_in.assign(n + 1, Rational(0));
  profile.all_out.assign(n + 1, Rational(0));

  std::vector<std::size_t> tuple(dl, 0);
  std::vector<Rational> q(n);
  std::uint64_t tuples_done = 0;
  for (;;) {
    for (std::uint32_t i = 0; i < n; ++i) {
      Rational pin = mc_outer, pout = mc_inner;
      for (std::uint32_t t = 0; t < dl; ++t) {
        const std::uint32_t cell = perms[tuple[t]][i];
        pin *= frac_outer[t][cell];
        pout *= frac_inner[t][cell];
      }
      q[i] = pin - pout;  // P(Z_i in D | cells)
    }
    Rational run_in = 1, run_out = 1;
    profile.all_in[0] += 1;
    profile.all_out[0] += 1;
    for (std::uint32_t k = 1; k <= n; ++k) {
      run_in *= q[k - 1];
      run_out *= 1 - q[k - 1];
      profile.all_in[k] += run_in;
      profile.all_out[k] += run_out;
    }
    ++tuples_done;
    if (dl == 0) break;
    std::uint32_t t = 0;
    while (t < dl && ++tuple[t] >= perms.size()) tuple[t++] = 0;
    if (t == dl) break;
  }
  for (std::uint32_t k = 0; k <= n; ++k) {
    profile.all_in[k] /= tuples_done;
    profile.all_out[k] /= tuples_done;
  }
  return profile;
}

inline Rational joint_prob_exact_rational(const SampleSpec& spec, const BoxDifference& region,
                                          std::uint32_t k, JointValue value,
                                          std::size_t max_tuples = 1'000'000) {
  if (k > spec.n) throw std::invalid_argument("joint_prob_exact: k > n");
  const auto profile = joint_profile_exact(spec, region, max_tuples);
  return value == JointValue::In ? profile.all_in[k] : profile.all_out[k];
}

inline double joint_prob_exact(const SampleSpec& spec, const BoxDifference& region,
                               std::uint32_t k, JointValue value,
                               std::size_t max_tuples = 1'000'000) {
  return to_double(joint_prob_exact_rational(spec, region, k, value, max_tuples));
}

// ---------------------------------------------------------------------------
// Dependence reports: measured joint-probability ratios against the
// theoretical gamma guarantee.

enum class DependenceMethod { Exact, MonteCarlo };

struct RegionDependence {
  BoxDifference region;
  double lambda = 0.0;         // volume of D
  double gamma_theorem = 1.0;  // prod(delta_i) over the LHS coordinates
  std::uint32_t e_factors = 0;
  // index k-1 holds the ratio for subset size k = 1..N
  std::vector<double> upper_ratio, lower_ratio;
  std::vector<double> upper_stderr, lower_stderr;  // Monte Carlo method only
  double gamma_hat = 0.0;
};

struct DependenceReport {
  SampleSpec spec;
  DependenceMethod method = DependenceMethod::Exact;
  std::uint64_t trials = 0;
  std::vector<RegionDependence> regions;
  double gamma_hat = 0.0;
  double gamma_theorem = 1.0;
  double max_stderr = 0.0;

  // Definition-level dependence quantifies over all index subsets u; the
  // samplers here are exchangeable, so only |u| matters and the scan runs
  // over k = 1..N.
  static constexpr const char* kSubsetReduction =
      "exchangeable joint law: subsets u reduced to sizes k = 1..N";

  /// rho with gamma_hat = e^(rho * d).
  double rho_equivalent() const { return std::log(gamma_hat) / spec.d; }
};

inline DependenceReport dependence_report(const SampleSpec& spec,
                                          const std::vector<BoxDifference>& family,
                                          DependenceMethod method, std::uint64_t trials = 10'000,
                                          std::size_t max_tuples = 1'000'000) {
  spec.validate();
  if (family.empty()) throw std::invalid_argument("dependence_report: empty region family");

  DependenceReport report;
  report.spec = spec;
  report.method = method;
  report.trials = method == DependenceMethod::MonteCarlo ? trials : 0;

  const std::uint32_t n = spec.n;
  for (const auto& region : family) {
    region.validate();
    if (region.dim() != spec.d)
      throw std::invalid_argument("dependence_report: region dimension mismatch");
    const double lambda = region.volume();
    if (!(lambda > 0.0 && lambda < 1.0))
      throw std::invalid_argument(
          "dependence_report: degenerate region with volume 0 or 1 rejected");

    RegionDependence rd;
    rd.region = region;
    rd.lambda = lambda;
    rd.e_factors = gamma_e_count(region, n, spec.d_lhs);
    rd.gamma_theorem = gamma_for_boxdiff(region, n, spec.d_lhs);
    rd.upper_ratio.resize(n);
    rd.lower_ratio.resize(n);

    if (method == DependenceMethod::Exact) {
      const auto profile = joint_profile_exact(spec, region, max_tuples);
      const Rational lam = profile.all_in[1];  // marginal, exact
      Rational pow_in = 1, pow_out = 1;
      for (std::uint32_t k = 1; k <= n; ++k) {
        pow_in *= lam;
        pow_out *= 1 - lam;
        rd.upper_ratio[k - 1] = to_double(profile.all_in[k] / pow_in);
        rd.lower_ratio[k - 1] = to_double(profile.all_out[k] / pow_out);
      }
    } else {
      rd.upper_stderr.resize(n);
      rd.lower_stderr.resize(n);
      std::vector<std::uint64_t> cnt_in(n + 1, 0), cnt_out(n + 1, 0);
      SampleSpec trial_spec = spec;
      for (std::uint64_t t = 0; t < trials; ++t) {
        trial_spec.trial = t;
        const PointSet ps = sample(trial_spec);
        std::uint32_t k_in = 0;
        while (k_in < n && region.contains(ps.point(k_in))) ++k_in;
        std::uint32_t k_out = 0;
        while (k_out < n && !region.contains(ps.point(k_out))) ++k_out;
        // first k points all in D for every k <= k_in, all out for k <= k_out
        for (std::uint32_t k = 1; k <= k_in; ++k) ++cnt_in[k];
        for (std::uint32_t k = 1; k <= k_out; ++k) ++cnt_out[k];
      }
      double pw_in = 1.0, pw_out = 1.0;
      for (std::uint32_t k = 1; k <= n; ++k) {
        pw_in *= lambda;
        pw_out *= 1.0 - lambda;
        const double pin = static_cast<double>(cnt_in[k]) / trials;
        const double pout = static_cast<double>(cnt_out[k]) / trials;
        rd.upper_ratio[k - 1] = pin / pw_in;
        rd.lower_ratio[k - 1] = pout / pw_out;
        rd.upper_stderr[k - 1] = std::sqrt(pin * (1.0 - pin) / trials) / pw_in;
        rd.lower_stderr[k - 1] = std::sqrt(pout * (1.0 - pout) / trials) / pw_out;
        report.max_stderr = std::max({report.max_stderr, rd.upper_stderr[k - 1],
                                      rd.lower_stderr[k - 1]});
      }
    }

    rd.gamma_hat = 0.0;
    for (std::uint32_t k = 0; k < n; ++k)
      rd.gamma_hat = std::max({rd.gamma_hat, rd.upper_ratio[k], rd.lower_ratio[k]});
    report.gamma_hat = std::max(report.gamma_hat, rd.gamma_hat);
    report.gamma_theorem = std::max(report.gamma_theorem, rd.gamma_theorem);
    report.regions.push_back(std::move(rd));
  }
  return report;
}

// ---------------------------------------------------------------------------

/// Sweeps sigma in {0,1}, 0 <= nu <= k <= n and reports the largest ratio
/// P / (lambda(I1)^nu * lambda(I2)^(k-nu)) against delta.  The oracle is any
/// callable double(int sigma, uint32_t k, uint32_t nu); this is the reusable
/// hook for certifying per-coordinate dependence of new samplers.
struct CoordinateConditionReport {
  double max_ratio = 0.0;
  double delta = 1.0;
  bool satisfied = true;
  int argmax_sigma = 0;
  std::uint32_t argmax_k = 0, argmax_nu = 0;
};

template <typename Oracle>
CoordinateConditionReport check_coordinate_condition(Oracle&& oracle, std::uint32_t n, double a,
                                                     double b, double delta) {
  if (!(a >= 0.0 && a <= b && b < 1.0))
    throw std::invalid_argument("check_coordinate_condition: need 0 <= a <= b < 1");
  CoordinateConditionReport rep;
  rep.delta = delta;
  const double lam1[2] = {b - a, 1.0 - b};
  const double lam2[2] = {b, a + (1.0 - b)};
  for (int sigma = 0; sigma <= 1; ++sigma)
    for (std::uint32_t k = 0; k <= n; ++k)
      for (std::uint32_t nu = 0; nu <= k; ++nu) {
        const double p = oracle(sigma, k, nu);
        double denom = 1.0;
        for (std::uint32_t i = 0; i < nu; ++i) denom *= lam1[sigma];
        for (std::uint32_t i = 0; i < k - nu; ++i) denom *= lam2[sigma];
        if (denom == 0.0) {
          if (p > 1e-15) {
            rep.satisfied = false;
            rep.max_ratio = std::numeric_limits<double>::infinity();
            rep.argmax_sigma = sigma;
            rep.argmax_k = k;
            rep.argmax_nu = nu;
          }
          continue;  // 0/0: event itself impossible
        }
        const double ratio = p / denom;
        if (ratio > rep.max_ratio) {
          rep.max_ratio = ratio;
          rep.argmax_sigma = sigma;
          rep.argmax_k = k;
          rep.argmax_nu = nu;
        }
      }
  if (rep.max_ratio > delta * (1.0 + 1e-12)) rep.satisfied = false;
  return rep;
}

/// The LHS per-coordinate oracle, packaged for check_coordinate_condition.
inline auto lhs1d_condition_oracle(std::uint32_t n, double a, double b) {
  IntervalEvent ev(n, a, b);
  return [ev](int sigma, std::uint32_t k, std::uint32_t nu) {
    return to_double(lhs1d_two_interval_prob_rational(ev, sigma, k, nu));
  };
}

}  // namespace ndqmc
