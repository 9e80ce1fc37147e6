#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "ndqmc/negdep.hpp"

using namespace ndqmc;

namespace {

const double kE = std::exp(1.0);

BoxDifference region2(double a0, double a1, double b0, double b1) {
  BoxDifference r;
  r.inner = {a0, a1};
  r.outer = {b0, b1};
  return r;
}

}  // namespace

TEST_CASE("interval event extraction and identities") {
  const IntervalEvent ev(2, 0.25, 0.75);
  CHECK(ev.alpha == 1);
  CHECK(ev.beta == 1);
  CHECK(ev.eps_a == 0.5);
  CHECK(ev.eps_b == 0.5);

  for (std::uint32_t n : {2u, 3u, 5u, 7u, 10u, 12u})
    for (double a : {0.0, 0.15, 0.25, 0.3, 0.5})
      for (double b : {0.5, 0.7, 0.81, 0.85, 0.97}) {
        if (a > b) continue;
        const IntervalEvent e(n, a, b);
        CHECK(e.alpha <= e.beta + 1);
        CHECK(e.eps_a_exact >= 0);
        CHECK(e.eps_a_exact < 1);
        CHECK(e.eps_b_exact >= 0);
        CHECK(e.eps_b_exact < 1);
        // the exact residuals reconstruct the rounded products ...
        CHECK(Rational(e.alpha) - e.eps_a_exact == Rational(e.na));
        CHECK(Rational(e.beta) + e.eps_b_exact == Rational(e.nb));
        // ... and the snapped endpoints sit within one rounding of a and b
        CHECK(to_double(e.lower()) == Catch::Approx(a).margin(1e-15));
        CHECK(to_double(e.upper()) == Catch::Approx(b).margin(1e-15));
      }
}

TEST_CASE("delta_factor branches") {
  CHECK(delta_factor(0.3, 0.7, 10) == 1.0);   // both products land on the grid
  CHECK(delta_factor(0.0, 0.37, 10) == 1.0);  // anchored at zero
  CHECK(delta_factor(0.25, 0.7, 10) == Catch::Approx(kE));
  CHECK(delta_factor(0.15, 0.85, 5) == Catch::Approx(kE));
  CHECK(delta_factor(0.5, 1.0, 4) == 1.0);
}

TEST_CASE("gamma_for_boxdiff") {
  const auto r = region2(0.3, 0.3, 0.6, 0.6);
  CHECK(gamma_for_boxdiff(r, 7, 0) == 1.0);  // pure Monte Carlo: empty product
  CHECK(gamma_for_boxdiff(r, 7, 2) == Catch::Approx(kE * kE));
  CHECK(gamma_for_boxdiff(region2(0.0, 0.0, 0.5, 0.5), 4, 2) == 1.0);
  CHECK_THROWS_AS(gamma_for_boxdiff(r, 7, 3), std::invalid_argument);
}

TEST_CASE("lhs1d_interval_prob closed form: frozen values") {
  CHECK(lhs1d_interval_prob(2, 0.25, 0.75, 2) == Catch::Approx(0.25).margin(1e-15));
  CHECK(lhs1d_interval_prob(4, 0.0, 0.5, 2) == Catch::Approx(1.0 / 6).margin(1e-15));
  CHECK(lhs1d_interval_prob(5, 0.1, 0.9, 0) == 1.0);
  // nu = 1 is the uniform marginal
  CHECK(lhs1d_interval_prob(7, 0.15, 0.81, 1) == Catch::Approx(0.81 - 0.15).margin(1e-15));
  CHECK_THROWS_AS(lhs1d_interval_prob(3, 0.1, 0.4, 4), std::invalid_argument);
}

TEST_CASE("lhs1d_interval_prob: degenerate cell cases") {
  // a and b inside one cell: at most one point can hit [a,b)
  CHECK(lhs1d_interval_prob(4, 0.3, 0.4, 1) == Catch::Approx(0.1).margin(1e-15));
  CHECK(lhs1d_interval_prob(4, 0.3, 0.4, 2) == 0.0);
  // m = N-1 goes through the cell-assignment enumeration
  const IntervalEvent top(5, 0.0, 0.97);
  for (std::uint32_t nu = 0; nu <= 5; ++nu) {
    const double p = lhs1d_interval_prob(top, nu);
    CHECK(p >= 0.0);
    CHECK(p <= std::pow(0.97, nu) * (1 + 1e-12));
  }
}

TEST_CASE("part (a) bound P_nu <= (b-a)^nu on a mixed sweep") {
  for (std::uint32_t n : {2u, 3u, 4u, 6u, 9u, 12u})
    for (double a : {0.0, 0.125, 0.25, 0.3, 0.37})
      for (double b : {0.37, 0.5, 0.625, 0.81, 0.9}) {
        if (a >= b) continue;
        const IntervalEvent ev(n, a, b);
        const Rational width = ev.upper() - ev.lower();
        for (std::uint32_t nu = 0; nu <= n; ++nu) {
          const Rational p = lhs1d_interval_prob_rational(ev, nu);
          CHECK(p <= rational_pow(width, nu));  // exact comparison
        }
      }
}

TEST_CASE("two-interval probability: hand-enumerated values") {
  // grid-aligned, k = nu: reduces to FF(beta,nu)/FF(N,nu)
  CHECK(lhs1d_two_interval_prob(4, 0, 0.0, 0.75, 2, 2) ==
        Catch::Approx(to_double(Rational(falling_factorial(3, 2)) /
                                Rational(falling_factorial(4, 2)))));
  // n=2, sigma=1: one point in [0.75,1), one in [0,0.25) u [0.75,1)
  CHECK(lhs1d_two_interval_prob(2, 1, 0.25, 0.75, 2, 1) == Catch::Approx(0.125).margin(1e-15));
  // empty event: k = nu = 0
  CHECK(lhs1d_two_interval_prob(6, 0, 0.2, 0.9, 0, 0) == 1.0);
}

namespace {

// n * measure([c/n,(c+1)/n) intersect [lo,hi))
Rational cell_overlap(const Rational& lo, const Rational& hi, std::uint32_t c, std::uint32_t n) {
  const Rational cell_lo = Rational(c) / n, cell_hi = Rational(c + 1) / n;
  const Rational a = std::max(cell_lo, lo), b = std::min(cell_hi, hi);
  return b > a ? (b - a) * n : Rational(0);
}

// independent oracle for the two-interval probability: integrate over all
// cell permutations, fractions computed directly from the interval algebra
Rational perm_oracle(const IntervalEvent& ev, int sigma, std::uint32_t k, std::uint32_t nu) {
  const std::uint32_t n = ev.n;
  const Rational lo = ev.lower(), hi = ev.upper();
  auto f1 = [&](std::uint32_t c) {
    return sigma == 0 ? cell_overlap(lo, hi, c, n) : cell_overlap(hi, 1, c, n);
  };
  auto f2 = [&](std::uint32_t c) {
    return sigma == 0 ? cell_overlap(0, hi, c, n)
                      : cell_overlap(0, lo, c, n) + cell_overlap(hi, 1, c, n);
  };
  std::vector<std::uint32_t> perm(n);
  for (std::uint32_t i = 0; i < n; ++i) perm[i] = i;
  Rational total = 0;
  std::uint64_t count = 0;
  do {
    Rational w = 1;
    for (std::uint32_t l = 0; l < k; ++l) w *= l < nu ? f1(perm[l]) : f2(perm[l]);
    total += w;
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total / count;
}

}  // namespace

TEST_CASE("two-interval DP equals the permutation-integration oracle") {
  for (std::uint32_t n : {2u, 3u, 5u})
    for (double a : {0.0, 0.25, 0.3})
      for (double b : {0.5, 0.81, 0.97}) {
        const IntervalEvent ev(n, a, b);
        for (int sigma : {0, 1})
          for (std::uint32_t k = 0; k <= n; ++k)
            for (std::uint32_t nu = 0; nu <= k; ++nu)
              CHECK(lhs1d_two_interval_prob_rational(ev, sigma, k, nu) ==
                    perm_oracle(ev, sigma, k, nu));
      }
}

TEST_CASE("two-interval table matches the single-pair evaluator") {
  for (std::uint32_t n : {2u, 5u, 8u})
    for (double a : {0.0, 0.3})
      for (double b : {0.5, 0.81}) {
        const IntervalEvent ev(n, a, b);
        for (int sigma : {0, 1}) {
          const auto table = lhs1d_two_interval_table(ev, sigma);
          for (std::uint32_t k = 0; k <= n; ++k)
            for (std::uint32_t nu = 0; nu <= k; ++nu)
              CHECK(table[nu][k - nu] == lhs1d_two_interval_prob_rational(ev, sigma, k, nu));
        }
      }
}

TEST_CASE("part (b) bound with the correct delta branch") {
  for (std::uint32_t n : {2u, 4u, 7u, 10u})
    for (double a : {0.0, 0.25, 0.3, 0.37})
      for (double b : {0.5, 0.7, 0.81}) {
        if (a > b) continue;
        const IntervalEvent ev(n, a, b);
        const double delta = delta_factor(a, b, n);
        const Rational lam1[2] = {ev.upper() - ev.lower(), 1 - ev.upper()};
        const Rational lam2[2] = {ev.upper(), ev.lower() + 1 - ev.upper()};
        for (int sigma : {0, 1}) {
          const auto table = lhs1d_two_interval_table(ev, sigma);
          for (std::uint32_t k = 0; k <= n; ++k)
            for (std::uint32_t nu = 0; nu <= k; ++nu) {
              const Rational p = table[nu][k - nu];
              const Rational denom =
                  rational_pow(lam1[sigma], nu) * rational_pow(lam2[sigma], k - nu);
              if (denom == 0) {
                CHECK(p == 0);
                continue;
              }
              if (delta == 1.0) {
                CHECK(p <= denom);  // exact rational comparison
              } else {
                CHECK(to_double(p / denom) <= kE * (1 + 1e-12));
              }
            }
        }
      }
}

TEST_CASE("optimality family approaches e") {
  auto family_ratio = [](std::uint32_t n, double eps_b) {
    const double a = static_cast<double>(n - 1) / n;
    const double b = (static_cast<double>(n - 1) + eps_b) / n;
    const IntervalEvent ev(n, a, b);
    const Rational p = lhs1d_two_interval_prob_rational(ev, 0, n, 1);
    const Rational denom =
        (ev.upper() - ev.lower()) * rational_pow(ev.upper(), n - 1);
    return to_double(p / denom);
  };
  const double r50 = family_ratio(50, 0.01);
  CHECK(r50 > 2.5);
  CHECK(r50 < kE);
  // analytic value of the same ratio: (N/(N-1+eps_b))^(N-1)
  const IntervalEvent ev(50, 49.0 / 50, 49.01 / 50);
  const double analytic = std::pow(50.0 / (49.0 + ev.eps_b), 49.0);
  CHECK(r50 == Catch::Approx(analytic).epsilon(1e-12));
  // monotone toward e in N and in eps_b -> 0
  CHECK(family_ratio(10, 0.01) < family_ratio(50, 0.01));
  CHECK(family_ratio(50, 0.01) < family_ratio(200, 0.01));
  CHECK(family_ratio(50, 0.2) < family_ratio(50, 0.05));
  CHECK(family_ratio(50, 0.05) < family_ratio(50, 0.01));
  CHECK(family_ratio(200, 0.001) < kE);
}

TEST_CASE("joint_prob_exact: Monte Carlo closed form") {
  const auto spec = SampleSpec::monte_carlo(5, 2, 0);
  const auto region = region2(0.2, 0.2, 0.8, 0.9);
  const double lam = region.volume();
  for (std::uint32_t k = 0; k <= 5; ++k) {
    CHECK(joint_prob_exact(spec, region, k, JointValue::In) ==
          Catch::Approx(std::pow(lam, k)).epsilon(1e-14));
    CHECK(joint_prob_exact(spec, region, k, JointValue::Out) ==
          Catch::Approx(std::pow(1 - lam, k)).epsilon(1e-14));
  }
}

TEST_CASE("joint_prob_exact agrees with the 1-d closed form") {
  BoxDifference d1;
  d1.inner = {0.25};
  d1.outer = {0.75};
  const auto spec = SampleSpec::lhs(2, 1, 0);
  CHECK(joint_prob_exact(spec, d1, 2, JointValue::In) == Catch::Approx(0.25).margin(1e-15));
  for (std::uint32_t n = 2; n <= 6; ++n)
    for (double a : {0.0, 0.15, 0.3})
      for (double b : {0.5, 0.85}) {
        BoxDifference r;
        r.inner = {a};
        r.outer = {b};
        const auto s = SampleSpec::lhs(n, 1, 0);
        for (std::uint32_t k = 0; k <= n; ++k) {
          const double oracle = joint_prob_exact(s, r, k, JointValue::In);
          const double closed = lhs1d_interval_prob(n, a, b, k);
          CHECK(oracle == Catch::Approx(closed).margin(1e-12));
        }
      }
}

TEST_CASE("joint_prob_exact: d=2 anchored box obeys the gamma=1 bound") {
  const auto spec = SampleSpec::lhs(4, 2, 0);
  const auto region = region2(0.0, 0.0, 0.5, 0.5);
  const double p = joint_prob_exact(spec, region, 2, JointValue::In);
  CHECK(p <= 0.0625 * (1 + 1e-12));
  CHECK(p > 0.0);
}

TEST_CASE("joint_prob_exact budget and validation") {
  const auto spec = SampleSpec::lhs(12, 2, 0);
  BoxDifference r = region2(0.0, 0.0, 0.5, 0.5);
  CHECK_THROWS_AS(joint_prob_exact(spec, r, 2, JointValue::In), BudgetError);
  CHECK_THROWS_AS(joint_prob_exact(SampleSpec::centered_lhs(3, 1, 0),
                                   BoxDifference::anchored({0.5}), 1, JointValue::In),
                  std::invalid_argument);
}

TEST_CASE("dependence_report: exact Monte Carlo baseline is exactly 1") {
  const auto spec = SampleSpec::monte_carlo(4, 2, 0);
  const std::vector<BoxDifference> family{region2(0.0, 0.15, 0.5, 0.85),
                                          region2(0.15, 0.15, 0.85, 0.85)};
  const auto report = dependence_report(spec, family, DependenceMethod::Exact);
  CHECK(report.gamma_hat == 1.0);
  for (const auto& rd : report.regions) {
    CHECK(rd.gamma_theorem == 1.0);
    for (double r : rd.upper_ratio) CHECK(r == 1.0);
    for (double r : rd.lower_ratio) CHECK(r == 1.0);
  }
}

TEST_CASE("dependence_report: anchored LHS family is 1-negatively dependent") {
  const auto spec = SampleSpec::lhs(4, 1, 0);
  std::vector<BoxDifference> family;
  for (int k = 1; k <= 3; ++k) family.push_back(BoxDifference::anchored({k / 4.0}));
  const auto report = dependence_report(spec, family, DependenceMethod::Exact);
  CHECK(report.gamma_theorem == 1.0);
  CHECK(report.gamma_hat <= 1.0 + 1e-12);
}

TEST_CASE("dependence_report rejects degenerate regions") {
  const auto spec = SampleSpec::lhs(4, 1, 0);
  CHECK_THROWS_AS(
      dependence_report(spec, {BoxDifference::anchored({0.0})}, DependenceMethod::Exact),
      std::invalid_argument);
}

TEST_CASE("monte carlo dependence estimates sit near the exact ratios") {
  const auto spec = SampleSpec::lhs(4, 1, 99);
  const std::vector<BoxDifference> family{BoxDifference::anchored({0.5})};
  const auto exact = dependence_report(spec, family, DependenceMethod::Exact);
  const auto mc = dependence_report(spec, family, DependenceMethod::MonteCarlo, 20'000);
  for (std::uint32_t k = 0; k < 4; ++k) {
    const double se_u = mc.regions[0].upper_stderr[k];
    const double se_l = mc.regions[0].lower_stderr[k];
    CHECK(std::abs(mc.regions[0].upper_ratio[k] - exact.regions[0].upper_ratio[k]) <=
          4 * se_u + 1e-9);
    CHECK(std::abs(mc.regions[0].lower_ratio[k] - exact.regions[0].lower_ratio[k]) <=
          4 * se_l + 1e-9);
  }
}

TEST_CASE("check_coordinate_condition") {
  // independent uniforms: P = lam1^nu * lam2^(k-nu), max ratio 1
  auto uniform_oracle = [](int sigma, std::uint32_t k, std::uint32_t nu) {
    const double lam1[2] = {0.81 - 0.37, 1 - 0.81};
    const double lam2[2] = {0.81, 0.37 + 1 - 0.81};
    return std::pow(lam1[sigma], nu) * std::pow(lam2[sigma], k - nu);
  };
  const auto uni = check_coordinate_condition(uniform_oracle, 6, 0.37, 0.81, 1.0);
  CHECK(uni.satisfied);
  CHECK(uni.max_ratio == Catch::Approx(1.0).margin(1e-12));

  // grid-aligned LHS: delta = 1 branch
  const auto grid = check_coordinate_condition(lhs1d_condition_oracle(4, 0.25, 0.75), 4, 0.25,
                                               0.75, 1.0);
  CHECK(grid.satisfied);
  CHECK(grid.max_ratio <= 1.0 + 1e-12);

  // off-grid: delta = e branch
  const auto off = check_coordinate_condition(lhs1d_condition_oracle(6, 0.37, 0.81), 6, 0.37,
                                              0.81, std::exp(1.0));
  CHECK(off.satisfied);
  CHECK(off.max_ratio <= std::exp(1.0) * (1 + 1e-12));
}
