#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

// Tail bounds for sums of gamma-negatively dependent binary variables and
// the constants pipeline behind the probabilistic discrepancy bound
//   P( D*_N <= c sqrt(d/N) ) >= 1 - exp(-(1.6741 c^2 - 10.7042 - rho) d).

namespace ndqmc {

struct TailQuery {
  std::uint64_t n = 1;
  double gamma = 1.0;   // dependence constant, >= 1
  double t = 1.0;       // deviation threshold, > 0
  double sigma2 = 0.0;  // mean per-variable variance (Bernstein only)

  void validate() const {
    if (n < 1) throw std::invalid_argument("TailQuery: n must be >= 1");
    if (!(gamma >= 1.0)) throw std::invalid_argument("TailQuery: gamma must be >= 1");
    if (!(t > 0.0)) throw std::invalid_argument("TailQuery: t must be > 0");
    if (!(sigma2 >= 0.0)) throw std::invalid_argument("TailQuery: sigma2 must be >= 0");
  }
};

/// 2 gamma exp(-2 t^2 / N); uncapped, callers clamp for display.
inline double hoeffding_tail(const TailQuery& q) {
  q.validate();
  return 2.0 * q.gamma * std::exp(-2.0 * q.t * q.t / static_cast<double>(q.n));
}

/// 2 gamma exp(-t^2 / (2 N sigma^2 + 2t/3)); uncapped.
inline double bernstein_tail(const TailQuery& q) {
  q.validate();
  return 2.0 * q.gamma *
         std::exp(-q.t * q.t / (2.0 * static_cast<double>(q.n) * q.sigma2 + 2.0 * q.t / 3.0));
}

/// Constants of the discrepancy-bound proof, derived from (mu, tau_mu).
/// With the defaults (13, 0.0887) the derived coefficients round to the
/// published 1.6741 / 10.7042 / 0.7729, and published_rounding is set so
/// that evaluators reproduce the published tables digit-for-digit.  A
/// non-default pipeline always evaluates at full precision.
struct BoundConstants {
  int mu = 13;
  double tau_mu = 0.0887;
  double c_mu = 0.0;           // 1 / (1 - sqrt((mu+1)/(2 mu)))
  double c1 = 0.0;             // sqrt(4 tau_mu (1 + 1/(3 c_mu)))
  double sigma_const = 0.0;    // mu - ln(2(2^mu + 1)) - 1
  double vartheta = 0.0;       // ln(1 + 2^-(mu+1))
  double zeta = 0.0;           // 2 ln 2 + vartheta
  double amplification = 0.0;  // 1 + c1 c_mu sqrt(mu / 2^mu)
  double coeff_exp = 0.0;      // 2 / amplification^2
  double coeff_off = 0.0;      // mu - sigma_const
  double coeff_conf = 0.0;     // amplification / sqrt(2)
  bool published_rounding = false;

  double c0(double rho) const { return std::sqrt((mu + rho - sigma_const) / 2.0); }

  double eff_exp() const { return published_rounding ? 1.6741 : coeff_exp; }
  double eff_off() const { return published_rounding ? 10.7042 : coeff_off; }
  double eff_conf() const { return published_rounding ? 0.7729 : coeff_conf; }
};

inline BoundConstants derive_constants(int mu = 13, double tau_mu = 0.0887) {
  if (mu < 2) throw std::invalid_argument("derive_constants: mu must be >= 2");
  if (!(tau_mu > 0.0)) throw std::invalid_argument("derive_constants: tau_mu must be > 0");
  BoundConstants k;
  k.mu = mu;
  k.tau_mu = tau_mu;
  const double dmu = static_cast<double>(mu);
  k.c_mu = 1.0 / (1.0 - std::sqrt((dmu + 1.0) / (2.0 * dmu)));
  k.c1 = std::sqrt(4.0 * tau_mu * (1.0 + 1.0 / (3.0 * k.c_mu)));
  k.sigma_const = dmu - std::log(2.0 * (std::exp2(dmu) + 1.0)) - 1.0;
  k.vartheta = std::log1p(std::exp2(-dmu - 1.0));
  k.zeta = 2.0 * std::log(2.0) + k.vartheta;
  k.amplification = 1.0 + k.c1 * k.c_mu * std::sqrt(dmu / std::exp2(dmu));
  k.coeff_exp = 2.0 / (k.amplification * k.amplification);
  k.coeff_off = dmu - k.sigma_const;
  k.coeff_conf = k.amplification / std::sqrt(2.0);
  k.published_rounding = mu == 13 && tau_mu == 0.0887;
  return k;
}

inline const BoundConstants& default_constants() {
  static const BoundConstants k = derive_constants();
  return k;
}

/// Lower bound on P( D*_N(X) <= c sqrt(d/N) ):
///   max(0, 1 - exp(-(coeff_exp c^2 - coeff_off - rho) d)).
inline double success_probability(double c, std::uint32_t d, double rho,
                                  const BoundConstants& k = default_constants()) {
  if (!(c > 0.0)) throw std::invalid_argument("success_probability: c must be > 0");
  if (d < 1) throw std::invalid_argument("success_probability: d must be >= 1");
  if (!(rho >= 0.0)) throw std::invalid_argument("success_probability: rho must be >= 0");
  const double p = 1.0 - std::exp(-(k.eff_exp() * c * c - k.eff_off() - rho) * d);
  return p > 0.0 ? p : 0.0;
}

/// Smallest c with positive success probability.  Evaluated through the
/// confidence coefficient (coeff_conf sqrt(coeff_off + rho)); this equals
/// sqrt((coeff_off + rho)/coeff_exp) at full precision and reproduces the
/// published 2.5287 / 2.6442 / 6.3944 chain in rounded mode.
inline double min_coefficient(double rho, const BoundConstants& k = default_constants()) {
  if (!(rho >= 0.0)) throw std::invalid_argument("min_coefficient: rho must be >= 0");
  return k.eff_conf() * std::sqrt(k.eff_off() + rho);
}

/// Discrepancy level held with probability at least q:
///   coeff_conf sqrt(coeff_off + rho + ln(1/(1-q))/d) sqrt(d/N).
inline double bound_at_confidence(std::uint64_t n, std::uint32_t d, double rho, double q,
                                  const BoundConstants& k = default_constants()) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("bound_at_confidence: q must be in (0,1)");
  if (n < 1 || d < 1) throw std::invalid_argument("bound_at_confidence: n, d must be >= 1");
  if (!(rho >= 0.0)) throw std::invalid_argument("bound_at_confidence: rho must be >= 0");
  return k.eff_conf() * std::sqrt(k.eff_off() + rho - std::log1p(-q) / d) *
         std::sqrt(static_cast<double>(d) / static_cast<double>(n));
}

/// ceil( min_coefficient(rho)^2 * d / eps^2 ), the point count that forces
/// discrepancy <= eps.
inline std::uint64_t inverse_discrepancy_bound(double eps, std::uint32_t d, double rho,
                                               const BoundConstants& k = default_constants()) {
  if (!(eps > 0.0 && eps <= 1.0))
    throw std::invalid_argument("inverse_discrepancy_bound: eps must be in (0,1]");
  if (d < 1) throw std::invalid_argument("inverse_discrepancy_bound: d must be >= 1");
  const double c = min_coefficient(rho, k);
  return static_cast<std::uint64_t>(std::ceil(c * c * static_cast<double>(d) / (eps * eps)));
}

/// Smallest K >= mu with 1/sqrt(K 2^K) <= c0 c1 c_mu sqrt(d/N); the
/// chaining depth used by the proof pipeline.
inline int chaining_depth(std::uint64_t n, std::uint32_t d,
                          const BoundConstants& k = default_constants(), double rho = 0.0) {
  if (n < 1 || d < 1) throw std::invalid_argument("chaining_depth: n, d must be >= 1");
  const double target =
      k.c0(rho) * k.c1 * k.c_mu * std::sqrt(static_cast<double>(d) / static_cast<double>(n));
  int depth = k.mu;
  while (1.0 / std::sqrt(depth * std::exp2(static_cast<double>(depth))) > target) ++depth;
  return depth;
}

/// Bracket term of the proof's d >= 2 residual estimate; must stay below
/// sqrt(pi d / 2) for the pipeline to close.
inline double chaining_bracket(std::uint32_t d, double rho,
                               const BoundConstants& k = default_constants()) {
  const double mu = static_cast<double>(k.mu);
  const double sig = k.sigma_const;
  const double num =
      std::exp(-((mu + rho - sig) * (mu * k.tau_mu - 1.0) + (1.0 - std::log(2.0)) * mu - 1.0 -
                 k.zeta - sig) *
               d);
  const double den = 1.0 - std::exp(-((mu + rho - sig) * k.tau_mu - std::log(2.0)) * d);
  return 1.0 + num / den;
}

/// rho with gamma = e^(rho d).
inline double rho_from_gamma(double gamma, std::uint32_t d) {
  if (!(gamma >= 1.0)) throw std::invalid_argument("rho_from_gamma: gamma must be >= 1");
  if (d < 1) throw std::invalid_argument("rho_from_gamma: d must be >= 1");
  return std::log(gamma) / d;
}

}  // namespace ndqmc
