#include "conclab/envelopes.hpp"

#include <cmath>
#include <stdexcept>

namespace conclab {

namespace {

void check_params(const EnvelopeParams& params) {
  if (!(params.K > 0.0))
    throw std::invalid_argument("envelope: K must be positive");
  if (!(params.p >= 1.0 && params.p <= 2.0))
    throw std::invalid_argument("envelope: p must lie in [1,2]");
  if (params.n < 2) throw std::invalid_argument("envelope: n must be >= 2");
}

}  // namespace

double EnvelopeParams::constant(const std::string& name) const {
  const auto it = constants.find(name);
  if (it == constants.end())
    throw std::invalid_argument("envelope: missing constant '" + name + "'");
  if (!(it->second > 0.0))
    throw std::invalid_argument("envelope: constant '" + name +
                                "' must be positive");
  return it->second;
}

double subgaussian_envelope(const EnvelopeParams& params, double t) {
  check_params(params);
  if (!(t > 0.0)) throw std::invalid_argument("envelope: t must be positive");
  const double c = params.constant("c");
  const double k2 = params.K * params.K;
  const double nd = static_cast<double>(params.n);
  const double value =
      std::exp(-c * t * t / (k2 * std::log(2.0 + k2 * nd / (t * t))));
  return std::min(1.0, value);
}

PsipEnvelopeValue psip_envelope(const EnvelopeParams& params, double t) {
  check_params(params);
  if (!(params.p < 2.0))
    throw std::invalid_argument("psip_envelope: requires p in [1,2)");
  if (!(t > 0.0)) throw std::invalid_argument("envelope: t must be positive");
  const double cp = params.constant("c_p");
  const double logn = std::log(static_cast<double>(params.n));
  const double term_p = 2.0 * std::exp(-cp * std::pow(t / params.K, params.p));
  const double term_g =
      2.0 * std::exp(-cp * t * t /
                     (params.K * params.K * std::pow(logn, 2.0 / params.p)));
  return {std::min(1.0, term_p + term_g),
          term_p >= term_g ? DominantTerm::psi_p_term
                           : DominantTerm::gaussian_term};
}

double lower_envelope(const EnvelopeParams& params, double t,
                      LowerEnvelopeKind kind) {
  check_params(params);
  if (!(t >= 0.0)) throw std::invalid_argument("envelope: t must be >= 0");
  const double c_tilde = params.constant("c_tilde");
  const double C_tilde = params.constant("C_tilde");
  const double k2 = params.K * params.K;
  const double nd = static_cast<double>(params.n);
  double value;
  if (kind == LowerEnvelopeKind::subgaussian) {
    value = t == 0.0 ? c_tilde
                     : c_tilde * std::exp(-C_tilde * t * t /
                                          (k2 * std::log(2.0 + k2 * nd /
                                                                   (t * t))));
  } else {
    const double logn = std::log(nd);
    const double gauss =
        std::exp(-C_tilde * t * t / (k2 * std::pow(logn, 2.0 / params.p)));
    const double psip = std::exp(-C_tilde * std::pow(t / params.K, params.p));
    value = c_tilde * std::max(gauss, psip);
  }
  return std::min(1.0, std::max(0.0, value));
}

Crossover regime_crossover(const EnvelopeParams& params) {
  check_params(params);
  if (params.p == 2.0)
    throw std::domain_error(
        "regime_crossover: exponent 2/(p(2-p)) is singular at p = 2");
  const double logn = std::log(static_cast<double>(params.n));
  const double t_no = params.K * std::pow(logn, 1.0 / params.p);
  const double expo = 2.0 / (params.p * (2.0 - params.p));
  const double t_switch = params.K * std::pow(logn, expo);
  const bool diverged = !std::isfinite(t_switch) || t_switch > 1e300;
  return {t_no, t_switch, diverged};
}

TruncationSchedule truncation_schedule(const EnvelopeParams& params,
                                       double t) {
  check_params(params);
  if (!(t > 0.0)) throw std::invalid_argument("schedule: t must be positive");
  const double logn = std::log(static_cast<double>(params.n));
  const double tau = t * t / (params.K * params.K *
                              std::pow(logn, 2.0 / params.p));
  // Largest m with tau / 2^{2m+6} >= 1; m >= 1 needs tau >= 256, i.e.
  // t >= 16 K (log n)^{1/p}.
  const int m = static_cast<int>(std::floor((std::log2(tau) - 6.0) / 2.0));
  if (m < 1)
    throw std::domain_error(
        "truncation_schedule: no valid m; requires t >= 16 K (log n)^{1/p}");
  TruncationSchedule sched;
  sched.m = m;
  if (params.p == 2.0) {
    sched.degenerate_weights = true;
    return sched;
  }
  const double q = std::pow(2.0, -(2.0 - params.p) / 4.0);
  const double qm = std::pow(q, m);
  // sum_{k=1}^inf q^{|m-k|} = (1 - q^m)/(1-q) + q/(1-q).
  sched.normalizer = 0.5 * (1.0 - q) / (1.0 + q - qm);
  const int extent =
      static_cast<int>(std::ceil(18.0 * std::log(10.0) / -std::log(q)));
  const int k_max = m + extent;
  sched.u.resize(static_cast<std::size_t>(k_max));
  sched.levels.resize(static_cast<std::size_t>(k_max));
  for (int k = 1; k <= k_max; ++k) {
    sched.u[static_cast<std::size_t>(k - 1)] =
        sched.normalizer * std::pow(q, std::abs(m - k));
    sched.levels[static_cast<std::size_t>(k - 1)] =
        2.0 * std::pow(2.0, k) * params.K * std::pow(logn, 1.0 / params.p);
  }
  return sched;
}

}  // namespace conclab
