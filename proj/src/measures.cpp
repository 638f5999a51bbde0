#include "conclab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "conclab/rng.hpp"
#include "conclab/stats.hpp"

namespace conclab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_p(double p) {
  if (!(p >= 1.0 && p <= 2.0))
    throw std::invalid_argument("exponent p must lie in [1,2]");
}

const TruncatedLaw& as_trunc(const ScalarLaw::Variant& v) {
  return std::get<TruncatedLaw>(v);
}

}  // namespace

ScalarLaw::ScalarLaw(Variant v) : v_(std::move(v)) {
  if (const auto* tp = std::get_if<TwoPointLaw>(&v_)) {
    if (!(tp->theta > 0.0 && tp->theta < 1.0))
      throw std::invalid_argument("two-point law: theta must lie in (0,1)");
    if (!(tp->alpha >= 0.0) || !std::isfinite(tp->alpha))
      throw std::invalid_argument("two-point law: alpha must be finite, >= 0");
  } else if (const auto* ep = std::get_if<SymmetricExpPowerLaw>(&v_)) {
    check_p(ep->p);
    if (!(ep->scale > 0.0))
      throw std::invalid_argument("exp-power law: scale must be positive");
  } else if (const auto* fd = std::get_if<FiniteDiscreteLaw>(&v_)) {
    if (fd->values.empty() || fd->values.size() != fd->probs.size())
      throw std::invalid_argument("finite discrete law: malformed atoms");
    Rational total = 0;
    for (std::size_t i = 0; i < fd->values.size(); ++i) {
      if (!std::isfinite(fd->values[i]))
        throw std::invalid_argument("finite discrete law: non-finite value");
      if (i > 0 && !(fd->values[i - 1] < fd->values[i]))
        throw std::invalid_argument("finite discrete law: values not sorted");
      if (fd->probs[i] <= 0)
        throw std::invalid_argument("finite discrete law: prob must be > 0");
      total += fd->probs[i];
    }
    if (total != 1)
      throw std::invalid_argument(
          "finite discrete law: probabilities must sum to 1 exactly");
  } else {
    const auto& tr = as_trunc(v_);
    if (!tr.base) throw std::invalid_argument("truncated law: null base");
    if (!(tr.level > 0.0))
      throw std::invalid_argument("truncated law: level must be positive");
  }
}

double ScalarLaw::tail(double t) const {
  if (const auto* tp = std::get_if<TwoPointLaw>(&v_)) {
    if (t <= 0.0) return 1.0;
    if (tp->alpha > 0.0 && t <= tp->alpha) return tp->theta;
    return 0.0;
  }
  if (const auto* ep = std::get_if<SymmetricExpPowerLaw>(&v_)) {
    if (t >= 0.0) return 0.5 * std::exp(-std::pow(t / ep->scale, ep->p));
    return 1.0 - 0.5 * std::exp(-std::pow(-t / ep->scale, ep->p));
  }
  if (const auto* fd = std::get_if<FiniteDiscreteLaw>(&v_)) {
    Rational acc = 0;
    for (std::size_t i = 0; i < fd->values.size(); ++i)
      if (fd->values[i] >= t) acc += fd->probs[i];
    return static_cast<double>(acc);
  }
  const auto& tr = as_trunc(v_);
  const double u = tr.level;
  const ScalarLaw& b = *tr.base;
  if (t > u) return 0.0;
  const double moved =
      (b.tail(u) - b.atom(u)) + (1.0 - b.tail(-u));  // P{|X| > u}
  if (t > 0.0) return b.tail(t) - b.tail(u) + b.atom(u);
  if (t > -u) return b.tail(t) - b.tail(u) + b.atom(u) + moved;
  return 1.0;
}

double ScalarLaw::cdf(double t) const {
  if (const auto* tp = std::get_if<TwoPointLaw>(&v_)) {
    if (t < 0.0) return 0.0;
    if (tp->alpha > 0.0 && t < tp->alpha) return 1.0 - tp->theta;
    return 1.0;
  }
  if (const auto* ep = std::get_if<SymmetricExpPowerLaw>(&v_)) {
    if (t >= 0.0) return 1.0 - 0.5 * std::exp(-std::pow(t / ep->scale, ep->p));
    return 0.5 * std::exp(-std::pow(-t / ep->scale, ep->p));
  }
  if (const auto* fd = std::get_if<FiniteDiscreteLaw>(&v_)) {
    Rational acc = 0;
    for (std::size_t i = 0; i < fd->values.size(); ++i)
      if (fd->values[i] <= t) acc += fd->probs[i];
    return static_cast<double>(acc);
  }
  return 1.0 - tail(t) + atom(t);
}

double ScalarLaw::atom(double x) const {
  if (const auto* tp = std::get_if<TwoPointLaw>(&v_)) {
    if (x == tp->alpha && tp->alpha > 0.0) return tp->theta;
    if (x == 0.0) return 1.0 - tp->theta + (tp->alpha == 0.0 ? tp->theta : 0.0);
    return 0.0;
  }
  if (std::holds_alternative<SymmetricExpPowerLaw>(v_)) return 0.0;
  if (const auto* fd = std::get_if<FiniteDiscreteLaw>(&v_)) {
    for (std::size_t i = 0; i < fd->values.size(); ++i)
      if (fd->values[i] == x) return static_cast<double>(fd->probs[i]);
    return 0.0;
  }
  const auto& tr = as_trunc(v_);
  const ScalarLaw& b = *tr.base;
  const double u = tr.level;
  if (std::abs(x) > u) return 0.0;
  double a = b.atom(x);
  if (x == 0.0) a += (b.tail(u) - b.atom(u)) + (1.0 - b.tail(-u));
  return a;
}

double ScalarLaw::quantile(double u) const {
  if (!(u > 0.0 && u < 1.0))
    throw std::invalid_argument("quantile: u must lie in (0,1)");
  if (const auto* tp = std::get_if<TwoPointLaw>(&v_)) {
    return u <= 1.0 - tp->theta ? 0.0 : tp->alpha;
  }
  if (const auto* ep = std::get_if<SymmetricExpPowerLaw>(&v_)) {
    if (u >= 0.5)
      return ep->scale * std::pow(-std::log(2.0 * (1.0 - u)), 1.0 / ep->p);
    return -ep->scale * std::pow(-std::log(2.0 * u), 1.0 / ep->p);
  }
  if (const auto* fd = std::get_if<FiniteDiscreteLaw>(&v_)) {
    double acc = 0.0;
    for (std::size_t i = 0; i < fd->values.size(); ++i) {
      acc += static_cast<double>(fd->probs[i]);
      if (u <= acc) return fd->values[i];
    }
    return fd->values.back();
  }
  const auto& tr = as_trunc(v_);
  const double x = tr.base->quantile(u);
  return std::abs(x) <= tr.level ? x : 0.0;
}

bool ScalarLaw::has_finite_support() const {
  return std::holds_alternative<TwoPointLaw>(v_) ||
         std::holds_alternative<FiniteDiscreteLaw>(v_);
}

std::vector<std::pair<double, Rational>> ScalarLaw::support_atoms() const {
  if (const auto* tp = std::get_if<TwoPointLaw>(&v_)) {
    const Rational th(tp->theta);
    if (tp->alpha == 0.0) return {{0.0, Rational(1)}};
    return {{0.0, Rational(1) - th}, {tp->alpha, th}};
  }
  if (const auto* fd = std::get_if<FiniteDiscreteLaw>(&v_)) {
    std::vector<std::pair<double, Rational>> out;
    out.reserve(fd->values.size());
    for (std::size_t i = 0; i < fd->values.size(); ++i)
      out.emplace_back(fd->values[i], fd->probs[i]);
    return out;
  }
  throw std::logic_error("support_atoms: law does not have finite support");
}

Rational ScalarLaw::tail_exact(double t) const {
  Rational acc = 0;
  for (const auto& [v, p] : support_atoms())
    if (v >= t) acc += p;
  return acc;
}

double ScalarLaw::max_abs_support() const {
  double m = 0.0;
  for (const auto& [v, p] : support_atoms()) m = std::max(m, std::abs(v));
  return m;
}

ScalarLaw two_point_law(double theta, double alpha) {
  return ScalarLaw(TwoPointLaw{theta, alpha});
}

ScalarLaw make_exp_power(double p, double k_tilde) {
  return ScalarLaw(SymmetricExpPowerLaw{p, k_tilde});
}

ScalarLaw finite_discrete_law(std::vector<std::pair<double, Rational>> atoms) {
  std::map<double, Rational> merged;
  for (auto& [v, p] : atoms) {
    if (p == 0) continue;
    merged[v] += p;
  }
  FiniteDiscreteLaw fd;
  for (auto& [v, p] : merged) {
    fd.values.push_back(v);
    fd.probs.push_back(p);
  }
  return ScalarLaw(std::move(fd));
}

ScalarLaw point_mass(double value) {
  return finite_discrete_law({{value, Rational(1)}});
}

ScalarLaw rademacher_law() {
  const Rational half(1, 2);
  return finite_discrete_law({{-1.0, half}, {1.0, half}});
}

ScalarLaw make_two_point(double theta, double K, double p) {
  if (!(theta > 0.0 && theta < 1.0))
    throw std::invalid_argument(
        "make_two_point: theta in {0,1} gives a degenerate law");
  if (!(K > 0.0)) throw std::invalid_argument("make_two_point: K must be > 0");
  check_p(p);
  const double alpha = K * std::pow(std::log(1.0 / theta), 1.0 / p);
  return two_point_law(theta, alpha);
}

ScalarLaw truncate(const ScalarLaw& law, double level) {
  if (!(level > 0.0)) throw std::invalid_argument("truncate: level must be > 0");
  if (law.has_finite_support()) {
    Rational at_zero = 0;
    std::vector<std::pair<double, Rational>> kept;
    bool moved_any = false;
    for (const auto& [v, p] : law.support_atoms()) {
      if (std::abs(v) <= level) {
        kept.emplace_back(v, p);
      } else {
        at_zero += p;
        moved_any = true;
      }
    }
    if (!moved_any) return law;
    if (at_zero > 0) kept.emplace_back(0.0, at_zero);
    return finite_discrete_law(std::move(kept));
  }
  if (const auto* tr = std::get_if<TruncatedLaw>(&law.variant())) {
    return ScalarLaw(TruncatedLaw{tr->base, std::min(tr->level, level)});
  }
  return ScalarLaw(
      TruncatedLaw{std::make_shared<ScalarLaw>(law), level});
}

namespace {

// E exp(min(|X|,cap)^p / lambda^p) pieces for the exp-power law with tail
// exponent p0. Finite for p < p0, or p == p0 with lambda > scale.
double exp_power_moment(double p0, double scale, double p, double lambda,
                        double cap) {
  if (p > p0 && cap == kInf) return kInf;
  if (p == p0 && cap == kInf) {
    const double r = std::pow(scale / lambda, p);
    if (r >= 1.0) return kInf;
    // 1 + scale^p / (lambda^p - scale^p), by direct integration.
    return 1.0 + r / (1.0 - r);
  }
  // density of |X| is p0 t^{p0-1}/scale^{p0} exp(-(t/scale)^{p0});
  // integrate g(t) f(t) on [0, upper] with g(t) = exp(t^p/lambda^p).
  const auto integrand = [&](double t) {
    if (t <= 0.0) return p0 > 1.0 ? 0.0 : 1.0 / scale;
    const double e = std::pow(t / lambda, p) - std::pow(t / scale, p0);
    return p0 * std::pow(t, p0 - 1.0) / std::pow(scale, p0) * std::exp(e);
  };
  double upper = cap;
  if (upper == kInf) {
    upper = std::max(scale, lambda);
    while (std::pow(upper / scale, p0) - std::pow(upper / lambda, p) < 200.0)
      upper *= 2.0;
  }
  // Remainder beyond `upper` is below exp(-200); bounded support integrates
  // [0, cap] only (the moved mass is added by the caller).
  return adaptive_simpson(integrand, 0.0, upper, 1e-13);
}

}  // namespace

double psi_moment(const ScalarLaw& law, double p, double lambda) {
  check_p(p);
  if (!(lambda > 0.0))
    throw std::invalid_argument("psi_moment: lambda must be positive");
  if (law.has_finite_support()) {
    NeumaierSum s;
    for (const auto& [v, pr] : law.support_atoms())
      s.add(static_cast<double>(pr) *
            std::exp(std::pow(std::abs(v) / lambda, p)));
    return s.value();
  }
  if (const auto* ep = std::get_if<SymmetricExpPowerLaw>(&law.variant())) {
    if (p > ep->p)
      throw UnboundedMomentError(
          "psi moment diverges: query exponent exceeds the law's exponent");
    return exp_power_moment(ep->p, ep->scale, p, lambda, kInf);
  }
  const auto& tr = std::get<TruncatedLaw>(law.variant());
  const auto* ep = std::get_if<SymmetricExpPowerLaw>(&tr.base->variant());
  if (ep == nullptr)
    throw std::logic_error("psi_moment: unsupported truncated base");
  const double moved = 2.0 * tr.base->tail(tr.level);  // lands on the 0 atom
  return moved + exp_power_moment(ep->p, ep->scale, p, lambda, tr.level);
}

PsiPCertificate psi_p_norm(const ScalarLaw& law, double p) {
  check_p(p);
  const auto moment = [&](double lambda) { return psi_moment(law, p, lambda); };

  // Scale guess for the bracket hunt.
  double guess = 1.0;
  if (law.has_finite_support()) {
    guess = law.max_abs_support();
    if (guess == 0.0) return {p, 0.0, 1.0};  // point mass at zero
  } else if (const auto* ep =
                 std::get_if<SymmetricExpPowerLaw>(&law.variant())) {
    guess = ep->scale * std::pow(2.0, 1.0 / p);
  } else {
    guess = std::get<TruncatedLaw>(law.variant()).level;
  }

  double hi = guess;
  int guard = 0;
  while (moment(hi) > 2.0) {
    hi *= 2.0;
    if (++guard > 200)
      throw UnboundedMomentError("psi_p_norm: moment never drops below 2");
  }
  double lo = hi;
  guard = 0;
  for (;;) {
    const double cand = lo / 2.0;
    double m;
    try {
      m = moment(cand);
    } catch (const UnboundedMomentError&) {
      m = kInf;
    }
    if (!(m <= 2.0)) break;  // also stops on +inf / overflow
    lo = cand;
    if (++guard > 1100) return {p, 0.0, m};  // moment <= 2 all the way down
  }
  lo /= 2.0;
  while (hi - lo > 1e-10 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (moment(mid) <= 2.0)
      hi = mid;
    else
      lo = mid;
  }
  return {p, hi, moment(hi)};
}

std::vector<double> sample(const ScalarLaw& law, std::size_t count,
                           std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("sample: count must be >= 1");
  Rng rng(seed);
  std::vector<double> out(count);
  for (auto& x : out) x = law.quantile(rng.uniform01());
  return out;
}

double law_lower_median(const ScalarLaw& law) {
  if (law.has_finite_support()) {
    Rational acc = 0;
    const Rational half(1, 2);
    for (const auto& [v, p] : law.support_atoms()) {
      acc += p;
      if (acc >= half) return v;
    }
    return law.support_atoms().back().first;
  }
  if (std::holds_alternative<SymmetricExpPowerLaw>(law.variant())) return 0.0;
  const double m = law.quantile(0.5);
  return law.cdf(m) >= 0.5 - 1e-12 ? m : 0.0;
}

}  // namespace conclab
