#include "conclab/binomial.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "conclab/stats.hpp"

namespace conclab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_query(std::int64_t n, double theta) {
  if (n < 1) throw std::invalid_argument("binomial: n must be >= 1");
  if (!(theta > 0.0 && theta < 1.0))
    throw std::invalid_argument("binomial: theta must lie in (0,1)");
}

// Sum of pmf(k), pmf(k+1), ... relative to pmf(k); terms decrease for
// k >= mode so the loop converges geometrically.
double scaled_upper_sum(std::int64_t n, double theta, std::int64_t k) {
  const double odds = theta / (1.0 - theta);
  double term = 1.0;
  NeumaierSum s;
  s.add(term);
  for (std::int64_t j = k; j < n; ++j) {
    term *= odds * static_cast<double>(n - j) / static_cast<double>(j + 1);
    s.add(term);
    if (term < 1e-22 * s.value()) break;
  }
  return s.value();
}

// Sum of pmf(k), pmf(k-1), ... relative to pmf(k); decreasing for k <= mode.
double scaled_lower_sum(std::int64_t n, double theta, std::int64_t k) {
  const double inv_odds = (1.0 - theta) / theta;
  double term = 1.0;
  NeumaierSum s;
  s.add(term);
  for (std::int64_t j = k; j > 0; --j) {
    term *= inv_odds * static_cast<double>(j) / static_cast<double>(n - j + 1);
    s.add(term);
    if (term < 1e-22 * s.value()) break;
  }
  return s.value();
}

}  // namespace

double log_binom_tail(std::int64_t n, double theta, std::int64_t k) {
  check_query(n, theta);
  if (k <= 0) return 0.0;
  if (k > n) return kNegInf;
  const auto mode =
      static_cast<std::int64_t>(std::floor((n + 1) * theta));
  if (k > mode) {
    return log_binom_pmf(n, theta, k) +
           std::log(scaled_upper_sum(n, theta, k));
  }
  // P{>=k} close to one; go through the small complement P{<=k-1}.
  const double log_low = log_binom_pmf(n, theta, k - 1) +
                         std::log(scaled_lower_sum(n, theta, k - 1));
  return std::log1p(-std::exp(log_low));
}

double binom_tail(const BinomQuery& q) {
  if (q.k < 0 || q.k > q.n)
    throw std::invalid_argument("binom_tail: k must lie in [0,n]");
  return std::exp(log_binom_tail(q.n, q.theta, q.k));
}

double log_binom_cdf(std::int64_t n, double theta, std::int64_t k) {
  if (k < 0) return kNegInf;
  if (k >= n) return 0.0;
  return log_binom_tail(n, 1.0 - theta, n - k);
}

double binom_cdf(std::int64_t n, double theta, std::int64_t k) {
  return std::exp(log_binom_cdf(n, theta, k));
}

namespace {

Rational rational_pow(const Rational& base, std::int64_t e) {
  Rational acc = 1;
  Rational b = base;
  while (e > 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

}  // namespace

Rational binom_tail_exact(std::int64_t n, const Rational& theta,
                          std::int64_t k) {
  if (n < 1) throw std::invalid_argument("binom_tail_exact: n must be >= 1");
  if (k <= 0) return Rational(1);
  if (k > n) return Rational(0);
  using Int = boost::multiprecision::cpp_int;
  Int choose = 1;
  for (std::int64_t j = 0; j < k; ++j) {
    choose *= (n - j);
    choose /= (j + 1);
  }
  const Rational q = 1 - theta;
  Rational term =
      Rational(choose) * rational_pow(theta, k) * rational_pow(q, n - k);
  Rational acc = term;
  for (std::int64_t j = k; j < n; ++j) {
    term *= Rational(n - j) / Rational(j + 1);
    term *= theta / q;
    acc += term;
  }
  return acc;
}

namespace {

// Accumulate the window CDF with a pmf recurrence anchored at the mode;
// returns the smallest m in [lo,hi] whose cumulative reaches 1/2, and the
// margin |F(m)-1/2| at the decision, so callers can escalate precision.
template <typename Real>
std::pair<std::int64_t, Real> median_scan(std::int64_t n, double theta,
                                          std::int64_t lo, std::int64_t hi,
                                          std::int64_t anchor,
                                          double log_pmf_anchor) {
  const Real th = static_cast<Real>(theta);
  const Real one_m = Real(1) - th;
  std::vector<Real> pmf(static_cast<std::size_t>(hi - lo + 1));
  pmf[static_cast<std::size_t>(anchor - lo)] =
      std::exp(static_cast<Real>(log_pmf_anchor));
  for (std::int64_t j = anchor; j < hi; ++j) {
    const Real ratio = th * static_cast<Real>(n - j) /
                       (one_m * static_cast<Real>(j + 1));
    pmf[static_cast<std::size_t>(j + 1 - lo)] =
        pmf[static_cast<std::size_t>(j - lo)] * ratio;
  }
  for (std::int64_t j = anchor; j > lo; --j) {
    const Real ratio = one_m * static_cast<Real>(j) /
                       (th * static_cast<Real>(n - j + 1));
    pmf[static_cast<std::size_t>(j - 1 - lo)] =
        pmf[static_cast<std::size_t>(j - lo)] * ratio;
  }
  Real acc = 0, comp = 0;  // Neumaier
  for (std::int64_t m = lo; m <= hi; ++m) {
    const Real v = pmf[static_cast<std::size_t>(m - lo)];
    const Real t = acc + v;
    if (std::abs(acc) >= std::abs(v))
      comp += (acc - t) + v;
    else
      comp += (v - t) + acc;
    acc = t;
    const Real f = acc + comp;
    if (f >= Real(0.5)) return {m, std::abs(f - Real(0.5))};
  }
  return {hi, Real(0)};
}

}  // namespace

std::int64_t binom_median(std::int64_t n, double theta) {
  check_query(n, theta);
  if (theta == 0.5) {
    // Symmetry decides the exact tie: F((n-1)/2) = 1/2 for odd n.
    return n % 2 == 1 ? (n - 1) / 2 : n / 2;
  }
  const double center = (static_cast<double>(n) + 1.0) * theta;
  const double sigma = std::sqrt(static_cast<double>(n) * theta * (1 - theta));
  const double pad = 20.0 * sigma + 20.0;
  const auto lo = static_cast<std::int64_t>(
      std::max(0.0, std::floor(center - pad)));
  const auto hi = static_cast<std::int64_t>(std::min(
      static_cast<double>(n), std::ceil(center + pad)));
  auto anchor = static_cast<std::int64_t>(std::floor(center));
  anchor = std::max(lo, std::min(hi, anchor));
  const double lpa = log_binom_pmf(n, theta, anchor);
  auto [m, margin] = median_scan<double>(n, theta, lo, hi, anchor, lpa);
  if (margin < 1e-9) {
    // Near-tie: redo in extended precision before trusting the comparison.
    auto [m2, margin2] =
        median_scan<long double>(n, theta, lo, hi, anchor, lpa);
    m = m2;
  }
  return m;
}

double chernoff_upper(const BinomQuery& q) {
  check_query(q.n, q.theta);
  if (q.k < 0 || q.k > q.n)
    throw std::invalid_argument("chernoff_upper: k must lie in [0,n]");
  const double nd = static_cast<double>(q.n);
  const double a = static_cast<double>(q.k) / nd;
  if (a <= q.theta) return 1.0;
  double kl = a * std::log(a / q.theta);
  if (a < 1.0) kl += (1.0 - a) * std::log((1.0 - a) / (1.0 - q.theta));
  return std::exp(-nd * kl);
}

double log_paper_lower_envelope(std::int64_t n, double theta, double r,
                                double C_b, double c_b_gate) {
  check_query(n, theta);
  if (!(C_b > 0.0))
    throw std::invalid_argument("paper_lower_envelope: C_b must be positive");
  const double nd = static_cast<double>(n);
  const double slack = 1e-12;
  if (theta < 1.0 / (c_b_gate * nd) * (1.0 - slack) ||
      theta > c_b_gate * (1.0 + slack))
    throw std::domain_error(
        "paper_lower_envelope: theta outside [1/(c_b n), c_b]");
  if (!(r >= 0.0) || r > nd - theta * nd + slack * nd)
    throw std::invalid_argument(
        "paper_lower_envelope: r must lie in [0, n - theta n]");
  const double tn = theta * nd;
  const double log_factor = std::log(2.0 + (tn + r) / tn);
  return -std::log(C_b) - C_b * log_factor * r * r / (tn + r);
}

double paper_lower_envelope(std::int64_t n, double theta, double r,
                            double C_b, double c_b_gate) {
  return std::exp(log_paper_lower_envelope(n, theta, r, C_b, c_b_gate));
}

ConstantFit fit_constant(
    const std::string& name, const std::string& grid_description,
    const std::function<std::optional<std::string>(double)>& first_violation,
    double lo, double cap, double rel_tol) {
  ConstantFit fit;
  fit.constant_name = name;
  fit.grid = grid_description;
  if (!(lo > 0.0 && cap > lo))
    throw std::invalid_argument("fit_constant: need 0 < lo < cap");

  // Monotonicity spot check: once the predicate holds it must keep holding.
  bool held = false;
  for (int i = 0; i <= 4; ++i) {
    const double c = lo * std::pow(cap / lo, i / 4.0);
    const bool ok = !first_violation(c).has_value();
    if (held && !ok)
      throw std::invalid_argument(
          "fit_constant: predicate is not monotone in the constant");
    held = held || ok;
  }

  if (auto v = first_violation(cap)) {
    fit.success = false;
    fit.failure = "no constant below cap " + std::to_string(cap) +
                  " satisfies the predicate; violation at " + *v;
    fit.worst_point = *v;
    return fit;
  }
  if (!first_violation(lo).has_value()) {
    fit.success = true;
    fit.fitted_value = lo;
    fit.worst_point = "predicate already holds at the lower search bound";
    return fit;
  }
  double bad = lo, good = cap;
  while (good / bad > 1.0 + rel_tol) {
    const double mid = std::sqrt(bad * good);
    if (first_violation(mid).has_value())
      bad = mid;
    else
      good = mid;
  }
  fit.success = true;
  fit.fitted_value = good;
  if (auto v = first_violation(bad)) fit.worst_point = *v;
  return fit;
}

}  // namespace conclab
