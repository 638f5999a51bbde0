#include "conclab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace conclab {

namespace {

constexpr double kLogSqrt2Pi = 0.91893853320467274178;

}  // namespace

double stirlerr(double n) {
  static const double exact[16] = {
      0.0,
      0.0810614667953272582,
      0.0413406959554092940,
      0.0276779256849983391,
      0.0207906721037650931,
      0.0166446911898211922,
      0.0138761288230707480,
      0.0118967099458917701,
      0.0104112652619720965,
      0.0092554621827127329,
      0.0083305634333594726,
      0.0075736754879518408,
      0.0069428401072073598,
      0.0064089941880990605,
      0.0059513701127588475,
      0.0055547335519628011};
  const double s0 = 1.0 / 12.0;
  const double s1 = 1.0 / 360.0;
  const double s2 = 1.0 / 1260.0;
  const double s3 = 1.0 / 1680.0;
  const double s4 = 1.0 / 1188.0;
  if (n < 16.0 && n == std::floor(n)) return exact[static_cast<int>(n)];
  const double n1 = 1.0 / n;
  const double n2 = n1 * n1;
  if (n > 500.0) return (s0 - s1 * n2) * n1;
  if (n > 80.0) return (s0 - (s1 - s2 * n2) * n2) * n1;
  if (n > 35.0) return (s0 - (s1 - (s2 - s3 * n2) * n2) * n2) * n1;
  return (s0 - (s1 - (s2 - (s3 - s4 * n2) * n2) * n2) * n2) * n1;
}

double bd0(double x, double np) {
  if (!(np > 0.0)) throw std::invalid_argument("bd0: np must be positive");
  if (std::abs(x - np) < 0.1 * (x + np)) {
    const double v = (x - np) / (x + np);
    double s = (x - np) * v;
    double ej = 2.0 * x * v;
    for (int j = 1;; ++j) {
      ej *= v * v;
      const double s1 = s + ej / (2 * j + 1);
      if (s1 == s) return s1;
      s = s1;
    }
  }
  return x * std::log(x / np) + np - x;
}

double log_binom_coeff(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

double log_binom_pmf(std::int64_t n, double theta, std::int64_t k) {
  if (!(theta > 0.0 && theta < 1.0))
    throw std::invalid_argument("log_binom_pmf: theta must lie in (0,1)");
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  const double nd = static_cast<double>(n);
  if (k == 0) return nd * std::log1p(-theta);
  if (k == n) return nd * std::log(theta);
  const double kd = static_cast<double>(k);
  const double nk = static_cast<double>(n - k);
  const double lc = stirlerr(nd) - stirlerr(kd) - stirlerr(nk) -
                    bd0(kd, nd * theta) - bd0(nk, nd * (1.0 - theta));
  return lc + 0.5 * std::log(nd / (2.0 * M_PI * kd * nk));
}

namespace {

// Continued fraction for the incomplete beta (Lentz's method).
double beta_cont_frac(double a, double b, double x) {
  const double tiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 500; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 3e-16) break;
  }
  return h;
}

}  // namespace

double reg_inc_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0))
    throw std::invalid_argument("reg_inc_beta: a,b must be positive");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double lbeta =
      std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  const double front =
      std::exp(a * std::log(x) + b * std::log1p(-x) - lbeta);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_cont_frac(a, b, x) / a;
  }
  return 1.0 - front * beta_cont_frac(b, a, 1.0 - x) / b;
}

double inv_reg_inc_beta(double a, double b, double p) {
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (reg_inc_beta(a, b, mid) < p)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-16 * std::max(1.0, hi)) break;
  }
  return 0.5 * (lo + hi);
}

void NeumaierSum::add(double v) {
  const double t = sum + v;
  if (std::abs(sum) >= std::abs(v))
    comp += (sum - t) + v;
  else
    comp += (v - t) + sum;
  sum = t;
}

double pairwise_sum(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

namespace {

double simpson_rule(double fa, double fm, double fb, double a, double b) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                            double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson_rule(fa, flm, fm, a, m);
  const double right = simpson_rule(fm, frm, fb, m, b);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol,
                              depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol,
                              depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = simpson_rule(fa, fm, fb, a, b);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 60);
}

double ks_statistic(std::vector<double> sample,
                    const std::function<double(double)>& cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double fx = cdf(sample[i]);
    worst = std::max(worst, std::abs(fx - static_cast<double>(i) / n));
    worst = std::max(worst, std::abs(static_cast<double>(i + 1) / n - fx));
  }
  return worst;
}

}  // namespace conclab
