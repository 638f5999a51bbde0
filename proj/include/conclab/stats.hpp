#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace conclab {

// Error of Stirling's approximation: log(n!) - log(sqrt(2*pi*n)*(n/e)^n).
double stirlerr(double n);

// Loader's deviance term: x*log(x/np) + np - x, evaluated stably.
double bd0(double x, double np);

// log C(n,k) via lgamma.
double log_binom_coeff(std::int64_t n, std::int64_t k);

// Saddle-point log pmf of Bin(n, theta), accurate to a few ulp even for
// large n (Loader's method; avoids the catastrophic cancellation of the
// plain lgamma formula).
double log_binom_pmf(std::int64_t n, double theta, std::int64_t k);

// Regularized incomplete beta I_x(a,b) by continued fraction.
double reg_inc_beta(double a, double b, double x);

// Smallest x with I_x(a,b) >= p, to ~1e-14.
double inv_reg_inc_beta(double a, double b, double p);

// Neumaier-compensated accumulation.
struct NeumaierSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v);
  double value() const { return sum + comp; }
};

// Order-fixed pairwise sum; independent of threading because it is not
// threaded, and used as the deterministic reduction everywhere.
double pairwise_sum(std::span<const double> xs);

// Adaptive Simpson quadrature on [a,b] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol);

// Kolmogorov-Smirnov statistic of a sample against an exact CDF.
double ks_statistic(std::vector<double> sample,
                    const std::function<double(double)>& cdf);

// Two-sided normal quantile for 99% confidence.
inline constexpr double kZ99 = 2.5758293035489004;

}  // namespace conclab
