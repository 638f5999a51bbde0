#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace conclab {

enum class TailSide { upper, lower };

// Two-point product instance: components alpha*Bernoulli(theta), so
// ||X||_2 = alpha sqrt(Bin(n,theta)) and everything is exactly computable.
struct ExtremalInstance {
  std::int64_t n;
  double theta;
  double alpha;
  std::int64_t median_count;  // lower median of Bin(n,theta)
  double median_norm;         // alpha * sqrt(median_count)
};

// Raw formula theta(t) = (K^2 n/(3t^2) * (log(K^2 n/(3t^2)))^{2/p})^{-1};
// requires K^2 n / (3 t^2) > 1.
double theta_formula(std::int64_t n, double t, double K, double p);

struct Case1Window {
  double t_lo;
  double t_hi;
};

Case1Window case1_window(std::int64_t n, double K, double p, double c_b);

struct ThetaOfT {
  double theta;
  double t_used;       // t, or the window floor when substituted
  bool below_window;   // small-t substitution applied
};

// theta(t) on the Case-1 window; below the window the instance at the
// window floor is reused; above it, the coordinate example applies and the
// call is rejected.
ThetaOfT theta_of_t(std::int64_t n, double t, double K, double p,
                    double c_b = 0.05);

ExtremalInstance make_extremal_instance(std::int64_t n, double theta, double K,
                                        double p);

// Exact deviation tails of ||X||_2 around its median, via the binomial law.
double norm_tail_exact(const ExtremalInstance& inst, double t, TailSide side);
double log_norm_tail_exact(const ExtremalInstance& inst, double t,
                           TailSide side);

// (1/2) exp(-(t/k_tilde)^p): the single-coordinate example's two tails.
double coordinate_tail(double t, double k_tilde, double p);

struct SweepRow {
  std::int64_t n;
  double p;
  double K;
  double t;
  double theta;
  double alpha;
  double median_norm;
  double log_tail_upper;
  double log_tail_lower;
  double log_envelope_upper;  // at the fitted constants
  double log_envelope_lower;
  double psi_norm;
  bool below_window;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  double fitted_C_upper = 0.0;
  double fitted_C_lower = 0.0;
  double fitted_C = 0.0;        // max of the two sides
  double fitted_c = 0.0;        // 1 / fitted_C
  bool envelope_ok = false;     // envelope <= exact tail at every row
  std::uint64_t seed = 0;       // recorded for the CSV contract
};

// For each t: build the instance via theta_of_t, evaluate both exact tails,
// and fit the smallest C (with prefactor 1/C) making
//   (1/C) exp(-C t^2/(K^2 (log(2+K^2 n/t^2))^{2/p})) <= exact tail
// across the grid, per side.
SweepReport optimality_sweep(std::int64_t n, double K, double p,
                             const std::vector<double>& t_grid,
                             double c_b = 0.05, std::int64_t n_gate = 1000);

// Least-squares slope of log(-log tail) against log t.
double fit_log_tail_slope(const std::vector<double>& ts,
                          const std::vector<double>& log_tails);

struct TwoLevelSlopes {
  double small_t_slope;  // expected near 2
  double large_t_slope;  // expected near p
};

// Slope audit for the two-level profile: a fixed two-point instance pinned
// at the top of the small-t window, and the coordinate example past the
// switch point.
TwoLevelSlopes two_level_slopes(std::int64_t n, double K, double p,
                                double c_b = 0.05);

}  // namespace conclab
