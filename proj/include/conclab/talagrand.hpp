#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "conclab/convex_distance.hpp"

namespace conclab {

// min over lambda in [0,1] of -lambda b - (1-lambda) a + c0 R^2 (1-lambda)^2,
// with b <= a (b may be -inf).
struct MinBasicInput {
  double a;
  double b;
  double c0;
  double R;
};

struct MinBasicResult {
  double value;
  double lambda_star;
};

MinBasicResult min_basic(const MinBasicInput& in);

// Piecewise cost H(t,y) for the two-point recursion step; kappa > 0.
struct HCostInput {
  double t;
  double y;
  double h_t;  // h(t)
  double h_y;  // h(y)
  double kappa;
};

double h_cost(const HCostInput& in);

// -h(y) + Q log(2 - exp((h(t)-h(y))/Q)); requires h(y) >= h(t) and
// Q >= 4 kappa (y-t)^2, and then dominates h_cost.
double remark_bound(const HCostInput& in, double Q);

// L with L^2 = 512 K^2 log(2 + n / log(2 + 1/delta)), delta in (0, 1/2].
double choice_of_l(std::int64_t n, double delta, double K);

struct ExpMomentResult {
  double statistic;      // mean of exp(dist_c(x,A)^2 / L^2)
  double half_width;     // z * sd / sqrt(count), normal approximation
  double max_exponent;   // largest single (dist/L)^2 seen
  std::int64_t count;
};

// Empirical exponential moment of the squared convex distance, with
// deterministic pairwise reduction. Distances are memoized per distinct
// sample row, which is exact. Throws std::overflow_error if any single
// term's exponent exceeds 700.
ExpMomentResult exp_moment_statistic(const Eigen::MatrixXd& samples,
                                     const PointSet& A, double L,
                                     double z = 2.5758293035489004);

}  // namespace conclab
