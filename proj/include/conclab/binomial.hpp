#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "conclab/measures.hpp"  // Rational

namespace conclab {

// Upper-tail question: P{Bin(n,theta) >= k}.
struct BinomQuery {
  std::int64_t n;
  double theta;
  std::int64_t k;
};

// log P{Bin(n,theta) >= k}, summed from the smaller tail in scaled space.
double log_binom_tail(std::int64_t n, double theta, std::int64_t k);
double binom_tail(const BinomQuery& q);

// log P{Bin(n,theta) <= k} via the complement-parameter identity.
double log_binom_cdf(std::int64_t n, double theta, std::int64_t k);
double binom_cdf(std::int64_t n, double theta, std::int64_t k);

// Exact rational tail; the oracle for the log-space path (n <= ~40 is
// cheap; larger n works but is slow).
Rational binom_tail_exact(std::int64_t n, const Rational& theta,
                          std::int64_t k);

// Smallest m with P{Bin(n,theta) <= m} >= 1/2 (lower median).
std::int64_t binom_median(std::int64_t n, double theta);

// exp(-n*KL(k/n || theta)) for k >= theta*n, else 1.
double chernoff_upper(const BinomQuery& q);

// Lower-tail envelope (1/C_b) exp(-C_b log(2+(theta n+r)/(theta n))
// r^2/(theta n + r)); requires theta in [1/(c_b n), c_b].
double paper_lower_envelope(std::int64_t n, double theta, double r,
                            double C_b, double c_b_gate = 0.1);
double log_paper_lower_envelope(std::int64_t n, double theta, double r,
                                double C_b, double c_b_gate = 0.1);

struct ConstantFit {
  std::string constant_name;
  double fitted_value = 0.0;
  std::string grid;         // human description of the grid swept
  std::string worst_point;  // grid point binding the fit
  bool success = false;
  std::string failure;
};

// Smallest constant (to relative precision rel_tol, bisection) making the
// predicate hold on every grid point. `first_violation(c)` returns a
// description of some violated point, or nullopt if the predicate holds
// everywhere at c. Monotonicity is spot-checked before fitting.
ConstantFit fit_constant(
    const std::string& name, const std::string& grid_description,
    const std::function<std::optional<std::string>(double)>& first_violation,
    double lo = 1e-6, double cap = 1e4, double rel_tol = 1e-3);

}  // namespace conclab
