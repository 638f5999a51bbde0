#include "conclab/talagrand.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "conclab/stats.hpp"

namespace conclab {

MinBasicResult min_basic(const MinBasicInput& in) {
  if (!(in.c0 > 0.0 && in.R > 0.0))
    throw std::invalid_argument("min_basic: c0 and R must be positive");
  if (!(in.b <= in.a))
    throw std::invalid_argument("min_basic: requires b <= a");
  if (!std::isfinite(in.a))
    throw std::invalid_argument("min_basic: a must be finite");
  const double cr2 = in.c0 * in.R * in.R;
  if (std::isinf(in.b) || in.a - in.b >= 2.0 * cr2)
    return {-in.a + cr2, 0.0};
  const double d = in.a - in.b;
  return {-in.b - d * d / (4.0 * cr2), std::max(0.0, 1.0 - d / (2.0 * cr2))};
}

double h_cost(const HCostInput& in) {
  if (!(in.kappa > 0.0))
    throw std::invalid_argument("h_cost: kappa must be positive");
  const double dt2 = (in.y - in.t) * (in.y - in.t);
  if (dt2 == 0.0) return -std::max(in.h_t, in.h_y);  // continuity at y = t
  if (in.h_y <= in.h_t) return -in.h_t;
  return min_basic({in.h_y, in.h_t, in.kappa, std::abs(in.y - in.t)}).value;
}

double remark_bound(const HCostInput& in, double Q) {
  if (!(in.kappa > 0.0))
    throw std::invalid_argument("remark_bound: kappa must be positive");
  if (!(in.h_y >= in.h_t))
    throw std::domain_error("remark_bound: requires h(y) >= h(t)");
  const double dt2 = (in.y - in.t) * (in.y - in.t);
  if (!(Q >= 4.0 * in.kappa * dt2))
    throw std::domain_error("remark_bound: requires Q >= 4 kappa (y-t)^2");
  return -in.h_y + Q * std::log(2.0 - std::exp((in.h_t - in.h_y) / Q));
}

double choice_of_l(std::int64_t n, double delta, double K) {
  if (n < 1) throw std::invalid_argument("choice_of_l: n must be >= 1");
  if (!(delta > 0.0 && delta <= 0.5))
    throw std::invalid_argument("choice_of_l: delta must lie in (0, 1/2]");
  if (!(K > 0.0)) throw std::invalid_argument("choice_of_l: K must be > 0");
  const double inner =
      2.0 + static_cast<double>(n) / std::log(2.0 + 1.0 / delta);
  return std::sqrt(512.0 * K * K * std::log(inner));
}

ExpMomentResult exp_moment_statistic(const Eigen::MatrixXd& samples,
                                     const PointSet& A, double L, double z) {
  if (samples.rows() < 1)
    throw std::invalid_argument("exp_moment_statistic: no samples");
  if (samples.cols() != A.dim())
    throw std::invalid_argument("exp_moment_statistic: dimension mismatch");
  if (!(L > 0.0))
    throw std::invalid_argument("exp_moment_statistic: L must be positive");

  std::unordered_map<std::string, double> memo;
  const auto count = samples.rows();
  std::vector<double> terms(static_cast<std::size_t>(count));
  double max_exponent = 0.0;
  Eigen::VectorXd x(samples.cols());
  for (Eigen::Index i = 0; i < count; ++i) {
    x = samples.row(i).transpose();
    std::string key(reinterpret_cast<const char*>(x.data()),
                    static_cast<std::size_t>(x.size()) * sizeof(double));
    double dist;
    if (const auto it = memo.find(key); it != memo.end()) {
      dist = it->second;
    } else {
      dist = dist_c(x, A).distance;
      memo.emplace(std::move(key), dist);
    }
    const double e = (dist / L) * (dist / L);
    max_exponent = std::max(max_exponent, e);
    if (e > 700.0)
      throw std::overflow_error(
          "exp_moment_statistic: a single term has log value " +
          std::to_string(e) + " > 700; statistic would overflow");
    terms[static_cast<std::size_t>(i)] = std::exp(e);
  }
  const double mean = pairwise_sum(terms) / static_cast<double>(count);
  std::vector<double> sq(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const double d = terms[i] - mean;
    sq[i] = d * d;
  }
  const double var =
      count > 1 ? pairwise_sum(sq) / static_cast<double>(count - 1) : 0.0;
  const double hw = z * std::sqrt(var / static_cast<double>(count));
  return {mean, hw, max_exponent, count};
}

}  // namespace conclab
