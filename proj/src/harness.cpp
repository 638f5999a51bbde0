#include "conclab/envelopes.hpp"
#include "conclab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "conclab/rng.hpp"
#include "conclab/stats.hpp"

namespace conclab {

TestFunction TestFunction::euclidean_norm() {
  TestFunction f;
  f.kind_ = Kind::euclidean_norm;
  return f;
}

TestFunction TestFunction::linear(Eigen::VectorXd a) {
  if (std::abs(a.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("TestFunction::linear: a must be a unit vector");
  TestFunction f;
  f.kind_ = Kind::linear;
  f.a_ = std::move(a);
  return f;
}

TestFunction TestFunction::max_coordinate() {
  TestFunction f;
  f.kind_ = Kind::max_coordinate;
  return f;
}

TestFunction TestFunction::dist_to_convex(PointSet S) {
  TestFunction f;
  f.kind_ = Kind::dist_to_convex;
  f.S_ = std::make_shared<PointSet>(std::move(S));
  return f;
}

std::string TestFunction::name() const {
  switch (kind_) {
    case Kind::euclidean_norm:
      return "euclidean_norm";
    case Kind::linear:
      return "linear";
    case Kind::max_coordinate:
      return "max_coordinate";
    case Kind::dist_to_convex:
      return "dist_to_convex";
  }
  return "?";
}

double TestFunction::operator()(const Eigen::VectorXd& x) const {
  switch (kind_) {
    case Kind::euclidean_norm:
      return x.norm();
    case Kind::linear:
      return a_.dot(x);
    case Kind::max_coordinate:
      return x.maxCoeff();
    case Kind::dist_to_convex:
      return dist_to_hull(x, *S_).cert.distance;
  }
  return 0.0;
}

FunctionAudit audit_function(const TestFunction& f, std::int64_t dim,
                             std::int64_t pairs, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::VectorXd x(dim), y(dim), mid(dim);
  double worst_lip = 0.0;
  double worst_conv = -std::numeric_limits<double>::infinity();
  for (std::int64_t i = 0; i < pairs; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      x(j) = 4.0 * rng.normal();
      y(j) = 4.0 * rng.normal();
    }
    const double fx = f(x);
    const double fy = f(y);
    const double d = (x - y).norm();
    if (d > 1e-12) worst_lip = std::max(worst_lip, std::abs(fx - fy) / d);
    mid = 0.5 * (x + y);
    worst_conv = std::max(worst_conv, f(mid) - 0.5 * (fx + fy));
  }
  FunctionAudit audit;
  audit.max_lipschitz_ratio = worst_lip;
  audit.max_convexity_violation = worst_conv;
  audit.ok = worst_lip <= 1.0 + 1e-8 && worst_conv <= 1e-8;
  return audit;
}

ProductLaw ProductLaw::iid(const ScalarLaw& law, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("ProductLaw: n must be >= 1");
  ProductLaw p;
  p.components.assign(static_cast<std::size_t>(n), law);
  return p;
}

Eigen::MatrixXd ProductLaw::sample_matrix(std::int64_t count,
                                          std::uint64_t seed) const {
  Rng rng(seed);
  Eigen::MatrixXd m(count, dim());
  for (Eigen::Index i = 0; i < count; ++i)
    for (Eigen::Index j = 0; j < dim(); ++j)
      m(i, j) =
          components[static_cast<std::size_t>(j)].quantile(rng.uniform01());
  return m;
}

std::pair<double, double> clopper_pearson(std::int64_t k, std::int64_t n,
                                          double confidence) {
  if (n < 1 || k < 0 || k > n)
    throw std::invalid_argument("clopper_pearson: need 0 <= k <= n, n >= 1");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw std::invalid_argument("clopper_pearson: confidence in (0,1)");
  const double half_alpha = 0.5 * (1.0 - confidence);
  const double kd = static_cast<double>(k);
  const double nd = static_cast<double>(n);
  const double lo =
      k == 0 ? 0.0 : inv_reg_inc_beta(kd, nd - kd + 1.0, half_alpha);
  const double hi =
      k == n ? 1.0 : inv_reg_inc_beta(kd + 1.0, nd - kd, 1.0 - half_alpha);
  return {lo, hi};
}

namespace {

constexpr std::uint64_t kMedianStream = 0x4d454449414eULL;  // "MEDIAN"
constexpr std::uint64_t kTailStream = 0x5441494cULL;        // "TAIL"

std::vector<double> function_values(const TestFunction& f,
                                    const ProductLaw& law,
                                    std::int64_t samples, std::uint64_t seed) {
  Rng rng(seed);
  const auto dim = law.dim();
  Eigen::VectorXd x(dim);
  std::vector<double> values(static_cast<std::size_t>(samples));
  for (auto& v : values) {
    for (Eigen::Index j = 0; j < dim; ++j)
      x(j) = law.components[static_cast<std::size_t>(j)].quantile(
          rng.uniform01());
    v = f(x);
  }
  return values;
}

}  // namespace

double estimate_median(const TestFunction& f, const ProductLaw& law,
                       std::int64_t samples, std::uint64_t seed) {
  if (samples < 1000)
    throw std::invalid_argument("estimate_median: samples must be >= 1000");
  std::vector<double> values = function_values(f, law, samples, seed);
  // Lower empirical median: the ceil(samples/2)-th order statistic.
  const auto idx = static_cast<std::size_t>((samples + 1) / 2 - 1);
  std::nth_element(values.begin(),
                   values.begin() + static_cast<std::ptrdiff_t>(idx),
                   values.end());
  return values[idx];
}

TailEstimate estimate_tail(const TestFunction& f, const ProductLaw& law,
                           double t, TailSide side, std::int64_t samples,
                           std::uint64_t seed, double confidence,
                           std::optional<double> exact_median) {
  if (samples < 1000)
    throw std::invalid_argument("estimate_tail: samples must be >= 1000");
  if (!(t > 0.0)) throw std::invalid_argument("estimate_tail: t must be > 0");
  const double med =
      exact_median.has_value()
          ? *exact_median
          : estimate_median(f, law, samples, derive_seed(seed, kMedianStream));
  const std::vector<double> values =
      function_values(f, law, samples, derive_seed(seed, kTailStream));
  std::int64_t hits = 0;
  for (const double v : values) {
    const bool hit =
        side == TailSide::upper ? v - med >= t : v - med <= -t;
    hits += hit ? 1 : 0;
  }
  const auto [lo, hi] = clopper_pearson(hits, samples, confidence);
  TailEstimate est;
  est.estimate = static_cast<double>(hits) / static_cast<double>(samples);
  est.ci_low = lo;
  est.ci_high = hi;
  est.method = TailEstimate::Method::mc;
  est.samples = samples;
  est.seed = seed;
  est.median_used = med;
  return est;
}

namespace {

double subgaussian_env_value(double c, double K, std::int64_t n, double t) {
  const double k2 = K * K;
  return std::min(
      1.0, std::exp(-c * t * t /
                    (k2 * std::log(2.0 + k2 * static_cast<double>(n) /
                                             (t * t)))));
}

double psip_env_value(double cp, double K, double p, std::int64_t n,
                      double t) {
  const double logn = std::log(static_cast<double>(n));
  return std::min(1.0,
                  2.0 * std::exp(-cp * std::pow(t / K, p)) +
                      2.0 * std::exp(-cp * t * t /
                                     (K * K * std::pow(logn, 2.0 / p))));
}

// Largest admissible constant for one cell: envelope(c) >= bound.
double cell_constant_subgaussian(double bound, double K, std::int64_t n,
                                 double t) {
  if (bound >= 1.0) return std::numeric_limits<double>::infinity();
  const double k2 = K * K;
  const double logf = std::log(2.0 + k2 * static_cast<double>(n) / (t * t));
  return -std::log(bound) * k2 * logf / (t * t);
}

double cell_constant_psip(double bound, double K, double p, std::int64_t n,
                          double t) {
  if (bound >= 1.0) return std::numeric_limits<double>::infinity();
  double lo = 0.0, hi = 1.0;
  while (psip_env_value(hi, K, p, n, t) > bound) {
    hi *= 2.0;
    if (hi > 1e12) return 1e12;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (psip_env_value(mid, K, p, n, t) >= bound)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace

EnvelopeAuditReport verify_upper_envelopes(const EnvelopeAuditConfig& config) {
  EnvelopeAuditReport report;
  double c_sub = std::numeric_limits<double>::infinity();
  double c_psip = std::numeric_limits<double>::infinity();

  std::uint64_t stream = 0;
  for (const auto& entry : config.entries) {
    const ProductLaw law = ProductLaw::iid(entry.law, entry.n);
    for (const auto& f : entry.functions) {
      const std::uint64_t cell_seed = derive_seed(config.seed, stream++);
      // One shared sample stream per (law, f); every t reads the same
      // draws, which keeps the runtime linear in the grid.
      const double med = estimate_median(f, law, config.samples,
                                         derive_seed(cell_seed, kMedianStream));
      const std::vector<double> values = function_values(
          f, law, config.samples, derive_seed(cell_seed, kTailStream));
      for (const double t_over_K : entry.t_over_K) {
        const double t = t_over_K * entry.K;
        for (const TailSide side : {TailSide::upper, TailSide::lower}) {
          std::int64_t hits = 0;
          for (const double v : values)
            hits += (side == TailSide::upper ? v - med >= t : v - med <= -t)
                        ? 1
                        : 0;
          const auto [lo, hi] = clopper_pearson(hits, config.samples, 0.99);
          EnvelopeCell cell;
          cell.family = entry.family;
          cell.law_name = entry.law_name;
          cell.f_name = f.name();
          cell.n = entry.n;
          cell.K = entry.K;
          cell.p = entry.p;
          cell.t = t;
          cell.side = side;
          cell.tail.estimate = static_cast<double>(hits) /
                               static_cast<double>(config.samples);
          cell.tail.ci_low = lo;
          cell.tail.ci_high = hi;
          cell.tail.method = TailEstimate::Method::mc;
          cell.tail.samples = config.samples;
          cell.tail.seed = cell_seed;
          cell.tail.median_used = med;
          if (entry.family == "subgaussian") {
            c_sub = std::min(
                c_sub, cell_constant_subgaussian(hi, entry.K, entry.n, t));
            cell.preset_admissible =
                hi <= subgaussian_env_value(kExplicitSubgaussianC, entry.K,
                                            entry.n, t) +
                          1e-15;
          } else {
            c_psip = std::min(
                c_psip, cell_constant_psip(hi, entry.K, entry.p, entry.n, t));
          }
          report.cells.push_back(std::move(cell));
        }
      }
    }
  }

  report.fitted_c_subgaussian = c_sub;
  report.fitted_c_psip = c_psip;
  double cprime = 0.0;
  bool any_admissible = false;
  for (auto& cell : report.cells) {
    if (cell.family == "subgaussian") {
      cell.envelope_at_fit =
          subgaussian_env_value(c_sub, cell.K, cell.n, cell.t);
      if (!cell.preset_admissible)
        cprime = std::max(
            cprime, cell.t / (cell.K * std::sqrt(std::log(
                                 static_cast<double>(cell.n)))) +
                        1e-12);
      else
        any_admissible = true;
    } else {
      cell.envelope_at_fit =
          psip_env_value(c_psip, cell.K, cell.p, cell.n, cell.t);
    }
    if (cell.tail.ci_high > cell.envelope_at_fit + 1e-12)
      report.any_violation = true;
  }
  report.preset_validity_Cprime =
      any_admissible ? cprime : std::numeric_limits<double>::infinity();
  return report;
}

EnvelopeAuditConfig default_envelope_audit_config(std::int64_t samples,
                                                  std::uint64_t seed) {
  EnvelopeAuditConfig config;
  config.samples = samples;
  config.seed = seed;

  const auto with_functions = [&](std::int64_t n) {
    std::vector<TestFunction> fs;
    fs.push_back(TestFunction::euclidean_norm());
    Eigen::VectorXd a = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(
                                                          static_cast<double>(n)));
    fs.push_back(TestFunction::linear(std::move(a)));
    fs.push_back(TestFunction::max_coordinate());
    return fs;
  };

  {
    EnvelopeFamilyConfig e{"subgaussian",
                           "rademacher",
                           rademacher_law(),
                           100,
                           psi_p_norm(rademacher_law(), 2.0).norm,
                           2.0,
                           with_functions(100),
                           {0.25, 0.5, 1.0, 1.5, 2.5, 4.0}};
    config.entries.push_back(std::move(e));
  }
  {
    const ScalarLaw law = make_two_point(0.1, 1.0, 2.0);
    EnvelopeFamilyConfig e{"subgaussian",
                           "two_point_0.1_p2",
                           law,
                           100,
                           1.0,
                           2.0,
                           with_functions(100),
                           {0.5, 1.0, 2.0, 3.0, 4.5, 6.0}};
    config.entries.push_back(std::move(e));
  }
  {
    const ScalarLaw law = make_exp_power(2.0, 1.0);
    EnvelopeFamilyConfig e{"subgaussian",
                           "exp_power_p2",
                           law,
                           50,
                           std::pow(2.0, 0.5),  // exact psi_2 norm
                           2.0,
                           with_functions(50),
                           {0.5, 1.0, 1.5, 2.0, 2.5, 3.0}};
    config.entries.push_back(std::move(e));
  }
  {
    const ScalarLaw law = make_exp_power(1.0, 1.0);
    EnvelopeFamilyConfig e{"psip",
                           "exp_power_p1",
                           law,
                           50,
                           2.0,  // exact psi_1 norm: 2^{1/p} scale
                           1.0,
                           with_functions(50),
                           {0.5, 1.0, 2.0, 3.0, 4.0, 6.0}};
    config.entries.push_back(std::move(e));
  }
  {
    const ScalarLaw law = make_two_point(0.1, 1.0, 1.0);
    EnvelopeFamilyConfig e{"psip",
                           "two_point_0.1_p1",
                           law,
                           100,
                           1.0,
                           1.0,
                           with_functions(100),
                           {0.5, 1.0, 2.0, 3.5, 5.0, 7.0}};
    config.entries.push_back(std::move(e));
  }
  return config;
}

}  // namespace conclab
