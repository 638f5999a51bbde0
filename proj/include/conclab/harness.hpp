#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "conclab/convex_distance.hpp"
#include "conclab/extremal.hpp"  // TailSide
#include "conclab/measures.hpp"

namespace conclab {

// Convex 1-Lipschitz test functions.
class TestFunction {
 public:
  enum class Kind { euclidean_norm, linear, max_coordinate, dist_to_convex };

  static TestFunction euclidean_norm();
  static TestFunction linear(Eigen::VectorXd a);  // requires ||a||_2 = 1
  static TestFunction max_coordinate();
  static TestFunction dist_to_convex(PointSet S);

  Kind kind() const { return kind_; }
  std::string name() const;
  double operator()(const Eigen::VectorXd& x) const;

 private:
  Kind kind_;
  Eigen::VectorXd a_;
  std::shared_ptr<const PointSet> S_;
};

struct FunctionAudit {
  double max_lipschitz_ratio;      // sup |f(x)-f(y)| / ||x-y||
  double max_convexity_violation;  // sup f(mid) - (f(x)+f(y))/2
  bool ok;
};

// Random-pair audit of the declared Lipschitz-1 and convexity properties.
FunctionAudit audit_function(const TestFunction& f, std::int64_t dim,
                             std::int64_t pairs, std::uint64_t seed);

// Product of independent components (not necessarily identical).
struct ProductLaw {
  std::vector<ScalarLaw> components;

  static ProductLaw iid(const ScalarLaw& law, std::int64_t n);
  std::int64_t dim() const { return static_cast<std::int64_t>(components.size()); }
  // count x dim matrix of draws; row-major generation order, so identical
  // seeds give identical matrices regardless of threading.
  Eigen::MatrixXd sample_matrix(std::int64_t count, std::uint64_t seed) const;
};

// Exact two-sided Clopper-Pearson interval for k successes in n trials.
std::pair<double, double> clopper_pearson(std::int64_t k, std::int64_t n,
                                          double confidence = 0.99);

struct TailEstimate {
  double estimate;
  double ci_low;
  double ci_high;
  enum class Method { exact, mc } method;
  std::int64_t samples;
  std::uint64_t seed;
  double median_used;
};

// Empirical lower median of f(X): order statistic ceil(samples/2).
double estimate_median(const TestFunction& f, const ProductLaw& law,
                       std::int64_t samples, std::uint64_t seed);

// MC deviation tail around the median with an exact 99% Clopper-Pearson
// interval. The median comes from an independent stream derived from the
// same seed, unless an exact median is supplied.
TailEstimate estimate_tail(const TestFunction& f, const ProductLaw& law,
                           double t, TailSide side, std::int64_t samples,
                           std::uint64_t seed, double confidence = 0.99,
                           std::optional<double> exact_median = std::nullopt);

// One envelope-audit cell: a law/function/t/side combination.
struct EnvelopeCell {
  std::string family;  // "subgaussian" or "psip"
  std::string law_name;
  std::string f_name;
  std::int64_t n;
  double K;
  double p;
  double t;
  TailSide side;
  TailEstimate tail;
  double envelope_at_fit = 0.0;
  bool preset_admissible = true;  // c = 1/2048 cell-level admissibility
};

struct EnvelopeFamilyConfig {
  std::string family;  // "subgaussian" (Thm-1.3 form) or "psip" (Thm-1.1 form)
  std::string law_name;
  ScalarLaw law;
  std::int64_t n;
  double K;  // psi_p scale entering the envelope
  double p;
  std::vector<TestFunction> functions;
  std::vector<double> t_over_K;  // t grid in units of K
};

struct EnvelopeAuditConfig {
  std::vector<EnvelopeFamilyConfig> entries;
  std::int64_t samples = 100000;
  std::uint64_t seed = 1;
};

struct EnvelopeAuditReport {
  std::vector<EnvelopeCell> cells;
  double fitted_c_subgaussian = 0.0;
  double fitted_c_psip = 0.0;
  // Smallest C' such that every subgaussian cell with t >= C' K sqrt(log n)
  // admits the explicit preset c = 1/2048; +inf if none does.
  double preset_validity_Cprime = 0.0;
  bool any_violation = false;
};

// Theorem-style audit: empirical 99% CI endpoints against the upper
// envelopes, with the largest admissible constant fitted per family.
EnvelopeAuditReport verify_upper_envelopes(const EnvelopeAuditConfig& config);

// Default audit configuration used by the CLI and the acceptance suite.
EnvelopeAuditConfig default_envelope_audit_config(std::int64_t samples,
                                                  std::uint64_t seed);

}  // namespace conclab
