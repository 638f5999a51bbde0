#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

namespace conclab {

// Exact probabilities for discrete laws. Doubles are dyadic, so converting
// a double probability to Rational is lossless.
using Rational = boost::multiprecision::cpp_rational;

class ScalarLaw;

// P{X = alpha} = theta, P{X = 0} = 1 - theta.
struct TwoPointLaw {
  double theta;
  double alpha;
};

// P{X >= t} = P{X <= -t} = exp(-(t/scale)^p) / 2 for t >= 0.
struct SymmetricExpPowerLaw {
  double p;
  double scale;
};

// Atoms sorted by value, probabilities exactly summing to one.
struct FiniteDiscreteLaw {
  std::vector<double> values;
  std::vector<Rational> probs;
};

// Law of base * 1{|base| <= level}: outside mass collapses onto the atom
// at zero. Only wraps continuous bases; discrete laws truncate exactly.
struct TruncatedLaw {
  std::shared_ptr<const ScalarLaw> base;
  double level;
};

class ScalarLaw {
 public:
  using Variant = std::variant<TwoPointLaw, SymmetricExpPowerLaw,
                               FiniteDiscreteLaw, TruncatedLaw>;

  explicit ScalarLaw(Variant v);

  const Variant& variant() const { return v_; }

  double tail(double t) const;  // P{X >= t}
  double cdf(double t) const;   // P{X <= t}
  double atom(double x) const;  // P{X = x}

  // Lower inverse CDF for TwoPoint/SymmetricExpPower/FiniteDiscrete; for
  // Truncated it is the truncation pushforward of the base quantile
  // (same distribution, which is all the sampler needs).
  double quantile(double u) const;

  bool has_finite_support() const;
  // Finite-support accessors; throw std::logic_error otherwise.
  std::vector<std::pair<double, Rational>> support_atoms() const;
  Rational tail_exact(double t) const;
  double max_abs_support() const;

 private:
  Variant v_;
};

ScalarLaw two_point_law(double theta, double alpha);
ScalarLaw make_exp_power(double p, double k_tilde);
ScalarLaw finite_discrete_law(std::vector<std::pair<double, Rational>> atoms);
ScalarLaw point_mass(double value);
ScalarLaw rademacher_law();

// Test measure with mass theta at K*log(1/theta)^{1/p} and 1-theta at 0.
ScalarLaw make_two_point(double theta, double K, double p);

ScalarLaw truncate(const ScalarLaw& law, double level);

struct PsiPCertificate {
  double p;
  double norm;
  double moment_at_norm;  // E exp(|X|^p / norm^p)
};

// Raised when E exp(|X|^p/lambda^p) is infinite for every lambda (query
// exponent above the law's own tail exponent).
class UnboundedMomentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// E exp(|X|^p / lambda^p); +inf where the closed form diverges.
double psi_moment(const ScalarLaw& law, double p, double lambda);

// Smallest lambda with psi_moment <= 2, by monotone bisection to relative
// tolerance 1e-10. Norm 0 when the moment never exceeds 2 (point mass at 0).
PsiPCertificate psi_p_norm(const ScalarLaw& law, double p);

// i.i.d. inverse-CDF draws; identical seed gives identical output.
std::vector<double> sample(const ScalarLaw& law, std::size_t count,
                           std::uint64_t seed);

// Smallest m with P{X <= m} >= 1/2 (the convention used throughout).
double law_lower_median(const ScalarLaw& law);

}  // namespace conclab
