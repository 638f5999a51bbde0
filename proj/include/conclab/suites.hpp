#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "conclab/measures.hpp"
#include "conclab/talagrand.hpp"

namespace conclab {

struct FailureRecord {
  std::string suite;
  std::string test_case;
  std::string expected;
  std::string got;
};

struct SuiteResult {
  std::string name;
  bool pass = true;
  std::vector<FailureRecord> failures;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  std::int64_t mc_samples = 100000;         // envelopes suite, per cell
  std::int64_t expmoment_samples = 100000;  // expmoment suite, per config
};

// Named verification suites; each writes <out_dir>/<suite>.csv and
// collects failure records instead of aborting.
SuiteResult run_suite_binomial(const VerifyOptions& opts);
SuiteResult run_suite_minbasic(const VerifyOptions& opts);
SuiteResult run_suite_distance(const VerifyOptions& opts);
SuiteResult run_suite_expmoment(const VerifyOptions& opts);
SuiteResult run_suite_extremal(const VerifyOptions& opts);
SuiteResult run_suite_envelopes(const VerifyOptions& opts);

const std::vector<std::string>& all_suite_names();
SuiteResult run_suite(const std::string& name, const VerifyOptions& opts);

// Executes the suites named in a JSON config file. Exit code contract:
// 0 all assertions pass, 1 failures (with one JSON record per failure on
// stderr), 2 malformed config.
int run_experiment(const std::string& config_path);

// Brute-force minimizer for the lambda problems: 401-point grid refined by
// golden-section search. This is the independent oracle the minbasic suite
// and the tests check the closed forms against.
MinBasicResult lambda_grid_oracle(double a, double b, double c0R2,
                                  int grid_points = 401, double tol = 1e-12);

// Desk-scale exponential-moment configuration (explicit constants).
struct ExpMomentConfig {
  std::string law_name;
  ScalarLaw law;
  std::int64_t n;
  double delta;
  std::uint64_t seed;
};

struct ExpMomentOutcome {
  double K = 0.0;      // psi_2 norm of the component law
  double L = 0.0;      // choice_of_l(n, delta, K)
  double prob_A = 0.0; // exact P{X in A}
  ExpMomentResult stat{};
  double bound = 0.0;  // 4 / (prob_A * delta)
  bool pass = false;
};

// Builds a random finite A with P{X in A} >= min_mass over the product
// support, draws `samples` points, and checks the exponential-moment bound
// with fully explicit constants.
ExpMomentOutcome run_expmoment_config(const ExpMomentConfig& config,
                                      std::int64_t samples,
                                      double min_mass = 0.05);

}  // namespace conclab
