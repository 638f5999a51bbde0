#include "conclab/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <tuple>

#include <json.hpp>

#include "conclab/binomial.hpp"
#include "conclab/csv.hpp"
#include "conclab/envelopes.hpp"
#include "conclab/extremal.hpp"
#include "conclab/harness.hpp"
#include "conclab/law_io.hpp"
#include "conclab/rng.hpp"
#include "conclab/stats.hpp"

namespace conclab {

namespace {

void record(SuiteResult& result, const std::string& test_case,
            const std::string& expected, const std::string& got) {
  result.pass = false;
  result.failures.push_back({result.name, test_case, expected, got});
}

void check(SuiteResult& result, bool ok, const std::string& test_case,
           const std::string& expected, const std::string& got) {
  if (!ok) record(result, test_case, expected, got);
}

std::string suite_csv_path(const VerifyOptions& opts,
                           const std::string& name) {
  std::filesystem::create_directories(opts.out_dir);
  return (std::filesystem::path(opts.out_dir) / (name + ".csv")).string();
}

}  // namespace

MinBasicResult lambda_grid_oracle(double a, double b, double c0R2,
                                  int grid_points, double tol) {
  const auto g = [&](double lam) {
    return -lam * b - (1.0 - lam) * a + c0R2 * (1.0 - lam) * (1.0 - lam);
  };
  int best = 0;
  double best_val = g(0.0);
  for (int i = 1; i < grid_points; ++i) {
    const double lam = static_cast<double>(i) / (grid_points - 1);
    const double v = g(lam);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  double lo = std::max(0.0, (best - 1.0) / (grid_points - 1));
  double hi = std::min(1.0, (best + 1.0) / (grid_points - 1));
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - phi * (hi - lo);
  double x2 = lo + phi * (hi - lo);
  double f1 = g(x1), f2 = g(x2);
  while (hi - lo > tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = g(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = g(x2);
    }
  }
  const double lam = 0.5 * (lo + hi);
  return {g(lam), lam};
}

// ---------------------------------------------------------------- binomial

SuiteResult run_suite_binomial(const VerifyOptions& opts) {
  SuiteResult result{"binomial"};
  CsvWriter csv(suite_csv_path(opts, "binomial"),
                {"n", "theta", "r", "exact_tail", "chernoff", "envelope",
                 "ratio"});

  // Log-space tail against the exact rational oracle.
  for (std::int64_t n : {1, 2, 5, 13, 30}) {
    for (double theta : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      for (std::int64_t k = 0; k <= n; ++k) {
        const double exact =
            static_cast<double>(binom_tail_exact(n, Rational(theta), k));
        const double fast = binom_tail({n, theta, k});
        const double rel = std::abs(fast - exact) / exact;
        check(result, rel <= 1e-12,
              "tail_oracle n=" + std::to_string(n) +
                  " theta=" + format_double(theta) + " k=" + std::to_string(k),
              "relative error <= 1e-12", format_double(rel));
      }
    }
  }

  // Median sandwich on a sample grid.
  for (std::int64_t n : {1, 7, 64, 500, 4096, 10000}) {
    for (int ti = 1; ti <= 19; ++ti) {
      const double theta = ti * 0.05;
      const auto m = binom_median(n, theta);
      const auto lo = static_cast<std::int64_t>(
          std::floor(theta * static_cast<double>(n)));
      const auto hi = static_cast<std::int64_t>(
          std::ceil(theta * static_cast<double>(n)));
      check(result, lo <= m && m <= hi,
            "median_sandwich n=" + std::to_string(n) +
                " theta=" + format_double(theta),
            "floor/ceil sandwich", std::to_string(m));
    }
  }

  // Chernoff dominance and fitted lower envelope.
  const double c_b_gate = 0.1;
  std::vector<std::tuple<std::int64_t, double, double>> grid;
  for (std::int64_t n : {100, 1000, 10000}) {
    const double theta_lo = std::max(10.0 / static_cast<double>(n), 1e-4);
    const double theta_hi = std::max(0.05, 10.0 / static_cast<double>(n));
    for (int i = 0; i < 4; ++i) {
      const double theta =
          theta_lo *
          std::pow(theta_hi / theta_lo, i / 3.0);
      const double tn = theta * static_cast<double>(n);
      for (const double gamma : {0.0, 0.05, 0.1, 0.5, 2.0, 10.0}) {
        const double r =
            std::min(gamma * tn, static_cast<double>(n) - tn);
        grid.emplace_back(n, theta, r);
      }
    }
  }
  const auto violation =
      [&grid, c_b_gate](double C) -> std::optional<std::string> {
    for (const auto& [n, theta, r] : grid) {
      const auto k = static_cast<std::int64_t>(
          std::ceil(theta * static_cast<double>(n) + r - 1e-9));
      const double log_tail = log_binom_tail(n, theta, k);
      if (log_paper_lower_envelope(n, theta, r, C, c_b_gate) > log_tail)
        return "n=" + std::to_string(n) + " theta=" + format_double(theta) +
               " r=" + format_double(r);
    }
    return std::nullopt;
  };
  const ConstantFit fit = fit_constant("C_b", "suite grid", violation);
  check(result, fit.success && fit.fitted_value <= 50.0,
        "binomial_lower_fit", "finite C_b <= 50",
        fit.success ? format_double(fit.fitted_value) : fit.failure);

  for (const auto& [n, theta, r] : grid) {
    const auto k = static_cast<std::int64_t>(
        std::ceil(theta * static_cast<double>(n) + r - 1e-9));
    const double exact = binom_tail({n, theta, std::min(k, n)});
    const double chern = chernoff_upper({n, theta, std::min(k, n)});
    const double env =
        fit.success ? paper_lower_envelope(n, theta, r, fit.fitted_value,
                                           c_b_gate)
                    : 0.0;
    check(result, chern >= exact * (1.0 - 1e-12),
          "chernoff_dominates n=" + std::to_string(n) +
              " theta=" + format_double(theta) + " r=" + format_double(r),
          "chernoff >= exact tail", format_double(chern / exact));
    csv.field(n).field(theta).field(r).field(exact).field(chern).field(env);
    csv.field(exact > 0.0 ? env / exact : 0.0);
    csv.end_row();
  }
  return result;
}

// ---------------------------------------------------------------- minbasic

SuiteResult run_suite_minbasic(const VerifyOptions& opts) {
  SuiteResult result{"minbasic"};
  CsvWriter csv(suite_csv_path(opts, "minbasic"),
                {"a", "b", "c0R2", "closed_value", "oracle_value",
                 "lambda_closed", "lambda_oracle"});
  Rng rng(derive_seed(opts.seed, 0x6d696e62ULL));
  for (int i = 0; i < 1000; ++i) {
    const double a = rng.uniform(-10.0, 10.0);
    const double b = a - std::exp(rng.uniform(std::log(1e-6), std::log(20.0)));
    const double c0R2 =
        std::exp(rng.uniform(std::log(1e-3), std::log(1e3)));
    const MinBasicResult closed = min_basic({a, b, 1.0, std::sqrt(c0R2)});
    const MinBasicResult oracle = lambda_grid_oracle(a, b, c0R2);
    check(result, std::abs(closed.value - oracle.value) <= 1e-9,
          "min_basic_oracle i=" + std::to_string(i), "closed == oracle (1e-9)",
          format_double(closed.value - oracle.value));
    csv.field(a).field(b).field(c0R2).field(closed.value).field(oracle.value);
    csv.field(closed.lambda_star).field(oracle.lambda_star);
    csv.end_row();

    // h_cost equals the same minimization under the parameter mapping.
    const double kappa = std::exp(rng.uniform(std::log(1e-2), std::log(1e2)));
    const double dt = std::exp(rng.uniform(std::log(1e-2), std::log(10.0)));
    const double ht = rng.uniform(-5.0, 5.0);
    const double hy = rng.uniform(-5.0, 5.0);
    const HCostInput in{0.0, dt, ht, hy, kappa};
    const double h = h_cost(in);
    // The oracle minimizes the raw objective; no branch analysis involved.
    const double oracle_h = lambda_grid_oracle(hy, ht, kappa * dt * dt).value;
    check(result, std::abs(h - oracle_h) <= 1e-9,
          "h_cost_oracle i=" + std::to_string(i), "h_cost == oracle (1e-9)",
          format_double(h - oracle_h));

    // Remark bound dominates wherever its hypotheses hold.
    if (hy >= ht) {
      const double Q =
          4.0 * kappa * dt * dt * std::exp(rng.uniform(0.0, std::log(50.0)));
      const double rb = remark_bound(in, Q);
      check(result, rb >= h - 1e-10,
            "remark_dominates i=" + std::to_string(i), "remark >= h_cost",
            format_double(rb - h));
    }
  }
  return result;
}

// ---------------------------------------------------------------- distance

SuiteResult run_suite_distance(const VerifyOptions& opts) {
  SuiteResult result{"distance"};
  CsvWriter csv(suite_csv_path(opts, "distance"),
                {"instance", "dim", "vertices", "hull_distance",
                 "sampled_distc_200", "approach_gap", "cert_gap"});
  Rng rng(derive_seed(opts.seed, 0x64697374ULL));
  const int instances = 60;
  for (int inst = 0; inst < instances; ++inst) {
    const auto dim = rng.uniform_int(2, 6);
    const auto m = rng.uniform_int(2, 10);
    Eigen::MatrixXd V(m, dim);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < dim; ++j) V(i, j) = 2.0 * rng.normal();
    const PointSet S(V);
    Eigen::VectorXd x(dim);
    for (Eigen::Index j = 0; j < dim; ++j)
      x(j) = V.colwise().mean()(j) + 1.5 * rng.normal();

    const HullProjection proj = dist_to_hull(x, S, 1e-12);
    const double hull_dist = proj.cert.distance;

    // Certificate soundness.
    check(result,
          std::abs(proj.cert.weights.sum() - 1.0) <= 1e-12 &&
              proj.cert.weights.minCoeff() >= -1e-12,
          "cert_weights inst=" + std::to_string(inst),
          "convex weights sum 1", format_double(proj.cert.weights.sum()));
    check(result, proj.cert.gap <= 1e-10 * (1.0 + hull_dist * hull_dist) + 1e-12,
          "cert_gap inst=" + std::to_string(inst), "gap within tolerance",
          format_double(proj.cert.gap));

    // dist_c never exceeds the best vertex distance; zero iff member.
    const DistanceCert dc = dist_c(x, S, 1e-12);
    double best_vertex = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i)
      best_vertex = std::min(
          best_vertex, (x.transpose() - V.row(i)).norm());
    check(result, dc.distance <= best_vertex + 1e-9,
          "distc_vs_vertex inst=" + std::to_string(inst),
          "dist_c <= min vertex distance",
          format_double(dc.distance - best_vertex));
    const DistanceCert member = dist_c(V.row(0).transpose(), S, 1e-12);
    check(result, member.distance <= 1e-9,
          "distc_member inst=" + std::to_string(inst), "dist_c(vertex,A)=0",
          format_double(member.distance));

    // Random unit directions certify the max-min form from below.
    for (int rep = 0; rep < 5; ++rep) {
      Eigen::VectorXd dir(dim);
      for (Eigen::Index j = 0; j < dim; ++j) dir(j) = rng.normal();
      dir.normalize();
      double min_y = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < m; ++i)
        min_y = std::min(
            min_y, dir.dot((x.transpose() - V.row(i)).cwiseAbs().transpose()));
      check(result, min_y <= dc.distance + 1e-9,
            "maxmin_lower inst=" + std::to_string(inst),
            "direction value <= dist_c", format_double(min_y - dc.distance));
    }

    // Hull sampling: nested prefixes approach dist(x, hull) from above.
    const int total = 200;
    Eigen::MatrixXd samples(total, dim);
    Eigen::Index row = 0;
    for (Eigen::Index i = 0; i < m && row < total; ++i)
      samples.row(row++) = V.row(i);
    while (row < total) {
      Eigen::VectorXd w(m);
      if (rng.uniform01() < 0.5) {
        for (Eigen::Index i = 0; i < m; ++i)
          w(i) = -std::log(rng.uniform01());
      } else {
        // sparse face sample
        w.setZero();
        const auto k = rng.uniform_int(2, std::min<std::int64_t>(m, dim + 1));
        for (std::int64_t pick = 0; pick < k; ++pick)
          w(rng.uniform_int(0, m - 1)) += -std::log(rng.uniform01());
      }
      w /= w.sum();
      samples.row(row++) = (w.transpose() * V);
    }
    double prev = std::numeric_limits<double>::infinity();
    double at200 = 0.0;
    for (const int count : {25, 50, 100, 200}) {
      const PointSet prefix(samples.topRows(std::min(count, total)));
      const DistanceCert cert = dist_c(x, prefix, 1e-12);
      check(result, cert.distance <= prev + 1e-9,
            "approach_monotone inst=" + std::to_string(inst) + " N=" +
                std::to_string(count),
            "nonincreasing in sample size", format_double(cert.distance));
      check(result, cert.distance >= hull_dist - 1e-9,
            "approach_above inst=" + std::to_string(inst) + " N=" +
                std::to_string(count),
            "sampled dist_c >= hull distance",
            format_double(cert.distance - hull_dist));
      prev = cert.distance;
      at200 = cert.distance;
    }
    const double gap200 = at200 - hull_dist;
    check(result, gap200 <= 5e-2 * (1.0 + hull_dist),
          "approach_gap inst=" + std::to_string(inst),
          "gap <= 5e-2 (1+distance)", format_double(gap200));
    csv.field(static_cast<std::int64_t>(inst)).field(dim).field(m);
    csv.field(hull_dist).field(at200).field(gap200).field(proj.cert.gap);
    csv.end_row();
  }
  return result;
}

// --------------------------------------------------------------- expmoment

ExpMomentOutcome run_expmoment_config(const ExpMomentConfig& config,
                                      std::int64_t samples, double min_mass) {
  const auto atoms = config.law.support_atoms();
  const auto arity = static_cast<std::int64_t>(atoms.size());
  const std::int64_t lattice =
      static_cast<std::int64_t>(std::pow(arity, config.n));

  // Deterministic random subset with product mass >= min_mass.
  Rng rng(config.seed);
  std::vector<std::int64_t> order(static_cast<std::size_t>(lattice));
  for (std::int64_t i = 0; i < lattice; ++i)
    order[static_cast<std::size_t>(i)] = i;
  for (std::int64_t i = lattice - 1; i > 0; --i)
    std::swap(order[static_cast<std::size_t>(i)],
              order[static_cast<std::size_t>(rng.uniform_int(0, i))]);

  const auto decode = [&](std::int64_t code, Eigen::VectorXd& pt,
                          Rational& mass) {
    mass = 1;
    for (std::int64_t j = 0; j < config.n; ++j) {
      const auto idx = static_cast<std::size_t>(code % arity);
      code /= arity;
      pt(j) = atoms[idx].first;
      mass *= atoms[idx].second;
    }
  };

  Eigen::VectorXd pt(config.n);
  Rational mass;
  Rational prob_A = 0;
  std::vector<Eigen::VectorXd> a_points;
  for (std::int64_t i = 0; i < lattice && prob_A < Rational(min_mass); ++i) {
    decode(order[static_cast<std::size_t>(i)], pt, mass);
    a_points.push_back(pt);
    prob_A += mass;
  }
  Eigen::MatrixXd A(static_cast<Eigen::Index>(a_points.size()), config.n);
  for (std::size_t i = 0; i < a_points.size(); ++i)
    A.row(static_cast<Eigen::Index>(i)) = a_points[i].transpose();

  ExpMomentOutcome out;
  out.K = psi_p_norm(config.law, 2.0).norm;
  out.L = choice_of_l(config.n, config.delta, out.K);
  out.prob_A = static_cast<double>(prob_A);

  const ProductLaw product = ProductLaw::iid(config.law, config.n);
  const Eigen::MatrixXd draws =
      product.sample_matrix(samples, derive_seed(config.seed, 0x4558ULL));
  out.stat = exp_moment_statistic(draws, PointSet(A), out.L);
  out.bound = 4.0 / (out.prob_A * config.delta);
  out.pass = out.stat.statistic + out.stat.half_width <= out.bound;
  return out;
}

SuiteResult run_suite_expmoment(const VerifyOptions& opts) {
  SuiteResult result{"expmoment"};
  CsvWriter csv(suite_csv_path(opts, "expmoment"),
                {"law", "n", "delta", "K", "L", "prob_A", "statistic",
                 "half_width", "bound", "seed"});
  std::uint64_t stream = 0;
  for (const auto& [name, law] :
       std::vector<std::pair<std::string, ScalarLaw>>{
           {"rademacher", rademacher_law()},
           {"two_point_0.2", make_two_point(0.2, 1.0, 2.0)}}) {
    for (std::int64_t n = 2; n <= 6; ++n) {
      for (const double delta : {0.5, 0.1}) {
        ExpMomentConfig config{name, law, n, delta,
                               derive_seed(opts.seed, 0xe0 + stream++)};
        const ExpMomentOutcome out =
            run_expmoment_config(config, opts.expmoment_samples);
        check(result, out.pass,
              "expmoment " + name + " n=" + std::to_string(n) +
                  " delta=" + format_double(delta),
              "99% UCB <= 4/(P(A) delta) = " + format_double(out.bound),
              format_double(out.stat.statistic + out.stat.half_width));
        csv.field(name).field(n).field(delta).field(out.K).field(out.L);
        csv.field(out.prob_A).field(out.stat.statistic);
        csv.field(out.stat.half_width).field(out.bound).field(config.seed);
        csv.end_row();
      }
    }
  }
  return result;
}

// ---------------------------------------------------------------- extremal

SuiteResult run_suite_extremal(const VerifyOptions& opts) {
  SuiteResult result{"extremal"};
  CsvWriter csv(suite_csv_path(opts, "extremal"),
                {"n", "p", "K", "t", "theta", "alpha", "median_norm",
                 "tail_upper_exact", "tail_lower_exact", "envelope_lower",
                 "envelope_upper", "fitted_C", "fitted_c", "seed"});
  const double c_b = 0.15;
  const std::int64_t n = 10000;
  const Case1Window w = case1_window(n, 1.0, 2.0, c_b);
  std::vector<double> grid;
  for (int i = 0; i < 16; ++i)
    grid.push_back(w.t_lo +
                   (w.t_hi - w.t_lo) * static_cast<double>(i) / 15.0);
  const SweepReport report = optimality_sweep(n, 1.0, 2.0, grid, c_b);
  check(result, report.envelope_ok, "sweep_envelope",
        "fitted envelope below both exact tails", "violation");
  check(result, report.fitted_C <= 50.0, "sweep_C", "fitted C <= 50",
        format_double(report.fitted_C));
  for (const auto& row : report.rows) {
    const ExtremalInstance inst =
        make_extremal_instance(row.n, row.theta, row.K, row.p);
    check(result, inst.median_norm >= row.t * (1.0 - 1e-12),
          "median_dominates t=" + format_double(row.t), "median_norm >= t",
          format_double(inst.median_norm));
    check(result, row.psi_norm <= row.K * (1.0 + 1e-9),
          "psi_norm t=" + format_double(row.t), "psi norm <= K",
          format_double(row.psi_norm));
    const double lo = inst.alpha * std::sqrt(std::floor(
                          row.theta * static_cast<double>(row.n)));
    const double hi = inst.alpha * std::sqrt(std::ceil(
                          row.theta * static_cast<double>(row.n)));
    check(result, lo <= inst.median_norm && inst.median_norm <= hi,
          "median_sandwich t=" + format_double(row.t),
          "alpha sqrt(floor/ceil theta n) sandwich",
          format_double(inst.median_norm));
    csv.field(row.n).field(row.p).field(row.K).field(row.t).field(row.theta);
    csv.field(row.alpha).field(row.median_norm);
    csv.field(std::exp(row.log_tail_upper)).field(std::exp(row.log_tail_lower));
    csv.field(std::exp(row.log_envelope_lower));
    csv.field(std::exp(row.log_envelope_upper));
    csv.field(report.fitted_C).field(report.fitted_c).field(opts.seed);
    csv.end_row();
  }
  return result;
}

// --------------------------------------------------------------- envelopes

SuiteResult run_suite_envelopes(const VerifyOptions& opts) {
  SuiteResult result{"envelopes"};
  CsvWriter csv(suite_csv_path(opts, "envelopes"),
                {"family", "law", "f", "n", "K", "p", "t", "side", "estimate",
                 "ci_low", "ci_high", "envelope_at_fit", "fitted_c",
                 "preset_admissible", "seed"});
  const EnvelopeAuditConfig config =
      default_envelope_audit_config(opts.mc_samples, opts.seed);
  const EnvelopeAuditReport report = verify_upper_envelopes(config);
  check(result, !report.any_violation, "envelope_audit",
        "no 99% CI endpoint above the fitted envelope", "violation");
  check(result, std::isfinite(report.preset_validity_Cprime),
        "preset_validity", "c = 1/2048 admissible beyond fitted C'",
        "no admissible cell");
  for (const auto& cell : report.cells) {
    csv.field(cell.family).field(cell.law_name).field(cell.f_name);
    csv.field(cell.n).field(cell.K).field(cell.p).field(cell.t);
    csv.field(std::string(cell.side == TailSide::upper ? "upper" : "lower"));
    csv.field(cell.tail.estimate).field(cell.tail.ci_low);
    csv.field(cell.tail.ci_high).field(cell.envelope_at_fit);
    csv.field(cell.family == "subgaussian" ? report.fitted_c_subgaussian
                                           : report.fitted_c_psip);
    csv.field(std::string(cell.preset_admissible ? "1" : "0"));
    csv.field(cell.tail.seed);
    csv.end_row();
  }
  return result;
}

const std::vector<std::string>& all_suite_names() {
  static const std::vector<std::string> names{
      "binomial", "minbasic", "distance", "expmoment", "extremal",
      "envelopes"};
  return names;
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& opts) {
  if (name == "binomial") return run_suite_binomial(opts);
  if (name == "minbasic") return run_suite_minbasic(opts);
  if (name == "distance") return run_suite_distance(opts);
  if (name == "expmoment") return run_suite_expmoment(opts);
  if (name == "extremal") return run_suite_extremal(opts);
  if (name == "envelopes") return run_suite_envelopes(opts);
  throw std::invalid_argument("unknown suite: '" + name + "'");
}

int run_experiment(const std::string& config_path) {
  nlohmann::json j;
  {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "config error: cannot open '" << config_path << "'\n";
      return 2;
    }
    try {
      in >> j;
    } catch (const nlohmann::json::parse_error& e) {
      std::cerr << "config parse error: " << e.what() << "\n";
      return 2;
    }
  }
  static const std::vector<std::string> known{
      "seed", "out_dir", "suites", "mc_samples", "expmoment_samples"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      std::cerr << "config error: unknown key '" << key << "'\n";
      return 2;
    }
  }
  VerifyOptions opts;
  try {
    if (const char* env = std::getenv("CONCLAB_SEED"))
      opts.seed = std::stoull(env);
    if (j.contains("seed")) opts.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("out_dir")) opts.out_dir = j["out_dir"].get<std::string>();
    if (j.contains("mc_samples"))
      opts.mc_samples = j["mc_samples"].get<std::int64_t>();
    if (j.contains("expmoment_samples"))
      opts.expmoment_samples = j["expmoment_samples"].get<std::int64_t>();
    std::vector<std::string> suites = all_suite_names();
    if (j.contains("suites")) {
      suites = j["suites"].get<std::vector<std::string>>();
      if (suites.size() == 1 && suites[0] == "all") suites = all_suite_names();
    }
    bool all_pass = true;
    for (const auto& name : suites) {
      const SuiteResult result = run_suite(name, opts);
      std::cout << "suite " << result.name << ": "
                << (result.pass ? "pass" : "FAIL") << "\n";
      for (const auto& f : result.failures) {
        const nlohmann::json record{{"suite", f.suite},
                                    {"case", f.test_case},
                                    {"expected", f.expected},
                                    {"got", f.got}};
        std::cerr << record.dump() << "\n";
      }
      all_pass = all_pass && result.pass;
    }
    return all_pass ? 0 : 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace conclab
