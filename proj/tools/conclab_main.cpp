#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "conclab/binomial.hpp"
#include "conclab/csv.hpp"
#include "conclab/envelopes.hpp"
#include "conclab/extremal.hpp"
#include "conclab/harness.hpp"
#include "conclab/law_io.hpp"
#include "conclab/suites.hpp"

namespace {

using namespace conclab;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("CONCLAB_SEED")) return std::stoull(env);
  return 1;
}

Eigen::VectorXd parse_vector(const std::string& text) {
  std::vector<double> xs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) xs.push_back(std::stod(item));
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = xs[i];
  return v;
}

PointSet load_point_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open points file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::vector<double> row;
    double x;
    while (ss >> x) row.push_back(x);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("points file is empty: " + path);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size())
      throw std::runtime_error("ragged points file: " + path);
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i][j];
  }
  return PointSet(std::move(m));
}

std::string law_text_or_file(const std::string& spec) {
  if (!spec.empty() && spec[0] == '@') {
    std::ifstream in(spec.substr(1));
    if (!in) throw std::runtime_error("cannot open law file: " + spec);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conclab: exact and Monte Carlo checks of convex-Lipschitz "
               "concentration bounds"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "run named verification suites");
  std::string suite = "all";
  VerifyOptions opts;
  opts.seed = default_seed();
  verify->add_option("--suite", suite,
                     "binomial|minbasic|distance|expmoment|extremal|"
                     "envelopes|all");
  verify->add_option("--seed", opts.seed, "root seed");
  verify->add_option("--out", opts.out_dir, "output directory for CSVs");
  verify->add_option("--mc-samples", opts.mc_samples,
                     "samples per envelope-audit cell");
  verify->add_option("--expmoment-samples", opts.expmoment_samples,
                     "samples per exponential-moment configuration");

  // binom-tail
  auto* btail = app.add_subcommand("binom-tail", "P{Bin(n,theta) >= k}");
  std::int64_t bt_n = 10;
  double bt_theta = 0.5;
  std::int64_t bt_k = 5;
  btail->add_option("--n", bt_n)->required();
  btail->add_option("--theta", bt_theta)->required();
  btail->add_option("--k", bt_k)->required();

  // fit
  auto* fit = app.add_subcommand("fit", "fit a universal constant");
  std::string fit_inequality = "binomial-lower";
  std::string fit_grid_spec;
  fit->add_option("--inequality", fit_inequality, "binomial-lower");
  fit->add_option("--grid-spec", fit_grid_spec,
                  "JSON grid file {n:[..],theta:[..],gamma:[..],c_b:..}");

  // envelope
  auto* env = app.add_subcommand("envelope", "evaluate a bound envelope");
  std::string env_theorem = "subgaussian";
  EnvelopeParams env_params;
  double env_t = 1.0;
  std::vector<std::string> env_consts;
  env->add_option("--theorem", env_theorem,
                  "psip|subgaussian|lower-psip|lower-subgaussian");
  env->add_option("--n", env_params.n)->required();
  env->add_option("--t", env_t)->required();
  env->add_option("--K", env_params.K);
  env->add_option("--p", env_params.p);
  env->add_option("--c", env_consts, "constants as name=value")
      ->take_all();

  // extremal-sweep
  auto* sweep = app.add_subcommand("extremal-sweep",
                                   "exact two-point optimality sweep");
  std::int64_t sw_n = 10000;
  double sw_K = 1.0, sw_p = 2.0, sw_tmin = 0.0, sw_tmax = 0.0, sw_cb = 0.15;
  int sw_steps = 16;
  std::string sw_out = "extremal_sweep.csv";
  sweep->add_option("--n", sw_n)->required();
  sweep->add_option("--K", sw_K);
  sweep->add_option("--p", sw_p);
  sweep->add_option("--t-min", sw_tmin);
  sweep->add_option("--t-max", sw_tmax);
  sweep->add_option("--steps", sw_steps);
  sweep->add_option("--c-b", sw_cb, "window constant c_b");
  sweep->add_option("--out", sw_out);

  // distc
  auto* dist = app.add_subcommand("distc", "modified convex distance");
  std::string dist_point, dist_file;
  dist->add_option("--point", dist_point, "comma separated coordinates")
      ->required();
  dist->add_option("--set-file", dist_file,
                   "file with one whitespace-separated point per line")
      ->required();

  // hcost
  auto* hc = app.add_subcommand("hcost", "piecewise recursion cost H(t,y)");
  double hc_ht = 0.0, hc_hy = 0.0, hc_kappa = 1.0, hc_dt = 1.0;
  hc->add_option("--ht", hc_ht)->required();
  hc->add_option("--hy", hc_hy)->required();
  hc->add_option("--kappa", hc_kappa)->required();
  hc->add_option("--dt", hc_dt, "y - t")->required();

  // choice-of-l
  auto* col = app.add_subcommand("choice-of-l", "explicit L(n, delta, K)");
  std::int64_t col_n = 1;
  double col_delta = 0.5, col_K = 1.0;
  col->add_option("--n", col_n)->required();
  col->add_option("--delta", col_delta)->required();
  col->add_option("--K", col_K);

  // mc-tail
  auto* mc = app.add_subcommand("mc-tail", "Monte Carlo deviation tail");
  std::string mc_law, mc_f = "euclidean_norm", mc_side = "upper";
  std::int64_t mc_n = 10, mc_samples = 100000;
  double mc_t = 1.0;
  std::uint64_t mc_seed = default_seed();
  mc->add_option("--law", mc_law, "law literal JSON, or @file")->required();
  mc->add_option("--f", mc_f, "euclidean_norm|linear|max_coordinate");
  mc->add_option("--n", mc_n, "number of independent coordinates");
  mc->add_option("--t", mc_t)->required();
  mc->add_option("--side", mc_side, "upper|lower");
  mc->add_option("--samples", mc_samples);
  mc->add_option("--seed", mc_seed);

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      std::vector<std::string> names = all_suite_names();
      if (suite != "all") names = {suite};
      bool all_pass = true;
      for (const auto& name : names) {
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
    }
    if (btail->parsed()) {
      const BinomQuery q{bt_n, bt_theta, bt_k};
      std::cout << "tail " << format_double(binom_tail(q)) << "\n";
      std::cout << "log_tail "
                << format_double(log_binom_tail(bt_n, bt_theta, bt_k)) << "\n";
      std::cout << "chernoff " << format_double(chernoff_upper(q)) << "\n";
      return 0;
    }
    if (fit->parsed()) {
      if (fit_inequality != "binomial-lower") {
        std::cerr << "unknown inequality: " << fit_inequality << "\n";
        return 2;
      }
      std::vector<std::int64_t> ns{100, 1000, 10000};
      std::vector<double> gammas{0.0, 0.02, 0.05, 0.1, 0.5, 2.0, 10.0};
      int theta_count = 5;
      double c_b = 0.1;
      if (!fit_grid_spec.empty()) {
        std::ifstream in(fit_grid_spec);
        if (!in) {
          std::cerr << "cannot open grid spec: " << fit_grid_spec << "\n";
          return 2;
        }
        nlohmann::json g;
        in >> g;
        if (g.contains("n")) ns = g["n"].get<std::vector<std::int64_t>>();
        if (g.contains("gamma"))
          gammas = g["gamma"].get<std::vector<double>>();
        if (g.contains("theta_count"))
          theta_count = g["theta_count"].get<int>();
        if (g.contains("c_b")) c_b = g["c_b"].get<double>();
      }
      std::vector<std::tuple<std::int64_t, double, double>> grid;
      for (const auto n : ns) {
        const double lo = std::max(10.0 / static_cast<double>(n), 1e-4);
        const double hi = std::max(0.05, 10.0 / static_cast<double>(n));
        for (int i = 0; i < theta_count; ++i) {
          const double theta =
              lo * std::pow(hi / lo,
                            theta_count == 1
                                ? 0.0
                                : i / static_cast<double>(theta_count - 1));
          const double tn = theta * static_cast<double>(n);
          for (const double gamma : gammas)
            grid.emplace_back(
                n, theta,
                std::min(gamma * tn, static_cast<double>(n) - tn));
        }
      }
      const auto violation =
          [&](double C) -> std::optional<std::string> {
        for (const auto& [n, theta, r] : grid) {
          const auto k = static_cast<std::int64_t>(
              std::ceil(theta * static_cast<double>(n) + r - 1e-9));
          if (log_paper_lower_envelope(n, theta, r, C, c_b) >
              log_binom_tail(n, theta, k))
            return "n=" + std::to_string(n) +
                   " theta=" + format_double(theta) +
                   " r=" + format_double(r);
        }
        return std::nullopt;
      };
      const ConstantFit res =
          fit_constant("C_b", "binomial-lower grid", violation);
      if (!res.success) {
        std::cerr << "fit failed: " << res.failure << "\n";
        return 1;
      }
      std::cout << "C_b " << format_double(res.fitted_value) << "\n";
      std::cout << "binding " << res.worst_point << "\n";
      return 0;
    }
    if (env->parsed()) {
      for (const auto& kv : env_consts) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
          std::cerr << "bad constant (want name=value): " << kv << "\n";
          return 2;
        }
        env_params.constants[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
      }
      double value;
      if (env_theorem == "subgaussian") {
        value = subgaussian_envelope(env_params, env_t);
      } else if (env_theorem == "psip") {
        const auto pv = psip_envelope(env_params, env_t);
        std::cout << "dominant "
                  << (pv.dominant == DominantTerm::psi_p_term ? "psi_p"
                                                              : "gaussian")
                  << "\n";
        value = pv.value;
      } else if (env_theorem == "lower-psip") {
        value = lower_envelope(env_params, env_t, LowerEnvelopeKind::psip);
      } else if (env_theorem == "lower-subgaussian") {
        value =
            lower_envelope(env_params, env_t, LowerEnvelopeKind::subgaussian);
      } else {
        std::cerr << "unknown theorem: " << env_theorem << "\n";
        return 2;
      }
      std::cout << "envelope " << format_double(value) << "\n";
      return 0;
    }
    if (sweep->parsed()) {
      const Case1Window w = case1_window(sw_n, sw_K, sw_p, sw_cb);
      const double tmin = sw_tmin > 0.0 ? sw_tmin : w.t_lo;
      const double tmax = sw_tmax > 0.0 ? sw_tmax : w.t_hi;
      std::vector<double> grid;
      for (int i = 0; i < sw_steps; ++i)
        grid.push_back(tmin + (tmax - tmin) * i /
                                  std::max(1, sw_steps - 1));
      const SweepReport report =
          optimality_sweep(sw_n, sw_K, sw_p, grid, sw_cb);
      CsvWriter csv(sw_out,
                    {"n", "p", "K", "t", "theta", "alpha", "median_norm",
                     "tail_upper_exact", "tail_lower_exact", "envelope_lower",
                     "envelope_upper", "fitted_C", "fitted_c", "seed"});
      for (const auto& row : report.rows) {
        csv.field(row.n).field(row.p).field(row.K).field(row.t);
        csv.field(row.theta).field(row.alpha).field(row.median_norm);
        csv.field(std::exp(row.log_tail_upper));
        csv.field(std::exp(row.log_tail_lower));
        csv.field(std::exp(row.log_envelope_lower));
        csv.field(std::exp(row.log_envelope_upper));
        csv.field(report.fitted_C).field(report.fitted_c);
        csv.field(std::uint64_t{0});
        csv.end_row();
      }
      std::cout << "fitted_C " << format_double(report.fitted_C) << "\n";
      std::cout << "envelope_ok " << (report.envelope_ok ? "1" : "0") << "\n";
      return report.envelope_ok ? 0 : 1;
    }
    if (dist->parsed()) {
      const Eigen::VectorXd x = parse_vector(dist_point);
      const PointSet A = load_point_file(dist_file);
      const DistanceCert cert = dist_c(x, A);
      std::cout << "dist_c " << format_double(cert.distance) << "\n";
      std::cout << "gap " << format_double(cert.gap) << "\n";
      return 0;
    }
    if (hc->parsed()) {
      const HCostInput in{0.0, hc_dt, hc_ht, hc_hy, hc_kappa};
      std::cout << "h_cost " << format_double(h_cost(in)) << "\n";
      return 0;
    }
    if (col->parsed()) {
      std::cout << "L " << format_double(choice_of_l(col_n, col_delta, col_K))
                << "\n";
      return 0;
    }
    if (mc->parsed()) {
      const ScalarLaw law = law_from_string(law_text_or_file(mc_law));
      TestFunction f = TestFunction::euclidean_norm();
      if (mc_f == "linear") {
        Eigen::VectorXd a = Eigen::VectorXd::Zero(mc_n);
        a(0) = 1.0;
        f = TestFunction::linear(std::move(a));
      } else if (mc_f == "max_coordinate") {
        f = TestFunction::max_coordinate();
      } else if (mc_f != "euclidean_norm") {
        std::cerr << "unknown function kind: " << mc_f << "\n";
        return 2;
      }
      const ProductLaw product = ProductLaw::iid(law, mc_n);
      const TailEstimate est = estimate_tail(
          f, product, mc_t,
          mc_side == "lower" ? TailSide::lower : TailSide::upper, mc_samples,
          mc_seed);
      std::cout << "estimate " << format_double(est.estimate) << "\n";
      std::cout << "ci_low " << format_double(est.ci_low) << "\n";
      std::cout << "ci_high " << format_double(est.ci_high) << "\n";
      std::cout << "median " << format_double(est.median_used) << "\n";
      std::cout << "seed " << est.seed << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
