#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "conclab/binomial.hpp"
#include "conclab/convex_distance.hpp"
#include "conclab/envelopes.hpp"
#include "conclab/extremal.hpp"
#include "conclab/harness.hpp"
#include "conclab/law_io.hpp"
#include "conclab/suites.hpp"
#include "conclab/talagrand.hpp"

namespace py = pybind11;
using namespace conclab;

namespace {

ScalarLaw law_from_py(const std::string& text) { return law_from_string(text); }

}  // namespace

PYBIND11_MODULE(_conclab, m) {
  m.doc() = "Exact and Monte Carlo machinery for convex-Lipschitz "
            "concentration bounds";

  py::register_exception<UnboundedMomentError>(m, "UnboundedMomentError");

  // ---- measures
  py::class_<ScalarLaw>(m, "ScalarLaw")
      .def("tail", &ScalarLaw::tail, py::arg("t"))
      .def("cdf", &ScalarLaw::cdf, py::arg("t"))
      .def("atom", &ScalarLaw::atom, py::arg("x"))
      .def("quantile", &ScalarLaw::quantile, py::arg("u"))
      .def("has_finite_support", &ScalarLaw::has_finite_support)
      .def("to_json", [](const ScalarLaw& law) { return law_to_json(law).dump(); })
      .def("__repr__",
           [](const ScalarLaw& law) { return law_to_json(law).dump(); });

  py::class_<PsiPCertificate>(m, "PsiPCertificate")
      .def_readonly("p", &PsiPCertificate::p)
      .def_readonly("norm", &PsiPCertificate::norm)
      .def_readonly("moment_at_norm", &PsiPCertificate::moment_at_norm);

  m.def("make_two_point", &make_two_point, py::arg("theta"), py::arg("K"),
        py::arg("p"));
  m.def("two_point_law", &two_point_law, py::arg("theta"), py::arg("alpha"));
  m.def("make_exp_power", &make_exp_power, py::arg("p"), py::arg("scale"));
  m.def("rademacher_law", &rademacher_law);
  m.def("point_mass", &point_mass, py::arg("value"));
  m.def("law_from_json", &law_from_py, py::arg("text"));
  m.def("truncate", &truncate, py::arg("law"), py::arg("level"));
  m.def("psi_p_norm", &psi_p_norm, py::arg("law"), py::arg("p"));
  m.def("sample", &sample, py::arg("law"), py::arg("count"), py::arg("seed"));
  m.def("law_lower_median", &law_lower_median, py::arg("law"));

  // ---- binomial engine
  m.def("binom_tail",
        [](std::int64_t n, double theta, std::int64_t k) {
          return binom_tail({n, theta, k});
        },
        py::arg("n"), py::arg("theta"), py::arg("k"));
  m.def("log_binom_tail", &log_binom_tail, py::arg("n"), py::arg("theta"),
        py::arg("k"));
  m.def("binom_cdf", &binom_cdf, py::arg("n"), py::arg("theta"), py::arg("k"));
  m.def("binom_median", &binom_median, py::arg("n"), py::arg("theta"));
  m.def("chernoff_upper",
        [](std::int64_t n, double theta, std::int64_t k) {
          return chernoff_upper({n, theta, k});
        },
        py::arg("n"), py::arg("theta"), py::arg("k"));
  m.def("paper_lower_envelope", &paper_lower_envelope, py::arg("n"),
        py::arg("theta"), py::arg("r"), py::arg("C_b"),
        py::arg("c_b_gate") = 0.1);

  // ---- envelopes
  m.def("subgaussian_envelope",
        [](double t, double K, std::int64_t n, double c) {
          EnvelopeParams params{K, 2.0, n, {{"c", c}}};
          return subgaussian_envelope(params, t);
        },
        py::arg("t"), py::arg("K"), py::arg("n"), py::arg("c"));
  m.def("psip_envelope",
        [](double t, double K, double p, std::int64_t n, double c_p) {
          EnvelopeParams params{K, p, n, {{"c_p", c_p}}};
          const auto v = psip_envelope(params, t);
          return py::make_tuple(v.value,
                                v.dominant == DominantTerm::psi_p_term
                                    ? "psi_p"
                                    : "gaussian");
        },
        py::arg("t"), py::arg("K"), py::arg("p"), py::arg("n"),
        py::arg("c_p"));
  m.def("lower_envelope",
        [](double t, double K, double p, std::int64_t n, double c_tilde,
           double C_tilde, const std::string& kind) {
          EnvelopeParams params{
              K, p, n, {{"c_tilde", c_tilde}, {"C_tilde", C_tilde}}};
          return lower_envelope(params, t,
                                kind == "psip"
                                    ? LowerEnvelopeKind::psip
                                    : LowerEnvelopeKind::subgaussian);
        },
        py::arg("t"), py::arg("K"), py::arg("p"), py::arg("n"),
        py::arg("c_tilde"), py::arg("C_tilde"), py::arg("kind"));
  m.def("regime_crossover",
        [](double K, double p, std::int64_t n) {
          const auto c = regime_crossover({K, p, n, {}});
          return py::make_tuple(c.t_no_concentration, c.t_switch,
                                c.switch_diverged);
        },
        py::arg("K"), py::arg("p"), py::arg("n"));
  m.def("truncation_schedule",
        [](double t, double K, double p, std::int64_t n) {
          const auto s = truncation_schedule({K, p, n, {}}, t);
          return py::make_tuple(s.m, s.u, s.levels, s.normalizer,
                                s.degenerate_weights);
        },
        py::arg("t"), py::arg("K"), py::arg("p"), py::arg("n"));

  // ---- talagrand core
  m.def("min_basic",
        [](double a, double b, double c0, double R) {
          const auto r = min_basic({a, b, c0, R});
          return py::make_tuple(r.value, r.lambda_star);
        },
        py::arg("a"), py::arg("b"), py::arg("c0"), py::arg("R"));
  m.def("h_cost",
        [](double h_t, double h_y, double kappa, double dt) {
          return h_cost({0.0, dt, h_t, h_y, kappa});
        },
        py::arg("h_t"), py::arg("h_y"), py::arg("kappa"), py::arg("dt"));
  m.def("remark_bound",
        [](double h_t, double h_y, double kappa, double dt, double Q) {
          return remark_bound({0.0, dt, h_t, h_y, kappa}, Q);
        },
        py::arg("h_t"), py::arg("h_y"), py::arg("kappa"), py::arg("dt"),
        py::arg("Q"));
  m.def("choice_of_l", &choice_of_l, py::arg("n"), py::arg("delta"),
        py::arg("K"));
  m.def("exp_moment_statistic",
        [](const Eigen::MatrixXd& samples, const Eigen::MatrixXd& A,
           double L) {
          const auto r = exp_moment_statistic(samples, PointSet(A), L);
          return py::make_tuple(r.statistic, r.half_width, r.max_exponent);
        },
        py::arg("samples"), py::arg("A"), py::arg("L"));

  // ---- convex distance
  py::class_<DistanceCert>(m, "DistanceCert")
      .def_readonly("distance", &DistanceCert::distance)
      .def_readonly("weights", &DistanceCert::weights)
      .def_readonly("witness", &DistanceCert::witness)
      .def_readonly("gap", &DistanceCert::gap);

  m.def("min_norm_point",
        [](const Eigen::MatrixXd& pts, double tol) {
          return min_norm_point(PointSet(pts), tol);
        },
        py::arg("points"), py::arg("tol") = 1e-10);
  m.def("dist_c",
        [](const Eigen::VectorXd& x, const Eigen::MatrixXd& A, double tol) {
          return dist_c(x, PointSet(A), tol);
        },
        py::arg("x"), py::arg("A"), py::arg("tol") = 1e-10);
  m.def("dist_to_hull",
        [](const Eigen::VectorXd& x, const Eigen::MatrixXd& S, double tol) {
          const auto proj = dist_to_hull(x, PointSet(S), tol);
          return py::make_tuple(proj.cert, proj.nearest);
        },
        py::arg("x"), py::arg("S"), py::arg("tol") = 1e-10);

  // ---- extremal examples
  m.def("theta_formula", &theta_formula, py::arg("n"), py::arg("t"),
        py::arg("K"), py::arg("p"));
  m.def("theta_of_t",
        [](std::int64_t n, double t, double K, double p, double c_b) {
          const auto r = theta_of_t(n, t, K, p, c_b);
          return py::make_tuple(r.theta, r.t_used, r.below_window);
        },
        py::arg("n"), py::arg("t"), py::arg("K"), py::arg("p"),
        py::arg("c_b") = 0.05);
  m.def("norm_tail_exact",
        [](std::int64_t n, double theta, double K, double p, double t,
           const std::string& side) {
          const auto inst = make_extremal_instance(n, theta, K, p);
          return norm_tail_exact(
              inst, t, side == "lower" ? TailSide::lower : TailSide::upper);
        },
        py::arg("n"), py::arg("theta"), py::arg("K"), py::arg("p"),
        py::arg("t"), py::arg("side") = "upper");
  m.def("coordinate_tail", &coordinate_tail, py::arg("t"), py::arg("k_tilde"),
        py::arg("p"));

  // ---- harness
  m.def("clopper_pearson", &clopper_pearson, py::arg("k"), py::arg("n"),
        py::arg("confidence") = 0.99);
  m.def("mc_tail",
        [](const std::string& law_json, std::int64_t n, double t,
           const std::string& side, std::int64_t samples, std::uint64_t seed) {
          const ScalarLaw law = law_from_string(law_json);
          const auto est = estimate_tail(
              TestFunction::euclidean_norm(), ProductLaw::iid(law, n), t,
              side == "lower" ? TailSide::lower : TailSide::upper, samples,
              seed);
          return py::make_tuple(est.estimate, est.ci_low, est.ci_high);
        },
        py::arg("law_json"), py::arg("n"), py::arg("t"),
        py::arg("side") = "upper", py::arg("samples") = 100000,
        py::arg("seed") = 1);
}
