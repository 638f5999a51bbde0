#include "conclab/convex_distance.hpp"

#include <stdexcept>
#include <vector>

namespace conclab {

namespace {

// Min-norm point of the affine hull of the rows indexed by `corral`,
// returned as barycentric coordinates. Rank deficiency is handled by the
// complete orthogonal decomposition (min-norm least squares).
Eigen::VectorXd affine_min_norm(const Eigen::MatrixXd& P,
                                const std::vector<int>& corral) {
  const auto k = static_cast<Eigen::Index>(corral.size());
  if (k == 1) {
    Eigen::VectorXd one(1);
    one(0) = 1.0;
    return one;
  }
  const Eigen::VectorXd s0 = P.row(corral[0]).transpose();
  Eigen::MatrixXd B(P.cols(), k - 1);
  for (Eigen::Index i = 1; i < k; ++i)
    B.col(i - 1) = P.row(corral[static_cast<std::size_t>(i)]).transpose() - s0;
  // y = s0 + B a; minimize ||y||  =>  B a ~ -s0 in least squares.
  const Eigen::VectorXd a =
      B.completeOrthogonalDecomposition().solve(-s0);
  Eigen::VectorXd lambda(k);
  lambda(0) = 1.0 - a.sum();
  lambda.tail(k - 1) = a;
  return lambda;
}

}  // namespace

PointSet::PointSet(Eigen::MatrixXd pts) : points(std::move(pts)) {
  if (points.rows() < 1)
    throw std::invalid_argument("PointSet: needs at least one point");
  if (!points.allFinite())
    throw std::invalid_argument("PointSet: non-finite coordinates");
}

DistanceCert min_norm_point(const PointSet& ps, double tol) {
  if (!(tol > 0.0))
    throw std::invalid_argument("min_norm_point: tol must be positive");
  const Eigen::MatrixXd& P = ps.points;
  const auto n = static_cast<int>(P.rows());

  int start = 0;
  double best = P.row(0).squaredNorm();
  for (int i = 1; i < n; ++i) {
    const double v = P.row(i).squaredNorm();
    if (v < best) {
      best = v;
      start = i;
    }
  }
  std::vector<int> corral{start};
  std::vector<double> weights{1.0};
  Eigen::VectorXd x = P.row(start).transpose();

  const int max_major = 1000 + 50 * n;
  double gap = 0.0;
  for (int major = 0; major < max_major; ++major) {
    const Eigen::VectorXd dots = P * x;
    int s = 0;
    double minDot = dots(0);
    for (int i = 1; i < n; ++i)
      if (dots(i) < minDot) {
        minDot = dots(i);
        s = i;
      }
    const double xx = x.squaredNorm();
    gap = xx - minDot;
    if (gap <= tol * (1.0 + xx)) break;

    bool already = false;
    for (int idx : corral) already = already || idx == s;
    if (already) break;  // numerically stalled; report the achieved gap
    corral.push_back(s);
    weights.push_back(0.0);

    // Minor cycles: move toward the affine minimizer, dropping vertices
    // whose weight would go negative, until the corral supports it.
    for (int minor = 0; minor < 16 * n + 64; ++minor) {
      const Eigen::VectorXd lambda = affine_min_norm(P, corral);
      bool interior = true;
      for (Eigen::Index i = 0; i < lambda.size(); ++i)
        interior = interior && lambda(i) > 1e-12;
      if (interior) {
        for (std::size_t i = 0; i < corral.size(); ++i)
          weights[i] = lambda(static_cast<Eigen::Index>(i));
        break;
      }
      double theta = 1.0;
      for (std::size_t i = 0; i < corral.size(); ++i) {
        const double li = lambda(static_cast<Eigen::Index>(i));
        if (li < 1e-12 && weights[i] > li)
          theta = std::min(theta, weights[i] / (weights[i] - li));
      }
      std::vector<int> kept_idx;
      std::vector<double> kept_w;
      for (std::size_t i = 0; i < corral.size(); ++i) {
        const double w =
            (1.0 - theta) * weights[i] +
            theta * lambda(static_cast<Eigen::Index>(i));
        if (w > 1e-14) {
          kept_idx.push_back(corral[i]);
          kept_w.push_back(w);
        }
      }
      if (kept_idx.empty()) {  // total collapse: keep the entering vertex
        kept_idx.push_back(corral.back());
        kept_w.push_back(1.0);
      }
      corral = std::move(kept_idx);
      weights = std::move(kept_w);
    }
    double wsum = 0.0;
    for (double w : weights) wsum += w;
    for (double& w : weights) w /= wsum;
    x.setZero();
    for (std::size_t i = 0; i < corral.size(); ++i)
      x += weights[i] * P.row(corral[i]).transpose();
  }

  DistanceCert cert;
  cert.weights = Eigen::VectorXd::Zero(n);
  for (std::size_t i = 0; i < corral.size(); ++i)
    cert.weights(corral[i]) += weights[i];
  cert.witness = P.transpose() * cert.weights;
  cert.distance = cert.witness.norm();
  const Eigen::VectorXd dots = P * cert.witness;
  cert.gap = cert.witness.squaredNorm() - dots.minCoeff();
  return cert;
}

DistanceCert dist_c(const Eigen::VectorXd& x, const PointSet& A, double tol) {
  if (x.size() != A.dim())
    throw std::invalid_argument("dist_c: dimension mismatch");
  Eigen::MatrixXd U(A.size(), A.dim());
  for (Eigen::Index i = 0; i < A.size(); ++i)
    U.row(i) = (x.transpose() - A.points.row(i)).cwiseAbs();
  return min_norm_point(PointSet(std::move(U)), tol);
}

HullProjection dist_to_hull(const Eigen::VectorXd& x, const PointSet& S,
                            double tol) {
  if (x.size() != S.dim())
    throw std::invalid_argument("dist_to_hull: dimension mismatch");
  Eigen::MatrixXd T = S.points;
  T.rowwise() -= x.transpose();
  DistanceCert cert = min_norm_point(PointSet(std::move(T)), tol);
  HullProjection proj;
  proj.nearest = x + cert.witness;
  proj.cert = std::move(cert);
  return proj;
}

}  // namespace conclab
