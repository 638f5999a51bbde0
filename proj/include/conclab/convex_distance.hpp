#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace conclab {

// Finite point configuration; rows are points.
struct PointSet {
  Eigen::MatrixXd points;

  explicit PointSet(Eigen::MatrixXd pts);
  std::int64_t size() const { return points.rows(); }
  std::int64_t dim() const { return points.cols(); }
};

// Certified min-norm / convex-distance result. witness is the achieved
// min-norm vector of the solved hull, weights the convex combination over
// the input rows, gap the Wolfe duality gap
//   max_q (||witness||^2 - <witness, q>).
struct DistanceCert {
  double distance = 0.0;
  Eigen::VectorXd weights;
  Eigen::VectorXd witness;
  double gap = 0.0;
};

// Min-norm point of conv(points) by Wolfe's method (major vertex selection,
// minor corral cycles that drop negative-weight vertices). Terminates when
// gap <= tol * (1 + ||witness||^2). Deterministic given the input order.
DistanceCert min_norm_point(const PointSet& points, double tol = 1e-10);

// Modified convex distance to a finite set A: min-norm point of
// U(x,A) = {(|x_i - y_i|)_i : y in A}.
DistanceCert dist_c(const Eigen::VectorXd& x, const PointSet& A,
                    double tol = 1e-10);

struct HullProjection {
  DistanceCert cert;         // over the translated set {s - x}
  Eigen::VectorXd nearest;   // the closest point of conv(S)
};

// Euclidean distance from x to conv(S).
HullProjection dist_to_hull(const Eigen::VectorXd& x, const PointSet& S,
                            double tol = 1e-10);

}  // namespace conclab
