#pragma once

#include <vector>

#include "zl/common.hpp"

namespace zl {

// <s> = |s| for |s| >= 2, 1 + s^2/4 inside (C^1 across |s| = 2).
double bracket(double s);

// (x, y, xi_x, xi_y, xi_z) with x = (q, p), q, p in R^d, y in R^{d'}.
struct PhasePoint {
  Eigen::VectorXd q, p, y, xi_q, xi_p, xi_y;
  double xi_z = 0;
};

struct AdaptedCoords {
  Eigen::VectorXd nu_q, nu_p, zeta_p, zeta_q, xi_y_t, y_t;
  double xi_z = 0;

  // (zeta_p, xi~_y, zeta_q, y~): unstable block first, then stable block.
  Eigen::VectorXd transverse() const;
};

AdaptedCoords coord_change_phi(const PhasePoint& pt);

// Point on the trapped set X0 with the given (q, p) and xi_z.
PhasePoint trapped_point(const Eigen::VectorXd& q, const Eigen::VectorXd& p, int d_prime, double xi_z);

// Jacobian of (zeta_p, zeta_q, nu_q, nu_p, y~, xi~_y) with respect to
// (q, p, y, xi_q, xi_p, xi_y) at fixed xi_z, by central differences.
Mat coord_change_jacobian(const PhasePoint& pt, double step = 1e-6);

struct WeightSpec {
  double r = 8;
  int sigma = 0;  // in {-2, ..., 2}

  void validate() const;
};

// Angles of the 1/2-cones: tan theta = |stable| / |unstable|.
double ord_value(double unstable_norm, double stable_norm);
// point = (unstable block of size n_u, stable block of the rest).
double ord_sigma(const Eigen::VectorXd& point, int n_unstable, int sigma);
double weight_w(const Eigen::VectorXd& point, int n_unstable, const WeightSpec& spec);
// Two-block shorthand used on the (w, xi_w) plane for d = 1, d' = 0.
double weight_w2(double unstable, double stable, const WeightSpec& spec);

}  // namespace zl
