#include "zl/phase_coords.hpp"

#include <algorithm>
#include <cmath>

namespace zl {

double bracket(double s) {
  const double a = std::abs(s);
  return a >= 2 ? a : 1 + 0.25 * a * a;
}

Eigen::VectorXd AdaptedCoords::transverse() const {
  Eigen::VectorXd out(zeta_p.size() + xi_y_t.size() + zeta_q.size() + y_t.size());
  out << zeta_p, xi_y_t, zeta_q, y_t;
  return out;
}

AdaptedCoords coord_change_phi(const PhasePoint& pt) {
  const double b = bracket(pt.xi_z);
  const double s = pt.xi_z;
  const double a = 1.0 / std::sqrt(2.0 * b);
  AdaptedCoords c;
  c.xi_z = s;
  c.zeta_p = a * (b * pt.xi_p + s * pt.q);
  c.zeta_q = a * (b * pt.xi_q - s * pt.p);
  c.nu_q = a * (s * pt.q - b * pt.xi_p);
  c.nu_p = a * (s * pt.p + b * pt.xi_q);
  c.y_t = std::sqrt(b) * pt.y;
  c.xi_y_t = std::sqrt(b) * pt.xi_y;
  if (s < 0) {
    c.zeta_p = -c.zeta_p;
    c.nu_q = -c.nu_q;
  }
  return c;
}

PhasePoint trapped_point(const Eigen::VectorXd& q, const Eigen::VectorXd& p, int d_prime, double xi_z) {
  PhasePoint pt;
  const double b = bracket(xi_z);
  pt.q = q;
  pt.p = p;
  pt.xi_p = -xi_z / b * q;
  pt.xi_q = xi_z / b * p;
  pt.y = Eigen::VectorXd::Zero(d_prime);
  pt.xi_y = Eigen::VectorXd::Zero(d_prime);
  pt.xi_z = xi_z;
  return pt;
}

namespace {

Eigen::VectorXd pack_in(const PhasePoint& p) {
  Eigen::VectorXd v(2 * p.q.size() + 2 * p.y.size() + 2 * p.q.size());
  v << p.q, p.p, p.y, p.xi_q, p.xi_p, p.xi_y;
  return v;
}

PhasePoint unpack_in(const Eigen::VectorXd& v, int d, int dp, double xi_z) {
  PhasePoint p;
  p.q = v.segment(0, d);
  p.p = v.segment(d, d);
  p.y = v.segment(2 * d, dp);
  p.xi_q = v.segment(2 * d + dp, d);
  p.xi_p = v.segment(3 * d + dp, d);
  p.xi_y = v.segment(4 * d + dp, dp);
  p.xi_z = xi_z;
  return p;
}

Eigen::VectorXd pack_out(const AdaptedCoords& c) {
  Eigen::VectorXd v(4 * c.zeta_p.size() + 2 * c.y_t.size());
  v << c.zeta_p, c.zeta_q, c.nu_q, c.nu_p, c.y_t, c.xi_y_t;
  return v;
}

}  // namespace

Mat coord_change_jacobian(const PhasePoint& pt, double step) {
  const int d = static_cast<int>(pt.q.size()), dp = static_cast<int>(pt.y.size());
  const Eigen::VectorXd x0 = pack_in(pt);
  const int n = static_cast<int>(x0.size());
  Mat jac(n, n);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd xp = x0, xm = x0;
    xp(i) += step;
    xm(i) -= step;
    jac.col(i) = (pack_out(coord_change_phi(unpack_in(xp, d, dp, pt.xi_z))) -
                  pack_out(coord_change_phi(unpack_in(xm, d, dp, pt.xi_z)))) /
                 (2 * step);
  }
  return jac;
}

void WeightSpec::validate() const {
  if (!(r > 0)) throw SpecError("weight", "r must be positive");
  if (sigma < -2 || sigma > 2) throw SpecError("weight", "sigma must lie in {-2,...,2}");
}

double ord_value(double unstable_norm, double stable_norm) {
  if (unstable_norm == 0 && stable_norm == 0) return -1.0;
  static const double th_plus = std::atan(0.5), th_minus = std::atan(2.0);
  const double th = std::atan2(stable_norm, unstable_norm);
  const double t = std::clamp((th - th_plus) / (th_minus - th_plus), 0.0, 1.0);
  return -std::cos(M_PI * t);
}

double ord_sigma(const Eigen::VectorXd& point, int n_unstable, int sigma) {
  const double u = point.head(n_unstable).norm() * std::pow(2.0, -0.5 * sigma);
  const double s = point.tail(point.size() - n_unstable).norm() * std::pow(2.0, 0.5 * sigma);
  return ord_value(u, s);
}

double weight_w(const Eigen::VectorXd& point, int n_unstable, const WeightSpec& spec) {
  return std::pow(bracket(point.norm()), spec.r * ord_sigma(point, n_unstable, spec.sigma));
}

double weight_w2(double unstable, double stable, const WeightSpec& spec) {
  const double u = std::abs(unstable) * std::pow(2.0, -0.5 * spec.sigma);
  const double s = std::abs(stable) * std::pow(2.0, 0.5 * spec.sigma);
  return std::pow(bracket(std::hypot(unstable, stable)), spec.r * ord_value(u, s));
}

}  // namespace zl
