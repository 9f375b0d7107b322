#include "zl/bargmann.hpp"

#include <cmath>
#include <random>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "zl/simd.hpp"

namespace zl {

double packet_normalization(int D, double hbar) { return std::pow(M_PI * hbar, -0.25 * D); }

cplx wave_packet_1d(double w, double xi, double hbar, double wp) {
  const double d = wp - w;
  return packet_normalization(1, hbar) *
         std::exp(cplx(-d * d / (2 * hbar), xi * (wp - 0.5 * w) / hbar));
}

cplx wave_packet(const Eigen::VectorXd& w, const Eigen::VectorXd& xi, double hbar,
                 const Eigen::VectorXd& wp) {
  const int D = static_cast<int>(w.size());
  const double re = -(wp - w).squaredNorm() / (2 * hbar);
  const double im = xi.dot(wp - 0.5 * w) / hbar;
  return packet_normalization(D, hbar) * std::exp(cplx(re, im));
}

cplx bargmann_projector_kernel(const Eigen::VectorXd& p, const Eigen::VectorXd& pp, double hbar) {
  const int D = static_cast<int>(p.size() / 2);
  const auto w = p.head(D), xi = p.tail(D), w2 = pp.head(D), xi2 = pp.tail(D);
  const double omega = xi.dot(w2) - w.dot(xi2);
  return std::exp(cplx(-(p - pp).squaredNorm() / (4 * hbar), -omega / (2 * hbar)));
}

Bargmann1D::Bargmann1D(const PhaseGrid& grid, double hbar) : grid_(grid), hbar_(hbar) {
  grid.validate();
  if (grid.dimension != 1) throw SpecError("grid", "Bargmann1D needs a one-dimensional grid");
  if (!(hbar > 0)) throw SpecError("grid", "hbar must be positive");
  m_ = grid.points_per_axis;
  h_ = grid.h();
  vol_ = h_ * h_ / (2 * M_PI * hbar);
  x_ = grid.axis();
  b_.resize(m_ * m_, m_);
  for (int j = 0; j < m_; ++j)
    for (int iw = 0; iw < m_; ++iw)
      for (int ix = 0; ix < m_; ++ix)
        b_(iw * m_ + ix, j) = std::conj(wave_packet_1d(x_[iw], x_[ix], hbar, x_[j])) * h_;
}

CVec Bargmann1D::forward(const CVec& u) const {
  if (u.size() != m_) throw SpecError("dimension", "grid function has the wrong length");
  CVec y(m_ * m_);
  simd::kernels().cgemv(m_ * m_, m_, b_.data(), m_ * m_, u.data(), y.data());
  return y;
}

CVec Bargmann1D::adjoint(const CVec& v) const {
  if (v.size() != m_ * m_) throw SpecError("dimension", "phase function has the wrong length");
  CVec y(m_);
  simd::kernels().cgemv_h(m_ * m_, m_, b_.data(), m_ * m_, v.data(), y.data());
  return y * (vol_ / h_);
}

double Bargmann1D::norm_x(const CVec& u) const { return std::sqrt(h_) * u.norm(); }
double Bargmann1D::norm_p(const CVec& v) const { return std::sqrt(vol_) * v.norm(); }

CVec Bargmann1D::adjoint_at(const CVec& v, const std::vector<double>& pts) const {
  CVec out(pts.size());
  for (std::size_t j = 0; j < pts.size(); ++j) {
    CompensatedSum acc;
    for (int p = 0; p < m_ * m_; ++p) acc.add(wave_packet_1d(w_at(p), xi_at(p), hbar_, pts[j]) * v(p));
    out(j) = acc.value() * vol_;
  }
  return out;
}

bool Bargmann1D::boundary_mass(const CVec& u) const {
  for (int j = 0; j < m_; ++j)
    if (std::abs(x_[j]) > 0.9 * grid_.half_width && std::abs(u(j)) > 1e-8) return true;
  return false;
}

void AffineMapSpec::validate() const {
  if (q0.rows() != q0.cols() || q0.rows() != shift.size())
    throw SpecError("dimension", "affine map parts have inconsistent sizes");
  if (!(std::abs(q0.determinant()) > 0)) throw SpecError("model", "affine map is not invertible");
}

double lift_factor(const Mat& q0) {
  const Mat m = 0.5 * (q0 + q0.inverse().transpose());
  return std::sqrt(std::abs(m.determinant()));
}

LiftReport lift_check(const Bargmann1D& b, double q0, double shift, const CVec& u) {
  if (q0 == 0) throw SpecError("model", "affine map is not invertible");
  LiftReport rep;
  rep.d_factor = lift_factor(Mat::Constant(1, 1, q0));
  const auto& x = b.x();
  const int m = b.m();
  const double hb = b.hbar(), vol = b.vol();
  const CVec v = b.forward(u);

  std::vector<double> pre(m);
  for (int j = 0; j < m; ++j) pre[j] = (x[j] - shift) / q0;
  const CVec lqu = b.adjoint_at(v, pre) / std::sqrt(std::abs(q0));
  if (b.boundary_mass(lqu)) rep.warnings.push_back("grid escape: L_Q u carries mass near the window edge");
  const CVec lhs = b.forward(lqu);

  CVec inner(m);
  for (int j = 0; j < m; ++j) {
    CompensatedSum acc;
    for (int p = 0; p < b.phase_size(); ++p) {
      const double wn = q0 * b.w_at(p) + shift, xn = b.xi_at(p) / q0;
      acc.add(wave_packet_1d(wn, xn, hb, x[j]) * std::exp(cplx(0, -xn * shift / (2 * hb))) * v(p));
    }
    inner(j) = acc.value() * vol;
  }
  const CVec rhs = rep.d_factor * b.forward(inner);
  rep.discrepancy = (lhs - rhs).norm() / lhs.norm();
  if (!b.grid().resolves(hb)) rep.warnings.push_back("xi window exceeds the grid Nyquist limit");
  return rep;
}

std::vector<std::pair<int, double>> origin_stencil(const PhaseGrid& grid) {
  const auto x = grid.axis();
  const int m = grid.points_per_axis;
  if (m < 8) throw SpecError("grid", "origin stencil needs at least 8 points");
  std::vector<std::pair<int, double>> st;
  for (int i = m / 2 - 4; i < m / 2 + 4; ++i) {
    double w = 1;
    for (int k = m / 2 - 4; k < m / 2 + 4; ++k)
      if (k != i) w *= (0.0 - x[k]) / (x[i] - x[k]);
    st.emplace_back(i, w);
  }
  return st;
}

CVec t0_project(const CVec& u, const PhaseGrid& grid) {
  cplx u0 = 0.0;
  for (const auto& [i, w] : origin_stencil(grid)) u0 += w * u(i);
  return CVec::Constant(u.size(), u0);
}

Eigen::VectorXd t0_lift_singular_values(const Bargmann1D& b) {
  const int m = b.m();
  Eigen::HouseholderQR<CMat> qr(b.matrix());
  const CMat r = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
  CVec ell = CVec::Zero(m);
  for (const auto& [i, w] : origin_stencil(b.grid())) ell(i) = w;
  const CMat t0 = CVec::Ones(m) * ell.transpose();
  const CMat s = (b.vol() / b.h()) * r * t0 * r.adjoint();
  Eigen::JacobiSVD<CMat> svd(s);
  return svd.singularValues();
}

namespace {

CVec random_cvec(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  CVec v(n);
  for (int i = 0; i < n; ++i) v(i) = cplx(g(rng), g(rng));
  return v;
}

}  // namespace

double rotation_commutator_2d(const Bargmann1D& b1, std::uint64_t seed) {
  const int m = b1.m(), n = m * m;
  const CMat p1 = (b1.vol() / b1.h()) * b1.matrix() * b1.matrix().adjoint();
  const CVec rv = random_cvec(n * n, seed);
  const CMat v = Eigen::Map<const CMat>(rv.data(), n, n);
  auto neg = [m](int a) { return (m - 1 - a / m) * m + (m - 1 - a % m); };
  // (w1, xi1 | w2, xi2) -> (-w2, -xi2 | w1, xi1).
  auto rotate = [&](const CMat& x) {
    CMat y(n, n);
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c) y(neg(c), a) = x(a, c);
    return y;
  };
  auto project = [&](const CMat& x) -> CMat { return p1 * x * p1.transpose(); };
  return (project(rotate(v)) - rotate(project(v))).norm() / v.norm();
}

double reflection_commutator_1d(const Bargmann1D& b, std::uint64_t seed) {
  const int m = b.m(), n = m * m;
  const CVec v = random_cvec(n, seed);
  auto reflect = [m, n](const CVec& x) {
    CVec y(n);
    for (int a = 0; a < n; ++a) y((m - 1 - a / m) * m + (m - 1 - a % m)) = x(a);
    return y;
  };
  return (b.project(reflect(v)) - reflect(b.project(v))).norm() / v.norm();
}

}  // namespace zl
