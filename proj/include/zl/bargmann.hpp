#pragma once

#include <functional>
#include <string>
#include <vector>

#include "zl/common.hpp"

namespace zl {

struct PhaseGrid {
  int dimension = 1;
  double half_width = 8;
  int points_per_axis = 128;

  double h() const { return 2 * half_width / points_per_axis; }
  // Midpoints -L + (j + 1/2) h.
  std::vector<double> axis() const;
  void validate() const;
  // Packets of frequency up to L/hbar stay below the grid Nyquist limit.
  bool resolves(double hbar) const;
};

// a_D(hbar) = (pi hbar)^{-D/4}.
double packet_normalization(int D, double hbar);
cplx wave_packet(const Eigen::VectorXd& w, const Eigen::VectorXd& xi, double hbar,
                 const Eigen::VectorXd& wp);
cplx wave_packet_1d(double w, double xi, double hbar, double wp);
// exp(-i Omega(p, p') / 2 hbar - |p - p'|^2 / 4 hbar), Omega = xi.w' - w.xi'.
cplx bargmann_projector_kernel(const Eigen::VectorXd& p, const Eigen::VectorXd& pp, double hbar);

// One-dimensional Bargmann transform on a midpoint grid. Phase points are
// indexed iw * M + ixi. B[p, j] = conj(phi_p(x_j)) h, and the adjoint carries
// the volume h^2 / (2 pi hbar).
class Bargmann1D {
 public:
  Bargmann1D(const PhaseGrid& grid, double hbar);

  CVec forward(const CVec& u) const;
  CVec adjoint(const CVec& v) const;
  CVec project(const CVec& v) const { return forward(adjoint(v)); }

  double norm_x(const CVec& u) const;
  double norm_p(const CVec& v) const;
  // B^* v evaluated at arbitrary points via the packet formula.
  CVec adjoint_at(const CVec& v, const std::vector<double>& pts) const;
  // True when u exceeds 1e-8 at |x| > 0.9 L.
  bool boundary_mass(const CVec& u) const;

  const CMat& matrix() const { return b_; }
  const std::vector<double>& x() const { return x_; }
  double w_at(int p) const { return x_[p / m_]; }
  double xi_at(int p) const { return x_[p % m_]; }
  int m() const { return m_; }
  int phase_size() const { return m_ * m_; }
  double h() const { return h_; }
  double vol() const { return vol_; }
  double hbar() const { return hbar_; }
  const PhaseGrid& grid() const { return grid_; }

 private:
  PhaseGrid grid_;
  double hbar_, h_, vol_;
  int m_;
  std::vector<double> x_;
  CMat b_;
};

struct AffineMapSpec {
  Mat q0;                 // invertible linear part
  Eigen::VectorXd shift;  // q0 in the formulas

  void validate() const;
};

// d(Q) = |det((Q0 + Q0^{-T}) / 2)|^{1/2}.
double lift_factor(const Mat& q0);

struct LiftReport {
  double discrepancy = 0;  // ||lhs - rhs|| / ||lhs||
  double d_factor = 0;
  std::vector<std::string> warnings;
};

// Compares B L_Q B^* v with d(Q) P[e^{-i xi q0 / 2 hbar} L_{D^dag Q}] v for
// v = B u (D = 1). The phase sits inside the projector, at the output point.
LiftReport lift_check(const Bargmann1D& b, double q0, double shift, const CVec& u);

// Lagrange weights evaluating a grid function at the origin (8 points).
std::vector<std::pair<int, double>> origin_stencil(const PhaseGrid& grid);
CVec t0_project(const CVec& u, const PhaseGrid& grid);
// Singular values of B T0 B^*, largest first.
Eigen::VectorXd t0_lift_singular_values(const Bargmann1D& b);

// || [L, P] v || / ||v|| for a grid-exact isometry: the D = 2 quarter turn
// (P = P1 (x) P1) and the D = 1 reflection.
double rotation_commutator_2d(const Bargmann1D& b1, std::uint64_t seed);
double reflection_commutator_1d(const Bargmann1D& b, std::uint64_t seed);

}  // namespace zl
