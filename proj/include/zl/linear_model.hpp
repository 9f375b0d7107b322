#pragma once

#include <functional>
#include <string>
#include <vector>

#include "zl/bargmann.hpp"
#include "zl/phase_coords.hpp"

namespace zl {

struct LinearModelSpec {
  Mat a = Mat::Constant(1, 1, 2.0);  // d x d, expanding
  Mat a_hat = Mat(0, 0);             // d' x d', contracting
  double lambda = 2;
  double t = 0;

  void validate() const;
  int d() const { return static_cast<int>(a.rows()); }
  int d_prime() const { return static_cast<int>(a_hat.rows()); }
};

using RealFn = std::function<cplx(const Eigen::VectorXd&)>;

// Middle tensor factor L~ = (|det A| / |det A^|)^{1/2} L_{A (+) A^{-1}}, with
// L_B u = |det B|^{-1/2} u(B^{-1} .); the constants cancel so L~ u = u(B^{-1} .).
class LinearModel {
 public:
  explicit LinearModel(const LinearModelSpec& spec);

  RealFn apply(const RealFn& u) const;
  // Grid version for D = 1 via 8-point Lagrange interpolation; zero off-grid.
  CVec apply_on_grid(const CVec& samples, const PhaseGrid& grid) const;
  // |det A|^{1/2} / |det A^|^{1/2}.
  double coefficient() const;
  // e^{i xi_z t}, the unitary factor along the flow.
  cplx flow_phase(double xi_z) const;
  const Mat& inverse_map() const { return binv_; }

 private:
  LinearModelSpec spec_;
  Mat binv_;
};

// Normalized Hermite functions psi_0..psi_{n-1} at y.
std::vector<double> hermite_functions(int n, double y);

struct SplitOptions {
  int basis = 12;           // Hermite functions spanning the trial space
  double basis_scale = 1.0;
  bool refine = true;       // repeat with 2M points
};

struct SplitReport {
  double norm_on_h0 = 0;
  double norm_on_h1 = 0;
  double norm_on_h1_refined = 0;
  double refinement_change = 0;  // relative
  std::vector<std::string> warnings;
};

// Weighted norm ||W^{r,sigma} B u|| on the (w, xi_w) grid (unstable w,
// stable xi_w) of L~ restricted to ker T0 and to constants (d = 1, d' = 0).
SplitReport spectral_split_check(const LinearModelSpec& spec, const PhaseGrid& grid,
                                 const WeightSpec& weight, const SplitOptions& opt = {});

}  // namespace zl
