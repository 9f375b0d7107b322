#include "zl/linear_model.hpp"

#include <cmath>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "zl/simd.hpp"

namespace zl {

void LinearModelSpec::validate() const {
  if (a.rows() < 1 || a.rows() != a.cols()) throw SpecError("model", "A must be a nonempty square matrix");
  if (a_hat.rows() != a_hat.cols()) throw SpecError("model", "A^ must be square");
  if (!(lambda >= 1)) throw SpecError("model", "lambda must be at least 1");
  Eigen::JacobiSVD<Mat> sa(a);
  if (sa.singularValues().minCoeff() == 0) throw SpecError("model", "A is singular");
  if (1.0 / sa.singularValues().minCoeff() > (1 + 1e-12) / lambda)
    throw SpecError("model", "||A^{-1}|| exceeds 1/lambda");
  if (a_hat.rows() > 0) {
    Eigen::JacobiSVD<Mat> sh(a_hat);
    if (sh.singularValues().maxCoeff() > (1 + 1e-12) / lambda)
      throw SpecError("model", "||A^|| exceeds 1/lambda");
    if (sh.singularValues().minCoeff() == 0) throw SpecError("model", "A^ is singular");
  }
}

LinearModel::LinearModel(const LinearModelSpec& spec) : spec_(spec) {
  spec.validate();
  const int d = spec.d(), dp = spec.d_prime();
  binv_ = Mat::Zero(d + dp, d + dp);
  binv_.topLeftCorner(d, d) = spec.a.inverse();
  if (dp > 0) binv_.bottomRightCorner(dp, dp) = spec.a_hat;
}

RealFn LinearModel::apply(const RealFn& u) const {
  const Mat binv = binv_;
  return [u, binv](const Eigen::VectorXd& w) { return u(binv * w); };
}

CVec LinearModel::apply_on_grid(const CVec& samples, const PhaseGrid& grid) const {
  if (binv_.rows() != 1) throw SpecError("dimension", "grid application supports D = 1 only");
  const auto x = grid.axis();
  const int m = grid.points_per_axis;
  const double h = grid.h(), s = binv_(0, 0);
  CVec out = CVec::Zero(m);
  for (int j = 0; j < m; ++j) {
    const double y = s * x[j];
    const double pos = (y + grid.half_width) / h - 0.5;
    if (std::abs(pos - std::round(pos)) < 1e-12 && std::round(pos) >= 0 && std::round(pos) < m) {
      out(j) = samples(static_cast<int>(std::round(pos)));
      continue;
    }
    int lo = static_cast<int>(std::floor(pos)) - 3;
    if (lo < 0 || lo + 7 >= m) continue;
    cplx acc = 0.0;
    for (int i = lo; i < lo + 8; ++i) {
      double w = 1;
      for (int k = lo; k < lo + 8; ++k)
        if (k != i) w *= (y - x[k]) / (x[i] - x[k]);
      acc += w * samples(i);
    }
    out(j) = acc;
  }
  return out;
}

double LinearModel::coefficient() const {
  const double da = std::abs(spec_.a.determinant());
  const double dh = spec_.d_prime() > 0 ? std::abs(spec_.a_hat.determinant()) : 1.0;
  return std::sqrt(da / dh);
}

cplx LinearModel::flow_phase(double xi_z) const { return std::exp(cplx(0, xi_z * spec_.t)); }

std::vector<double> hermite_functions(int n, double y) {
  std::vector<double> psi(std::max(n, 2));
  psi[0] = std::pow(M_PI, -0.25) * std::exp(-0.5 * y * y);
  psi[1] = std::sqrt(2.0) * y * psi[0];
  for (int k = 1; k + 1 < n; ++k)
    psi[k + 1] = std::sqrt(2.0 / (k + 1)) * y * psi[k] - std::sqrt(double(k) / (k + 1)) * psi[k - 1];
  psi.resize(n);
  return psi;
}

namespace {

// Rows W(p) sqrt(vol) (B U)(p, :) for U given on the grid, hbar = 1.
// B[(w, xi), j] = a h e^{i xi w / 2} e^{-i xi x_j} e^{-(x_j - w)^2 / 2}.
CMat weighted_bargmann(const PhaseGrid& grid, const WeightSpec& weight, const CMat& u) {
  const auto x = grid.axis();
  const int m = grid.points_per_axis, ncol = static_cast<int>(u.cols());
  const double h = grid.h(), vol = h * h / (2 * M_PI), a = packet_normalization(1, 1.0);
  CMat e(m, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) e(i, j) = std::exp(cplx(0, -x[i] * x[j]));
  CMat out(static_cast<long>(m) * m, ncol);
  CMat gw(m, ncol), blk(m, ncol);
  for (int iw = 0; iw < m; ++iw) {
    const double w = x[iw];
    for (int j = 0; j < m; ++j) gw.row(j) = std::exp(-0.5 * (x[j] - w) * (x[j] - w)) * u.row(j);
    simd::kernels().cgemm(m, ncol, m, e.data(), m, gw.data(), m, blk.data(), m);
    for (int i = 0; i < m; ++i) {
      const cplx f = a * h * std::exp(cplx(0, 0.5 * x[i] * w)) * weight_w2(w, x[i], weight) * std::sqrt(vol);
      out.row(static_cast<long>(iw) * m + i) = f * blk.row(i);
    }
  }
  return out;
}

struct H1Norms {
  double h0, h1;
};

H1Norms split_norms(const LinearModel& model, const PhaseGrid& grid, const WeightSpec& weight,
                    const SplitOptions& opt) {
  const auto x = grid.axis();
  const int m = grid.points_per_axis, n = opt.basis;
  const double binv = model.inverse_map()(0, 0);
  // Trial space: span of psi_k(x/s) with u(0) = 0.
  const auto f0 = hermite_functions(n, 0.0);
  Mat row(1, n);
  for (int k = 0; k < n; ++k) row(0, k) = f0[k];
  Eigen::JacobiSVD<Mat> svd0(row, Eigen::ComputeFullV);
  const Mat z = svd0.matrixV().rightCols(n - 1);
  Mat f(m, n), g(m, n);
  for (int j = 0; j < m; ++j) {
    const auto pf = hermite_functions(n, x[j] / opt.basis_scale);
    const auto pg = hermite_functions(n, binv * x[j] / opt.basis_scale);
    for (int k = 0; k < n; ++k) {
      f(j, k) = pf[k];
      g(j, k) = pg[k];
    }
  }
  CMat u(m, 2 * (n - 1) + 2);
  u.leftCols(n - 1) = (f * z).cast<cplx>();
  u.middleCols(n - 1, n - 1) = (g * z).cast<cplx>();
  // Constant and its image, sampled through the model itself.
  const RealFn one = [](const Eigen::VectorXd&) { return cplx(1.0); };
  const RealFn lone = model.apply(one);
  Eigen::VectorXd pt(1);
  for (int j = 0; j < m; ++j) {
    u(j, 2 * (n - 1)) = 1.0;
    pt(0) = x[j];
    u(j, 2 * (n - 1) + 1) = lone(pt);
  }
  const CMat wb = weighted_bargmann(grid, weight, u);
  const CMat t = wb.leftCols(n - 1), s = wb.middleCols(n - 1, n - 1);
  Eigen::HouseholderQR<CMat> qr(t);
  const CMat r = qr.matrixQR().topRows(n - 1).triangularView<Eigen::Upper>();
  // S R^{-1}; its largest singular value is the restricted operator norm.
  const CMat sr = r.transpose().triangularView<Eigen::Lower>().solve(s.transpose()).transpose();
  Eigen::HouseholderQR<CMat> qs(sr);
  const CMat rs = qs.matrixQR().topRows(n - 1).triangularView<Eigen::Upper>();
  Eigen::JacobiSVD<CMat> svd(rs);
  return {wb.col(2 * (n - 1) + 1).norm() / wb.col(2 * (n - 1)).norm(), svd.singularValues()(0)};
}

}  // namespace

SplitReport spectral_split_check(const LinearModelSpec& spec, const PhaseGrid& grid,
                                 const WeightSpec& weight, const SplitOptions& opt) {
  grid.validate();
  weight.validate();
  if (spec.d() != 1 || spec.d_prime() != 0)
    throw SpecError("model", "spectral split check supports d = 1, d' = 0");
  if (grid.dimension != 1) throw SpecError("grid", "spectral split check needs a one-dimensional grid");
  if (opt.basis < 2) throw SpecError("argument", "basis needs at least two functions");
  LinearModel model(spec);
  SplitReport rep;
  if (!grid.resolves(1.0)) rep.warnings.push_back("xi window exceeds the grid Nyquist limit (L > pi/h)");
  const auto base = split_norms(model, grid, weight, opt);
  rep.norm_on_h0 = base.h0;
  rep.norm_on_h1 = base.h1;
  if (opt.refine) {
    PhaseGrid fine = grid;
    fine.points_per_axis *= 2;
    rep.norm_on_h1_refined = split_norms(model, fine, weight, opt).h1;
    rep.refinement_change = std::abs(rep.norm_on_h1_refined - rep.norm_on_h1) / rep.norm_on_h1;
    if (rep.refinement_change > 0.1)
      rep.warnings.push_back("discretization dominates: norm moved by more than 10% under M -> 2M");
  }
  return rep;
}

}  // namespace zl
