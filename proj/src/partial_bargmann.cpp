#include "zl/partial_bargmann.hpp"

#include <cmath>

#include "zl/phase_coords.hpp"

namespace zl {

void PartialGrid::validate() const {
  w.validate();
  if (w.dimension != 2) throw SpecError("grid", "partial Bargmann grid needs w in R^2");
  if (nz < 2 || nz % 2 != 0) throw SpecError("grid", "nz must be even and at least 2");
  if (!(lz > 0)) throw SpecError("grid", "lz must be positive");
}

std::vector<double> PartialGrid::frequencies() const {
  std::vector<double> f;
  for (int k = -nz / 2; k < nz / 2; ++k) f.push_back(2 * M_PI * k / lz);
  return f;
}

PartialBargmann::PartialBargmann(const PartialGrid& grid) : grid_(grid) {
  grid.validate();
  PhaseGrid g1{1, grid.w.half_width, grid.w.points_per_axis};
  for (double f : grid.frequencies()) bins_.emplace_back(g1, 1.0 / bracket(f));
}

std::vector<CMat> PartialBargmann::fourier_z(const CVec& u) const {
  const int m = grid_.w.points_per_axis, nz = grid_.nz;
  if (u.size() != static_cast<long>(nz) * m * m) throw SpecError("dimension", "grid function has the wrong length");
  const auto freq = grid_.frequencies();
  const double dz = grid_.lz / nz;
  std::vector<CMat> out;
  for (int k = 0; k < nz; ++k) {
    CMat uk = CMat::Zero(m, m);
    for (int l = 0; l < nz; ++l) {
      const cplx ph = std::exp(cplx(0, -freq[k] * l * dz)) * dz;
      for (int i1 = 0; i1 < m; ++i1)
        for (int i2 = 0; i2 < m; ++i2) uk(i1, i2) += ph * u((static_cast<long>(l) * m + i1) * m + i2);
    }
    out.push_back(std::move(uk));
  }
  return out;
}

CVec PartialBargmann::inverse_fourier_z(const std::vector<CMat>& uk) const {
  const int m = grid_.w.points_per_axis, nz = grid_.nz;
  const auto freq = grid_.frequencies();
  const double dz = grid_.lz / nz;
  CVec u = CVec::Zero(static_cast<long>(nz) * m * m);
  for (int l = 0; l < nz; ++l)
    for (int k = 0; k < nz; ++k) {
      const cplx ph = std::exp(cplx(0, freq[k] * l * dz)) / grid_.lz;
      for (int i1 = 0; i1 < m; ++i1)
        for (int i2 = 0; i2 < m; ++i2) u((static_cast<long>(l) * m + i1) * m + i2) += ph * uk[k](i1, i2);
    }
  return u;
}

CMat PartialBargmann::forward_bin(int k, const CMat& uk) const {
  const CMat& b = bins_[k].matrix();
  return b * uk * b.transpose();
}

CMat PartialBargmann::adjoint_bin(int k, const CMat& vk) const {
  const auto& b1 = bins_[k];
  const CMat a = (b1.vol() / b1.h()) * b1.matrix().adjoint();
  return a * vk * a.transpose();
}

std::vector<CMat> PartialBargmann::forward(const CVec& u) const {
  auto uk = fourier_z(u);
  std::vector<CMat> out;
  for (int k = 0; k < grid_.nz; ++k) out.push_back(forward_bin(k, uk[k]));
  return out;
}

CVec PartialBargmann::adjoint(const std::vector<CMat>& v) const {
  if (static_cast<int>(v.size()) != grid_.nz) throw SpecError("dimension", "wrong number of xi_z bins");
  std::vector<CMat> uk;
  for (int k = 0; k < grid_.nz; ++k) uk.push_back(adjoint_bin(k, v[k]));
  return inverse_fourier_z(uk);
}

double PartialBargmann::norm_x(const CVec& u) const {
  const double h = grid_.w.h();
  return std::sqrt(grid_.lz / grid_.nz * h * h) * u.norm();
}

double PartialBargmann::norm_p(const std::vector<CMat>& v) const {
  double s = 0;
  for (int k = 0; k < grid_.nz; ++k) s += bins_[k].vol() * bins_[k].vol() * v[k].squaredNorm();
  return std::sqrt(s / grid_.lz);
}

PartialReport PartialBargmann::check(const CVec& u) const {
  PartialReport rep;
  auto uk = fourier_z(u);
  std::vector<CMat> back;
  double total = 0;
  for (int k = 0; k < grid_.nz; ++k) {
    const CMat vk = forward_bin(k, uk[k]);
    const double mass = bins_[k].vol() * bins_[k].vol() * vk.squaredNorm() / grid_.lz;
    rep.bin_mass.push_back(mass);
    total += mass;
    back.push_back(adjoint_bin(k, vk));
  }
  for (int k = 0; k < grid_.nz; ++k)
    if (rep.bin_mass[k] > 1e-12 * total && !bins_[k].grid().resolves(bins_[k].hbar()))
      rep.warnings.push_back("xi_z bin " + std::to_string(k) + " exceeds the grid Nyquist limit");
  rep.bin_frequency = grid_.frequencies();
  const double nu = norm_x(u);
  if (nu == 0) return rep;
  for (auto& m : rep.bin_mass) m /= total;
  rep.norm_ratio = std::sqrt(total) / nu;
  rep.reconstruction = norm_x(inverse_fourier_z(back) - u) / nu;
  return rep;
}

}  // namespace zl
