#pragma once

#include <vector>

#include "zl/bargmann.hpp"

namespace zl {

// Grid on R^2_w x (periodic z): w = (x, y) for d = 1, d' = 0.
struct PartialGrid {
  PhaseGrid w{2, 5.0, 40};
  int nz = 8;
  double lz = 2 * M_PI;

  void validate() const;
  // Frequencies 2 pi k / lz, k = -nz/2 .. nz/2 - 1.
  std::vector<double> frequencies() const;
};

struct PartialReport {
  double norm_ratio = 0;      // ||Bu|| / ||u||
  double reconstruction = 0;  // ||B^*Bu - u|| / ||u||
  std::vector<double> bin_frequency;
  std::vector<double> bin_mass;  // share of ||Bu||^2 per xi_z bin
  std::vector<std::string> warnings;
};

// Fourier in z, then in each xi_z bin the Bargmann transform on R^2_w with
// hbar = <xi_z>^{-1}. Grid functions are laid out u[(iz * M + i1) * M + i2].
class PartialBargmann {
 public:
  explicit PartialBargmann(const PartialGrid& grid);

  std::vector<CMat> forward(const CVec& u) const;
  CVec adjoint(const std::vector<CMat>& v) const;
  double norm_x(const CVec& u) const;
  double norm_p(const std::vector<CMat>& v) const;
  // Norms and reconstruction bin by bin, without holding every bin at once.
  PartialReport check(const CVec& u) const;

  const PartialGrid& grid() const { return grid_; }
  double hbar(int bin) const { return bins_[bin].hbar(); }

 private:
  std::vector<CMat> fourier_z(const CVec& u) const;
  CVec inverse_fourier_z(const std::vector<CMat>& uk) const;
  CMat forward_bin(int k, const CMat& uk) const;
  CMat adjoint_bin(int k, const CMat& vk) const;

  PartialGrid grid_;
  std::vector<Bargmann1D> bins_;
};

}  // namespace zl
