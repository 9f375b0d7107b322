#pragma once

#include <vector>

#include "zl/zeta_engine.hpp"

namespace zl {

// Cycle expansion: exp(E(s)) re-expanded as a Dirichlet series
// sum_j g_j e^{-s tau_j} truncated at the period horizon. Every retained
// coefficient only involves complete period shells, so the series continues
// the truncated product below the pressure.
class CycleExpansion {
 public:
  explicit CycleExpansion(const ZetaFunction& f, std::size_t cap = 200000);

  cplx eval(cplx s) const;
  std::vector<cplx> eval_batch(const std::vector<cplx>& s) const;

  // When every T is an integer multiple of delta the series is a polynomial
  // in z = e^{-s delta}.
  bool lattice() const { return lattice_; }
  double delta() const { return delta_; }
  const std::vector<cplx>& polynomial() const { return poly_; }
  std::size_t size() const { return lattice_ ? poly_.size() : taus_.size(); }
  double order_horizon() const { return horizon_; }

 private:
  bool lattice_ = false;
  double delta_ = 0;
  double horizon_ = 0;
  std::vector<cplx> poly_;
  std::vector<double> taus_;
  std::vector<cplx> coefs_;
};

}  // namespace zl
