#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "zl/zeta_engine.hpp"

namespace zl {

using ComplexFn = std::function<cplx(cplx)>;

struct Rectangle {
  double re_min = 0, re_max = 1, im_min = 0, im_max = 1;

  void validate() const;
  bool contains(cplx s, double margin = 0) const;
  cplx center() const { return {0.5 * (re_min + re_max), 0.5 * (im_min + im_max)}; }
  Rectangle dilated(double factor) const;
};

struct Zero {
  cplx s;
  int multiplicity = 1;
  double residual = 0;  // |f| at s
  std::string method;
};

struct ResonanceSet {
  std::vector<Zero> zeros;
  std::string method;
  // Clusters the finder could not split: (box centre, count).
  std::vector<std::pair<cplx, int>> unresolved;
  double fit_residual = 0;  // moments only
  bool degraded = false;
  std::string diagnostic;
};

// Winding number of f along the boundary; phase steps are refined below pi/2.
// A suspected boundary zero triggers dilation of the box about its centre by
// 1 + j 1e-4, j = 1..10.
int argument_principle_count(const ComplexFn& f, const Rectangle& rect, int n_boundary = 64);

struct ZeroFinderOptions {
  int n_boundary = 64;
  int max_depth = 40;
  int newton_iters = 60;
};

ResonanceSet find_zeros(const ComplexFn& f, const Rectangle& rect, double tol,
                        const ZeroFinderOptions& opt = {});

// Zeros (with multiplicity) with Re in [strip.first, strip.second] and Im in
// the half-open window [window.first, window.second).
int weyl_strip_count(const ResonanceSet& zeros, std::pair<double, double> strip,
                     std::pair<double, double> window);

// Dominant resonances from Tr R(s0)^n, n = n_min..n_max: Aitken-accelerated
// ratio for count = 1, Prony fit of order `count` otherwise.
ResonanceSet resonances_from_moments(cplx s0, int n_min, int n_max, const OrbitCatalog& cat,
                                     const EvalPolicy& pol, int count);
ResonanceSet resonances_from_moment_sequence(cplx s0, const std::vector<cplx>& moments, int n_min,
                                             int count);

}  // namespace zl
