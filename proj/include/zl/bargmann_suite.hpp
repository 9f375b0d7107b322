#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zl/bargmann.hpp"
#include "zl/linear_model.hpp"
#include "zl/partial_bargmann.hpp"

namespace zl {

struct CheckResult {
  std::string name;
  double measured = 0;
  double tolerance = 0;
  bool pass = false;
  std::string note;
};

struct SuiteOptions {
  PhaseGrid grid{1, 8, 128};
  double hbar = 1;
  // Affine lifts need a wider window than the base suite.
  PhaseGrid lift_grid{1, 12, 192};
  int lift_maps = 10;
  std::uint64_t seed = 1;
  bool partial = true;
  bool commutators = true;
};

// Test functions used throughout: e^{-x^2/2}(1 + 0.3x) and x^2 e^{-(x-1)^2/2} e^{ix}.
std::vector<CVec> bargmann_test_class(const PhaseGrid& grid);

// Sup of |P[p, p'] / vol - K(p, p')| with both phase points in the inner half
// of the window.
double kernel_discrepancy(const Bargmann1D& b);

std::vector<CheckResult> bargmann_verify(const SuiteOptions& opt);

struct SplitComparison {
  SplitReport a2, a4;
  double ratio = 0;  // norm_on_h1(A = 2) / norm_on_h1(A = 4)
};

SplitComparison spectral_split_comparison(const PhaseGrid& grid, const WeightSpec& weight,
                                          const SplitOptions& opt = {});

}  // namespace zl
