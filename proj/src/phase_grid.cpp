#include <cmath>

#include "zl/bargmann.hpp"

namespace zl {

std::vector<double> PhaseGrid::axis() const {
  std::vector<double> x(points_per_axis);
  const double step = h();
  for (int j = 0; j < points_per_axis; ++j) x[j] = -half_width + (j + 0.5) * step;
  return x;
}

void PhaseGrid::validate() const {
  if (dimension < 1) throw SpecError("grid", "dimension must be positive");
  if (!(half_width > 0)) throw SpecError("grid", "half width must be positive");
  if (points_per_axis < 2 || points_per_axis % 2 != 0)
    throw SpecError("grid", "points per axis must be even and at least 2");
}

bool PhaseGrid::resolves(double hbar) const { return half_width <= M_PI * hbar / h() * (1 + 1e-12); }

}  // namespace zl
