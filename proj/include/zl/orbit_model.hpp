#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zl/common.hpp"

namespace zl {

// One prime periodic orbit, or a class of `multiplicity` orbits sharing
// period and jacobian (used when a model has too many to list one by one).
struct PrimeOrbit {
  std::string label;
  double period = 0;
  Mat jacobian;
  std::uint64_t multiplicity = 1;
};

struct SymplecticSplit {
  int d = 0;
  std::vector<cplx> unstable;  // |mu| > 1, sorted by decreasing modulus
  std::vector<cplx> stable;    // |mu| < 1, reciprocals order of unstable
  double det_stable = 0;       // |det D^s|

  std::vector<cplx> full_spectrum() const;
};

struct GrassmannFiberData {
  std::vector<cplx> eigenvalues;  // d(d+1) values
};

struct RepetitionWeight {
  double full_sqrt = 0;       // sqrt|det(I - D^-m)| from the full spectrum
  double stable_det_pow = 0;  // det_stable^(m/2)
  double stable_factor = 0;   // |det(I - (D^s)^-m)|
};

struct OrbitCatalog {
  int d = 1;
  std::vector<PrimeOrbit> orbits;
  double max_period = 0;
  std::string source;

  void sort_canonical();
  std::uint64_t total_orbits() const;
};

constexpr double kHyperbolicTol = 1e-9;

Mat standard_symplectic(int d);
bool validate_symplectic(const Mat& m, double tol);
Mat symplectic_inverse(const Mat& m);

SymplecticSplit hyperbolic_split(const Mat& jac, double tol = kHyperbolicTol);
RepetitionWeight repetition_weight(const SymplecticSplit& split, int m);
cplx exterior_trace(const SymplecticSplit& split, int m, int k);
GrassmannFiberData grassmann_fiber_jacobian(const SymplecticSplit& split);

// e_0..e_n of the given values.
std::vector<cplx> elementary_symmetric(const std::vector<cplx>& x);

// Max over unstable mu of |1/mu - nearest stable eigenvalue|.
double pairing_defect(const SymplecticSplit& split);

}  // namespace zl
