#include "zl/orbit_model.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace zl {

std::vector<cplx> SymplecticSplit::full_spectrum() const {
  std::vector<cplx> out(unstable);
  out.insert(out.end(), stable.begin(), stable.end());
  return out;
}

void OrbitCatalog::sort_canonical() {
  std::stable_sort(orbits.begin(), orbits.end(),
                   [](const PrimeOrbit& a, const PrimeOrbit& b) {
                     if (a.period != b.period) return a.period < b.period;
                     return a.label < b.label;
                   });
}

std::uint64_t OrbitCatalog::total_orbits() const {
  std::uint64_t n = 0;
  for (const auto& o : orbits) n += o.multiplicity;
  return n;
}

Mat standard_symplectic(int d) {
  Mat j = Mat::Zero(2 * d, 2 * d);
  j.topRightCorner(d, d) = Mat::Identity(d, d);
  j.bottomLeftCorner(d, d) = -Mat::Identity(d, d);
  return j;
}

bool validate_symplectic(const Mat& m, double tol) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0)
    throw SpecError("dimension", "symplectic check needs an even square matrix, got " +
                                     std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  Mat j = standard_symplectic(static_cast<int>(m.rows() / 2));
  return (m.transpose() * j * m - j).cwiseAbs().maxCoeff() <= tol;
}

// M^-1 = -J M^T J for symplectic M; no cancellation even when |M| is huge.
Mat symplectic_inverse(const Mat& m) {
  Mat j = standard_symplectic(static_cast<int>(m.rows() / 2));
  return -j * m.transpose() * j;
}

namespace {

std::vector<cplx> eigenvalues_by_modulus(const Mat& m) {
  Eigen::EigenSolver<Mat> es(m, false);
  if (es.info() != Eigen::Success) throw NumericalError("eigen", "eigenvalue iteration failed");
  std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + m.rows());
  std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) > std::abs(b);
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  return ev;
}

}  // namespace

SymplecticSplit hyperbolic_split(const Mat& jac, double tol) {
  if (jac.rows() != jac.cols() || jac.rows() % 2 != 0 || jac.rows() == 0)
    throw SpecError("dimension", "jacobian must be a nonempty even square matrix");
  const int d = static_cast<int>(jac.rows() / 2);
  auto ev = eigenvalues_by_modulus(jac);
  for (const auto& mu : ev)
    if (std::abs(std::abs(mu) - 1.0) <= tol)
      throw SpecError("hyperbolicity", "eigenvalue of modulus " + std::to_string(std::abs(mu)) +
                                           " is within tolerance of the unit circle");
  // The small half is taken from the inverse, where it is the large half.
  auto inv = eigenvalues_by_modulus(symplectic_inverse(jac));

  SymplecticSplit s;
  s.d = d;
  s.unstable.assign(ev.begin(), ev.begin() + d);
  for (const auto& mu : s.unstable)
    if (std::abs(mu) <= 1.0 + tol)
      throw SpecError("hyperbolicity", "unstable and stable spectra are unbalanced");

  std::vector<cplx> pool;
  for (int i = 0; i < d; ++i) pool.push_back(1.0 / inv[i]);
  for (const auto& mu : s.unstable) {
    auto target = 1.0 / mu;
    auto it = std::min_element(pool.begin(), pool.end(), [&](cplx a, cplx b) {
      return std::abs(a - target) < std::abs(b - target);
    });
    s.stable.push_back(*it);
    pool.erase(it);
  }
  double det = 1.0;
  for (const auto& mu : s.stable) det *= std::abs(mu);
  s.det_stable = det;
  return s;
}

std::vector<cplx> elementary_symmetric(const std::vector<cplx>& x) {
  std::vector<cplx> e(x.size() + 1, cplx(0));
  e[0] = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t k = i + 1; k >= 1; --k) e[k] += x[i] * e[k - 1];
  return e;
}

RepetitionWeight repetition_weight(const SymplecticSplit& split, int m) {
  if (m <= 0) throw SpecError("argument", "repetition count must be positive");
  RepetitionWeight w;
  cplx full = 1.0;
  for (const auto& mu : split.full_spectrum()) full *= 1.0 - std::pow(mu, -m);
  w.full_sqrt = std::sqrt(std::abs(full));
  w.stable_det_pow = std::pow(split.det_stable, 0.5 * m);
  cplx st = 1.0;
  for (const auto& mu : split.stable) st *= 1.0 - std::pow(mu, -m);
  w.stable_factor = std::abs(st);
  return w;
}

cplx exterior_trace(const SymplecticSplit& split, int m, int k) {
  if (k < 0 || k > split.d)
    throw SpecError("argument", "exterior degree " + std::to_string(k) + " outside [0," +
                                    std::to_string(split.d) + "]");
  std::vector<cplx> inv;
  for (const auto& mu : split.stable) inv.push_back(std::pow(mu, -m));
  return elementary_symmetric(inv)[k];
}

GrassmannFiberData grassmann_fiber_jacobian(const SymplecticSplit& split) {
  GrassmannFiberData g;
  for (const auto& ms : split.stable)
    for (const auto& mu : split.unstable) g.eigenvalues.push_back(ms / mu);
  for (const auto& mu : split.unstable) g.eigenvalues.push_back(1.0 / mu);
  return g;
}

double pairing_defect(const SymplecticSplit& split) {
  double worst = 0;
  for (const auto& mu : split.unstable) {
    double best = INFINITY;
    for (const auto& s : split.stable) best = std::min(best, std::abs(s - 1.0 / mu));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace zl
