#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "zl/zero_finder.hpp"

namespace zl {

namespace {

constexpr double kHankelCondLimit = 1e8;

cplx aitken(cplx x0, cplx x1, cplx x2) {
  const cplx den = (x2 - x1) - (x1 - x0);
  if (std::abs(den) <= 1e-300 + 1e-14 * std::abs(x2)) return x2;
  return x2 - (x2 - x1) * (x2 - x1) / den;
}

}  // namespace

ResonanceSet resonances_from_moment_sequence(cplx s0, const std::vector<cplx>& m, int n_min,
                                             int count) {
  ResonanceSet res;
  res.method = "moments";
  const int n_max = static_cast<int>(m.size());
  if (count < 1 || count > 4) throw SpecError("argument", "resonance count must be in 1..4");
  if (n_min < 1 || n_min > n_max) throw SpecError("argument", "moment range is empty");
  bool all_zero = true;
  for (int n = n_min; n <= n_max; ++n) all_zero = all_zero && m[n - 1] == 0.0;
  if (all_zero) {
    res.degraded = true;
    res.diagnostic = "all moments vanish; nothing to extract";
    return res;
  }

  if (count == 1) {
    // chi_n = s0 - M_n / M_{n+1}, accelerated by Aitken's delta-squared.
    std::vector<cplx> chi;
    for (int n = n_min; n < n_max; ++n) {
      if (m[n] == 0.0) continue;
      chi.push_back(s0 - m[n - 1] / m[n]);
    }
    if (chi.size() < 3) {
      res.degraded = true;
      res.diagnostic = "need at least four nonzero moments";
      if (!chi.empty()) res.zeros.push_back({chi.back(), 1, INFINITY, "moments"});
      return res;
    }
    const std::size_t k = chi.size();
    const cplx est = aitken(chi[k - 3], chi[k - 2], chi[k - 1]);
    double resid = std::abs(chi[k - 1] - chi[k - 2]);
    if (k >= 4) resid = std::abs(est - aitken(chi[k - 4], chi[k - 3], chi[k - 2]));
    res.fit_residual = resid;
    res.zeros.push_back({est, 1, resid, "moments"});
    return res;
  }

  // Prony: M_{n+p} + c_1 M_{n+p-1} + ... + c_p M_n = 0 in least squares.
  const int p = count;
  const int rows = n_max - n_min + 1 - p;
  if (rows < p) {
    res.degraded = true;
    res.diagnostic = "moment range too short for the requested count";
    return res;
  }
  CMat h(rows, p);
  CVec b(rows);
  for (int i = 0; i < rows; ++i) {
    const int n = n_min + i;
    for (int j = 0; j < p; ++j) h(i, j) = m[n + p - 1 - j - 1];
    b(i) = -m[n + p - 1];
  }
  // Column scaling keeps the conditioning estimate meaningful across orders.
  Eigen::VectorXd scale(p);
  for (int j = 0; j < p; ++j) scale(j) = std::max(h.col(j).norm(), 1e-300);
  CMat hs = h * scale.cwiseInverse().asDiagonal();
  Eigen::JacobiSVD<CMat> svd(hs, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cond = sv(p - 1) > 0 ? sv(0) / sv(p - 1) : INFINITY;
  CVec c = scale.cwiseInverse().asDiagonal() * svd.solve(b);
  res.fit_residual = (h * c - b).norm() / std::max(b.norm(), 1e-300);
  if (!(cond <= kHankelCondLimit)) {
    res.degraded = true;
    res.diagnostic = "Hankel system condition number " + std::to_string(cond) + " exceeds 1e8";
  }
  CMat comp = CMat::Zero(p, p);
  for (int j = 0; j < p; ++j) comp(0, j) = -c(j);
  for (int i = 1; i < p; ++i) comp(i, i - 1) = 1.0;
  Eigen::ComplexEigenSolver<CMat> es(comp);
  std::vector<cplx> roots(es.eigenvalues().data(), es.eigenvalues().data() + p);
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) { return std::abs(a) > std::abs(b); });
  for (const auto& r : roots)
    if (r != 0.0) res.zeros.push_back({s0 - 1.0 / r, 1, res.fit_residual, "moments"});
  return res;
}

ResonanceSet resonances_from_moments(cplx s0, int n_min, int n_max, const OrbitCatalog& cat,
                                     const EvalPolicy& pol, int count) {
  if (n_max < 2) throw SpecError("argument", "n_max must be at least 2");
  ZetaFunction f(cat, {ZetaKind::GutzwillerVoros}, pol);
  if (s0.real() <= f.pressure())
    throw SpecError("argument", "Re(s0) must exceed the pressure estimate " + std::to_string(f.pressure()));
  return resonances_from_moment_sequence(s0, trace_moments(s0, n_max, cat, pol), n_min, count);
}

}  // namespace zl
