#include "zl/dirichlet.hpp"

#include <algorithm>
#include <cmath>

#include "zl/simd.hpp"

namespace zl {

namespace {

constexpr double kLatticeTol = 1e-9;

using Series = std::vector<std::pair<double, cplx>>;

// Sorted by tau; entries closer than the tolerance are merged.
Series normalize(Series s) {
  std::sort(s.begin(), s.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Series out;
  for (const auto& [t, c] : s) {
    if (!out.empty() && std::abs(out.back().first - t) <= kLatticeTol * std::max(1.0, t))
      out.back().second += c;
    else
      out.emplace_back(t, c);
  }
  return out;
}

}  // namespace

CycleExpansion::CycleExpansion(const ZetaFunction& f, std::size_t cap) {
  const auto& terms = f.terms();
  if (terms.empty()) {
    lattice_ = true;
    delta_ = 1;
    poly_ = {1.0};
    return;
  }
  double tmax = 0, tmin = INFINITY;
  for (const auto& t : terms) {
    tmax = std::max(tmax, t.T);
    tmin = std::min(tmin, t.T);
  }
  horizon_ = std::isfinite(f.horizon()) ? f.horizon() : tmax;

  delta_ = tmin;
  lattice_ = true;
  for (const auto& t : terms) {
    const double q = t.T / delta_;
    if (std::abs(q - std::round(q)) > kLatticeTol * std::max(1.0, q)) {
      lattice_ = false;
      break;
    }
  }

  if (lattice_) {
    const int n = static_cast<int>(std::floor(horizon_ / delta_ + kLatticeTol));
    if (static_cast<std::size_t>(n) > cap) throw NumericalError("capacity", "cycle expansion order exceeds cap");
    std::vector<CompensatedSum> fj(n + 1);
    for (const auto& t : terms) {
      const long j = std::lround(t.T / delta_);
      if (j <= n) fj[j].add(t.coef);
    }
    std::vector<cplx> fv(n + 1);
    for (int j = 0; j <= n; ++j) fv[j] = fj[j].value();
    // exp(-F) with F = sum f_j z^j: N g_N = -sum_j j f_j g_{N-j}.
    poly_.assign(n + 1, 0.0);
    poly_[0] = 1.0;
    for (int k = 1; k <= n; ++k) {
      CompensatedSum acc;
      for (int j = 1; j <= k; ++j) acc.add(static_cast<double>(j) * fv[j] * poly_[k - j]);
      poly_[k] = -acc.value() / static_cast<double>(k);
    }
    return;
  }

  // Generic periods: exp(-F) = sum_n (-F)^n / n!, each power truncated at the horizon.
  Series neg_f;
  for (const auto& t : terms)
    if (t.T <= horizon_ * (1 + 1e-12)) neg_f.emplace_back(t.T, -t.coef);
  neg_f = normalize(std::move(neg_f));
  Series total{{0.0, 1.0}};
  Series power{{0.0, 1.0}};
  for (int n = 1; !power.empty(); ++n) {
    Series next;
    for (const auto& [ta, ca] : power)
      for (const auto& [tb, cb] : neg_f) {
        if (ta + tb > horizon_ * (1 + 1e-12)) break;
        next.emplace_back(ta + tb, ca * cb / static_cast<double>(n));
      }
    power = normalize(std::move(next));
    if (power.size() > cap) throw NumericalError("capacity", "cycle expansion exceeds term cap");
    total.insert(total.end(), power.begin(), power.end());
  }
  total = normalize(std::move(total));
  for (const auto& [t, c] : total) {
    taus_.push_back(t);
    coefs_.push_back(c);
  }
}

cplx CycleExpansion::eval(cplx s) const {
  if (lattice_) {
    const cplx z = std::exp(-s * delta_);
    cplx acc = 0.0;
    for (auto it = poly_.rbegin(); it != poly_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }
  CompensatedSum acc;
  for (std::size_t i = 0; i < taus_.size(); ++i) acc.add(coefs_[i] * std::exp(-s * taus_[i]));
  return acc.value();
}

std::vector<cplx> CycleExpansion::eval_batch(const std::vector<cplx>& s) const {
  std::vector<cplx> out(s.size());
  if (!lattice_) {
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = eval(s[i]);
    return out;
  }
  std::vector<cplx> z(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) z[i] = std::exp(-s[i] * delta_);
  simd::kernels().horner_batch(poly_.data(), static_cast<int>(poly_.size()), z.data(), out.data(),
                               static_cast<int>(z.size()));
  return out;
}

}  // namespace zl
