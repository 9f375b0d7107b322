#include "zl/zeta_engine.hpp"

#include <algorithm>
#include <cmath>

namespace zl {

void EvalPolicy::validate() const {
  if (m_max < 1) throw SpecError("policy", "m_max must be >= 1");
  if (k_cutoff < 1) throw SpecError("policy", "k_cutoff must be >= 1");
  if (horizon < 0) throw SpecError("policy", "horizon must be nonnegative");
}

namespace {

struct OrbitWeights {
  SymplecticSplit split;
  std::vector<cplx> full;
  std::vector<cplx> fiber;
};

cplx weight(const ZetaSpec& spec, const OrbitWeights& o, double period, int m, int k_cutoff) {
  switch (spec.kind) {
    case ZetaKind::Smale: {
      const double x = std::exp(-m * period);
      return (1.0 - std::pow(x, k_cutoff)) / (1.0 - x);
    }
    case ZetaKind::GutzwillerVoros: {
      cplx p = 1.0;
      for (const auto& mu : o.full) p *= 1.0 - std::pow(mu, m);
      return 1.0 / std::sqrt(std::abs(p));
    }
    case ZetaKind::Fredholm:
    case ZetaKind::Grassmann: {
      cplx den = 1.0;
      for (const auto& mu : o.full) den *= 1.0 - std::pow(mu, -m);
      cplx w = std::pow(o.split.det_stable, 0.5 * m) * exterior_trace(o.split, m, spec.k) /
               std::abs(den);
      if (spec.kind == ZetaKind::Fredholm) return w;
      // |prod y| |prod (1 - 1/y)| taken factor by factor as prod |y - 1|;
      // prod y alone underflows for large m.
      std::vector<cplx> y;
      double den_y = 1.0;
      for (const auto& nu : o.fiber) {
        y.push_back(std::pow(nu, m));
        den_y *= std::abs(y.back() - 1.0);
      }
      return w * elementary_symmetric(y)[spec.ell] / den_y;
    }
  }
  return 0.0;
}

}  // namespace

ZetaFunction::ZetaFunction(const OrbitCatalog& cat, ZetaSpec spec, const EvalPolicy& pol)
    : k_cutoff_(pol.k_cutoff), d_(cat.d), kind_(spec.kind) {
  pol.validate();
  const int d = cat.d;
  if ((spec.kind == ZetaKind::Fredholm || spec.kind == ZetaKind::Grassmann) &&
      (spec.k < 0 || spec.k > d))
    throw SpecError("argument", "k = " + std::to_string(spec.k) + " outside [0," +
                                    std::to_string(d) + "]");
  if (spec.kind == ZetaKind::Grassmann && (spec.ell < 0 || spec.ell > d * (d + 1)))
    throw SpecError("argument", "ell = " + std::to_string(spec.ell) + " outside [0," +
                                    std::to_string(d * (d + 1)) + "]");

  const double cat_h = cat.max_period > 0 ? cat.max_period : INFINITY;
  horizon_ = pol.horizon > 0 ? pol.horizon : cat_h;
  const double cut = pol.horizon_cut ? horizon_ * (1 + 1e-12) : INFINITY;
  const double cat_cut = pol.horizon_cut ? cat_h * (1 + 1e-12) : INFINITY;

  // Prime weights over the full catalog horizon feed the growth estimate.
  std::vector<std::pair<double, double>> prime_mass;
  for (const auto& orb : cat.orbits) {
    if (orb.jacobian.rows() != 2 * d || orb.jacobian.cols() != 2 * d)
      throw SpecError("dimension", "orbit " + orb.label + " has a jacobian of the wrong size");
    if (orb.period > cat_cut) continue;
    OrbitWeights ow;
    ow.split = hyperbolic_split(orb.jacobian);
    ow.full = ow.split.full_spectrum();
    if (spec.kind == ZetaKind::Grassmann) ow.fiber = grassmann_fiber_jacobian(ow.split).eigenvalues;
    const double mult = static_cast<double>(orb.multiplicity);

    const cplx w1 = weight(spec, ow, orb.period, 1, pol.k_cutoff);
    prime_mass.emplace_back(orb.period, mult * std::abs(w1));

    if (orb.period <= cut) {
      for (int m = 1; m <= pol.m_max; ++m) {
        const double T = m * orb.period;
        if (T > cut) break;
        const cplx w = m == 1 ? w1 : weight(spec, ow, orb.period, m, pol.k_cutoff);
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
          throw NumericalError("overflow", "non-finite weight for orbit " + orb.label + " at m = " + std::to_string(m));
        terms_.push_back({T, orb.period, mult * w / static_cast<double>(m)});
      }
    }
    // Repetitions past m_max, geometric in m.
    const int m1 = pol.m_max + 1;
    const double a = mult * std::abs(weight(spec, ow, orb.period, m1, pol.k_cutoff)) / m1;
    const double b = mult * std::abs(weight(spec, ow, orb.period, m1 + 1, pol.k_cutoff)) / (m1 + 1);
    if (a > 0) tails_.push_back({a, m1 * orb.period, b / a, orb.period});
    if (spec.kind == ZetaKind::Smale) {
      k_tail_periods_.push_back(orb.period);
      k_tail_periods_.push_back(mult);
    }
  }

  if (!std::isnan(pol.pressure_estimate)) {
    pressure_ = pol.pressure_estimate;
  } else if (std::isfinite(cat_h)) {
    double s_half = 0, s_full = 0;
    for (const auto& [t, w] : prime_mass) {
      s_full += w;
      if (t <= 0.5 * cat_h) s_half += w;
    }
    pressure_ = (s_half > 0 && s_full > s_half) ? 2.0 / cat_h * std::log(s_full / s_half) : -INFINITY;
  }
  if (std::isfinite(cat_h) && std::isfinite(pressure_)) {
    double amp = 0;
    for (const auto& [t, w] : prime_mass)
      if (t > 0.5 * cat_h) amp += w * std::exp(-pressure_ * t);
    horizon_amp_ = amp / (0.5 * cat_h);
  }
}

cplx ZetaFunction::exponent(cplx s) const {
  CompensatedSum acc;
  for (const auto& t : terms_) acc.add(-t.coef * std::exp(-s * t.T));
  return acc.value();
}

ZetaValue ZetaFunction::eval(cplx s) const {
  return {std::exp(exponent(s)), truncation_bound(s.real())};
}

cplx ZetaFunction::log_derivative(cplx s) const {
  CompensatedSum acc;
  for (const auto& t : terms_) acc.add(t.coef * t.T * std::exp(-s * t.T));
  return acc.value();
}

double ZetaFunction::truncation_bound(double sigma) const {
  double bound = 0;
  for (const auto& t : tails_) {
    const double r = t.ratio * std::exp(-sigma * t.period);
    if (r >= 1) return INFINITY;
    bound += t.first * std::exp(-sigma * t.T) / (1 - r);
  }
  if (kind_ == ZetaKind::Smale) {
    for (std::size_t i = 0; i < k_tail_periods_.size(); i += 2) {
      const double p = k_tail_periods_[i], mult = k_tail_periods_[i + 1];
      const double x = std::exp(-(sigma + k_cutoff_) * p);
      if (x >= 1) return INFINITY;
      bound += mult * x / ((1 - std::exp(-p)) * (1 - x));
    }
  }
  if (std::isfinite(horizon_) && horizon_amp_ > 0) {
    if (sigma <= pressure_) return INFINITY;
    bound += horizon_amp_ * std::exp((pressure_ - sigma) * horizon_) / (sigma - pressure_);
  }
  return bound;
}

ZetaValue smale_zeta(cplx s, const OrbitCatalog& cat, const EvalPolicy& pol) {
  return ZetaFunction(cat, {ZetaKind::Smale}, pol).eval(s);
}

ZetaValue gv_zeta(cplx s, const OrbitCatalog& cat, const EvalPolicy& pol) {
  return ZetaFunction(cat, {ZetaKind::GutzwillerVoros}, pol).eval(s);
}

ZetaValue fredholm_det(int k, cplx s, const OrbitCatalog& cat, const EvalPolicy& pol) {
  return ZetaFunction(cat, {ZetaKind::Fredholm, k}, pol).eval(s);
}

ZetaValue grassmann_fredholm_det(int k, int ell, cplx s, const OrbitCatalog& cat,
                                 const EvalPolicy& pol) {
  return ZetaFunction(cat, {ZetaKind::Grassmann, k, ell}, pol).eval(s);
}

cplx log_derivative(int k, cplx s, const OrbitCatalog& cat, const EvalPolicy& pol) {
  return ZetaFunction(cat, {ZetaKind::Fredholm, k}, pol).log_derivative(s);
}

std::vector<cplx> trace_moments(cplx s0, int n_max, const OrbitCatalog& cat, const EvalPolicy& pol) {
  if (n_max < 1) throw SpecError("argument", "moment order must be positive");
  ZetaFunction f(cat, {ZetaKind::GutzwillerVoros}, pol);
  std::vector<CompensatedSum> acc(n_max);
  for (const auto& t : f.terms()) {
    // coef T^n e^{-s0 T} / (n-1)!, built in log space to survive large T^n.
    const cplx base = std::log(t.coef) - s0 * t.T;
    const double lt = std::log(t.T);
    for (int n = 1; n <= n_max; ++n) acc[n - 1].add(std::exp(base + n * lt - std::lgamma(n)));
  }
  std::vector<cplx> out;
  for (auto& a : acc) out.push_back(a.value());
  return out;
}

TraceMoment trace_moment(cplx s0, int n, const OrbitCatalog& cat, const EvalPolicy& pol) {
  const cplx m = trace_moments(s0, n, cat, pol).back();
  return {m, (n % 2 == 1 ? 1.0 : -1.0) * m / static_cast<double>(n)};
}

ProductIdentityReport product_identity_check(const OrbitCatalog& cat,
                                             const std::vector<cplx>& s_samples,
                                             const EvalPolicy& pol, int ell_range) {
  const int d = cat.d;
  if (ell_range < 0 || ell_range > d * (d + 1))
    throw SpecError("argument", "ell_range outside [0, d(d+1)]");
  ProductIdentityReport rep;
  rep.ell_range = ell_range;
  ZetaFunction gv(cat, {ZetaKind::GutzwillerVoros}, pol);
  std::vector<std::pair<int, ZetaFunction>> dk, dkl;
  for (int k = 0; k <= d; ++k) {
    dk.emplace_back((d - k) % 2 == 0 ? 1 : -1, ZetaFunction(cat, {ZetaKind::Fredholm, k}, pol));
    for (int l = 0; l <= ell_range; ++l)
      dkl.emplace_back(((d - k) + l) % 2 == 0 ? 1 : -1,
                       ZetaFunction(cat, {ZetaKind::Grassmann, k, l}, pol));
  }
  // |prod - Z| / |Z| = |exp(sum of signed exponents - log Z) - 1|; the
  // individual factors over- or underflow long before the ratio does.
  const auto rel = [](cplx delta) {
    const double c = std::cos(delta.imag());
    const double re = std::expm1(delta.real()) * c - 2 * std::pow(std::sin(0.5 * delta.imag()), 2);
    return std::abs(cplx(re, std::exp(delta.real()) * std::sin(delta.imag())));
  };
  // NaN must not vanish in the max.
  const auto worst = [](double acc, double e) { return std::isnan(e) || std::isnan(acc) ? NAN : std::max(acc, e); };
  for (const auto& s : s_samples) {
    const cplx ez = gv.exponent(s);
    CompensatedSum e1, e2;
    for (const auto& [sign, f] : dk) e1.add(static_cast<double>(sign) * f.exponent(s));
    for (const auto& [sign, f] : dkl) e2.add(static_cast<double>(sign) * f.exponent(s));
    rep.max_rel_err_k = worst(rep.max_rel_err_k, rel(e1.value() - ez));
    rep.max_rel_err_kl = worst(rep.max_rel_err_kl, rel(e2.value() - ez));
  }
  return rep;
}

}  // namespace zl
