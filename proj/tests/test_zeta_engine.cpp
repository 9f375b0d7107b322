#include <doctest.h>

#include <cmath>

#include "zl/orbit_sources.hpp"
#include "zl/zeta_engine.hpp"

using namespace zl;

namespace {

OrbitCatalog single_orbit(double period) {
  OrbitCatalog cat;
  cat.source = "single";
  PrimeOrbit o;
  o.label = "g";
  o.period = period;
  o.jacobian = Mat::Zero(2, 2);
  o.jacobian(0, 0) = std::exp(period);
  o.jacobian(1, 1) = std::exp(-period);
  cat.orbits.push_back(o);
  return cat;
}

OrbitCatalog synthetic(int d, std::uint64_t seed) {
  SyntheticSpec spec;
  spec.d = d;
  spec.seed = seed;
  return synthetic_catalog(spec);
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

// prod_{k >= 0} (1 - q^{a + k})^{power(k)} by direct partial products.
template <class P>
long double q_product(long double q, long double a, P power) {
  long double lp = 0;
  for (int k = 0; k < 400; ++k) lp += power(k) * std::log1p(-std::pow(q, a + k));
  return std::exp(lp);
}

const double kLambda = (3 + std::sqrt(5.0)) / 2;

}  // namespace

TEST_CASE("empty catalog gives the empty product everywhere") {
  const OrbitCatalog empty;
  const EvalPolicy pol;
  for (cplx s : {cplx(2, 0), cplx(0.1, 5), cplx(-3, -1)}) {
    CHECK(smale_zeta(s, empty, pol).value == cplx(1, 0));
    CHECK(gv_zeta(s, empty, pol).value == cplx(1, 0));
    CHECK(gv_zeta(s, empty, pol).truncation_bound == 0);
    for (int k : {0, 1}) {
      CHECK(fredholm_det(k, s, empty, pol).value == cplx(1, 0));
      CHECK(log_derivative(k, s, empty, pol) == cplx(0, 0));
      for (int l = 0; l <= 2; ++l) CHECK(grassmann_fredholm_det(k, l, s, empty, pol).value == cplx(1, 0));
    }
  }
  for (const auto& m : trace_moments(3.0, 5, empty, pol)) CHECK(m == cplx(0, 0));
  const auto rep = product_identity_check(empty, {3.0, {3, 1}}, pol, 2);
  CHECK(rep.max_rel_err_k == 0);
  CHECK(rep.max_rel_err_kl == 0);
}

TEST_CASE("single orbit of length log 2 gives the q-product") {
  const auto cat = single_orbit(std::log(2.0));
  const double want = static_cast<double>(q_product(0.5L, 1.0L, [](int) { return 1.0L; }));
  CHECK(want == doctest::Approx(0.2887881).epsilon(1e-7));
  EvalPolicy pol;
  pol.m_max = 200;
  pol.k_cutoff = 200;
  CHECK(rel(smale_zeta(1.0, cat, pol).value, want) < 1e-13);
  CHECK(rel(gv_zeta(0.5, cat, pol).value, want) < 1e-13);
}

TEST_CASE("single orbit Fredholm determinant d_1") {
  const double l = 0.7;
  const auto cat = single_orbit(l);
  EvalPolicy pol;
  pol.m_max = 200;
  for (double s : {0.8, 1.5, 3.0}) {
    // prod_{j >= 1} (1 - e^{-(s + 1/2 + j - 1) l})^j
    const long double q = std::exp(-static_cast<long double>(l));
    const double want = static_cast<double>(q_product(q, s + 0.5L, [](int k) { return k + 1.0L; }));
    CHECK(rel(fredholm_det(1, s, cat, pol).value, want) < 1e-12);
    const cplx ratio = fredholm_det(1, s, cat, pol).value / fredholm_det(0, s, cat, pol).value;
    CHECK(rel(ratio, gv_zeta(s, cat, pol).value) < 1e-10);
    // d/ds log d_1 = sum_m l e^{-(s+1/2) m l} / (1 - e^{-m l})^2
    double ld = 0;
    for (int m = 1; m <= 200; ++m) ld += l * std::exp(-(s + 0.5) * m * l) / std::pow(-std::expm1(-m * l), 2);
    CHECK(rel(log_derivative(1, s, cat, pol), ld) < 1e-12);
  }
}

TEST_CASE("cat map closed form at s = 1") {
  CatMapSpec spec;
  spec.n_max = 30;
  const auto cat = catmap_suspension_catalog(spec);
  const double phi = (1 + std::sqrt(5.0)) / 2;
  const double want = (1 - phi / M_E) / (1 - 1 / (phi * M_E));
  CHECK(want == doctest::Approx(0.52386572).epsilon(1e-8));
  // The gap is the period-31 shell onward.
  const auto v = gv_zeta(1.0, cat, EvalPolicy{});
  CHECK(rel(v.value, want) < 1e-7);
  CHECK(std::abs(v.value - want) <= v.truncation_bound);
}

TEST_CASE("cat map trace moments match the per-period aggregation") {
  CatMapSpec spec;
  spec.n_max = 30;
  const auto cat = catmap_suspension_catalog(spec);
  const auto m = trace_moments(3.0, 12, cat, EvalPolicy{});
  for (int n = 1; n <= 12; ++n) {
    long double want = 0;
    for (int N = 1; N <= 30; ++N)
      want += std::pow(static_cast<long double>(N), n - 1) * std::exp(-3.0L * N) *
              (std::pow(static_cast<long double>(kLambda), N / 2.0L) - std::pow(static_cast<long double>(kLambda), -N / 2.0L));
    want /= std::tgamma(static_cast<long double>(n));
    CHECK(rel(m[n - 1], static_cast<double>(want)) < 1e-12);
  }
}

TEST_CASE("first trace moment is the log derivative of Z_sc") {
  const auto cat = synthetic(2, 9);
  const EvalPolicy pol;
  const cplx s0(3.0, 0.4);
  const double h = 1e-4;
  const cplx fd = (std::log(gv_zeta(s0 + h, cat, pol).value) - std::log(gv_zeta(s0 - h, cat, pol).value)) / (2 * h);
  CHECK(std::abs(trace_moment(s0, 1, cat, pol).moment - fd) < 1e-6);
  const auto tm = trace_moment(s0, 4, cat, pol);
  CHECK(std::abs(tm.a_n + tm.moment / 4.0) < 1e-15 * std::abs(tm.moment));
}

TEST_CASE("log derivative against central differences") {
  for (int d : {1, 2}) {
    const auto cat = synthetic(d, 20 + d);
    const EvalPolicy pol;
    const double h = 1e-4;
    for (int k = 0; k <= d; ++k)
      for (cplx s : {cplx(3, 0), cplx(3, 2.5)}) {
        const cplx fd = (std::log(fredholm_det(k, s + h, cat, pol).value) -
                         std::log(fredholm_det(k, s - h, cat, pol).value)) / (2 * h);
        CHECK(std::abs(log_derivative(k, s, cat, pol) - fd) <= 1e-6);
      }
  }
}

TEST_CASE("Selberg shift on constant-curvature catalogs") {
  const auto cat = fuchsian_geodesic_catalog(bolza_spec(4)).catalog;
  const EvalPolicy pol;
  for (cplx s : {cplx(0.8, 0), cplx(1.2, 3), cplx(2, -7)})
    CHECK(rel(gv_zeta(s, cat, pol).value, smale_zeta(s + 0.5, cat, pol).value) <= 1e-12);
}

TEST_CASE("conjugation symmetry") {
  const auto cat = synthetic(2, 3);
  const EvalPolicy pol;
  for (cplx s : {cplx(3, 1), cplx(2.5, -4), cplx(4, 11)}) {
    const cplx a = gv_zeta(std::conj(s), cat, pol).value;
    const cplx b = std::conj(gv_zeta(s, cat, pol).value);
    CHECK(rel(a, b) <= 1e-13);
  }
}

TEST_CASE("truncation bound is monotone in m_max and horizon") {
  const auto cat = fuchsian_geodesic_catalog(bolza_spec(4)).catalog;
  for (double sigma : {1.5, 2.0, 3.0}) {
    double last = INFINITY;
    for (int m : {1, 2, 4, 8, 16, 64}) {
      EvalPolicy pol;
      pol.m_max = m;
      const double b = ZetaFunction(cat, {}, pol).truncation_bound(sigma);
      CHECK(b <= last);
      last = b;
    }
    last = INFINITY;
    for (double H : {3.5, 4.0, 4.5, 5.0}) {
      EvalPolicy pol;
      pol.horizon = H;
      const double b = ZetaFunction(cat, {}, pol).truncation_bound(sigma);
      CHECK(b <= last);
      last = b;
    }
  }
}

TEST_CASE("Smale zeta has no zeros right of the pressure") {
  const auto cat = synthetic(1, 5);
  const ZetaFunction f(cat, {ZetaKind::Smale}, EvalPolicy{});
  for (double x = 0.5; x <= 4; x += 0.5)
    for (double y = -10; y <= 10; y += 2.5) {
      const cplx s(f.pressure() + x, y);
      CHECK(std::abs(f.eval(s).value) > 0);
    }
}

TEST_CASE("product identities close with ell = 0..d(d+1)") {
  for (int d : {1, 2}) {
    const auto cat = synthetic(d, 7);
    const auto rep = product_identity_check(cat, {3.0, {3, 1}, {3, 5}}, EvalPolicy{}, d * (d + 1));
    CHECK(rep.max_rel_err_k <= 1e-10);
    CHECK(rep.max_rel_err_kl <= 1e-10);
    const auto short_range = product_identity_check(cat, {3.0}, EvalPolicy{}, d * d);
    CHECK(short_range.max_rel_err_kl > 1e-6);
  }
  CatMapSpec spec;
  spec.n_max = 30;
  const auto cat = catmap_suspension_catalog(spec);
  const auto rep = product_identity_check(cat, {3.0, {3, 2}}, EvalPolicy{}, 2);
  CHECK(rep.max_rel_err_k <= 1e-10);
  CHECK(rep.max_rel_err_kl <= 1e-10);
}

TEST_CASE("single-orbit Grassmann telescope") {
  const auto cat = single_orbit(0.9);
  EvalPolicy pol;
  pol.m_max = 120;
  const auto rep = product_identity_check(cat, {1.0, {2, 3}}, pol, 2);
  CHECK(rep.max_rel_err_kl <= 1e-12);
}

TEST_CASE("argument errors") {
  const auto cat = synthetic(1, 1);
  CHECK_THROWS_AS(fredholm_det(2, 3.0, cat, EvalPolicy{}), SpecError);
  CHECK_THROWS_AS(grassmann_fredholm_det(0, 3, 3.0, cat, EvalPolicy{}), SpecError);
  EvalPolicy bad;
  bad.m_max = 0;
  CHECK_THROWS_AS(gv_zeta(3.0, cat, bad), SpecError);
  CHECK_THROWS_AS(trace_moments(3.0, 0, cat, EvalPolicy{}), SpecError);
  CHECK_THROWS_AS(product_identity_check(cat, {3.0}, EvalPolicy{}, 3), SpecError);
}
