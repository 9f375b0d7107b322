#include <doctest.h>

#include <cmath>
#include <random>

#include "zl/orbit_model.hpp"
#include "zl/orbit_sources.hpp"

using namespace zl;

namespace {

Mat mat2(double a, double b, double c, double d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

const double kPhi = (1 + std::sqrt(5.0)) / 2;

}  // namespace

TEST_CASE("validate_symplectic on small matrices") {
  CHECK(validate_symplectic(standard_symplectic(1), 1e-12));
  CHECK(validate_symplectic(mat2(2, 1, 1, 1), 1e-12));
  CHECK_FALSE(validate_symplectic(mat2(2, 0, 0, 2), 1e-12));
  CHECK_THROWS_AS(validate_symplectic(Mat::Identity(3, 3), 1e-12), SpecError);
}

TEST_CASE("symplectic_inverse is the matrix inverse") {
  for (int d = 1; d <= 3; ++d) {
    const Mat s = random_symplectic(d, 40 + d);
    CHECK((symplectic_inverse(s) * s - Mat::Identity(2 * d, 2 * d)).norm() < 1e-10);
  }
}

TEST_CASE("hyperbolic_split of the diagonal and cat-map cases") {
  auto sp = hyperbolic_split(mat2(2, 0, 0, 0.5));
  REQUIRE(sp.unstable.size() == 1);
  CHECK(sp.unstable[0].real() == doctest::Approx(2).epsilon(1e-14));
  CHECK(sp.stable[0].real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(sp.det_stable == doctest::Approx(0.5).epsilon(1e-14));

  sp = hyperbolic_split(mat2(2, 1, 1, 1));
  // Roots of x^2 - 3x + 1.
  const double up = (3 + std::sqrt(5.0)) / 2, lo = (3 - std::sqrt(5.0)) / 2;
  CHECK(std::abs(sp.unstable[0] - up) < 1e-13);
  CHECK(std::abs(sp.stable[0] - lo) < 1e-13);
  CHECK(std::abs(sp.unstable[0] - kPhi * kPhi) < 1e-13);
}

TEST_CASE("hyperbolic_split rejects unit-modulus spectra") {
  const double c = std::cos(M_PI / 4), s = std::sin(M_PI / 4);
  CHECK_THROWS_AS(hyperbolic_split(mat2(c, -s, s, c)), SpecError);
  CHECK_THROWS_AS(hyperbolic_split(Mat::Identity(3, 3)), SpecError);
}

TEST_CASE("stable eigenvalues stay accurate for large powers") {
  Mat a = mat2(2, 1, 1, 1), p = Mat::Identity(2, 2);
  for (int i = 0; i < 30; ++i) p = p * a;
  const auto sp = hyperbolic_split(p);
  const double lam = kPhi * kPhi;
  CHECK(std::abs(sp.stable[0].real() * std::pow(lam, 30) - 1) < 1e-12);
  CHECK(pairing_defect(sp) < 1e-25);
}

TEST_CASE("repetition_weight examples") {
  auto w = repetition_weight(hyperbolic_split(mat2(2, 0, 0, 0.5)), 1);
  CHECK(w.full_sqrt == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(w.stable_det_pow == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(w.stable_factor == doctest::Approx(1).epsilon(1e-14));

  w = repetition_weight(hyperbolic_split(mat2(2, 1, 1, 1)), 1);
  CHECK(w.full_sqrt == doctest::Approx(1).epsilon(1e-13));
  CHECK_THROWS_AS(repetition_weight(hyperbolic_split(mat2(2, 1, 1, 1)), 0), SpecError);
}

TEST_CASE("weight identity against a determinant oracle on 200 seeded splits") {
  // sqrt|det(I - D^-m)| straight from the matrix, against the split form.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lg(0.1, 2.0);
  double worst = 0;
  for (int n = 0; n < 200; ++n) {
    const int d = 1 + n % 3;
    Mat diag = Mat::Zero(2 * d, 2 * d);
    for (int i = 0; i < d; ++i) {
      const double l = lg(rng);
      diag(i, i) = std::exp(l);
      diag(d + i, d + i) = std::exp(-l);
    }
    const Mat s = random_symplectic(d, 1000 + n);
    const Mat dm = s * diag * symplectic_inverse(s);
    REQUIRE(validate_symplectic(dm, 1e-8));
    const auto sp = hyperbolic_split(dm);
    const Mat inv = symplectic_inverse(dm);
    Mat pw = Mat::Identity(2 * d, 2 * d);
    for (int m = 1; m <= 3; ++m) {
      pw = pw * inv;
      const double lhs = std::sqrt(std::abs((Mat::Identity(2 * d, 2 * d) - pw).determinant()));
      const auto w = repetition_weight(sp, m);
      worst = std::max(worst, std::abs(lhs - w.stable_det_pow * w.stable_factor) / lhs);
    }
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("exterior_trace") {
  const auto sp = hyperbolic_split(mat2(2, 0, 0, 0.5));
  CHECK(std::abs(exterior_trace(sp, 1, 0) - 1.0) == 0);
  CHECK(std::abs(exterior_trace(sp, 1, 1) - 2.0) < 1e-14);
  CHECK_THROWS_AS(exterior_trace(sp, 1, 2), SpecError);

  Mat d2 = Mat::Zero(4, 4);
  d2.diagonal() << 0.5, 1.0 / 3, 2, 3;
  // diag(1/2, 1/3, 2, 3) in (q, p) order is symplectic.
  REQUIRE(validate_symplectic(d2, 1e-12));
  const auto s2 = hyperbolic_split(d2);
  CHECK(std::abs(exterior_trace(s2, 1, 2) - 6.0) < 1e-13);
  const cplx alt = exterior_trace(s2, 1, 0) - exterior_trace(s2, 1, 1) + exterior_trace(s2, 1, 2);
  Mat m = Mat::Zero(2, 2);
  m.diagonal() << 2, 3;
  CHECK(std::abs(alt - (Mat::Identity(2, 2) - m).determinant()) < 1e-13);
}

TEST_CASE("grassmann_fiber_jacobian") {
  auto g = grassmann_fiber_jacobian(hyperbolic_split(mat2(2, 0, 0, 0.5))).eigenvalues;
  REQUIRE(g.size() == 2);
  std::sort(g.begin(), g.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
  CHECK(std::abs(g[0] - 0.25) < 1e-15);
  CHECK(std::abs(g[1] - 0.5) < 1e-15);

  g = grassmann_fiber_jacobian(hyperbolic_split(mat2(2, 1, 1, 1))).eigenvalues;
  std::sort(g.begin(), g.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
  CHECK(std::abs(g[0] - std::pow(kPhi, -4)) < 1e-13);
  CHECK(std::abs(g[1] - std::pow(kPhi, -2)) < 1e-13);
}

TEST_CASE("fiber size and contraction") {
  for (int d = 1; d <= 3; ++d) {
    SyntheticSpec sp;
    sp.d = d;
    sp.count = 10;
    sp.seed = 3 + d;
    for (const auto& o : synthetic_catalog(sp).orbits) {
      const auto g = grassmann_fiber_jacobian(hyperbolic_split(o.jacobian)).eigenvalues;
      CHECK(g.size() == static_cast<std::size_t>(d * (d + 1)));
      for (const auto& v : g) CHECK(std::abs(v) < 1);
    }
  }
}

TEST_CASE("elementary_symmetric matches expansion of prod (1 + x t)") {
  const std::vector<cplx> x{{1, 2}, {-0.5, 0}, {3, -1}};
  const auto e = elementary_symmetric(x);
  REQUIRE(e.size() == 4);
  CHECK(std::abs(e[1] - (x[0] + x[1] + x[2])) < 1e-14);
  CHECK(std::abs(e[2] - (x[0] * x[1] + x[0] * x[2] + x[1] * x[2])) < 1e-14);
  CHECK(std::abs(e[3] - x[0] * x[1] * x[2]) < 1e-14);
}
