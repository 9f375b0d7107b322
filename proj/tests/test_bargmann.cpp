#include <doctest.h>

#include <cmath>

#include "zl/bargmann.hpp"
#include "zl/bargmann_suite.hpp"
#include "zl/partial_bargmann.hpp"

using namespace zl;

namespace {

const Bargmann1D& base() {
  static const Bargmann1D b(PhaseGrid{1, 8, 128}, 1.0);
  return b;
}

CVec sample(const std::vector<double>& x, auto f) {
  CVec u(static_cast<long>(x.size()));
  for (std::size_t j = 0; j < x.size(); ++j) u(static_cast<long>(j)) = f(x[j]);
  return u;
}

}  // namespace

TEST_CASE("wave packet normalization and shape") {
  CHECK(std::abs(wave_packet_1d(0, 0, 1, 0) - std::pow(M_PI, -0.25)) < 1e-15);
  CHECK(std::pow(M_PI, -0.25) == doctest::Approx(0.7511256).epsilon(1e-7));
  CHECK(packet_normalization(2, 0.5) == doctest::Approx(std::pow(0.5 * M_PI, -0.5)));
  for (double hbar : {0.5, 1.0, 2.0}) {
    double mass = 0;
    const double h = 1e-3;
    for (double x = -20; x < 20; x += h) mass += std::norm(wave_packet_1d(0.4, -1.3, hbar, x + h / 2)) * h;
    CHECK(std::abs(mass - 1) < 1e-10);
  }
  for (double d : {0.3, 1.0, 2.5}) {
    const double a = std::abs(wave_packet_1d(1.0, 2.0, 1, 1.0 + d));
    const double b = std::abs(wave_packet_1d(1.0, -5.0, 1, 1.0 - d));
    CHECK(a == doctest::Approx(b).epsilon(1e-14));
  }
  Eigen::VectorXd w(2), xi(2), wp(2);
  w << 0.5, -1;
  xi << 2, 0.1;
  wp << 1, 0.3;
  CHECK(std::abs(wave_packet(w, xi, 1, wp) - wave_packet_1d(0.5, 2, 1, 1) * wave_packet_1d(-1, 0.1, 1, 0.3)) < 1e-15);
}

TEST_CASE("transform of a coherent state has a Gaussian modulus") {
  // |<phi_p, phi_0>| = exp(-|p|^2 / 4 hbar).
  const auto& b = base();
  const CVec u = sample(b.x(), [](double x) { return wave_packet_1d(0, 0, 1, x); });
  const CVec v = b.forward(u);
  double worst = 0;
  for (int p = 0; p < b.phase_size(); p += 37) {
    const double r2 = b.w_at(p) * b.w_at(p) + b.xi_at(p) * b.xi_at(p);
    if (r2 > 16) continue;
    worst = std::max(worst, std::abs(std::abs(v(p)) - std::exp(-r2 / 4)));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("zero input and linearity") {
  const auto& b = base();
  CHECK(b.forward(CVec::Zero(b.m())).norm() == 0);
  const auto t = bargmann_test_class(b.grid());
  const cplx c(0.3, -2);
  CHECK((b.forward(t[0] + c * t[1]) - b.forward(t[0]) - c * b.forward(t[1])).norm() < 1e-12 * b.forward(t[1]).norm());
}

TEST_CASE("reconstruction, isometry and projector") {
  const auto& b = base();
  for (const auto& u : bargmann_test_class(b.grid())) {
    const CVec v = b.forward(u);
    CHECK(b.norm_x(b.adjoint(v) - u) / b.norm_x(u) < 1e-6);
    CHECK(std::abs(b.norm_p(v) / b.norm_x(u) - 1) < 1e-6);
    const CVec pv = b.project(v);
    CHECK(b.norm_p(pv - v) / b.norm_p(v) < 1e-6);
    CHECK(b.norm_p(b.project(pv) - pv) / b.norm_p(v) < 1e-6);
  }
  CHECK(!b.boundary_mass(bargmann_test_class(b.grid())[0]));
}

TEST_CASE("projector kernel") {
  Eigen::VectorXd p(2), q(2);
  p << 0.7, -1.1;
  CHECK(std::abs(bargmann_projector_kernel(p, p, 1) - 1.0) < 1e-15);
  q << 1.5, 0.2;
  // Hermitian: K(p', p) = conj K(p, p').
  CHECK(std::abs(bargmann_projector_kernel(q, p, 1) - std::conj(bargmann_projector_kernel(p, q, 1))) < 1e-15);
  CHECK(std::abs(bargmann_projector_kernel(p, q, 0.5)) ==
        doctest::Approx(std::exp(-(p - q).squaredNorm() / 2)).epsilon(1e-14));
  CHECK(kernel_discrepancy(base()) < 1e-8);
}

TEST_CASE("lift factor examples") {
  Mat q(2, 2);
  q << 2, 0, 0, 0.5;
  CHECK(lift_factor(q) == 1.25);
  q << 0, -1, 1, 0;
  CHECK(lift_factor(q) == doctest::Approx(1).epsilon(1e-15));
  CHECK(lift_factor(Mat::Identity(3, 3)) == 1);
  // d(Q) >= 1 with equality only on orthogonal Q0.
  CHECK(lift_factor(Mat::Constant(1, 1, 3.0)) == doctest::Approx(std::sqrt(5.0 / 3)));
}

TEST_CASE("lift of the identity is the projector") {
  const auto& b = base();
  const auto rep = lift_check(b, 1.0, 0.0, bargmann_test_class(b.grid())[0]);
  CHECK(rep.discrepancy <= 1e-8);
  CHECK(rep.d_factor == 1);
}

TEST_CASE("affine lifts on the wide grid") {
  const Bargmann1D b(PhaseGrid{1, 12, 192}, 1.0);
  const CVec u = bargmann_test_class(b.grid())[0];
  for (auto [q0, shift] : {std::pair{2.0, 0.3}, std::pair{-0.5, -0.7}, std::pair{-1.0, 0.0}}) {
    const auto rep = lift_check(b, q0, shift, u);
    CHECK(rep.discrepancy <= 1e-6);
    CHECK(rep.d_factor == doctest::Approx(lift_factor(Mat::Constant(1, 1, q0))));
  }
}

TEST_CASE("linear isometries commute with the projector") {
  CHECK(reflection_commutator_1d(base(), 4) <= 1e-7);
  const Bargmann1D small(PhaseGrid{1, 6, 32}, 1.0);
  CHECK(rotation_commutator_2d(small, 4) <= 1e-7);
}

TEST_CASE("trapped-set projection T0") {
  const auto& b = base();
  const PhaseGrid& g = b.grid();
  const CVec c = CVec::Constant(g.points_per_axis, cplx(2, -1));
  CHECK((t0_project(c, g) - c).norm() < 1e-12);
  const CVec odd = sample(b.x(), [](double x) { return cplx(x * std::exp(-x * x), 0); });
  CHECK(t0_project(odd, g).norm() < 1e-12);
  const CVec quad = sample(b.x(), [](double x) { return cplx(1 + x * x, 0); });
  CHECK(std::abs(t0_project(quad, g)(0) - 1.0) < 1e-12);
  const auto sv = t0_lift_singular_values(b);
  CHECK(sv(0) > 0);
  CHECK(sv(1) / sv(0) <= 1e-8);
  CHECK_THROWS_AS(origin_stencil(PhaseGrid{1, 1, 4}), SpecError);
}

TEST_CASE("partial transform: isometry and frequency localization") {
  PartialGrid pg;
  pg.w = PhaseGrid{2, 6.0, 48};
  const PartialBargmann pb(pg);
  const auto wx = pg.w.axis();
  const int mw = pg.w.points_per_axis;
  const auto build = [&](double omega) {
    CVec u(static_cast<long>(pg.nz) * mw * mw);
    for (int iz = 0; iz < pg.nz; ++iz)
      for (int i1 = 0; i1 < mw; ++i1)
        for (int i2 = 0; i2 < mw; ++i2)
          u((static_cast<long>(iz) * mw + i1) * mw + i2) =
              std::exp(-0.5 * (wx[i1] * wx[i1] + wx[i2] * wx[i2])) * std::exp(cplx(0, omega * iz * pg.lz / pg.nz));
    return u;
  };
  for (double omega : {2.0, -2.0}) {
    const auto rep = pb.check(build(omega));
    CHECK(std::abs(rep.norm_ratio - 1) < 1e-6);
    CHECK(rep.reconstruction < 1e-6);
    double on = 0;
    for (std::size_t k = 0; k < rep.bin_mass.size(); ++k)
      if (rep.bin_frequency[k] == omega) on += rep.bin_mass[k];
    CHECK(on == doctest::Approx(1).epsilon(1e-8));
  }
  const auto freq = pg.frequencies();
  REQUIRE(freq.size() == 8);
  CHECK(freq.front() == -4);
  CHECK(pb.hbar(6) == doctest::Approx(0.5));  // frequency 2
  const auto zero = pb.forward(CVec::Zero(static_cast<long>(pg.nz) * mw * mw));
  for (const auto& bin : zero) CHECK(bin.norm() == 0);
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS((PhaseGrid{1, -1, 16}.validate()), SpecError);
  CHECK_THROWS_AS((PhaseGrid{1, 4, 0}.validate()), SpecError);
  PartialGrid pg;
  pg.nz = 3;
  CHECK_THROWS_AS(pg.validate(), SpecError);
}
