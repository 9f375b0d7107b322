#include "zl/bargmann_suite.hpp"

#include <cmath>
#include <random>

namespace zl {

namespace {

CheckResult at_most(std::string name, double measured, double tol, std::string note = {}) {
  return {std::move(name), measured, tol, measured <= tol, std::move(note)};
}

}  // namespace

std::vector<CVec> bargmann_test_class(const PhaseGrid& grid) {
  const auto x = grid.axis();
  const int m = grid.points_per_axis;
  CVec u1(m), u2(m);
  for (int j = 0; j < m; ++j) {
    u1(j) = std::exp(-0.5 * x[j] * x[j]) * (1 + 0.3 * x[j]);
    u2(j) = x[j] * x[j] * std::exp(-0.5 * (x[j] - 1) * (x[j] - 1)) * std::exp(cplx(0, x[j]));
  }
  return {u1, u2};
}

double kernel_discrepancy(const Bargmann1D& b) {
  const int m = b.m(), n = b.phase_size();
  const double half = 0.5 * b.grid().half_width;
  double worst = 0;
  Eigen::VectorXd p(2), pp(2);
  for (int iw = 0; iw < m; iw += 7) {
    for (int ix = 0; ix < m; ix += 11) {
      const int r = iw * m + ix;
      if (std::abs(b.w_at(r)) > half || std::abs(b.xi_at(r)) > half) continue;
      const CVec y = b.matrix() * b.matrix().row(r).adjoint();
      p << b.w_at(r), b.xi_at(r);
      for (int c = 0; c < n; ++c) {
        if (std::abs(b.w_at(c)) > half || std::abs(b.xi_at(c)) > half) continue;
        pp << b.w_at(c), b.xi_at(c);
        const cplx composed = std::conj(y(c)) / b.h();
        worst = std::max(worst, std::abs(composed - bargmann_projector_kernel(p, pp, b.hbar())));
      }
    }
  }
  return worst;
}

std::vector<CheckResult> bargmann_verify(const SuiteOptions& opt) {
  std::vector<CheckResult> out;
  const Bargmann1D b(opt.grid, opt.hbar);
  const auto tests = bargmann_test_class(opt.grid);

  double recon = 0, iso = 0, idem = 0;
  for (const auto& u : tests) {
    const CVec v = b.forward(u);
    recon = std::max(recon, b.norm_x(b.adjoint(v) - u) / b.norm_x(u));
    iso = std::max(iso, std::abs(b.norm_p(v) / b.norm_x(u) - 1));
    const CVec pv = b.project(v);
    idem = std::max(idem, b.norm_p(b.project(pv) - pv) / b.norm_p(v));
  }
  out.push_back(at_most("reconstruction", recon, 1e-6));
  out.push_back(at_most("isometry", iso, 1e-6));
  out.push_back(at_most("projector_idempotency", idem, 1e-6));
  out.push_back(at_most("kernel_formula", kernel_discrepancy(b), 1e-8));

  {
    const Bargmann1D bl(opt.lift_grid, opt.hbar);
    const CVec u = bargmann_test_class(opt.lift_grid)[0];
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> logq(std::log(0.25), std::log(4.0)), shift(-1, 1), coin(0, 1);
    double worst = 0;
    std::string note;
    for (int k = 0; k < opt.lift_maps; ++k) {
      double q0 = std::exp(logq(rng));
      if (coin(rng) < 0.5) q0 = -q0;
      const auto rep = lift_check(bl, q0, shift(rng), u);
      worst = std::max(worst, rep.discrepancy);
      if (!rep.warnings.empty() && note.empty()) note = rep.warnings.front();
    }
    out.push_back(at_most("lift_formula", worst, 1e-6, note));
    const auto ident = lift_check(b, 1.0, 0.0, tests[0]);
    out.push_back(at_most("lift_identity", ident.discrepancy, 1e-8));
  }

  Mat q(2, 2);
  q << 2, 0, 0, 0.5;
  out.push_back(at_most("lift_factor_diag", std::abs(lift_factor(q) - 1.25), 0.0));
  const double th = 0.7;
  q << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
  out.push_back(at_most("lift_factor_rotation", std::abs(lift_factor(q) - 1), 1e-14));

  const auto sv = t0_lift_singular_values(b);
  out.push_back(at_most("t0_rank_one", sv(1) / sv(0), 1e-8));

  if (opt.commutators) {
    out.push_back(at_most("reflection_commutator", reflection_commutator_1d(b, opt.seed), 1e-7));
    const Bargmann1D small(PhaseGrid{1, 6, 32}, opt.hbar);
    out.push_back(at_most("rotation_commutator", rotation_commutator_2d(small, opt.seed), 1e-7));
  }

  if (opt.partial) {
    PartialGrid pg;
    pg.w = PhaseGrid{2, 6.0, 48};
    const PartialBargmann pb(pg);
    const auto wx = pg.w.axis();
    const int mw = pg.w.points_per_axis;
    auto build = [&](auto zfac) {
      CVec u(static_cast<long>(pg.nz) * mw * mw);
      for (int iz = 0; iz < pg.nz; ++iz) {
        const double z = iz * pg.lz / pg.nz;
        for (int i1 = 0; i1 < mw; ++i1)
          for (int i2 = 0; i2 < mw; ++i2)
            u((static_cast<long>(iz) * mw + i1) * mw + i2) =
                std::exp(-0.5 * (wx[i1] * wx[i1] + wx[i2] * wx[i2])) * zfac(z);
      }
      return u;
    };
    const auto mixed = pb.check(build([](double z) {
      return std::exp(cplx(0, 2 * z)) + 0.5 * std::exp(cplx(0, -2 * z));
    }));
    out.push_back(at_most("partial_isometry", std::abs(mixed.norm_ratio - 1), 1e-6));
    out.push_back(at_most("partial_reconstruction", mixed.reconstruction, 1e-6));
    const double omega = 2;
    const auto loc = pb.check(build([omega](double z) { return std::exp(cplx(0, omega * z)); }));
    double outside = 0;
    for (std::size_t k = 0; k < loc.bin_mass.size(); ++k)
      if (std::abs(loc.bin_frequency[k] - omega) > 2) outside += loc.bin_mass[k];
    out.push_back(at_most("partial_localization", outside, 1e-8));
  }
  return out;
}

SplitComparison spectral_split_comparison(const PhaseGrid& grid, const WeightSpec& weight,
                                          const SplitOptions& opt) {
  SplitComparison c;
  LinearModelSpec s2, s4;
  s2.a = Mat::Constant(1, 1, 2.0);
  s2.lambda = 2;
  s4.a = Mat::Constant(1, 1, 4.0);
  s4.lambda = 4;
  c.a2 = spectral_split_check(s2, grid, weight, opt);
  c.a4 = spectral_split_check(s4, grid, weight, opt);
  c.ratio = c.a2.norm_on_h1 / c.a4.norm_on_h1;
  return c;
}

}  // namespace zl
