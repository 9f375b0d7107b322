#include "zl/zero_finder.hpp"

#include <algorithm>
#include <cmath>

namespace zl {

void Rectangle::validate() const {
  if (!(re_min < re_max) || !(im_min < im_max))
    throw SpecError("rectangle", "rectangle must have re_min < re_max and im_min < im_max");
}

bool Rectangle::contains(cplx s, double margin) const {
  return s.real() >= re_min - margin && s.real() <= re_max + margin && s.imag() >= im_min - margin &&
         s.imag() <= im_max + margin;
}

Rectangle Rectangle::dilated(double factor) const {
  const cplx c = center();
  const double hw = 0.5 * (re_max - re_min) * factor, hh = 0.5 * (im_max - im_min) * factor;
  return {c.real() - hw, c.real() + hw, c.imag() - hh, c.imag() + hh};
}

namespace {

struct BoundaryZero {};

double diameter(const Rectangle& r) { return std::hypot(r.re_max - r.re_min, r.im_max - r.im_min); }

double phase_step(const ComplexFn& f, cplx a, cplx fa, cplx b, cplx fb, double min_len, int depth) {
  if (fa == 0.0 || fb == 0.0 || !std::isfinite(std::abs(fa)) || !std::isfinite(std::abs(fb)))
    throw BoundaryZero{};
  const double step = std::arg(fb / fa);
  if (std::abs(step) < M_PI / 2) return step;
  if (depth > 60 || std::abs(b - a) < min_len) throw BoundaryZero{};
  const cplx m = 0.5 * (a + b);
  const cplx fm = f(m);
  return phase_step(f, a, fa, m, fm, min_len, depth + 1) + phase_step(f, m, fm, b, fb, min_len, depth + 1);
}

int sampled_count(const ComplexFn& f, const Rectangle& r, int per_edge) {
  const cplx corners[5] = {{r.re_min, r.im_min}, {r.re_max, r.im_min}, {r.re_max, r.im_max},
                           {r.re_min, r.im_max}, {r.re_min, r.im_min}};
  const double min_len = 1e-13 * std::max(1.0, std::abs(r.center())) + 1e-9 * diameter(r) * 1e-3;
  double total = 0;
  cplx prev = corners[0], fprev = f(prev);
  for (int e = 0; e < 4; ++e) {
    for (int i = 1; i <= per_edge; ++i) {
      const cplx p = i == per_edge ? corners[e + 1]
                                   : corners[e] + (corners[e + 1] - corners[e]) * (double(i) / per_edge);
      const cplx fp = f(p);
      total += phase_step(f, prev, fprev, p, fp, min_len, 0);
      prev = p;
      fprev = fp;
    }
  }
  const double w = total / (2 * M_PI);
  const double k = std::round(w);
  if (std::abs(w - k) > 1e-3) throw BoundaryZero{};
  return static_cast<int>(k);
}

// Coarse sampling can alias a full turn of the phase; accept a count only
// once doubling the samples leaves it unchanged.
int raw_count(const ComplexFn& f, const Rectangle& r, int n_boundary) {
  int per_edge = std::max(4, n_boundary / 4);
  int last = sampled_count(f, r, per_edge);
  for (int k = 0; k < 8; ++k) {
    per_edge *= 2;
    const int next = sampled_count(f, r, per_edge);
    if (next == last) return next;
    last = next;
  }
  throw BoundaryZero{};
}

// Count on rect, dilating about the centre when the boundary is suspect.
std::pair<int, Rectangle> robust_count(const ComplexFn& f, const Rectangle& rect, int n_boundary) {
  for (int j = 0; j <= 10; ++j) {
    const Rectangle r = rect.dilated(1.0 + j * 1e-4);
    try {
      return {raw_count(f, r, n_boundary), r};
    } catch (const BoundaryZero&) {
    }
  }
  throw NumericalError("geometry", "zero on the rectangle boundary after 10 dilations");
}

struct Newton {
  cplx z;
  double residual;
  bool ok;
};

Newton newton(const ComplexFn& f, cplx z, int mult, int iters, double max_move) {
  const cplx z0 = z;
  double last = INFINITY;
  for (int it = 0; it < iters; ++it) {
    const cplx fz = f(z);
    if (fz == 0.0) return {z, 0.0, true};
    const double h = 1e-6 * std::max(1.0, std::abs(z));
    const cplx df = (f(z + h) - f(z - h)) / (2 * h);
    if (df == 0.0 || !std::isfinite(std::abs(df))) break;
    const cplx step = static_cast<double>(mult) * fz / df;
    z -= step;
    last = std::abs(step);
    if (std::abs(z - z0) > max_move) return {z, INFINITY, false};
    if (last < 1e-15 * std::max(1.0, std::abs(z))) break;
  }
  return {z, std::abs(f(z)), last < 1e-9 * std::max(1.0, std::abs(z))};
}

class Finder {
 public:
  Finder(const ComplexFn& f, double tol, const ZeroFinderOptions& opt, double top_diam)
      : f_(f), tol_(tol), opt_(opt), top_diam_(top_diam) {}

  void process(const Rectangle& r, int n, int depth) {
    if (n <= 0) return;
    const double diam = diameter(r);
    if (n == 1 || diam < 1e-3 * top_diam_) {
      auto nw = newton(f_, r.center(), n, opt_.newton_iters, diam);
      if (nw.ok && nw.residual <= tol_ && r.contains(nw.z, 1e-12 * diam) && verify(nw.z, n, diam)) {
        out.zeros.push_back({nw.z, n, nw.residual, "argument-principle"});
        return;
      }
    }
    if (depth >= opt_.max_depth) {
      out.unresolved.emplace_back(r.center(), n);
      return;
    }
    static const double offs[][2] = {{-0.0381966, 0.0270510}, {0.0527864, -0.0463301},
                                     {-0.0729490, 0.0618034}, {0.0901699, -0.0850651},
                                     {-0.1124, 0.1013}};
    for (const auto& o : offs) {
      const double xs = r.re_min + (0.5 + o[0]) * (r.re_max - r.re_min);
      const double ys = r.im_min + (0.5 + o[1]) * (r.im_max - r.im_min);
      const Rectangle kids[4] = {{r.re_min, xs, r.im_min, ys}, {xs, r.re_max, r.im_min, ys},
                                 {r.re_min, xs, ys, r.im_max}, {xs, r.re_max, ys, r.im_max}};
      int counts[4];
      try {
        for (int i = 0; i < 4; ++i) counts[i] = raw_count(f_, kids[i], opt_.n_boundary);
      } catch (const BoundaryZero&) {
        continue;
      }
      if (counts[0] + counts[1] + counts[2] + counts[3] != n) continue;
      for (int i = 0; i < 4; ++i) process(kids[i], counts[i], depth + 1);
      return;
    }
    out.unresolved.emplace_back(r.center(), n);
  }

  ResonanceSet out;

 private:
  bool verify(cplx z, int n, double diam) {
    const double rho = std::max(std::min(0.25 * diam, 1e-3 * std::max(1.0, std::abs(z))),
                                1e-9 * std::max(1.0, std::abs(z)));
    try {
      return robust_count(f_, {z.real() - rho, z.real() + rho, z.imag() - rho, z.imag() + rho},
                          opt_.n_boundary)
                 .first == n;
    } catch (const NumericalError&) {
      return false;
    }
  }

  const ComplexFn& f_;
  double tol_;
  ZeroFinderOptions opt_;
  double top_diam_;
};

}  // namespace

int argument_principle_count(const ComplexFn& f, const Rectangle& rect, int n_boundary) {
  rect.validate();
  return robust_count(f, rect, n_boundary).first;
}

ResonanceSet find_zeros(const ComplexFn& f, const Rectangle& rect, double tol,
                        const ZeroFinderOptions& opt) {
  rect.validate();
  if (!(tol > 0)) throw SpecError("argument", "tolerance must be positive");
  auto [n, r] = robust_count(f, rect, opt.n_boundary);
  if (n < 0) throw NumericalError("poles", "negative winding number: the function has poles in the box");
  Finder finder(f, tol, opt, diameter(r));
  finder.process(r, n, 0);
  ResonanceSet res = std::move(finder.out);
  res.method = "argument-principle";
  std::erase_if(res.zeros, [&](const Zero& z) { return !rect.contains(z.s); });
  std::sort(res.zeros.begin(), res.zeros.end(), [](const Zero& a, const Zero& b) {
    if (a.s.imag() != b.s.imag()) return a.s.imag() < b.s.imag();
    return a.s.real() < b.s.real();
  });
  if (!res.unresolved.empty()) {
    res.degraded = true;
    res.diagnostic = std::to_string(res.unresolved.size()) + " unresolved cluster(s)";
  }
  return res;
}

int weyl_strip_count(const ResonanceSet& zeros, std::pair<double, double> strip,
                     std::pair<double, double> window) {
  constexpr double eps = 1e-9;
  int n = 0;
  for (const auto& z : zeros.zeros) {
    const double x = z.s.real(), y = z.s.imag();
    if (x >= strip.first && x <= strip.second && y >= window.first - eps && y < window.second - eps)
      n += z.multiplicity;
  }
  return n;
}

}  // namespace zl
