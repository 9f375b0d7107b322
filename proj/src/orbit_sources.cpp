#include "zl/orbit_sources.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

namespace zl {

namespace {

using i128 = __int128;

struct IMat2 {
  i128 a, b, c, d;
};

IMat2 mul(const IMat2& x, const IMat2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
          x.c * y.b + x.d * y.d};
}

std::vector<IMat2> catmap_powers(const CatMapSpec& spec) {
  const auto& a = spec.a;
  const long long det = a[0] * a[3] - a[1] * a[2];
  const long long tr = a[0] + a[3];
  if (det != 1) throw SpecError("model", "cat map matrix must have determinant 1");
  if (std::llabs(tr) <= 2) throw SpecError("model", "cat map matrix is not hyperbolic (|trace| <= 2)");
  if (spec.n_max < 1) throw SpecError("model", "nmax must be positive");
  if (!(spec.roof > 0)) throw SpecError("model", "roof must be positive");
  IMat2 base{a[0], a[1], a[2], a[3]};
  std::vector<IMat2> pw{base};
  const i128 cap = static_cast<i128>(1) << 62;
  for (int n = 2; n <= spec.n_max; ++n) {
    pw.push_back(mul(pw.back(), base));
    const auto& m = pw.back();
    for (i128 v : {m.a, m.b, m.c, m.d})
      if (v > cap || -v > cap) throw SpecError("model", "nmax too large for exact orbit counts");
  }
  return pw;
}

int moebius(int n) {
  int mu = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      mu = -mu;
    }
  }
  if (n > 1) mu = -mu;
  return mu;
}

std::string fmt_num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

std::vector<std::uint64_t> catmap_fixed_point_counts(const CatMapSpec& spec) {
  std::vector<std::uint64_t> out;
  for (const auto& m : catmap_powers(spec)) {
    i128 t = m.a + m.d - 2;
    if (t < 0) t = -t;
    out.push_back(static_cast<std::uint64_t>(t));
  }
  return out;
}

std::vector<std::uint64_t> catmap_prime_counts(const CatMapSpec& spec) {
  auto fix = catmap_fixed_point_counts(spec);
  std::vector<std::uint64_t> out;
  for (int p = 1; p <= spec.n_max; ++p) {
    i128 s = 0;
    for (int q = 1; q <= p; ++q)
      if (p % q == 0) s += static_cast<i128>(moebius(p / q)) * fix[q - 1];
    if (s % p != 0 || s < 0) throw NumericalError("count", "Moebius inversion gave a non-integer count");
    out.push_back(static_cast<std::uint64_t>(s / p));
  }
  return out;
}

OrbitCatalog catmap_suspension_catalog(const CatMapSpec& spec) {
  auto pw = catmap_powers(spec);
  auto counts = catmap_prime_counts(spec);
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  const bool expand = total <= spec.expand_limit;

  OrbitCatalog cat;
  cat.d = 1;
  cat.max_period = spec.n_max * spec.roof;
  std::ostringstream src;
  src << "catmap[a=" << spec.a[0] << ' ' << spec.a[1] << ' ' << spec.a[2] << ' ' << spec.a[3]
      << ";roof=" << fmt_num(spec.roof) << ";nmax=" << spec.n_max << "]";
  cat.source = src.str();

  for (int p = 1; p <= spec.n_max; ++p) {
    const auto& m = pw[p - 1];
    Mat jac(2, 2);
    jac << static_cast<double>(m.a), static_cast<double>(m.b), static_cast<double>(m.c),
        static_cast<double>(m.d);
    const double period = p * spec.roof;
    const std::uint64_t n = counts[p - 1];
    if (n == 0) continue;
    if (expand) {
      const int width = static_cast<int>(std::to_string(n).size());
      for (std::uint64_t j = 0; j < n; ++j) {
        std::string idx = std::to_string(j + 1);
        idx.insert(0, width - idx.size(), '0');
        cat.orbits.push_back({"p" + std::to_string(p) + "." + idx, period, jac, 1});
      }
    } else {
      cat.orbits.push_back({"p" + std::to_string(p), period, jac, n});
    }
  }
  cat.sort_canonical();
  return cat;
}

// ---------------------------------------------------------------- Fuchsian

std::string invert_word(const std::string& w) {
  std::string out(w.rbegin(), w.rend());
  for (auto& ch : out)
    ch = std::islower(static_cast<unsigned char>(ch)) ? static_cast<char>(std::toupper(ch))
                                                       : static_cast<char>(std::tolower(ch));
  return out;
}

namespace {

bool inverse_letters(char x, char y) {
  return x != y && std::tolower(static_cast<unsigned char>(x)) ==
                       std::tolower(static_cast<unsigned char>(y));
}

}  // namespace

std::string free_reduce(const std::string& w) {
  std::string st;
  for (char ch : w) {
    if (!st.empty() && inverse_letters(st.back(), ch))
      st.pop_back();
    else
      st.push_back(ch);
  }
  return st;
}

std::string cyclic_reduce(const std::string& w) {
  std::string s = free_reduce(w);
  std::size_t i = 0, j = s.size();
  while (j - i >= 2 && inverse_letters(s[i], s[j - 1])) {
    ++i;
    --j;
  }
  return s.substr(i, j - i);
}

std::string least_rotation(const std::string& w) {
  std::string best = w;
  for (std::size_t k = 1; k < w.size(); ++k) {
    std::string r = w.substr(k) + w.substr(0, k);
    if (r < best) best = r;
  }
  return best;
}

Mat word_matrix(const FuchsianSpec& spec, const std::string& w) {
  Mat m = Mat::Identity(2, 2);
  for (char ch : w) {
    const int g = std::tolower(static_cast<unsigned char>(ch)) - 'a';
    if (g < 0 || g >= static_cast<int>(spec.generators.size()))
      throw SpecError("word", std::string("letter '") + ch + "' has no generator");
    const Mat& x = spec.generators[g];
    if (std::islower(static_cast<unsigned char>(ch))) {
      m = m * x;
    } else {
      Mat inv(2, 2);
      inv << x(1, 1), -x(0, 1), -x(1, 0), x(0, 0);
      m = m * inv;
    }
  }
  return m;
}

FuchsianSpec bolza_spec(int max_word_len) {
  // Regular-octagon group: g_k = [[a + b cos t, -b sin t], [-b sin t, a - b cos t]],
  // t = k pi/4, a = 1 + sqrt 2, b = sqrt(2 a), so a^2 - b^2 = 1 and tr = 2a.
  FuchsianSpec s;
  const double a = 1.0 + std::sqrt(2.0);
  const double b = std::sqrt(2.0 * a);
  for (int k = 0; k < 4; ++k) {
    const double t = k * M_PI / 4.0;
    Mat g(2, 2);
    g << a + b * std::cos(t), -b * std::sin(t), -b * std::sin(t), a - b * std::cos(t);
    s.generators.push_back(g);
  }
  s.relators = {"aBcDAbCd"};
  s.max_word_len = max_word_len;
  s.name = "bolza";
  return s;
}

namespace {

class Canonicalizer {
 public:
  explicit Canonicalizer(const FuchsianSpec& spec) {
    for (const auto& r : spec.relators) {
      for (const auto& base : {r, invert_word(r)}) {
        for (std::size_t k = 0; k < base.size(); ++k)
          conj_.push_back(base.substr(k) + base.substr(0, k));
      }
      for (char ch : r) letters_.insert(ch);
    }
  }

  // Least representative of the conjugacy class of the cyclic word w among
  // words of the same length; empty when the class has a shorter word.
  std::string canonical(const std::string& w) const {
    std::set<std::string> seen{least_rotation(w)};
    std::vector<std::string> queue{*seen.begin()};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      std::vector<std::string> next;
      if (!expand(queue[qi], next)) return {};
      for (auto& x : next)
        if (seen.insert(x).second) queue.push_back(x);
    }
    return *seen.begin();
  }

 private:
  // Appends the words conjugate to w through one layer of relator cells
  // around an annulus; false if w has a shorter conjugate.
  bool expand(const std::string& w, std::vector<std::string>& out) const {
    if (!half_swaps(w, out)) return false;
    const std::size_t n = w.size();
    std::vector<std::string> found;
    for (std::size_t k = 0; k < n; ++k) {
      const std::string rot = w.substr(k) + w.substr(0, k);
      layer(rot, 0, 0, 0, std::string(), found);
      for (char x : letters_) layer(rot, 0, x, x, std::string(), found);
    }
    for (const auto& v : found) {
      const std::string c = cyclic_reduce(v);
      if (c.empty()) continue;
      if (c.size() < n) return false;
      if (c.size() == n) out.push_back(least_rotation(c));
    }
    return true;
  }

  static char inverse_letter(char ch) {
    return std::islower(static_cast<unsigned char>(ch)) ? static_cast<char>(std::toupper(ch))
                                                        : static_cast<char>(std::tolower(ch));
  }

  // Cell i reads u_i x_i v_i^-1 x_{i-1}^-1 with |x| <= 1; cells touching only
  // at a vertex may be separated by letters shared by both boundaries.
  void layer(const std::string& w, std::size_t pos, char pending, char x0, std::string v,
             std::vector<std::string>& found) const {
    const std::size_t n = w.size();
    if (pos == n) {
      if (pending == x0 && v.size() == n) found.push_back(v);
      return;
    }
    // A cell shortens the boundary by at most half of what it consumes.
    if (2 * v.size() + (n - pos) > 2 * n) return;
    if (pending == 0 && pos > 0) layer(w, pos + 1, 0, x0, v + w[pos], found);
    for (const auto& r : conj_) {
      const std::size_t R = r.size();
      if (pending && r.back() != inverse_letter(pending)) continue;
      const std::size_t tail = R - (pending ? 1 : 0);
      for (std::size_t len = 1; len <= R / 2 && pos + len <= n && len < tail; ++len) {
        if (r[len - 1] != w[pos + len - 1]) break;
        for (int withx = 0; withx < 2; ++withx) {
          if (withx && len + 1 > tail) continue;
          const std::size_t b = len + withx;
          const std::string vi = invert_word(r.substr(b, tail - b));
          layer(w, pos + len, withx ? r[len] : 0, x0, v + vi, found);
        }
      }
    }
  }

  // Appends half-relator swaps of w; false if w is Dehn-shortenable.
  bool half_swaps(const std::string& w, std::vector<std::string>& out) const {
    const std::size_t n = w.size();
    const std::string ww = w + w;
    for (const auto& r : conj_) {
      const std::size_t h = r.size() / 2;
      if (n < h) continue;
      for (std::size_t pos = 0; pos < n; ++pos) {
        std::size_t l = 0;
        while (l < n && l < r.size() && ww[pos + l] == r[l]) ++l;
        if (l > h) return false;
        if (l == h) {
          std::string rot = ww.substr(pos, n);
          std::string swapped = cyclic_reduce(invert_word(r.substr(h)) + rot.substr(h));
          if (swapped.size() < n) return false;
          out.push_back(least_rotation(swapped));
        }
      }
    }
    return true;
  }

  std::vector<std::string> conj_;
  std::set<char> letters_;
};

bool is_proper_power(const std::string& w) {
  const std::size_t n = w.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = w[i] == w[i - p];
    if (periodic) return true;
  }
  return false;
}

template <class F>
void for_each_cyclic_word(int n_gens, int len, F&& f) {
  std::string letters;
  for (int g = 0; g < n_gens; ++g) letters.push_back(static_cast<char>('a' + g));
  for (int g = 0; g < n_gens; ++g) letters.push_back(static_cast<char>('A' + g));
  std::string w(len, ' ');
  auto rec = [&](auto&& self, int i) -> void {
    if (i == len) {
      if (len >= 2 && inverse_letters(w[0], w[len - 1])) return;
      f(w);
      return;
    }
    for (char ch : letters) {
      if (i > 0 && inverse_letters(w[i - 1], ch)) continue;
      // Only least rotations matter; prune prefixes that cannot start one.
      if (i > 0 && ch < w[0]) continue;
      w[i] = ch;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
}

}  // namespace

FuchsianReport fuchsian_geodesic_catalog(const FuchsianSpec& spec) {
  if (spec.generators.empty()) throw SpecError("model", "no generators given");
  if (spec.max_word_len < 1) throw SpecError("model", "max word length must be positive");
  for (const auto& g : spec.generators) {
    if (g.rows() != 2 || g.cols() != 2) throw SpecError("model", "generators must be 2x2");
    if (std::abs(g.determinant() - 1.0) > 1e-10)
      throw SpecError("model", "generator determinant differs from 1 by more than 1e-10");
  }
  const int n_gens = static_cast<int>(spec.generators.size());
  Canonicalizer canon(spec);
  FuchsianReport rep;
  rep.catalog.d = 1;

  auto classify = [&](const std::string& w, double& length) -> int {
    // 0: not a new class representative, 1: prime hyperbolic, 2: proper power,
    // 3: not hyperbolic.
    if (least_rotation(w) != w) return 0;
    if (canon.canonical(w) != w) return 0;
    const double tr = std::abs(word_matrix(spec, w).trace());
    if (tr <= 2.0 + 1e-9) return 3;
    length = 2.0 * std::acosh(tr / 2.0);
    return is_proper_power(w) ? 2 : 1;
  };

  for (int len = 1; len <= spec.max_word_len; ++len) {
    for_each_cyclic_word(n_gens, len, [&](const std::string& w) {
      ++rep.words_examined;
      double ell = 0;
      const int kind = classify(w, ell);
      if (kind == 3) ++rep.non_hyperbolic;
      if (kind != 1) return;
      Mat jac = Mat::Zero(2, 2);
      jac(0, 0) = std::exp(ell);
      jac(1, 1) = std::exp(-ell);
      rep.catalog.orbits.push_back({w, ell, jac, 1});
    });
  }

  // Horizon: shortest class that first appears one letter beyond the cutoff.
  double next_min = INFINITY;
  for_each_cyclic_word(n_gens, spec.max_word_len + 1, [&](const std::string& w) {
    double ell = 0;
    if (classify(w, ell) == 1) next_min = std::min(next_min, ell);
  });
  if (!std::isfinite(next_min)) {
    double gen_min = INFINITY;
    for (const auto& g : spec.generators)
      gen_min = std::min(gen_min, 2.0 * std::acosh(std::max(1.0, std::abs(g.trace()) / 2.0)));
    next_min = (spec.max_word_len + 1) * gen_min;
  }
  rep.catalog.max_period = 0.9 * next_min;
  rep.catalog.source = "fuchsian[" + spec.name + ";len=" + std::to_string(spec.max_word_len) + "]";
  rep.catalog.sort_canonical();
  return rep;
}

// ---------------------------------------------------------------- synthetic

Mat random_symplectic(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  Mat s1 = Mat::Zero(d, d), s2 = Mat::Zero(d, d), b = Mat::Identity(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) s1(i, j) = s1(j, i) = u(rng);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) s2(i, j) = s2(j, i) = u(rng);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) b(i, j) += 0.6 * u(rng);
  Mat upper = Mat::Identity(2 * d, 2 * d), lower = Mat::Identity(2 * d, 2 * d),
      block = Mat::Zero(2 * d, 2 * d);
  upper.topRightCorner(d, d) = s1;
  lower.bottomLeftCorner(d, d) = s2;
  block.topLeftCorner(d, d) = b;
  block.bottomRightCorner(d, d) = b.inverse().transpose();
  return upper * lower * block;
}

OrbitCatalog synthetic_catalog(const SyntheticSpec& spec) {
  if (spec.d < 1 || spec.count < 0) throw SpecError("model", "synthetic d and count must be positive");
  auto [p0, p1] = spec.period_range;
  auto [e0, e1] = spec.log_eigen_range;
  if (!(p0 > 0) || p1 < p0 || !(e0 > 0) || e1 < e0)
    throw SpecError("model", "synthetic ranges must be positive and ordered");
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&](double lo, double hi) { return lo == hi ? lo : lo + (hi - lo) * unit(rng); };

  OrbitCatalog cat;
  cat.d = spec.d;
  cat.max_period = p1;
  std::ostringstream src;
  src << "synthetic[seed=" << spec.seed << ";d=" << spec.d << ";count=" << spec.count
      << ";periods=" << fmt_num(p0) << ' ' << fmt_num(p1) << ";logeig=" << fmt_num(e0) << ' '
      << fmt_num(e1) << "]";
  cat.source = src.str();
  const int width = static_cast<int>(std::to_string(spec.count).size());
  for (int i = 0; i < spec.count; ++i) {
    const double period = draw(p0, p1);
    Mat diag = Mat::Zero(2 * spec.d, 2 * spec.d);
    for (int k = 0; k < spec.d; ++k) {
      const double a = draw(e0, e1);
      diag(k, k) = std::exp(a);
      diag(spec.d + k, spec.d + k) = std::exp(-a);
    }
    const std::uint64_t sub_seed = rng();
    Mat s = random_symplectic(spec.d, sub_seed);
    std::string idx = std::to_string(i + 1);
    idx.insert(0, width - idx.size(), '0');
    cat.orbits.push_back({"s" + idx, period, s * diag * symplectic_inverse(s), 1});
  }
  cat.sort_canonical();
  return cat;
}

}  // namespace zl
