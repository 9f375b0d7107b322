#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "zl/catalog_io.hpp"
#include "zl/orbit_sources.hpp"

using namespace zl;

namespace {

using I2 = std::array<long long, 4>;

I2 mul(const I2& x, const I2& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

I2 power(const I2& a, int n) {
  I2 p{1, 0, 0, 1};
  for (int i = 0; i < n; ++i) p = mul(p, a);
  return p;
}

// Orbit data by brute force on the torus: every fixed point of A^n is
// rational with denominator N = |det(A^n - I)|, so scan the N x N lattice
// and follow the map exactly mod N.
struct TorusCounts {
  std::vector<long long> fix, prime;
};

TorusCounts brute_force(const I2& a, int n_max) {
  TorusCounts c;
  for (int n = 1; n <= n_max; ++n) {
    const I2 p = power(a, n);
    const long long det = std::llabs((p[0] - 1) * (p[3] - 1) - p[1] * p[2]);
    long long fixed = 0, minimal = 0;
    for (long long i = 0; i < det; ++i)
      for (long long j = 0; j < det; ++j) {
        long long x = i, y = j;
        int first = 0;
        for (int k = 1; k <= n; ++k) {
          const long long nx = ((a[0] * x + a[1] * y) % det + det) % det;
          const long long ny = ((a[2] * x + a[3] * y) % det + det) % det;
          x = nx;
          y = ny;
          if (!first && x == i && y == j) first = k;
        }
        if (x == i && y == j) {
          ++fixed;
          if (first == n) ++minimal;
        }
      }
    c.fix.push_back(fixed);
    c.prime.push_back(minimal / n);
  }
  return c;
}

Mat hyperbolic_gen(double len, double angle) {
  Mat t(2, 2), r(2, 2);
  t << std::cosh(len / 2), std::sinh(len / 2), std::sinh(len / 2), std::cosh(len / 2);
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r * t * r.transpose();
}

int mobius(int n) {
  int m = 1;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      m = -m;
    }
  return n > 1 ? -m : m;
}

// Primitive conjugacy classes of cyclically reduced words of length n in a
// free group of rank k (necklace count over cyclically reduced words).
long long free_group_primitive_classes(int k, int n) {
  auto cyc = [k](int m) {
    return static_cast<long long>(std::llround(std::pow(2 * k - 1, m))) + 1 + (k - 1) * (1 + (m % 2 ? -1 : 1));
  };
  long long s = 0;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) s += mobius(d) * cyc(n / d);
  return s / n;
}

}  // namespace

TEST_CASE("cat map fixed points and prime orbits") {
  CatMapSpec spec;
  spec.n_max = 6;
  const auto fix = catmap_fixed_point_counts(spec);
  const auto prime = catmap_prime_counts(spec);
  const std::vector<std::uint64_t> f4{1, 5, 16, 45}, p4{1, 2, 5, 10};
  CHECK(std::vector<std::uint64_t>(fix.begin(), fix.begin() + 4) == f4);
  CHECK(std::vector<std::uint64_t>(prime.begin(), prime.begin() + 4) == p4);

  const auto bf = brute_force({2, 1, 1, 1}, 6);
  for (int n = 0; n < 6; ++n) {
    CHECK(static_cast<long long>(fix[n]) == bf.fix[n]);
    CHECK(static_cast<long long>(prime[n]) == bf.prime[n]);
  }
}

TEST_CASE("other hyperbolic cat maps agree with the torus scan") {
  for (I2 a : {I2{3, 1, 2, 1}, I2{1, 1, 1, 2}, I2{2, 3, 1, 2}}) {
    CatMapSpec spec;
    spec.a = a;
    spec.n_max = 4;
    const auto fix = catmap_fixed_point_counts(spec);
    const auto prime = catmap_prime_counts(spec);
    const auto bf = brute_force(a, 4);
    for (int n = 0; n < 4; ++n) {
      CHECK(static_cast<long long>(fix[n]) == bf.fix[n]);
      CHECK(static_cast<long long>(prime[n]) == bf.prime[n]);
    }
  }
}

TEST_CASE("cat map catalog layout") {
  CatMapSpec spec;
  spec.n_max = 5;
  spec.roof = 0.5;
  const auto cat = catmap_suspension_catalog(spec);
  CHECK(cat.d == 1);
  CHECK(cat.max_period == doctest::Approx(2.5));
  CHECK(cat.orbits.size() == 1 + 2 + 5 + 10 + 24);
  CHECK(cat.source == "catmap[a=2 1 1 1;roof=0.5;nmax=5]");
  for (const auto& o : cat.orbits) {
    const int p = static_cast<int>(std::lround(o.period / 0.5));
    const I2 ap = power({2, 1, 1, 1}, p);
    CHECK(o.jacobian(0, 0) == ap[0]);
    CHECK(o.jacobian(0, 1) == ap[1]);
    CHECK(o.jacobian(1, 0) == ap[2]);
    CHECK(o.jacobian(1, 1) == ap[3]);
    CHECK(o.multiplicity == 1);
  }
  CHECK(cat.orbits.front().label == "p1.1");
}

TEST_CASE("large cat map catalogs aggregate per period") {
  CatMapSpec spec;
  spec.n_max = 30;
  const auto cat = catmap_suspension_catalog(spec);
  const auto prime = catmap_prime_counts(spec);
  CHECK(cat.orbits.size() == 30);
  CHECK(cat.total_orbits() == std::accumulate(prime.begin(), prime.end(), std::uint64_t{0}));
  CHECK(cat.orbits[29].multiplicity == prime[29]);
}

TEST_CASE("non-hyperbolic cat map is rejected") {
  CatMapSpec spec;
  spec.a = {1, 1, 0, 1};
  CHECK_THROWS_AS(catmap_suspension_catalog(spec), SpecError);
  spec.a = {2, 0, 0, 1};
  CHECK_THROWS_AS(catmap_suspension_catalog(spec), SpecError);
}

TEST_CASE("Bolza generators satisfy the relator") {
  const auto spec = bolza_spec(4);
  CHECK(spec.generators.size() == 4);
  for (const auto& g : spec.generators) CHECK(std::abs(g.determinant() - 1) < 1e-12);
  for (const auto& r : spec.relators) {
    const Mat m = word_matrix(spec, r);
    CHECK(std::min((m - Mat::Identity(2, 2)).norm(), (m + Mat::Identity(2, 2)).norm()) < 1e-9);
  }
}

TEST_CASE("Bolza catalog: systole and free-group counts below the relator scale") {
  const auto rep = fuchsian_geodesic_catalog(bolza_spec(2));
  const double systole = 2 * std::acosh(1 + std::sqrt(2.0));
  CHECK(rep.catalog.orbits.front().period == doctest::Approx(systole).epsilon(1e-12));
  CHECK(rep.non_hyperbolic == 0);
  // Two-letter words meet no relator cell.
  CHECK(static_cast<long long>(rep.catalog.orbits.size()) ==
        free_group_primitive_classes(4, 1) + free_group_primitive_classes(4, 2));
  for (const auto& o : rep.catalog.orbits) {
    CHECK(o.period >= systole * (1 - 1e-12));
    CHECK(2 * std::acosh(std::abs(word_matrix(bolza_spec(2), o.label).trace()) / 2) ==
          doctest::Approx(o.period).epsilon(1e-12));
  }
}

TEST_CASE("Bolza surface has twelve systoles") {
  // 24 oriented classes, reached once words of length 3 are admitted.
  const double systole = 2 * std::acosh(1 + std::sqrt(2.0));
  for (int L : {3, 5}) {
    const auto rep = fuchsian_geodesic_catalog(bolza_spec(L));
    int n = 0;
    for (const auto& o : rep.catalog.orbits) n += std::abs(o.period - systole) < 1e-9;
    CHECK(n == 24);
  }
}

TEST_CASE("Bolza classes are pairwise non-conjugate") {
  // Brute force: every conjugate g W g^-1 with |g| <= 4, compared as matrices up to sign.
  const auto spec = bolza_spec(4);
  const auto rep = fuchsian_geodesic_catalog(spec);
  std::vector<std::string> ball{""};
  for (std::size_t i = 0; i < ball.size(); ++i) {
    if (ball[i].size() == 4) continue;
    for (char ch : std::string("abcdABCD")) {
      if (!ball[i].empty() && free_reduce(ball[i] + ch).size() <= ball[i].size()) continue;
      ball.push_back(ball[i] + ch);
    }
  }
  CHECK(ball.size() == 3201);
  std::vector<Mat> g, gi;
  for (const auto& x : ball) {
    g.push_back(word_matrix(spec, x));
    gi.push_back(word_matrix(spec, invert_word(x)));
  }
  struct Entry {
    double m[3];
    int cls;
  };
  std::vector<Entry> all;
  const auto& orbs = rep.catalog.orbits;
  for (std::size_t c = 0; c < orbs.size(); ++c) {
    const Mat w = word_matrix(spec, orbs[c].label);
    for (std::size_t j = 0; j < ball.size(); ++j) {
      Mat x = g[j] * w * gi[j];
      if (x.trace() < 0) x = -x;
      all.push_back({{x(0, 0), x(0, 1), x(1, 0)}, static_cast<int>(c)});
    }
  }
  std::sort(all.begin(), all.end(), [](const Entry& a, const Entry& b) { return a.m[0] < b.m[0]; });
  int clashes = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      const double tol = 1e-7 * (1 + std::abs(all[i].m[0]));
      if (all[j].m[0] - all[i].m[0] > tol) break;
      if (all[j].cls == all[i].cls) continue;
      bool same = true;
      for (int k = 1; k < 3; ++k)
        same = same && std::abs(all[j].m[k] - all[i].m[k]) <= 1e-7 * (1 + std::abs(all[i].m[k]));
      clashes += same;
    }
  }
  CHECK(clashes == 0);
}

TEST_CASE("Bolza catalog words are canonical and unique") {
  const auto rep = fuchsian_geodesic_catalog(bolza_spec(5));
  std::set<std::string> words;
  for (const auto& o : rep.catalog.orbits) {
    CHECK(words.insert(o.label).second);
    CHECK(least_rotation(o.label) == o.label);
    CHECK(cyclic_reduce(o.label) == o.label);
  }
  CHECK(rep.catalog.max_period > rep.catalog.orbits.front().period);
}

TEST_CASE("Schottky group class counts match the necklace formula") {
  FuchsianSpec spec;
  spec.generators = {hyperbolic_gen(4.0, 0.0), hyperbolic_gen(4.0, M_PI / 4)};
  spec.max_word_len = 6;
  const auto rep = fuchsian_geodesic_catalog(spec);
  std::map<std::size_t, long long> by_len;
  for (const auto& o : rep.catalog.orbits) ++by_len[o.label.size()];
  for (int n = 1; n <= 6; ++n) CHECK(by_len[n] == free_group_primitive_classes(2, n));
  CHECK(rep.non_hyperbolic == 0);
}

TEST_CASE("single generator keeps only the primitive classes") {
  FuchsianSpec spec;
  Mat g = Mat::Zero(2, 2);
  g(0, 0) = std::exp(0.5);
  g(1, 1) = std::exp(-0.5);
  spec.generators = {g};
  spec.max_word_len = 3;
  const auto rep = fuchsian_geodesic_catalog(spec);
  REQUIRE(rep.catalog.orbits.size() == 2);
  for (const auto& o : rep.catalog.orbits) CHECK(o.period == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("generator with determinant off 1 is rejected") {
  FuchsianSpec spec;
  spec.generators = {2.0 * Mat::Identity(2, 2)};
  CHECK_THROWS_AS(fuchsian_geodesic_catalog(spec), SpecError);
}

TEST_CASE("word helpers") {
  CHECK(invert_word("abC") == "cBA");
  CHECK(free_reduce("abBa") == "aa");
  CHECK(cyclic_reduce("Abca") == "bc");
  CHECK(least_rotation("cab") == "abc");
}

TEST_CASE("synthetic catalogs") {
  SyntheticSpec spec;
  spec.seed = 11;
  spec.d = 2;
  spec.count = 20;
  const auto a = synthetic_catalog(spec), b = synthetic_catalog(spec);
  CHECK(catalog_to_string(a) == catalog_to_string(b));
  CHECK(a.orbits.size() == 20);
  for (const auto& o : a.orbits) CHECK(validate_symplectic(o.jacobian, 1e-8));

  spec.period_range = {1, 1};
  for (const auto& o : synthetic_catalog(spec).orbits) CHECK(o.period == 1.0);

  spec.seed = 12;
  CHECK(catalog_to_string(synthetic_catalog(spec)) != catalog_to_string(a));
}
