#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "zl/orbit_model.hpp"

namespace zl {

struct CatMapSpec {
  std::array<long long, 4> a{2, 1, 1, 1};  // row-major 2x2 integer matrix
  double roof = 1.0;
  int n_max = 10;
  // Above this many prime orbits, each period is stored as one class
  // carrying a multiplicity instead of one row per orbit.
  std::uint64_t expand_limit = 100000;
};

// #Fix(A^n) = |det(A^n - I)| = |tr A^n - 2| for det A = 1.
std::vector<std::uint64_t> catmap_fixed_point_counts(const CatMapSpec& spec);
// Prime map-orbit counts by period via Moebius inversion of the above.
std::vector<std::uint64_t> catmap_prime_counts(const CatMapSpec& spec);
OrbitCatalog catmap_suspension_catalog(const CatMapSpec& spec);

struct FuchsianSpec {
  std::vector<Mat> generators;       // letters a, b, c, ...; inverses are A, B, C, ...
  std::vector<std::string> relators; // cyclic relator words, may be empty
  int max_word_len = 4;
  std::string name = "custom";
};

struct FuchsianReport {
  OrbitCatalog catalog;
  std::size_t words_examined = 0;
  std::size_t non_hyperbolic = 0;  // elliptic or parabolic words met
};

FuchsianSpec bolza_spec(int max_word_len);
FuchsianReport fuchsian_geodesic_catalog(const FuchsianSpec& spec);

// Word algebra shared with the brute-force tests.
std::string invert_word(const std::string& w);
std::string free_reduce(const std::string& w);
std::string cyclic_reduce(const std::string& w);
std::string least_rotation(const std::string& w);
Mat word_matrix(const FuchsianSpec& spec, const std::string& w);

struct SyntheticSpec {
  std::uint64_t seed = 1;
  int d = 1;
  int count = 20;
  std::pair<double, double> period_range{1.0, 3.0};
  std::pair<double, double> log_eigen_range{0.2, 1.5};
};

OrbitCatalog synthetic_catalog(const SyntheticSpec& spec);
// Random symplectic change of basis used by the synthetic source.
Mat random_symplectic(int d, std::uint64_t seed);

}  // namespace zl
