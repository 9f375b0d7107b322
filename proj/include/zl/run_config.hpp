#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "zl/common.hpp"

namespace zl {

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"orbits", "zeta-eval", "zeta-scan", "det", "zeros",
                                              "moments", "weyl", "bargmann-verify", "spectrum",
                                              "identity-check"};
  return names;
}

struct RunConfig {
  std::string command;

  // Catalog: either a file or a model.
  std::string catalog;
  std::string model;  // catmap | bolza | synthetic
  std::array<long long, 4> a{2, 1, 1, 1};
  double roof = 1;
  int nmax = 30;
  int word_len = 4;
  int dim = 1;
  int n_orbits = 20;
  std::pair<double, double> period_range{1, 3};
  std::pair<double, double> log_eigen_range{0.2, 1.5};
  std::uint64_t seed = 1;
  std::string cache_dir = ".zlab-cache";

  // Evaluation policy.
  int m_max = 64;
  int k_cutoff = 64;
  double pressure = NAN;
  double horizon = 0;
  bool horizon_cut = true;

  // Function selection: gv | smale | fredholm | grassmann.
  std::string zeta = "gv";
  int k = 0;
  int ell = 0;
  cplx s{2, 0};
  std::string eval = "cycle";  // cycle | direct

  std::array<double, 4> rect{0.2, 0.8, -7, 7};
  double tol = 1e-6;

  std::pair<double, double> re_range{0.5, 3};
  std::pair<double, double> im_range{-10, 10};
  int n_re = 11;
  int n_im = 21;

  cplx s0{3, 0};
  int moment_min = 1;
  int moment_max = 25;
  int count = 1;

  std::pair<double, double> strip{0.4, 0.6};
  std::pair<double, double> window{0, 4 * M_PI};

  double half_width = 8;
  int points = 128;
  double hbar = 1;

  std::vector<double> expansions{2, 4};
  double weight_r = 8;
  int sigma = 0;
  double split_half_width = 16;
  int split_points = 192;
  int basis = 12;
  bool refine = true;

  int ell_range = -1;  // < 0: d(d + 1)
  std::vector<cplx> samples{{3, 0}, {3, 1}, {3, 5}};

  std::string out;
  std::string simd = "auto";  // auto | scalar | avx2

  // Field-wise through the echo so that a NaN pressure compares equal.
  bool operator==(const RunConfig& o) const { return echo() == o.echo(); }

  // Range and consistency checks; throws SpecError.
  void validate() const;
  // Every field as (flag name, value) in a form accepted back by parse.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

struct ParseOutcome {
  RunConfig config;
  bool exit_now = false;  // --help and friends
  int exit_code = 0;
  std::string message;    // help text or error line
};

// Flags are `--key value`; `--config path` reads key=value lines, flags win.
ParseOutcome parse_command_line(int argc, const char* const* argv);

cplx parse_complex(const std::string& text);
std::string format_complex(cplx z);

}  // namespace zl
