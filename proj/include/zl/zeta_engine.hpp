#pragma once

#include <vector>

#include "zl/orbit_model.hpp"

namespace zl {

struct EvalPolicy {
  int m_max = 64;
  int k_cutoff = 64;
  // NaN: estimated from the catalog's growth of weights.
  double pressure_estimate = NAN;
  // <= 0: use the catalog's max_period.
  double horizon = 0;
  // Drop repetitions with m|gamma| beyond the horizon so that every
  // retained term is part of a complete period shell.
  bool horizon_cut = true;

  void validate() const;
};

struct ZetaValue {
  cplx value{1.0, 0.0};
  double truncation_bound = 0;
};

enum class ZetaKind { Smale, GutzwillerVoros, Fredholm, Grassmann };

struct ZetaSpec {
  ZetaKind kind = ZetaKind::GutzwillerVoros;
  int k = 0;    // exterior degree on E_s (Fredholm, Grassmann)
  int ell = 0;  // exterior degree on the Grassmann fiber
};

// One term coef * exp(-s T) of the exponent; T = m |gamma|.
struct ZetaTerm {
  double T;
  double period;  // |gamma|
  cplx coef;      // includes 1/m and the orbit multiplicity
};

// Exponent sum E(s) = -sum coef e^{-sT}; the zeta value is exp(E).
class ZetaFunction {
 public:
  ZetaFunction(const OrbitCatalog& cat, ZetaSpec spec, const EvalPolicy& policy);

  cplx exponent(cplx s) const;
  ZetaValue eval(cplx s) const;
  // d/ds log of the value, i.e. +sum coef T e^{-sT}.
  cplx log_derivative(cplx s) const;
  double truncation_bound(double re_s) const;

  double pressure() const { return pressure_; }
  double horizon() const { return horizon_; }
  const std::vector<ZetaTerm>& terms() const { return terms_; }
  int d() const { return d_; }

 private:
  struct Tail {
    double first;  // modulus at s = 0 of the first dropped repetition
    double T;      // its T
    double ratio;  // modulus ratio of consecutive dropped terms at s = 0
    double period;
  };
  std::vector<ZetaTerm> terms_;
  std::vector<Tail> tails_;
  double pressure_ = -INFINITY;
  double horizon_amp_ = 0;  // weight density e^{-P t} on the last shell
  double horizon_ = 0;
  double k_tail_ = 0;       // Smale only: dropped k >= k_cutoff at s = 0, per e^{-k}
  std::vector<double> k_tail_periods_;
  int k_cutoff_ = 0;
  int d_ = 1;
  ZetaKind kind_;
};

ZetaValue smale_zeta(cplx s, const OrbitCatalog& cat, const EvalPolicy& pol);
ZetaValue gv_zeta(cplx s, const OrbitCatalog& cat, const EvalPolicy& pol);
ZetaValue fredholm_det(int k, cplx s, const OrbitCatalog& cat, const EvalPolicy& pol);
ZetaValue grassmann_fredholm_det(int k, int ell, cplx s, const OrbitCatalog& cat,
                                 const EvalPolicy& pol);
// (log d_k)'(s).
cplx log_derivative(int k, cplx s, const OrbitCatalog& cat, const EvalPolicy& pol);

struct TraceMoment {
  cplx moment;  // Tr R(s0)^n
  cplx a_n;     // (-1)^{n-1} moment / n
};
TraceMoment trace_moment(cplx s0, int n, const OrbitCatalog& cat, const EvalPolicy& pol);
// Same quantity for n = 1..n_max from one term list.
std::vector<cplx> trace_moments(cplx s0, int n_max, const OrbitCatalog& cat, const EvalPolicy& pol);

struct ProductIdentityReport {
  int ell_range = 0;
  double max_rel_err_k = 0;   // alternating product of d_k vs Z_sc
  double max_rel_err_kl = 0;  // alternating product of d_{k,l}, l = 0..ell_range
};
ProductIdentityReport product_identity_check(const OrbitCatalog& cat,
                                             const std::vector<cplx>& s_samples,
                                             const EvalPolicy& pol, int ell_range);

}  // namespace zl
