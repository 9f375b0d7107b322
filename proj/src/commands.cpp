#include "zl/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "zl/bargmann_suite.hpp"
#include "zl/catalog_io.hpp"
#include "zl/dirichlet.hpp"
#include "zl/orbit_sources.hpp"
#include "zl/simd.hpp"
#include "zl/zero_finder.hpp"
#include "zl/zeta_engine.hpp"

namespace zl {

using nlohmann::ordered_json;

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string catalog_key(const RunConfig& cfg) {
  std::ostringstream os;
  os << cfg.model << ';';
  if (cfg.model == "catmap") {
    os << "a=" << cfg.a[0] << ',' << cfg.a[1] << ',' << cfg.a[2] << ',' << cfg.a[3]
       << ";roof=" << format_double(cfg.roof) << ";nmax=" << cfg.nmax;
  } else if (cfg.model == "bolza") {
    os << "len=" << cfg.word_len;
  } else {
    os << "seed=" << cfg.seed << ";d=" << cfg.dim << ";count=" << cfg.n_orbits
       << ";period=" << format_double(cfg.period_range.first) << ',' << format_double(cfg.period_range.second)
       << ";logeig=" << format_double(cfg.log_eigen_range.first) << ','
       << format_double(cfg.log_eigen_range.second);
  }
  return os.str();
}

std::string catalog_cache_path(const RunConfig& cfg) {
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a64(catalog_key(cfg))));
  return (std::filesystem::path(cfg.cache_dir) / (cfg.model + "-" + hex + ".csv")).string();
}

namespace {

OrbitCatalog build_catalog(const RunConfig& cfg) {
  if (cfg.model == "catmap") {
    CatMapSpec spec;
    spec.a = cfg.a;
    spec.roof = cfg.roof;
    spec.n_max = cfg.nmax;
    return catmap_suspension_catalog(spec);
  }
  if (cfg.model == "bolza") return fuchsian_geodesic_catalog(bolza_spec(cfg.word_len)).catalog;
  SyntheticSpec spec;
  spec.seed = cfg.seed;
  spec.d = cfg.dim;
  spec.count = cfg.n_orbits;
  spec.period_range = cfg.period_range;
  spec.log_eigen_range = cfg.log_eigen_range;
  return synthetic_catalog(spec);
}

}  // namespace

OrbitCatalog obtain_catalog(const RunConfig& cfg) {
  if (!cfg.catalog.empty()) return load_catalog(cfg.catalog);
  if (cfg.cache_dir.empty()) return build_catalog(cfg);
  const std::string path = catalog_cache_path(cfg);
  if (std::filesystem::exists(path)) return load_catalog(path);
  OrbitCatalog cat = build_catalog(cfg);
  std::error_code ec;
  std::filesystem::create_directories(cfg.cache_dir, ec);
  if (ec) throw SpecError("io", "cannot create cache directory " + cfg.cache_dir);
  // Write then rename so a concurrent reader never sees a partial file.
  const std::string tmp = path + ".tmp" + std::to_string(fnv1a64(path + std::to_string(std::rand())));
  save_catalog(tmp, cat);
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw SpecError("io", "cannot move catalog into the cache: " + path);
  return cat;
}

namespace {

EvalPolicy policy_of(const RunConfig& cfg) {
  EvalPolicy p;
  p.m_max = cfg.m_max;
  p.k_cutoff = cfg.k_cutoff;
  p.pressure_estimate = cfg.pressure;
  p.horizon = cfg.horizon;
  p.horizon_cut = cfg.horizon_cut;
  p.validate();
  return p;
}

ZetaSpec zeta_spec_of(const RunConfig& cfg, int d) {
  ZetaSpec z;
  if (cfg.zeta == "gv") z.kind = ZetaKind::GutzwillerVoros;
  if (cfg.zeta == "smale") z.kind = ZetaKind::Smale;
  if (cfg.zeta == "fredholm") z.kind = ZetaKind::Fredholm;
  if (cfg.zeta == "grassmann") z.kind = ZetaKind::Grassmann;
  if ((z.kind == ZetaKind::Fredholm || z.kind == ZetaKind::Grassmann) && cfg.k > d)
    throw SpecError("argument", "--k must be in 0..d");
  z.k = cfg.k;
  z.ell = cfg.ell;
  return z;
}

ordered_json config_json(const RunConfig& cfg) {
  ordered_json j = ordered_json::object();
  for (const auto& [k, v] : cfg.echo()) j[k] = v == "\"\"" ? "" : v;
  return j;
}

ordered_json cjson(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

std::string config_header(const RunConfig& cfg) {
  std::string h;
  for (const auto& [k, v] : cfg.echo()) h += "# " + k + "=" + v + "\n";
  return h;
}

void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw SpecError("io", "cannot write " + cfg.out);
  f << text;
  if (!f) throw SpecError("io", "write failed for " + cfg.out);
}

void emit_json(const RunConfig& cfg, std::ostream& out, const ordered_json& j) { emit(cfg, out, j.dump(2) + "\n"); }

ordered_json zeros_json(const ResonanceSet& r) {
  ordered_json zs = ordered_json::array();
  for (const auto& z : r.zeros)
    zs.push_back({{"re", z.s.real()},
                  {"im", z.s.imag()},
                  {"multiplicity", z.multiplicity},
                  {"residual", z.residual},
                  {"method", z.method}});
  return zs;
}

ordered_json unresolved_json(const ResonanceSet& r) {
  ordered_json u = ordered_json::array();
  for (const auto& [c, n] : r.unresolved) u.push_back({{"re", c.real()}, {"im", c.imag()}, {"count", n}});
  return u;
}

// The function whose zeros are sought: the cycle expansion continues the
// truncated product below the pressure, the direct product does not.
struct ZeroTarget {
  ZetaFunction f;
  std::unique_ptr<CycleExpansion> ce;
  ComplexFn fn() const {
    if (ce) return [this](cplx s) { return ce->eval(s); };
    return [this](cplx s) { return f.eval(s).value; };
  }
};

std::unique_ptr<ZeroTarget> zero_target(const RunConfig& cfg, const OrbitCatalog& cat) {
  auto t = std::unique_ptr<ZeroTarget>(new ZeroTarget{ZetaFunction(cat, zeta_spec_of(cfg, cat.d), policy_of(cfg)), nullptr});
  if (cfg.eval == "cycle") t->ce = std::make_unique<CycleExpansion>(t->f);
  return t;
}

int cmd_orbits(const RunConfig& cfg, std::ostream& out) {
  const OrbitCatalog cat = obtain_catalog(cfg);
  emit(cfg, out, config_header(cfg) + catalog_to_string(cat));
  return 0;
}

int cmd_zeta_eval(const RunConfig& cfg, std::ostream& out) {
  const OrbitCatalog cat = obtain_catalog(cfg);
  const ZetaFunction f(cat, zeta_spec_of(cfg, cat.d), policy_of(cfg));
  const ZetaValue v = f.eval(cfg.s);
  ordered_json j;
  j["config"] = config_json(cfg);
  j["s"] = cjson(cfg.s);
  j["value"] = cjson(v.value);
  j["truncation_bound"] = v.truncation_bound;
  j["bound"] = "heuristic";
  j["pressure"] = std::isfinite(f.pressure()) ? ordered_json(f.pressure()) : ordered_json(nullptr);
  j["horizon"] = f.horizon();
  j["terms"] = f.terms().size();
  emit_json(cfg, out, j);
  return 0;
}

int cmd_det(const RunConfig& cfg, std::ostream& out) {
  RunConfig c = cfg;
  if (c.zeta != "grassmann") c.zeta = "fredholm";
  return cmd_zeta_eval(c, out);
}

int cmd_zeta_scan(const RunConfig& cfg, std::ostream& out) {
  const OrbitCatalog cat = obtain_catalog(cfg);
  const ZetaFunction f(cat, zeta_spec_of(cfg, cat.d), policy_of(cfg));
  std::ostringstream os;
  os << config_header(cfg) << "re_s,im_s,re_value,im_value,truncation_bound\n";
  auto at = [](std::pair<double, double> r, int n, int i) {
    return n == 1 ? r.first : r.first + (r.second - r.first) * i / (n - 1);
  };
  for (int i = 0; i < cfg.n_re; ++i)
    for (int j = 0; j < cfg.n_im; ++j) {
      const cplx s(at(cfg.re_range, cfg.n_re, i), at(cfg.im_range, cfg.n_im, j));
      const ZetaValue v = f.eval(s);
      os << format_double(s.real()) << ',' << format_double(s.imag()) << ',' << format_double(v.value.real())
         << ',' << format_double(v.value.imag()) << ',' << format_double(v.truncation_bound) << '\n';
    }
  emit(cfg, out, os.str());
  return 0;
}

int cmd_zeros(const RunConfig& cfg, std::ostream& out) {
  const OrbitCatalog cat = obtain_catalog(cfg);
  const auto t = zero_target(cfg, cat);
  const Rectangle rect{cfg.rect[0], cfg.rect[1], cfg.rect[2], cfg.rect[3]};
  const ResonanceSet r = find_zeros(t->fn(), rect, cfg.tol);
  ordered_json j;
  j["config"] = config_json(cfg);
  j["evaluation"] = cfg.eval == "cycle" ? "cycle-expansion" : "direct-product";
  j["zeros"] = zeros_json(r);
  j["unresolved"] = unresolved_json(r);
  j["degraded"] = r.degraded;
  j["diagnostic"] = r.diagnostic;
  emit_json(cfg, out, j);
  return r.degraded ? 2 : 0;
}

int cmd_moments(const RunConfig& cfg, std::ostream& out) {
  const OrbitCatalog cat = obtain_catalog(cfg);
  const EvalPolicy pol = policy_of(cfg);
  const ResonanceSet r = resonances_from_moments(cfg.s0, cfg.moment_min, cfg.moment_max, cat, pol, cfg.count);
  const auto m = trace_moments(cfg.s0, cfg.moment_max, cat, pol);
  ordered_json j;
  j["config"] = config_json(cfg);
  ordered_json ms = ordered_json::array();
  for (std::size_t n = 0; n < m.size(); ++n)
    ms.push_back({{"n", n + 1}, {"re", m[n].real()}, {"im", m[n].imag()}});
  j["moments"] = ms;
  j["resonances"] = zeros_json(r);
  j["fit_residual"] = r.fit_residual;
  j["degraded"] = r.degraded;
  j["diagnostic"] = r.diagnostic;
  emit_json(cfg, out, j);
  return r.degraded ? 2 : 0;
}

int cmd_weyl(const RunConfig& cfg, std::ostream& out) {
  const OrbitCatalog cat = obtain_catalog(cfg);
  const auto t = zero_target(cfg, cat);
  // Search a slightly taller box so that zeros on the window edges are seen;
  // the count itself is half-open in Im s.
  const double pad = 0.25 * (cfg.window.second - cfg.window.first) + 0.5;
  const Rectangle rect{cfg.strip.first, cfg.strip.second, cfg.window.first - pad, cfg.window.second + pad};
  const ResonanceSet r = find_zeros(t->fn(), rect, cfg.tol);
  ordered_json j;
  j["config"] = config_json(cfg);
  j["count"] = weyl_strip_count(r, cfg.strip, cfg.window);
  if (cfg.model == "catmap")
    j["closed_form_count"] = std::lround((cfg.window.second - cfg.window.first) * cfg.roof / (2 * M_PI));
  j["zeros"] = zeros_json(r);
  j["unresolved"] = unresolved_json(r);
  j["degraded"] = r.degraded;
  j["diagnostic"] = r.diagnostic;
  emit_json(cfg, out, j);
  return r.degraded ? 2 : 0;
}

int cmd_bargmann_verify(const RunConfig& cfg, std::ostream& out) {
  SuiteOptions opt;
  opt.grid = PhaseGrid{1, cfg.half_width, cfg.points};
  opt.hbar = cfg.hbar;
  opt.seed = cfg.seed;
  const auto checks = bargmann_verify(opt);
  ordered_json arr = ordered_json::array();
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.pass;
    ordered_json e{{"check_name", c.name}, {"measured", c.measured}, {"tolerance", c.tolerance}, {"pass", c.pass}};
    if (!c.note.empty()) e["note"] = c.note;
    arr.push_back(e);
  }
  ordered_json j;
  j["config"] = config_json(cfg);
  j["simd"] = simd::isa_name(simd::active_isa());
  j["checks"] = arr;
  emit_json(cfg, out, j);
  return all ? 0 : 2;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
  const PhaseGrid grid{1, cfg.split_half_width, cfg.split_points};
  WeightSpec w;
  w.r = cfg.weight_r;
  w.sigma = cfg.sigma;
  SplitOptions opt;
  opt.basis = cfg.basis;
  opt.refine = cfg.refine;
  ordered_json reps = ordered_json::array();
  std::vector<double> h1;
  for (double a : cfg.expansions) {
    LinearModelSpec spec;
    spec.a = Mat::Constant(1, 1, a);
    spec.lambda = a;
    const auto r = spectral_split_check(spec, grid, w, opt);
    h1.push_back(r.norm_on_h1);
    ordered_json e{{"expansion", a}, {"norm_on_H0", r.norm_on_h0}, {"norm_on_H1", r.norm_on_h1}};
    if (opt.refine) {
      e["norm_on_H1_refined"] = r.norm_on_h1_refined;
      e["refinement_change"] = r.refinement_change;
    }
    e["empirical_C0"] = r.norm_on_h1 * a;
    e["warnings"] = r.warnings;
    reps.push_back(e);
  }
  ordered_json ratios = ordered_json::array();
  for (std::size_t i = 1; i < h1.size(); ++i) ratios.push_back(h1[i - 1] / h1[i]);
  ordered_json j;
  j["config"] = config_json(cfg);
  j["reports"] = reps;
  j["consecutive_norm_ratios"] = ratios;
  emit_json(cfg, out, j);
  return 0;
}

int cmd_identity_check(const RunConfig& cfg, std::ostream& out) {
  const OrbitCatalog cat = obtain_catalog(cfg);
  const EvalPolicy pol = policy_of(cfg);
  const int d = cat.d;
  const int chosen = cfg.ell_range >= 0 ? cfg.ell_range : d * (d + 1);
  const auto main = product_identity_check(cat, cfg.samples, pol, chosen);
  ordered_json alt = ordered_json::array();
  for (int er : {d * d, d * (d + 1)}) {
    const auto r = product_identity_check(cat, cfg.samples, pol, er);
    alt.push_back({{"ell_range", er}, {"max_rel_err_kl", r.max_rel_err_kl}});
  }
  ordered_json j;
  j["config"] = config_json(cfg);
  j["d"] = d;
  j["ell_range"] = main.ell_range;
  j["max_rel_err_k"] = main.max_rel_err_k;
  j["max_rel_err_kl"] = main.max_rel_err_kl;
  j["ell_range_comparison"] = alt;
  emit_json(cfg, out, j);
  return 0;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    if (cfg.simd == "scalar") simd::force_isa(simd::Isa::Scalar);
    if (cfg.simd == "avx2") {
      if (!simd::cpu_has_avx2()) throw SpecError("argument", "this CPU lacks AVX2");
      simd::force_isa(simd::Isa::Avx2);
    }
    const std::string& c = cfg.command;
    if (c == "orbits") return cmd_orbits(cfg, out);
    if (c == "zeta-eval") return cmd_zeta_eval(cfg, out);
    if (c == "zeta-scan") return cmd_zeta_scan(cfg, out);
    if (c == "det") return cmd_det(cfg, out);
    if (c == "zeros") return cmd_zeros(cfg, out);
    if (c == "moments") return cmd_moments(cfg, out);
    if (c == "weyl") return cmd_weyl(cfg, out);
    if (c == "bargmann-verify") return cmd_bargmann_verify(cfg, out);
    if (c == "spectrum") return cmd_spectrum(cfg, out);
    return cmd_identity_check(cfg, out);
  } catch (const SpecError& e) {
    err << "error: " << e.kind << ": " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    err << "error: " << e.kind << ": " << e.what() << "\n";
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: io: " << e.what() << "\n";
    return 1;
  }
}

int zlab_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const ParseOutcome p = parse_command_line(argc, argv);
  if (p.exit_now) {
    (p.exit_code == 0 ? out : err) << p.message << (p.message.empty() || p.message.back() == '\n' ? "" : "\n");
    return p.exit_code;
  }
  return run(p.config, out, err);
}

}  // namespace zl
