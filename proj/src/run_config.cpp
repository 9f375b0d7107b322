#include "zl/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "zl/catalog_io.hpp"

namespace zl {

namespace {

std::string fmt(double x) { return std::isnan(x) ? "nan" : format_double(x); }

double num(const std::string& key, const std::string& v) {
  if (v == "nan" || v == "auto") return NAN;
  try {
    return parse_double(v);
  } catch (const SpecError&) {
    throw SpecError("argument", "--" + key + ": not a number: '" + v + "'");
  }
}

long long integer(const std::string& key, const std::string& v) {
  const double x = num(key, v);
  if (!std::isfinite(x) || x != std::floor(x) || std::abs(x) > 9e15)
    throw SpecError("argument", "--" + key + ": not an integer: '" + v + "'");
  return static_cast<long long>(x);
}

bool boolean(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "off" || v == "no") return false;
  throw SpecError("argument", "--" + key + ": expected true or false, got '" + v + "'");
}

std::vector<std::string> items(const std::string& v) {
  std::string t = v;
  if (t.size() >= 2 && t.front() == '[' && t.back() == ']') t = t.substr(1, t.size() - 2);
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(t);
  while (std::getline(is, cur, ',')) {
    cur.erase(std::remove_if(cur.begin(), cur.end(), [](unsigned char c) { return std::isspace(c) || c == '"'; }),
              cur.end());
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

std::vector<double> numbers(const std::string& key, const std::string& v, std::size_t want) {
  std::vector<double> out;
  for (const auto& it : items(v)) out.push_back(num(key, it));
  if (want && out.size() != want)
    throw SpecError("argument", "--" + key + ": expected " + std::to_string(want) + " comma-separated values");
  return out;
}

template <class C>
std::string join(const C& c, const std::function<std::string(typename C::value_type)>& f) {
  std::string s;
  for (const auto& x : c) s += (s.empty() ? "" : ",") + f(x);
  return s;
}

std::pair<double, double> pair_of(const std::string& key, const std::string& v) {
  auto x = numbers(key, v, 2);
  return {x[0], x[1]};
}

std::string pair_str(const std::pair<double, double>& p) { return fmt(p.first) + "," + fmt(p.second); }

struct Field {
  const char* name;
  const char* help;
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, const std::string&)> set;
};

#define ZL_STR(field, key, help) \
  {key, help, [](const RunConfig& c) { return c.field; }, [](RunConfig& c, const std::string& v) { c.field = v; }}
#define ZL_NUM(field, key, help)                                    \
  {key, help, [](const RunConfig& c) { return fmt(c.field); },      \
   [](RunConfig& c, const std::string& v) { c.field = num(key, v); }}
#define ZL_INT(field, key, help)                                               \
  {key, help, [](const RunConfig& c) { return std::to_string(c.field); },      \
   [](RunConfig& c, const std::string& v) { c.field = static_cast<decltype(c.field)>(integer(key, v)); }}
#define ZL_BOOL(field, key, help)                                             \
  {key, help, [](const RunConfig& c) { return std::string(c.field ? "true" : "false"); }, \
   [](RunConfig& c, const std::string& v) { c.field = boolean(key, v); }}
#define ZL_PAIR(field, key, help)                                   \
  {key, help, [](const RunConfig& c) { return pair_str(c.field); }, \
   [](RunConfig& c, const std::string& v) { c.field = pair_of(key, v); }}
#define ZL_CPLX(field, key, help)                                        \
  {key, help, [](const RunConfig& c) { return format_complex(c.field); }, \
   [](RunConfig& c, const std::string& v) { c.field = parse_complex(v); }}

const std::vector<Field>& fields() {
  static const std::vector<Field> f{
      ZL_STR(catalog, "catalog", "catalog CSV to load instead of a model"),
      ZL_STR(model, "model", "orbit source: catmap, bolza or synthetic"),
      {"a", "cat map matrix a11,a12,a21,a22",
       [](const RunConfig& c) {
         return join(c.a, std::function<std::string(long long)>([](long long x) { return std::to_string(x); }));
       },
       [](RunConfig& c, const std::string& v) {
         auto x = numbers("a", v, 4);
         for (int i = 0; i < 4; ++i) c.a[i] = integer("a", fmt(x[i]));
       }},
      ZL_NUM(roof, "roof", "constant roof function of the suspension"),
      ZL_INT(nmax, "nmax", "largest map period enumerated"),
      ZL_INT(word_len, "word-len", "maximal reduced word length (bolza)"),
      ZL_INT(dim, "dim", "half dimension d (synthetic)"),
      ZL_INT(n_orbits, "n-orbits", "number of orbits (synthetic)"),
      ZL_PAIR(period_range, "period-range", "min,max period (synthetic)"),
      ZL_PAIR(log_eigen_range, "log-eigen-range", "min,max log eigenvalue (synthetic)"),
      ZL_INT(seed, "seed", "random seed"),
      ZL_STR(cache_dir, "cache-dir", "catalog cache directory, empty to disable"),
      ZL_INT(m_max, "m-max", "largest repetition number"),
      ZL_INT(k_cutoff, "k-cutoff", "Smale product depth"),
      ZL_NUM(pressure, "pressure", "pressure estimate, nan to estimate from the catalog"),
      ZL_NUM(horizon, "horizon", "period horizon, 0 for the catalog's max period"),
      ZL_BOOL(horizon_cut, "horizon-cut", "drop repetitions beyond the horizon"),
      ZL_STR(zeta, "zeta", "gv, smale, fredholm or grassmann"),
      ZL_INT(k, "k", "exterior degree on the stable bundle"),
      ZL_INT(ell, "ell", "exterior degree on the Grassmann fiber"),
      ZL_CPLX(s, "s", "evaluation point, e.g. 2+0.5i"),
      ZL_STR(eval, "eval", "zero search function: cycle (expansion) or direct (product)"),
      {"rect", "re_min,re_max,im_min,im_max",
       [](const RunConfig& c) { return join(c.rect, std::function<std::string(double)>(fmt)); },
       [](RunConfig& c, const std::string& v) {
         auto x = numbers("rect", v, 4);
         std::copy(x.begin(), x.end(), c.rect.begin());
       }},
      ZL_NUM(tol, "tol", "zero tolerance"),
      ZL_PAIR(re_range, "re-range", "scan range of Re s"),
      ZL_PAIR(im_range, "im-range", "scan range of Im s"),
      ZL_INT(n_re, "n-re", "scan points along Re s"),
      ZL_INT(n_im, "n-im", "scan points along Im s"),
      ZL_CPLX(s0, "s0", "moment base point"),
      ZL_INT(moment_min, "moment-min", "first moment used"),
      ZL_INT(moment_max, "moment-max", "last moment used"),
      ZL_INT(count, "count", "number of resonances to extract"),
      ZL_PAIR(strip, "strip", "Re s range of the counting strip"),
      ZL_PAIR(window, "window", "half-open Im s window"),
      ZL_NUM(half_width, "half-width", "Bargmann grid half width L"),
      ZL_INT(points, "points", "Bargmann grid points per axis M"),
      ZL_NUM(hbar, "hbar", "Bargmann hbar"),
      {"expansions", "expansion rates A for the spectral split",
       [](const RunConfig& c) { return join(c.expansions, std::function<std::string(double)>(fmt)); },
       [](RunConfig& c, const std::string& v) { c.expansions = numbers("expansions", v, 0); }},
      ZL_NUM(weight_r, "weight-r", "anisotropy order r"),
      ZL_INT(sigma, "sigma", "weight index sigma"),
      ZL_NUM(split_half_width, "split-half-width", "grid half width for the spectral split"),
      ZL_INT(split_points, "split-points", "grid points per axis for the spectral split"),
      ZL_INT(basis, "basis", "Hermite functions in the split trial space"),
      ZL_BOOL(refine, "refine", "repeat the split with twice the points"),
      ZL_INT(ell_range, "ell-range", "Grassmann degree range, -1 for d(d+1)"),
      {"samples", "evaluation points for identity-check",
       [](const RunConfig& c) { return join(c.samples, std::function<std::string(cplx)>(format_complex)); },
       [](RunConfig& c, const std::string& v) {
         c.samples.clear();
         for (const auto& it : items(v)) c.samples.push_back(parse_complex(it));
       }},
      ZL_STR(out, "out", "output file, stdout when empty"),
      ZL_STR(simd, "simd", "kernel set: auto, scalar or avx2"),
  };
  return f;
}

bool is_list(const std::string& name) {
  static const std::vector<std::string> lists{"a", "rect", "period-range", "log-eigen-range", "re-range",
                                              "im-range", "strip", "window", "expansions", "samples"};
  return std::find(lists.begin(), lists.end(), name) != lists.end();
}

}  // namespace

cplx parse_complex(const std::string& text) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  const auto bad = [&] { return SpecError("argument", "not a complex number: '" + text + "'"); };
  if (t.empty()) throw bad();
  if (t.back() != 'i' && t.back() != 'j') return {parse_double(t), 0.0};
  t.pop_back();
  std::size_t cut = std::string::npos;
  for (std::size_t i = t.size(); i-- > 1;)
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
      cut = i;
      break;
    }
  std::string re = cut == std::string::npos ? "0" : t.substr(0, cut);
  std::string im = cut == std::string::npos ? t : t.substr(cut);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  if (im[0] == '+') im.erase(0, 1);
  try {
    return {parse_double(re), parse_double(im)};
  } catch (const SpecError&) {
    throw bad();
  }
}

std::string format_complex(cplx z) {
  std::string im = format_double(z.imag());
  if (im[0] != '-') im = "+" + im;
  return format_double(z.real()) + im + "i";
}

void RunConfig::validate() const {
  const auto& names = command_names();
  if (std::find(names.begin(), names.end(), command) == names.end())
    throw SpecError("argument", command.empty() ? "no command given" : "unknown command '" + command + "'");
  const bool needs_catalog = command != "bargmann-verify" && command != "spectrum";
  if (needs_catalog) {
    if (catalog.empty() == model.empty()) throw SpecError("argument", "give exactly one of --catalog and --model");
    if (command == "orbits" && !catalog.empty()) throw SpecError("argument", "orbits needs --model");
  }
  if (!model.empty() && model != "catmap" && model != "bolza" && model != "synthetic")
    throw SpecError("argument", "unknown model '" + model + "'");
  if (!(roof > 0) || !std::isfinite(roof)) throw SpecError("argument", "--roof must be positive");
  if (nmax < 1 || nmax > 60) throw SpecError("argument", "--nmax must be in 1..60");
  if (word_len < 1 || word_len > 8) throw SpecError("argument", "--word-len must be in 1..8");
  if (dim < 1 || dim > 4) throw SpecError("argument", "--dim must be in 1..4");
  if (n_orbits < 0) throw SpecError("argument", "--n-orbits must be nonnegative");
  if (!(period_range.first > 0) || period_range.second < period_range.first)
    throw SpecError("argument", "--period-range must satisfy 0 < min <= max");
  if (!(log_eigen_range.first > 0) || log_eigen_range.second < log_eigen_range.first)
    throw SpecError("argument", "--log-eigen-range must satisfy 0 < min <= max");
  if (m_max < 1) throw SpecError("argument", "--m-max must be positive");
  if (k_cutoff < 1) throw SpecError("argument", "--k-cutoff must be positive");
  if (!(horizon >= 0)) throw SpecError("argument", "--horizon must be nonnegative");
  if (zeta != "gv" && zeta != "smale" && zeta != "fredholm" && zeta != "grassmann")
    throw SpecError("argument", "unknown --zeta '" + zeta + "'");
  if (k < 0 || ell < 0) throw SpecError("argument", "--k and --ell must be nonnegative");
  if (eval != "cycle" && eval != "direct") throw SpecError("argument", "--eval must be cycle or direct");
  if (!(rect[0] < rect[1]) || !(rect[2] < rect[3])) throw SpecError("argument", "--rect must be nonempty");
  if (!(tol > 0)) throw SpecError("argument", "--tol must be positive");
  if (n_re < 1 || n_im < 1) throw SpecError("argument", "--n-re and --n-im must be positive");
  if (re_range.second < re_range.first || im_range.second < im_range.first)
    throw SpecError("argument", "scan ranges must satisfy min <= max");
  if (moment_min < 1 || moment_max < moment_min) throw SpecError("argument", "need 1 <= --moment-min <= --moment-max");
  if (count < 1) throw SpecError("argument", "--count must be positive");
  if (strip.second < strip.first || !(window.first < window.second))
    throw SpecError("argument", "--strip and --window must be nonempty");
  if (!(half_width > 0) || points < 8 || points % 2) throw SpecError("argument", "grid needs L > 0 and even M >= 8");
  if (!(hbar > 0)) throw SpecError("argument", "--hbar must be positive");
  if (expansions.empty()) throw SpecError("argument", "--expansions needs at least one value");
  for (double a : expansions)
    if (!(a > 1)) throw SpecError("argument", "--expansions values must exceed 1");
  if (!(weight_r > 0)) throw SpecError("argument", "--weight-r must be positive");
  if (sigma < -2 || sigma > 2) throw SpecError("argument", "--sigma must be in -2..2");
  if (!(split_half_width > 0) || split_points < 8 || split_points % 2)
    throw SpecError("argument", "split grid needs L > 0 and even M >= 8");
  if (basis < 2) throw SpecError("argument", "--basis must be at least 2");
  if (samples.empty()) throw SpecError("argument", "--samples needs at least one point");
  if (simd != "auto" && simd != "scalar" && simd != "avx2") throw SpecError("argument", "--simd must be auto, scalar or avx2");
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> out{{"command", command}};
  for (const auto& f : fields()) {
    auto v = f.get(*this);
    out.emplace_back(f.name, v.empty() ? "\"\"" : v);
  }
  return out;
}

ParseOutcome parse_command_line(int argc, const char* const* argv) {
  ParseOutcome res;
  CLI::App app{"Periodic-orbit zeta functions, resonances and Bargmann-transform checks", "zlab"};
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.allow_config_extras(false);
  std::string command;
  app.add_option("command", command, "one of: " + join(command_names(), std::function<std::string(std::string)>(
                                                                       [](std::string s) { return s; })));
  const RunConfig defaults;
  // Config files split comma lists into separate tokens; they are rejoined below.
  std::vector<std::vector<std::string>> raw(fields().size());
  for (std::size_t i = 0; i < fields().size(); ++i) {
    const auto& f = fields()[i];
    auto* opt = app.add_option(std::string("--") + f.name, raw[i], f.help)->default_str(f.get(defaults));
    if (is_list(f.name))
      opt->expected(1, CLI::detail::expected_max_vector_size);
    else
      opt->expected(1);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    res.exit_now = true;
    res.message = app.help();
    return res;
  } catch (const CLI::ParseError& e) {
    res.exit_now = true;
    res.exit_code = 1;
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    res.message = "error: usage: " + msg;
    return res;
  }
  RunConfig cfg;
  cfg.command = command;
  try {
    for (std::size_t i = 0; i < fields().size(); ++i) {
      const auto* opt = app.get_option(std::string("--") + fields()[i].name);
      if (opt->count() == 0) continue;
      std::string v;
      for (const auto& t : raw[i]) v += (v.empty() ? "" : ",") + t;
      if (v == "\"\"") v.clear();
      fields()[i].set(cfg, v);
    }
    cfg.validate();
  } catch (const SpecError& e) {
    res.exit_now = true;
    res.exit_code = 1;
    res.message = "error: " + e.kind + ": " + e.what();
    return res;
  }
  res.config = cfg;
  return res;
}

}  // namespace zl
