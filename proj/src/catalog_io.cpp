#include "zl/catalog_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace zl {

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  double x = 0;
  const char* b = s.data();
  const char* e = b + s.size();
  while (b < e && *b == ' ') ++b;
  if (b < e && *b == '+') ++b;
  auto res = std::from_chars(b, e, x);
  if (res.ec != std::errc() || res.ptr != e) throw SpecError("parse", "not a number: '" + s + "'");
  return x;
}

void write_catalog(std::ostream& os, const OrbitCatalog& cat) {
  if (cat.source.find(',') != std::string::npos)
    throw SpecError("format", "catalog source must not contain commas");
  os << "d=" << cat.d << ",source=" << cat.source << ",max_period=" << format_double(cat.max_period)
     << '\n';
  for (const auto& o : cat.orbits) {
    os << o.label;
    if (o.multiplicity != 1) os << '*' << o.multiplicity;
    os << ',' << format_double(o.period);
    for (int i = 0; i < o.jacobian.rows(); ++i)
      for (int j = 0; j < o.jacobian.cols(); ++j) os << ',' << format_double(o.jacobian(i, j));
    os << '\n';
  }
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string after_key(const std::string& field, const std::string& key) {
  if (field.rfind(key + "=", 0) != 0) throw SpecError("format", "catalog header lacks '" + key + "='");
  return field.substr(key.size() + 1);
}

}  // namespace

OrbitCatalog read_catalog(std::istream& is) {
  std::string line;
  bool have_header = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    have_header = true;
    break;
  }
  // No header at all: the empty catalog.
  if (!have_header) {
    OrbitCatalog empty;
    empty.source = "empty";
    return empty;
  }
  auto head = split(line, ',');
  if (head.size() != 3) throw SpecError("format", "catalog header must have three fields");
  OrbitCatalog cat;
  cat.d = static_cast<int>(parse_double(after_key(head[0], "d")));
  if (cat.d < 1) throw SpecError("format", "catalog d must be positive");
  cat.source = after_key(head[1], "source");
  cat.max_period = parse_double(after_key(head[2], "max_period"));
  const int n = 2 * cat.d;
  std::set<std::string> labels;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto f = split(line, ',');
    if (static_cast<int>(f.size()) != 2 + n * n)
      throw SpecError("format", "line " + std::to_string(lineno) + ": expected " +
                                    std::to_string(2 + n * n) + " fields");
    PrimeOrbit o;
    o.label = f[0];
    if (auto star = o.label.find('*'); star != std::string::npos) {
      o.multiplicity = std::stoull(o.label.substr(star + 1));
      o.label.resize(star);
      if (o.multiplicity == 0) throw SpecError("format", "zero multiplicity");
    }
    if (!labels.insert(o.label).second) throw SpecError("format", "duplicate label " + o.label);
    o.period = parse_double(f[1]);
    if (!(o.period > 0)) throw SpecError("format", "line " + std::to_string(lineno) + ": period must be positive");
    o.jacobian.resize(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) o.jacobian(i, j) = parse_double(f[2 + i * n + j]);
    cat.orbits.push_back(std::move(o));
  }
  cat.sort_canonical();
  return cat;
}

void save_catalog(const std::string& path, const OrbitCatalog& cat) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw SpecError("io", "cannot write " + path);
  write_catalog(os, cat);
  if (!os) throw SpecError("io", "write failed for " + path);
}

OrbitCatalog load_catalog(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw SpecError("io", "cannot read " + path);
  return read_catalog(is);
}

std::string catalog_to_string(const OrbitCatalog& cat) {
  std::ostringstream os;
  write_catalog(os, cat);
  return os.str();
}

}  // namespace zl
