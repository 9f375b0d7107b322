#pragma once

#include <iosfwd>
#include <string>

#include "zl/orbit_model.hpp"

namespace zl {

// Shortest decimal that round-trips to the same double.
std::string format_double(double x);
double parse_double(const std::string& s);

// Header `d=<int>,source=<string>,max_period=<float>`, then one row per orbit
// `label,period,j11,j12,...` (row-major). A class with multiplicity n > 1 is
// written with label `name*n`.
void write_catalog(std::ostream& os, const OrbitCatalog& cat);
// Lines starting with '#' are skipped; a file without a header is the empty
// catalog with d = 1.
OrbitCatalog read_catalog(std::istream& is);
void save_catalog(const std::string& path, const OrbitCatalog& cat);
OrbitCatalog load_catalog(const std::string& path);

std::string catalog_to_string(const OrbitCatalog& cat);

}  // namespace zl
