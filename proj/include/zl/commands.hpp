#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "zl/orbit_model.hpp"
#include "zl/run_config.hpp"

namespace zl {

std::uint64_t fnv1a64(const std::string& bytes);

// Canonical description of the catalog a config asks for; its hash names the
// cache file `<model>-<16 hex digits>.csv`.
std::string catalog_key(const RunConfig& cfg);
std::string catalog_cache_path(const RunConfig& cfg);

// Loads --catalog, or builds the model (through the cache when enabled).
OrbitCatalog obtain_catalog(const RunConfig& cfg);

// Runs one command. Results go to cfg.out or `out`; the single error line
// `error: <kind>: <message>` goes to `err`. Returns the exit status:
// 0 success, 1 spec or IO error, 2 numerical-confidence failure.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Parses argv and runs; the body of the zlab executable.
int zlab_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zl
