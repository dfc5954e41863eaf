#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nsp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitBudgetInfeasible = 2;

/// Environment variable naming a catalog file used when --catalog is absent.
inline constexpr const char* kCatalogEnv = "NSP_CATALOG";

/// Runs one command line (argv[0] is the program name). The report goes to
/// `out` (or --out FILE), diagnostics to `err`.
int run(int argc, const char* const argv[], std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace nsp::cli
