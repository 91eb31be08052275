#ifndef MAHLERLAB_TOOLS_CLI_HPP
#define MAHLERLAB_TOOLS_CLI_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "mahlerlab/quadrature.hpp"
#include "mahlerlab/real.hpp"
#include "report.hpp"

namespace mahlerlab::cli {

enum ExitCode : int { kAllPassed = 0, kSomeFailed = 1, kUsageError = 2 };

inline constexpr mpfr_prec_t kCliMaxPrecision = 4096;

struct RunConfig {
  Precision precision{128};
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t samples = 1u << 20;
  int shifts = 16;
  int threads = 1;
  std::set<std::string> filter;
  ReportFormat format = ReportFormat::text;
  std::optional<std::string> cache;
  std::optional<int> digits;
  bool timing = false;
};

/// Flat key=value file; '#' starts a comment. Throws InvalidArgument on
/// malformed lines or unknown keys.
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mahlerlab::cli

#endif  // MAHLERLAB_TOOLS_CLI_HPP
