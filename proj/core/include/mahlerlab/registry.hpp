#ifndef MAHLERLAB_REGISTRY_HPP
#define MAHLERLAB_REGISTRY_HPP

// Named identity checks. Each check computes a left and a right side by
// independent routes and compares them against a tolerance that depends on
// its kind.

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mahlerlab/quadrature.hpp"
#include "mahlerlab/real.hpp"

namespace mahlerlab {

enum class CheckKind { exact, high_precision, statistical };

std::string to_string(CheckKind kind);

struct RunOptions {
  Precision precision{128};
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t samples = 1u << 20;
  int shifts = 16;
  /// Worker threads used by run_all. Results are ordered by registry order
  /// regardless of this value.
  int threads = 1;
};

/// What a check's plan produces; the registry adds tolerance and timing.
struct CheckOutcome {
  std::string lhs;
  std::string rhs;
  Real deviation;
  /// QMC standard error for statistical checks, zero otherwise.
  Real error_estimate;
  std::int64_t evaluations = 0;
  /// Replaces the kind's default tolerance when set.
  std::optional<Real> tolerance;
  std::string note;
};

struct IdentityCheck {
  std::string id;
  std::string description;
  CheckKind kind = CheckKind::high_precision;
  std::vector<std::string> tags;
  /// Lower limit on the high-precision tolerance.
  double tolerance_floor = 0.0;
  std::vector<std::string> aliases;
  std::function<CheckOutcome(const RunOptions&)> run;
};

struct CheckResult {
  std::string id;
  CheckKind kind = CheckKind::high_precision;
  std::string lhs;
  std::string rhs;
  /// Empty when the plan failed.
  std::optional<Real> deviation;
  Real tolerance;
  bool pass = false;
  double wall_ms = 0.0;
  std::int64_t evaluations = 0;
  std::uint64_t seed = 0;
  Precision precision;
  std::string note;
};

/// All registered checks in a fixed order.
const std::vector<IdentityCheck>& all_checks();

/// Looks up an id or alias. Throws NotFound with up to five near matches.
const IdentityCheck& find_check(std::string_view id);

/// Ids within edit distance 3 or sharing a prefix, best first.
std::vector<std::string> suggest_ids(std::string_view id, std::size_t limit = 5);

/// exact: 0. high-precision: max(floor, 10^-(0.3 P - 10)).
/// statistical: max(5e-3, 6 sigma).
Real default_tolerance(const IdentityCheck& check, Precision p, const Real& error_estimate);

/// Runs one check. Plan failures (NoConvergence, violations, ...) produce
/// pass = false with the message in `note`; an unknown id throws NotFound.
CheckResult run_check(std::string_view id, const RunOptions& options = {});

/// True when the check carries any of the tags (kind names count as tags).
/// An empty filter matches everything.
bool matches_filter(const IdentityCheck& check, const std::set<std::string>& filter);

/// Runs every check matching `filter`.
std::vector<CheckResult> run_all(const std::set<std::string>& filter, const RunOptions& options = {});

}  // namespace mahlerlab

#endif  // MAHLERLAB_REGISTRY_HPP
