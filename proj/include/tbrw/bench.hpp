#ifndef TBRW_BENCH_HPP
#define TBRW_BENCH_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace tbrw {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr std::uint64_t kDefaultSeed = 7;

/// One checked inequality: passes when lhs <= rhs + tolerance.
struct BoundRow {
  int criterion = 0;
  std::string name;  ///< unique within a report
  std::string tag;   ///< which bound this row checks
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct BoundReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;
  std::vector<BoundRow> rows;

  bool all_pass() const;
  std::vector<const BoundRow*> failures() const;
};

struct BenchOptions {
  std::uint64_t seed = kDefaultSeed;
  /// Replaces the tolerance of the named rows (negative control).
  std::map<std::string, double> tolerance_overrides;
  /// Criteria to run; empty means all.
  std::vector<int> only;
  /// Called after each criterion with its number and rows.
  std::function<void(int, const std::vector<BoundRow>&)> progress;
};

/// Hash of the configuration that determines the report.
std::uint64_t bench_config_hash(const std::string& suite, const BenchOptions& options);

/// Criteria 1 to 10 of the paper-bounds suite.
BoundReport paper_bounds_suite(const BenchOptions& options = {});

nlohmann::json report_to_json(const BoundReport& report);
/// Rejects unknown schema versions.
BoundReport report_from_json(const nlohmann::json& j);

/// Hex rendering used in artifacts.
std::string hex64(std::uint64_t x);

}  // namespace tbrw

#endif  // TBRW_BENCH_HPP
