#pragma once

// Batch driver behind the `hua` CLI: spectrum tables, analytic-vs-oracle
// comparison, approximation scans and NU derivation traces.

#include "hua/analytic.hpp"
#include "hua/oracle.hpp"
#include "hua/potential.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hua::harness {

struct ScanSpec {
  std::optional<double> r_min; // default 1e-3 / alpha
  std::optional<double> r_max; // default grid.r_max_factor / alpha
  int samples = 50;
};

struct RunConfig {
  HuaParams params;
  SystemConstants constants;
  int l_max = 0;
  int n_max = 3;
  std::vector<analytic::SpectrumVariant> variants;
  std::vector<ApproxScheme> schemes;
  std::vector<oracle::RadialDomain> domains;
  oracle::GridSpec grid;
  double c0 = 1.0 / 12.0;
  std::string format = "csv";
  std::string out; // empty: stdout

  ScanSpec scan;
  std::optional<double> probe_epsilon; // nu-derive probe
  std::optional<double> beta;          // nu-derive: override the dimensionless depth
  int threads = 1;
};

enum class Command { Spectrum, Compare, ApproxScan, NuDerive };

/// Throws Error(ConfigError) describing the first problem.
void validate_config(const RunConfig& cfg, Command cmd);

/// Parses a JSON config document; unknown keys are rejected.
RunConfig config_from_json(std::string_view text);

/// A missing value is written as an empty CSV field / JSON null.
using Cell = std::variant<std::monostate, long long, double, std::string>;

struct Report {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  /// Rows that carry a per-row failure (status "error").
  int failed_rows = 0;
};

Report run_spectrum(const RunConfig& cfg);
Report run_compare(const RunConfig& cfg);
Report run_approx_scan(const RunConfig& cfg);
Report run_nu_derive(const RunConfig& cfg);

/// csv: RFC-4180, 17 significant digits. json: array of objects.
/// text: one "column = value" block per row.
std::string render(const Report& report, std::string_view format);

/// Writes render(report, format) to path. Throws Error(IoError).
void emit(const Report& report, std::string_view format, const std::string& path);

std::optional<ApproxScheme> parse_scheme(std::string_view name, double c0) noexcept;
std::optional<oracle::RadialDomain> parse_domain(std::string_view name) noexcept;

/// Index of a column in the report, or -1.
int column_index(const Report& report, std::string_view name) noexcept;

} // namespace hua::harness
