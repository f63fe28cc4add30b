#pragma once

#include "cmv/geometry.hpp"
#include "cmv/oracle.hpp"
#include "cmv/verdict.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cmv {

std::string_view engine_version();

struct OracleOptions {
  std::size_t points = 10;
  std::uint64_t seed = 1;
  double step = 1e-5;
  double tol = 1e-6;
  double curvature_tol = 1e-4;
};

/// Parses "points=N,seed=S,step=H,tol=T" (any subset). Throws ParseError.
OracleOptions parse_oracle_options(std::string_view text);

struct RunOptions {
  /// Overrides the file's `checks` line when non-empty.
  std::vector<std::string> checks;
  std::optional<DetaConvention> deta;
  bool trig = false;
  std::optional<OracleOptions> oracle;
};

struct CheckRecord {
  std::string name;
  Status status = Status::Holds;
  std::optional<Witness> witness;
  std::optional<ScalarExpr> k;
  std::optional<ScalarExpr> lambda;
  std::optional<std::string> recurrence_status;
  std::vector<ScalarExpr> recurrence_A;
  std::vector<std::string> notes;
};

struct OracleSummary {
  NumericReport report;
  std::uint64_t seed = 0;
};

struct ClassificationReport {
  std::string instance;
  std::size_t dim = 0;
  DetaConvention deta = DetaConvention::Half;
  std::vector<std::string> coords;
  std::vector<std::string> frame_names;
  std::string excluded_locus;
  std::size_t self_tests_passed = 0;
  std::vector<CheckRecord> checks;
  std::vector<OracleSummary> oracle;
  std::string version;

  const CheckRecord* find(std::string_view name) const;
};

/// Checks named on the command line, in the file, or the default set (every
/// check except long-identity). Throws ValidationError on unknown names.
std::vector<std::string> resolve_checks(const ManifoldSpec& spec, const RunOptions& options);

/// Runs the engine self-tests on `geo` and throws InvariantViolation on the
/// first failure. Returns the number of identities verified.
std::size_t run_self_tests(const Geometry& geo);

ClassificationReport run_checks(const Geometry& geo, const RunOptions& options);
ClassificationReport run_checks(const std::filesystem::path& file, const RunOptions& options);

std::string render_text(const ClassificationReport& report);
/// Fixed key order; two-space indentation; trailing newline.
std::string render_json(const ClassificationReport& report);
/// Nonzero brackets, connection and curvature components.
std::string describe_tables(const Geometry& geo);

struct Expectation {
  std::string check;
  Status status = Status::Holds;
};

/// Parses "name=status,...". Throws ParseError.
std::vector<Expectation> parse_expectations(std::string_view text);

/// One line per failed assertion.
std::vector<std::string> expectation_mismatches(const ClassificationReport& report,
                                                const std::vector<Expectation>& expect);

enum class ReportFormat { Text, Json };

struct Emitted {
  std::string output;
  /// Mismatch and oracle diagnostics.
  std::string diagnostics;
  int exit_code = 0;
};

/// Exit code 0 when every expectation matches, 1 on a mismatch and 3 when an
/// oracle cross-validation failed.
Emitted emit_report(const ClassificationReport& report, ReportFormat format,
                    const std::vector<Expectation>& expect = {});

}  // namespace cmv
