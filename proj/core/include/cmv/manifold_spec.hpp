#pragma once

#include "cmv/scalar_expr.hpp"
#include "cmv/tensor.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cmv {

enum class DetaConvention { Half, Full };

struct FrameField {
  std::string name;
  CoordVec coord_components;
};

/// Check names accepted on a `checks` line and by the CLI, in evaluation order.
const std::vector<std::string>& known_check_names();

/// A validated chart description: frame, metric on the frame, xi, phi.
struct ManifoldSpec {
  std::string name;
  std::size_t dim = 0;
  Chart chart;
  std::vector<FrameField> frame;
  /// g(E_i, E_j).
  SquareMatrix metric;
  bool orthonormal = false;
  /// Set when xi was given as a single frame field.
  std::optional<std::size_t> xi_index;
  FrameVec xi;
  /// phi E_j = sum_i phi(i, j) E_i.
  SquareMatrix phi;
  std::vector<std::string> requested_checks;
  DetaConvention deta = DetaConvention::Half;
  bool trig = false;
  /// Optional `claim k = <expr>` line: a nullity constant asserted elsewhere.
  std::optional<ScalarExpr> claimed_k;

  std::vector<std::string> frame_names() const;
  /// Row a holds the coordinate components of E_a.
  SquareMatrix frame_matrix() const;
};

struct ParseOptions {
  bool allow_trig = false;
  /// Instance name when the file has no `name` line.
  std::string default_name = "instance";
};

/// Parses and validates spec-file text. Throws ParseError (with line and
/// column) or ValidationError.
ManifoldSpec parse_spec(std::string_view text, const ParseOptions& options = {});

/// Reads a spec file; the default instance name is the file stem.
ManifoldSpec load_spec(const std::filesystem::path& path, ParseOptions options = {});

}  // namespace cmv
