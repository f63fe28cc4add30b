#pragma once

#include "cmv/scalar_expr.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cmv {

enum class Status { Holds, Fits, Refuted, Trivial, Skipped, Error };

std::string_view status_name(Status s);

/// An explicit tensor component demonstrating a failed identity.
struct Witness {
  /// 1-based frame indices.
  std::vector<std::size_t> indices;
  ScalarExpr value;
  /// Description with %1, %2, ... standing for the frame names of indices.
  std::string pattern;

  std::string describe(std::span<const std::string> frame_names) const;
};

struct Verdict {
  Status status = Status::Holds;
  std::optional<Witness> witness;
  std::vector<std::string> notes;

  bool holds() const { return status == Status::Holds || status == Status::Fits || status == Status::Trivial; }

  static Verdict pass() { return Verdict{}; }
  static Verdict refuted(Witness w) { return Verdict{Status::Refuted, std::move(w), {}}; }
};

/// A named axiom outcome inside a battery.
struct NamedVerdict {
  std::string name;
  Verdict verdict;
};

}  // namespace cmv
