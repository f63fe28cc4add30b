#include "cmv/verdict.hpp"

namespace cmv {

std::string_view status_name(Status s) {
  switch (s) {
    case Status::Holds: return "holds";
    case Status::Fits: return "fits";
    case Status::Refuted: return "refuted";
    case Status::Trivial: return "trivial";
    case Status::Skipped: return "skipped";
    case Status::Error: return "error";
  }
  return "error";
}

std::string Witness::describe(std::span<const std::string> frame_names) const {
  std::string out;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    const char ch = pattern[i];
    if (ch == '%' && i + 1 < pattern.size() && pattern[i + 1] >= '1' && pattern[i + 1] <= '9') {
      const std::size_t k = static_cast<std::size_t>(pattern[i + 1] - '1');
      ++i;
      if (k < indices.size()) {
        const std::size_t idx = indices[k];
        out += idx >= 1 && idx <= frame_names.size() ? frame_names[idx - 1]
                                                     : "E" + std::to_string(idx);
      }
      continue;
    }
    out += ch;
  }
  return out;
}

}  // namespace cmv
