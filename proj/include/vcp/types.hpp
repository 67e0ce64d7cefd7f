#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace vcp {

using VertexId = std::uint32_t;
using EdgeId = std::uint64_t;

inline constexpr VertexId kMaxVertexId = std::numeric_limits<VertexId>::max();

enum class Direction { Out, In };

/// Invalid run or harness configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by the edge-list parser and the CSR cache reader. `line()` is 0
/// when the failure is not tied to a line of text input.
class GraphLoadError : public std::runtime_error {
 public:
  explicit GraphLoadError(const std::string& what, std::uint64_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  std::uint64_t line() const noexcept { return line_; }

 private:
  std::uint64_t line_;
};

}  // namespace vcp
