#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dynspanner {

enum class Errc {
  DuplicateEdge,
  SelfLoop,
  VertexOutOfRange,
  MissingEdge,
  NoPathWithinCutoff,
  InvalidBudget,
  InvalidArgument,
  OracleContractViolation,
  NotSubgraph,
  BudgetExceeded,
  SyntaxError,
  ValidationError,
  HeaderMissing,
};

constexpr std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::VertexOutOfRange: return "VertexOutOfRange";
    case Errc::MissingEdge: return "MissingEdge";
    case Errc::NoPathWithinCutoff: return "NoPathWithinCutoff";
    case Errc::InvalidBudget: return "InvalidBudget";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::OracleContractViolation: return "OracleContractViolation";
    case Errc::NotSubgraph: return "NotSubgraph";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::ValidationError: return "ValidationError";
    case Errc::HeaderMissing: return "HeaderMissing";
  }
  return "Unknown";
}

/// Every failure raised by the library. The code is the stable part; the
/// message is for humans. Trace parsing errors also carry a 1-based line.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::optional<std::size_t> line = std::nullopt)
      : std::runtime_error(format(code, what, line)), code_(code), line_(line) {}

  Errc code() const noexcept { return code_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  static std::string format(Errc code, const std::string& what, std::optional<std::size_t> line) {
    std::string out;
    if (line) out += "line " + std::to_string(*line) + ": ";
    out += to_string(code);
    if (!what.empty()) {
      out += ": ";
      out += what;
    }
    return out;
  }

  Errc code_;
  std::optional<std::size_t> line_;
};

}  // namespace dynspanner
