#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace twiso {

enum class ErrorCode {
  InvalidVertex,
  InvalidEdge,
  EmptySet,
  InvalidQuery,
  InvalidBipartition,
  DisconnectedGraph,
  RootHasNoParent,
  InvalidDecomposition,
  NoAdmissibleMapping,
  WidthExceeded,
  SizeMismatch,
  InvalidParams,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Every failure surfaced by the library. The code identifies the contract
/// that was violated; the message carries the witness.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

} // namespace twiso
