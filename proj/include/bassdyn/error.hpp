#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bassdyn {

  enum class ErrorCode {
    // graph construction
    SelfLoop,
    DuplicateEdge,
    UnknownVertex,
    DuplicateVertex,
    ZeroIndex,
    BrokenInvolution,
    BadGroupTable,
    // words
    ParseError,
    NotComposable,
    BackendRefusal,
    NotGBS,
    // boundary and dynamics
    SingularInput,
    NonPeriodicCarry,
    HypothesisFailed,
    NotFoundWithinBound,
    BoundExceeded,
    // defining graphs
    NotIrreducible,
    DoublingJoinFound,
    NotEuclidean,
    // documents and commands
    SchemaError,
    ResolveError,
    UnknownCommand,
    FlagError,
  };

  std::string_view error_code_name(ErrorCode code) noexcept;

  class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, std::string const& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
          _code(code) {}

    [[nodiscard]] ErrorCode code() const noexcept {
      return _code;
    }

   private:
    ErrorCode _code;
  };

}  // namespace bassdyn
