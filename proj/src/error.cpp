#include "bassdyn/error.hpp"

namespace bassdyn {

  std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
      case ErrorCode::SelfLoop:
        return "SelfLoop";
      case ErrorCode::DuplicateEdge:
        return "DuplicateEdge";
      case ErrorCode::UnknownVertex:
        return "UnknownVertex";
      case ErrorCode::DuplicateVertex:
        return "DuplicateVertex";
      case ErrorCode::ZeroIndex:
        return "ZeroIndex";
      case ErrorCode::BrokenInvolution:
        return "BrokenInvolution";
      case ErrorCode::BadGroupTable:
        return "BadGroupTable";
      case ErrorCode::ParseError:
        return "ParseError";
      case ErrorCode::NotComposable:
        return "NotComposable";
      case ErrorCode::BackendRefusal:
        return "BackendRefusal";
      case ErrorCode::NotGBS:
        return "NotGBS";
      case ErrorCode::SingularInput:
        return "SingularInput";
      case ErrorCode::NonPeriodicCarry:
        return "NonPeriodicCarry";
      case ErrorCode::HypothesisFailed:
        return "HypothesisFailed";
      case ErrorCode::NotFoundWithinBound:
        return "NotFoundWithinBound";
      case ErrorCode::BoundExceeded:
        return "BoundExceeded";
      case ErrorCode::NotIrreducible:
        return "NotIrreducible";
      case ErrorCode::DoublingJoinFound:
        return "DoublingJoinFound";
      case ErrorCode::NotEuclidean:
        return "NotEuclidean";
      case ErrorCode::SchemaError:
        return "SchemaError";
      case ErrorCode::ResolveError:
        return "ResolveError";
      case ErrorCode::UnknownCommand:
        return "UnknownCommand";
      case ErrorCode::FlagError:
        return "FlagError";
    }
    return "Unknown";
  }

}  // namespace bassdyn
