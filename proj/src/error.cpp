#include "quiverhh/error.hpp"

namespace quiverhh {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidQuiver: return "InvalidQuiver";
    case ErrorKind::CyclicQuiver: return "CyclicQuiver";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::QuiverMismatch: return "QuiverMismatch";
    case ErrorKind::NotParallel: return "NotParallel";
    case ErrorKind::NotACycle: return "NotACycle";
    case ErrorKind::NotAlmostCycle: return "NotAlmostCycle";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::InvalidRotation: return "InvalidRotation";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NonPlanarEmbedding: return "NonPlanarEmbedding";
    case ErrorKind::InternalMismatch: return "InternalMismatch";
    case ErrorKind::InternalRankMismatch: return "InternalRankMismatch";
  }
  return "Unknown";
}

}  // namespace quiverhh
