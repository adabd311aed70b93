#include "feedback/error.hpp"

namespace feedback {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::DuplicateVertex: return "DuplicateVertex";
    case Errc::UnknownVertex: return "UnknownVertex";
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::BadResidue: return "BadResidue";
    case Errc::BadParameter: return "BadParameter";
    case Errc::NotATriangle: return "NotATriangle";
    case Errc::NameCollision: return "NameCollision";
    case Errc::MissingEdge: return "MissingEdge";
    case Errc::NotCommonNeighbor: return "NotCommonNeighbor";
    case Errc::IsolatedStart: return "IsolatedStart";
    case Errc::GameOver: return "GameOver";
    case Errc::IllegalMove: return "IllegalMove";
    case Errc::LimitExceeded: return "LimitExceeded";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::BadBipartition: return "BadBipartition";
    case Errc::PreconditionFailed: return "PreconditionFailed";
    case Errc::StrategyBreakdown: return "StrategyBreakdown";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

}  // namespace feedback
