#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace feedback {

enum class Errc {
  DuplicateVertex,
  UnknownVertex,
  SelfLoop,
  DuplicateEdge,
  BadResidue,
  BadParameter,
  NotATriangle,
  NameCollision,
  MissingEdge,
  NotCommonNeighbor,
  IsolatedStart,
  GameOver,
  IllegalMove,
  LimitExceeded,
  CapExceeded,
  BadBipartition,
  PreconditionFailed,
  StrategyBreakdown,
  ParseError,
};

std::string_view errc_name(Errc code);

// Every failure raised by the library carries one of the codes above; the
// message names the offending vertex, edge or parameter.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace feedback
