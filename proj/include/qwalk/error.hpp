#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

enum class ErrorKind {
  PositionOutOfRange,
  UnsupportedTopology,
  WindowOverflow,
  ParameterOutOfRange,
  InvalidConfig,
  UnknownPreset,
  Io,
};

const char* to_string(ErrorKind kind);

/// Base exception for every failure raised by the walk library.
class WalkError : public std::runtime_error {
 public:
  WalkError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qwalk
