#include "qwalk/error.hpp"

namespace qwalk {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::PositionOutOfRange: return "position_out_of_range";
    case ErrorKind::UnsupportedTopology: return "unsupported_topology";
    case ErrorKind::WindowOverflow: return "window_overflow";
    case ErrorKind::ParameterOutOfRange: return "parameter_out_of_range";
    case ErrorKind::InvalidConfig: return "invalid_config";
    case ErrorKind::UnknownPreset: return "unknown_preset";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace qwalk
