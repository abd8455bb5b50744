#include "heteroedge/error.hpp"

namespace heteroedge {

const char* to_string(Errc c) noexcept {
  switch (c) {
    case Errc::RANGE_ERROR: return "RANGE_ERROR";
    case Errc::INSUFFICIENT_SAMPLES: return "INSUFFICIENT_SAMPLES";
    case Errc::DEGENERATE_DESIGN: return "DEGENERATE_DESIGN";
    case Errc::UNKNOWN_CURVE: return "UNKNOWN_CURVE";
    case Errc::ZERO_DISTANCE_WITH_LOSS: return "ZERO_DISTANCE_WITH_LOSS";
    case Errc::ZERO_RATE: return "ZERO_RATE";
    case Errc::SPEED_OUT_OF_RANGE: return "SPEED_OUT_OF_RANGE";
    case Errc::DIV_BY_ZERO: return "DIV_BY_ZERO";
    case Errc::DIMENSION_MISMATCH: return "DIMENSION_MISMATCH";
    case Errc::MALFORMED_PAYLOAD: return "MALFORMED_PAYLOAD";
    case Errc::TRANSPORT_DOWN: return "TRANSPORT_DOWN";
    case Errc::BACKPRESSURE: return "BACKPRESSURE";
    case Errc::CONFIG_ERROR: return "CONFIG_ERROR";
    case Errc::PROFILE_ERROR: return "PROFILE_ERROR";
  }
  return "UNKNOWN";
}

Error::Error(Errc code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace heteroedge
