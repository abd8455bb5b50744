#pragma once

#include <stdexcept>
#include <string>

namespace heteroedge {

enum class Errc {
  RANGE_ERROR,
  INSUFFICIENT_SAMPLES,
  DEGENERATE_DESIGN,
  UNKNOWN_CURVE,
  ZERO_DISTANCE_WITH_LOSS,
  ZERO_RATE,
  SPEED_OUT_OF_RANGE,
  DIV_BY_ZERO,
  DIMENSION_MISMATCH,
  MALFORMED_PAYLOAD,
  TRANSPORT_DOWN,
  BACKPRESSURE,
  CONFIG_ERROR,
  PROFILE_ERROR,
};

const char* to_string(Errc c) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace heteroedge
