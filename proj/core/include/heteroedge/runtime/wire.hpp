#pragma once

#include <optional>
#include <span>

#include "heteroedge/runtime/message.hpp"
#include "heteroedge/types.hpp"

namespace heteroedge::runtime {

// Wire framing (big-endian):
//   magic "HEO1" | kind (1) | sequence (8) | topic length (2) | topic (UTF-8)
//   | payload length (4) | payload
std::vector<std::uint8_t> encode_message(const Message& m);
Message decode_message(std::span<const std::uint8_t> bytes);

// FRAME_BATCH payload:
//   count (4) | per frame: id (8) | byte length (4) | bytes | rle flag (1)
// `bytes` is a serialized PGM/PPM frame, or the raw RLE payload of the
// masked pixel buffer when the rle flag is set.
struct FrameEntry {
  std::uint64_t id = 0;
  bool rle = false;
  std::vector<std::uint8_t> bytes;
};
std::vector<std::uint8_t> encode_frame_batch(std::span<const FrameEntry> entries);
std::vector<FrameEntry> decode_frame_batch(std::span<const std::uint8_t> payload);

// RESULT payload: batch index (4) | processed count (4) | bytes received (8).
struct ResultInfo {
  std::uint32_t batch_index = 0;
  std::uint32_t processed = 0;
  std::uint64_t bytes_received = 0;
};
std::vector<std::uint8_t> encode_result(const ResultInfo& r);
ResultInfo decode_result(std::span<const std::uint8_t> payload);

// CONTROL payload: a single opcode byte.
enum class ControlOp : std::uint8_t { END_OF_RUN = 0 };
std::vector<std::uint8_t> encode_control(ControlOp op);
ControlOp decode_control(std::span<const std::uint8_t> payload);

// PROFILE_REPORT payload: one profile CSV row as UTF-8.
std::vector<std::uint8_t> encode_profile_report(const ProfileSample& s);
ProfileSample decode_profile_report(std::span<const std::uint8_t> payload);

}  // namespace heteroedge::runtime
