#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace heteroedge::runtime {

enum class MessageKind : std::uint8_t {
  PROFILE_REPORT = 0,
  FRAME_BATCH = 1,
  RESULT = 2,
  CONTROL = 3,
};
const char* to_string(MessageKind k) noexcept;

// One pub/sub message. The transport stamps `sequence` at publish time,
// strictly increasing per topic, so receivers can collect exactly once.
struct Message {
  std::string topic;
  MessageKind kind = MessageKind::CONTROL;
  std::uint64_t sequence = 0;
  std::vector<std::uint8_t> payload;
};

inline constexpr const char* kTopicFrames = "heo/frames";
inline constexpr const char* kTopicResults = "heo/results";
inline constexpr const char* kTopicProfile = "heo/profile";
inline constexpr const char* kTopicControl = "heo/control";

}  // namespace heteroedge::runtime
