#include "heteroedge/runtime/wire.hpp"

#include <cstring>

#include "heteroedge/error.hpp"
#include "heteroedge/profile_csv.hpp"

namespace heteroedge::runtime {

namespace {

constexpr char kMagic[4] = {'H', 'E', 'O', '1'};

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8)
    out.push_back(static_cast<std::uint8_t>((v >> shift) & 0xff));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8)
    out.push_back(static_cast<std::uint8_t>((v >> shift) & 0xff));
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint8_t u8() { return take(1)[0]; }
  std::uint16_t u16() {
    const auto b = take(2);
    return static_cast<std::uint16_t>((b[0] << 8) | b[1]);
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (const auto b : take(4)) v = (v << 8) | b;
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    for (const auto b : take(8)) v = (v << 8) | b;
    return v;
  }
  std::span<const std::uint8_t> take(std::size_t n) {
    if (pos_ + n > bytes_.size())
      throw Error(Errc::MALFORMED_PAYLOAD, "truncated message");
    const auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

const char* to_string(MessageKind k) noexcept {
  switch (k) {
    case MessageKind::PROFILE_REPORT: return "PROFILE_REPORT";
    case MessageKind::FRAME_BATCH: return "FRAME_BATCH";
    case MessageKind::RESULT: return "RESULT";
    case MessageKind::CONTROL: return "CONTROL";
  }
  return "?";
}

std::vector<std::uint8_t> encode_message(const Message& m) {
  if (m.topic.empty()) throw Error(Errc::MALFORMED_PAYLOAD, "empty topic");
  if (m.topic.size() > 0xffff) throw Error(Errc::MALFORMED_PAYLOAD, "topic too long");
  std::vector<std::uint8_t> out;
  out.reserve(19 + m.topic.size() + m.payload.size());
  out.insert(out.end(), kMagic, kMagic + 4);
  out.push_back(static_cast<std::uint8_t>(m.kind));
  put_u64(out, m.sequence);
  put_u16(out, static_cast<std::uint16_t>(m.topic.size()));
  out.insert(out.end(), m.topic.begin(), m.topic.end());
  put_u32(out, static_cast<std::uint32_t>(m.payload.size()));
  out.insert(out.end(), m.payload.begin(), m.payload.end());
  return out;
}

Message decode_message(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  const auto magic = r.take(4);
  if (std::memcmp(magic.data(), kMagic, 4) != 0)
    throw Error(Errc::MALFORMED_PAYLOAD, "bad magic");
  Message m;
  const std::uint8_t kind = r.u8();
  if (kind > static_cast<std::uint8_t>(MessageKind::CONTROL))
    throw Error(Errc::MALFORMED_PAYLOAD, "unknown message kind");
  m.kind = static_cast<MessageKind>(kind);
  m.sequence = r.u64();
  const std::uint16_t topic_len = r.u16();
  const auto topic = r.take(topic_len);
  m.topic.assign(topic.begin(), topic.end());
  if (m.topic.empty()) throw Error(Errc::MALFORMED_PAYLOAD, "empty topic");
  const std::uint32_t payload_len = r.u32();
  const auto payload = r.take(payload_len);
  m.payload.assign(payload.begin(), payload.end());
  if (!r.done()) throw Error(Errc::MALFORMED_PAYLOAD, "trailing bytes after payload");
  return m;
}

std::vector<std::uint8_t> encode_frame_batch(std::span<const FrameEntry> entries) {
  std::vector<std::uint8_t> out;
  put_u32(out, static_cast<std::uint32_t>(entries.size()));
  for (const auto& e : entries) {
    put_u64(out, e.id);
    put_u32(out, static_cast<std::uint32_t>(e.bytes.size()));
    out.insert(out.end(), e.bytes.begin(), e.bytes.end());
    out.push_back(e.rle ? 1 : 0);
  }
  return out;
}

std::vector<FrameEntry> decode_frame_batch(std::span<const std::uint8_t> payload) {
  Reader r(payload);
  const std::uint32_t count = r.u32();
  std::vector<FrameEntry> out;
  out.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    FrameEntry e;
    e.id = r.u64();
    const std::uint32_t len = r.u32();
    const auto bytes = r.take(len);
    e.bytes.assign(bytes.begin(), bytes.end());
    const std::uint8_t flag = r.u8();
    if (flag > 1) throw Error(Errc::MALFORMED_PAYLOAD, "bad rle flag");
    e.rle = flag == 1;
    out.push_back(std::move(e));
  }
  if (!r.done()) throw Error(Errc::MALFORMED_PAYLOAD, "trailing bytes in frame batch");
  return out;
}

std::vector<std::uint8_t> encode_result(const ResultInfo& res) {
  std::vector<std::uint8_t> out;
  put_u32(out, res.batch_index);
  put_u32(out, res.processed);
  put_u64(out, res.bytes_received);
  return out;
}

ResultInfo decode_result(std::span<const std::uint8_t> payload) {
  Reader r(payload);
  ResultInfo res;
  res.batch_index = r.u32();
  res.processed = r.u32();
  res.bytes_received = r.u64();
  if (!r.done()) throw Error(Errc::MALFORMED_PAYLOAD, "trailing bytes in result");
  return res;
}

std::vector<std::uint8_t> encode_control(ControlOp op) {
  return {static_cast<std::uint8_t>(op)};
}

ControlOp decode_control(std::span<const std::uint8_t> payload) {
  if (payload.size() != 1) throw Error(Errc::MALFORMED_PAYLOAD, "control payload must be 1 byte");
  if (payload[0] != 0) throw Error(Errc::MALFORMED_PAYLOAD, "unknown control op");
  return static_cast<ControlOp>(payload[0]);
}

std::vector<std::uint8_t> encode_profile_report(const ProfileSample& s) {
  const std::string line = profile_csv_line(s);
  return {line.begin(), line.end()};
}

ProfileSample decode_profile_report(std::span<const std::uint8_t> payload) {
  const std::string line(payload.begin(), payload.end());
  try {
    return parse_profile_csv_line(line);
  } catch (const Error& e) {
    throw Error(Errc::MALFORMED_PAYLOAD, e.what());
  }
}

}  // namespace heteroedge::runtime
