#include "heteroedge/compression.hpp"

#include <cmath>
#include <cstddef>

namespace heteroedge {

std::optional<Error> validate(const BinaryMask& m) {
  if (m.width <= 0 || m.height <= 0) return Error(Errc::RANGE_ERROR, "mask dimensions");
  if (m.bits.size() != static_cast<std::size_t>(m.width) * m.height)
    return Error(Errc::DIMENSION_MISMATCH, "mask bit buffer length != width*height");
  for (const auto b : m.bits)
    if (b > 1) return Error(Errc::RANGE_ERROR, "mask bits must be 0 or 1");
  return std::nullopt;
}

MaskedFrame apply_mask(const Frame& frame, const BinaryMask& mask) {
  if (auto err = validate(frame)) throw *err;
  if (auto err = validate(mask)) throw *err;
  if (frame.width != mask.width || frame.height != mask.height)
    throw Error(Errc::DIMENSION_MISMATCH, "frame and mask dimensions differ");

  MaskedFrame out;
  out.frame = frame;
  const std::size_t pixel_count = static_cast<std::size_t>(frame.width) * frame.height;
  for (std::size_t p = 0; p < pixel_count; ++p) {
    if (mask.bits[p]) continue;
    for (int c = 0; c < frame.channels; ++c)
      out.frame.pixels[p * frame.channels + c] = 0;
  }
  out.raw_bytes = out.frame.pixels.size();
  out.rle_payload = rle_encode(out.frame.pixels);
  out.compressed_bytes = out.rle_payload.size();
  return out;
}

std::vector<std::uint8_t> rle_encode(std::span<const std::uint8_t> bytes) {
  std::vector<std::uint8_t> out;
  std::size_t i = 0;
  while (i < bytes.size()) {
    const std::uint8_t value = bytes[i];
    std::size_t run = 1;
    while (i + run < bytes.size() && bytes[i + run] == value && run < 65535) ++run;
    out.push_back(static_cast<std::uint8_t>(run >> 8));
    out.push_back(static_cast<std::uint8_t>(run & 0xff));
    out.push_back(value);
    i += run;
  }
  return out;
}

std::vector<std::uint8_t> rle_decode(std::span<const std::uint8_t> payload) {
  if (payload.size() % 3 != 0)
    throw Error(Errc::MALFORMED_PAYLOAD, "payload length not a multiple of 3");
  std::vector<std::uint8_t> out;
  for (std::size_t i = 0; i < payload.size(); i += 3) {
    const std::size_t run = (static_cast<std::size_t>(payload[i]) << 8) | payload[i + 1];
    if (run == 0) throw Error(Errc::MALFORMED_PAYLOAD, "zero-length run");
    out.insert(out.end(), run, payload[i + 2]);
  }
  return out;
}

double frame_similarity(const Frame& a, const Frame& b) {
  if (auto err = validate(a)) throw *err;
  if (auto err = validate(b)) throw *err;
  if (a.width != b.width || a.height != b.height || a.channels != b.channels)
    throw Error(Errc::DIMENSION_MISMATCH, "frames differ in dimensions or channels");
  double abs_diff = 0.0;
  for (std::size_t i = 0; i < a.pixels.size(); ++i)
    abs_diff += std::fabs(static_cast<double>(a.pixels[i]) - static_cast<double>(b.pixels[i]));
  const double mean = abs_diff / static_cast<double>(a.pixels.size());
  return 1.0 - mean / 255.0;
}

DedupResult dedup_stream(std::span<const Frame> frames, double threshold) {
  if (threshold < 0.0 || threshold > 1.0) throw Error(Errc::RANGE_ERROR, "threshold outside [0,1]");
  DedupResult out;
  for (const Frame& f : frames) {
    if (out.kept.empty() || frame_similarity(f, out.kept.back()) < threshold) {
      out.kept.push_back(f);
    } else {
      ++out.dropped;
    }
  }
  return out;
}

}  // namespace heteroedge
