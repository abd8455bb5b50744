#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "heteroedge/types.hpp"

namespace heteroedge {

// Per-pixel object mask; 1 marks a detected-object pixel, 0 background.
struct BinaryMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;  // row-major, values 0/1
};

std::optional<Error> validate(const BinaryMask& m);

// A frame with its background zeroed, plus the run-length encoded payload
// and the byte accounting used for bandwidth-saving reports.
struct MaskedFrame {
  Frame frame;
  std::vector<std::uint8_t> rle_payload;
  std::size_t raw_bytes = 0;
  std::size_t compressed_bytes = 0;
};

// Zero every pixel whose mask bit is 0 (all channels of it), then RLE-encode
// the resulting pixel buffer.
MaskedFrame apply_mask(const Frame& frame, const BinaryMask& mask);

// Run-length coding over raw bytes: repeated (count: u16 big-endian,
// value: 1 byte) records, runs split at 65535. Lossless for all inputs.
std::vector<std::uint8_t> rle_encode(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> rle_decode(std::span<const std::uint8_t> payload);

// Similarity in [0,1]: 1 - mean absolute pixel difference / 255.
// Symmetric; 1.0 for identical frames.
double frame_similarity(const Frame& a, const Frame& b);

struct DedupResult {
  std::vector<Frame> kept;
  std::size_t dropped = 0;
};

// Drop frames too similar to the last kept one: frame i survives iff
// similarity(i, last_kept) < threshold. The first frame is always kept.
DedupResult dedup_stream(std::span<const Frame> frames, double threshold);

}  // namespace heteroedge
