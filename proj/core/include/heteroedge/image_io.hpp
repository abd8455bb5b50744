#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "heteroedge/compression.hpp"
#include "heteroedge/types.hpp"

namespace heteroedge {

// Binary netpbm support: frames as PGM (P5, 1 channel) or PPM (P6, 3
// channels) with maxval 255; masks as PBM (P4, rows padded to whole bytes).

Frame read_frame(std::istream& in);
void write_frame(std::ostream& out, const Frame& f);
Frame load_frame(const std::filesystem::path& path);
void save_frame(const std::filesystem::path& path, const Frame& f);

BinaryMask read_mask(std::istream& in);
void write_mask(std::ostream& out, const BinaryMask& m);
BinaryMask load_mask(const std::filesystem::path& path);
void save_mask(const std::filesystem::path& path, const BinaryMask& m);

// In-memory frame serialization (the FRAME_BATCH wire payload carries these
// bytes when frames travel unmasked).
std::vector<std::uint8_t> frame_to_bytes(const Frame& f);
Frame frame_from_bytes(std::span<const std::uint8_t> bytes);

}  // namespace heteroedge
