#include "heteroedge/image_io.hpp"

#include <fstream>
#include <sstream>
#include <string>

namespace heteroedge {

namespace {

// Skip whitespace and '#' comment lines between header tokens.
int next_header_int(std::istream& in) {
  while (true) {
    const int c = in.peek();
    if (c == EOF) throw Error(Errc::MALFORMED_PAYLOAD, "truncated netpbm header");
    if (std::isspace(c)) {
      in.get();
    } else if (c == '#') {
      std::string line;
      std::getline(in, line);
    } else {
      break;
    }
  }
  int value = 0;
  if (!(in >> value)) throw Error(Errc::MALFORMED_PAYLOAD, "bad netpbm header field");
  return value;
}

std::string read_magic(std::istream& in) {
  std::string magic;
  in >> magic;
  return magic;
}

}  // namespace

Frame read_frame(std::istream& in) {
  const std::string magic = read_magic(in);
  int channels = 0;
  if (magic == "P5")
    channels = 1;
  else if (magic == "P6")
    channels = 3;
  else
    throw Error(Errc::MALFORMED_PAYLOAD, "expected P5 or P6, got '" + magic + "'");

  Frame f;
  f.channels = channels;
  f.width = next_header_int(in);
  f.height = next_header_int(in);
  const int maxval = next_header_int(in);
  if (maxval != 255) throw Error(Errc::MALFORMED_PAYLOAD, "only maxval 255 is supported");
  in.get();  // single whitespace after maxval

  const std::size_t n = static_cast<std::size_t>(f.width) * f.height * channels;
  f.pixels.resize(n);
  in.read(reinterpret_cast<char*>(f.pixels.data()), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n)
    throw Error(Errc::MALFORMED_PAYLOAD, "truncated pixel data");
  return f;
}

void write_frame(std::ostream& out, const Frame& f) {
  if (auto err = validate(f)) throw *err;
  out << (f.channels == 1 ? "P5" : "P6") << "\n"
      << f.width << " " << f.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(f.pixels.data()),
            static_cast<std::streamsize>(f.pixels.size()));
}

BinaryMask read_mask(std::istream& in) {
  const std::string magic = read_magic(in);
  if (magic != "P4") throw Error(Errc::MALFORMED_PAYLOAD, "expected P4, got '" + magic + "'");
  BinaryMask m;
  m.width = next_header_int(in);
  m.height = next_header_int(in);
  in.get();

  const std::size_t row_bytes = (static_cast<std::size_t>(m.width) + 7) / 8;
  std::vector<std::uint8_t> packed(row_bytes * m.height);
  in.read(reinterpret_cast<char*>(packed.data()), static_cast<std::streamsize>(packed.size()));
  if (static_cast<std::size_t>(in.gcount()) != packed.size())
    throw Error(Errc::MALFORMED_PAYLOAD, "truncated mask data");

  m.bits.resize(static_cast<std::size_t>(m.width) * m.height);
  for (int y = 0; y < m.height; ++y)
    for (int x = 0; x < m.width; ++x) {
      const std::uint8_t byte = packed[y * row_bytes + x / 8];
      m.bits[static_cast<std::size_t>(y) * m.width + x] = (byte >> (7 - x % 8)) & 1;
    }
  return m;
}

void write_mask(std::ostream& out, const BinaryMask& m) {
  if (auto err = validate(m)) throw *err;
  out << "P4\n" << m.width << " " << m.height << "\n";
  const std::size_t row_bytes = (static_cast<std::size_t>(m.width) + 7) / 8;
  std::vector<std::uint8_t> packed(row_bytes * m.height, 0);
  for (int y = 0; y < m.height; ++y)
    for (int x = 0; x < m.width; ++x)
      if (m.bits[static_cast<std::size_t>(y) * m.width + x])
        packed[y * row_bytes + x / 8] |= static_cast<std::uint8_t>(1u << (7 - x % 8));
  out.write(reinterpret_cast<const char*>(packed.data()),
            static_cast<std::streamsize>(packed.size()));
}

Frame load_frame(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::PROFILE_ERROR, "cannot open " + path.string());
  return read_frame(in);
}

void save_frame(const std::filesystem::path& path, const Frame& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::PROFILE_ERROR, "cannot write " + path.string());
  write_frame(out, f);
}

BinaryMask load_mask(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::PROFILE_ERROR, "cannot open " + path.string());
  return read_mask(in);
}

void save_mask(const std::filesystem::path& path, const BinaryMask& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::PROFILE_ERROR, "cannot write " + path.string());
  write_mask(out, m);
}

std::vector<std::uint8_t> frame_to_bytes(const Frame& f) {
  std::ostringstream os(std::ios::binary);
  write_frame(os, f);
  const std::string s = os.str();
  return {s.begin(), s.end()};
}

Frame frame_from_bytes(std::span<const std::uint8_t> bytes) {
  std::istringstream is(std::string(bytes.begin(), bytes.end()), std::ios::binary);
  return read_frame(is);
}

}  // namespace heteroedge
