#include "heteroedge/profile_csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace heteroedge {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

double parse_double(std::string_view field, const char* name) {
  double value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw Error(Errc::PROFILE_ERROR, std::string("bad numeric field ") + name);
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  return s;
}

}  // namespace

ProfileSample parse_profile_csv_line(std::string_view line) {
  const auto fields = split_fields(trim(line));
  if (fields.size() != 8)
    throw Error(Errc::PROFILE_ERROR, "expected 8 fields, got " + std::to_string(fields.size()));
  ProfileSample s;
  s.split_ratio = parse_double(fields[0], "split_ratio");
  s.t_aux_s = parse_double(fields[1], "t_aux_s");
  s.p_aux_w = parse_double(fields[2], "p_aux_w");
  s.m_aux_pct = parse_double(fields[3], "m_aux_pct");
  s.t_pri_s = parse_double(fields[4], "t_pri_s");
  s.t_off_s = parse_double(fields[5], "t_off_s");
  s.p_pri_w = parse_double(fields[6], "p_pri_w");
  s.m_pri_pct = parse_double(fields[7], "m_pri_pct");
  if (auto err = validate_sample(s)) throw Error(Errc::PROFILE_ERROR, err->what());
  return s;
}

std::string profile_csv_line(const ProfileSample& s) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g",
                s.split_ratio, s.t_aux_s, s.p_aux_w, s.m_aux_pct, s.t_pri_s, s.t_off_s,
                s.p_pri_w, s.m_pri_pct);
  return buf;
}

std::vector<ProfileSample> read_profile_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw Error(Errc::PROFILE_ERROR, "line 1: no samples (empty file)");
  if (trim(line) != kProfileCsvHeader)
    throw Error(Errc::PROFILE_ERROR, "line 1: header mismatch, expected '" +
                                         std::string(kProfileCsvHeader) + "'");
  std::vector<ProfileSample> samples;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      samples.push_back(parse_profile_csv_line(line));
    } catch (const Error& e) {
      throw Error(Errc::PROFILE_ERROR, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (samples.empty()) throw Error(Errc::PROFILE_ERROR, "no samples");
  return samples;
}

std::vector<ProfileSample> load_profile_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::PROFILE_ERROR, "cannot open " + path.string());
  return read_profile_csv(in);
}

}  // namespace heteroedge
