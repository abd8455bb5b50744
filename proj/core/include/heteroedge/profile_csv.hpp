#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "heteroedge/types.hpp"

namespace heteroedge {

inline constexpr std::string_view kProfileCsvHeader =
    "split_ratio,t_aux_s,p_aux_w,m_aux_pct,t_pri_s,t_off_s,p_pri_w,m_pri_pct";

// Header-checked ingestion; errors carry the 1-based line number.
std::vector<ProfileSample> read_profile_csv(std::istream& in);
std::vector<ProfileSample> load_profile_csv(const std::filesystem::path& path);

// One data row, no trailing newline (also the PROFILE_REPORT payload format).
std::string profile_csv_line(const ProfileSample& s);
ProfileSample parse_profile_csv_line(std::string_view line);

}  // namespace heteroedge
