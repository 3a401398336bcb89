#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "core/series.hpp"

namespace rednow {

// Shortest round-trip decimal form (std::to_chars); stable across runs so
// rewritten artifacts are byte-identical.
std::string format_double(double v);

std::vector<std::string> split_csv_line(std::string_view line);

// date,value (daily, gap-free; read validates contiguity)
void write_daily_csv(const std::filesystem::path& path, const DailySeries& s);
DailySeries read_daily_csv(const std::filesystem::path& path);

// month,value with month as YYYY-MM
void write_monthly_csv(const std::filesystem::path& path, const MonthlySeries& s);
MonthlySeries read_monthly_csv(const std::filesystem::path& path);

// Generic tiny writer: header + pre-rendered rows.
void write_csv(const std::filesystem::path& path, std::string_view header,
               const std::vector<std::string>& rows);

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path,
                                               bool skip_header = true);

void ensure_parent_dir(const std::filesystem::path& path);

}  // namespace rednow
