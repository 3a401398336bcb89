#include "core/csvio.hpp"

#include <charconv>
#include <fstream>

namespace rednow {

std::string format_double(double v) {
  char buf[40];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, p);
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = line.find(',', pos);
    if (comma == std::string_view::npos) {
      out.emplace_back(line.substr(pos));
      break;
    }
    out.emplace_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return out;
}

namespace {

double parse_double(std::string_view s, const std::filesystem::path& path) {
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw IoError("bad numeric field '" + std::string(s) + "' in " + path.string());
  return v;
}

std::ofstream open_out(const std::filesystem::path& path) {
  ensure_parent_dir(path);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path.string());
  return f;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for reading: " + path.string());
  return f;
}

}  // namespace

void ensure_parent_dir(const std::filesystem::path& path) {
  auto dir = path.parent_path();
  if (!dir.empty()) std::filesystem::create_directories(dir);
}

void write_daily_csv(const std::filesystem::path& path, const DailySeries& s) {
  auto f = open_out(path);
  f << "date,value\n";
  Date d = s.start;
  for (double v : s.values) {
    f << format_date(d) << ',' << format_double(v) << '\n';
    d += std::chrono::days{1};
  }
}

DailySeries read_daily_csv(const std::filesystem::path& path) {
  auto f = open_in(path);
  DailySeries s;
  s.name = path.stem().string();
  std::string line;
  bool first_row = true;
  Date expect{};
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    if (first_row && line.rfind("date,", 0) == 0) {
      first_row = false;
      continue;
    }
    auto cells = split_csv_line(line);
    if (cells.size() != 2) throw IoError("bad daily csv row in " + path.string());
    Date d = parse_date(cells[0]);
    if (s.values.empty()) {
      s.start = d;
      expect = d;
    } else if (d != expect) {
      throw IoError("daily csv not gap-free at " + cells[0] + " in " + path.string());
    }
    s.values.push_back(parse_double(cells[1], path));
    expect = d + std::chrono::days{1};
    first_row = false;
  }
  return s;
}

void write_monthly_csv(const std::filesystem::path& path, const MonthlySeries& s) {
  auto f = open_out(path);
  f << "month,value\n";
  for (std::size_t i = 0; i < s.values.size(); ++i)
    f << format_month(s.first_month + int(i)) << ',' << format_double(s.values[i]) << '\n';
}

MonthlySeries read_monthly_csv(const std::filesystem::path& path) {
  auto f = open_in(path);
  MonthlySeries s;
  s.name = path.stem().string();
  std::string line;
  bool first_row = true;
  MonthIndex expect = 0;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    if (first_row && line.rfind("month,", 0) == 0) {
      first_row = false;
      continue;
    }
    auto cells = split_csv_line(line);
    if (cells.size() != 2) throw IoError("bad monthly csv row in " + path.string());
    MonthIndex m = parse_month(cells[0]);
    if (s.values.empty()) {
      s.first_month = m;
      expect = m;
    } else if (m != expect) {
      throw IoError("monthly csv not gap-free at " + cells[0] + " in " + path.string());
    }
    s.values.push_back(parse_double(cells[1], path));
    expect = m + 1;
    first_row = false;
  }
  return s;
}

void write_csv(const std::filesystem::path& path, std::string_view header,
               const std::vector<std::string>& rows) {
  auto f = open_out(path);
  f << header << '\n';
  for (const auto& r : rows) f << r << '\n';
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path,
                                               bool skip_header) {
  auto f = open_in(path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool first = true;
  while (std::getline(f, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first && skip_header) {
      first = false;
      continue;
    }
    first = false;
    rows.push_back(split_csv_line(line));
  }
  return rows;
}

}  // namespace rednow
