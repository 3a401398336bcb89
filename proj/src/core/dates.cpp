#include "core/dates.hpp"

#include <charconv>
#include <cstdio>

#include "core/errors.hpp"

namespace rednow {

namespace chr = std::chrono;

Date date_ymd(int year, unsigned month, unsigned day) {
  return Date{chr::year{year} / chr::month{month} / chr::day{day}};
}

Date date_from_epoch_seconds(std::int64_t seconds) {
  // floor: epoch seconds are >= 0 for all realistic dump content, but keep
  // the negative case correct anyway
  std::int64_t days = seconds / 86400;
  if (seconds < 0 && seconds % 86400 != 0) --days;
  return Date{chr::days{days}};
}

std::int64_t epoch_seconds(Date d) {
  return static_cast<std::int64_t>(d.time_since_epoch().count()) * 86400;
}

std::string format_date(Date d) {
  chr::year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(ymd.year()),
                unsigned(ymd.month()), unsigned(ymd.day()));
  return buf;
}

namespace {

int parse_int_field(std::string_view s, const char* what) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw ValidationError(std::string("bad ") + what + ": '" + std::string(s) + "'");
  return v;
}

}  // namespace

Date parse_date(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-')
    throw ValidationError("bad date (want YYYY-MM-DD): '" + std::string(s) + "'");
  int y = parse_int_field(s.substr(0, 4), "date year");
  int m = parse_int_field(s.substr(5, 2), "date month");
  int d = parse_int_field(s.substr(8, 2), "date day");
  chr::year_month_day ymd{chr::year{y}, chr::month{unsigned(m)}, chr::day{unsigned(d)}};
  if (!ymd.ok()) throw ValidationError("invalid calendar date: '" + std::string(s) + "'");
  return Date{ymd};
}

MonthIndex month_index(int year, unsigned month) {
  return year * 12 + int(month) - 1;
}

MonthIndex month_of(Date d) {
  chr::year_month_day ymd{d};
  return month_index(int(ymd.year()), unsigned(ymd.month()));
}

int month_year(MonthIndex m) {
  return m >= 0 ? m / 12 : (m - 11) / 12;
}

unsigned month_number(MonthIndex m) {
  int r = m % 12;
  if (r < 0) r += 12;
  return unsigned(r) + 1;
}

std::string format_month(MonthIndex m) {
  char buf[12];
  std::snprintf(buf, sizeof buf, "%04d-%02u", month_year(m), month_number(m));
  return buf;
}

MonthIndex parse_month(std::string_view s) {
  if (s.size() != 7 || s[4] != '-')
    throw ValidationError("bad month (want YYYY-MM): '" + std::string(s) + "'");
  int y = parse_int_field(s.substr(0, 4), "month year");
  int m = parse_int_field(s.substr(5, 2), "month number");
  if (m < 1 || m > 12) throw ValidationError("month out of range: '" + std::string(s) + "'");
  return month_index(y, unsigned(m));
}

Date month_first_day(MonthIndex m) {
  return date_ymd(month_year(m), month_number(m), 1);
}

Date month_last_day(MonthIndex m) {
  return month_first_day(m + 1) - chr::days{1};
}

int days_in_month(MonthIndex m) {
  return int((month_first_day(m + 1) - month_first_day(m)).count());
}

}  // namespace rednow
