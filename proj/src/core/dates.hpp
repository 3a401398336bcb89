#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>

namespace rednow {

// Calendar day, UTC. All bucketing in the engine is by UTC calendar date.
using Date = std::chrono::sys_days;

// Months indexed continuously: index = year*12 + (month-1). Keeps expanding
// windows and month arithmetic as plain integers.
using MonthIndex = int;

Date date_ymd(int year, unsigned month, unsigned day);
Date date_from_epoch_seconds(std::int64_t seconds);
std::int64_t epoch_seconds(Date d);

std::string format_date(Date d);          // YYYY-MM-DD
Date parse_date(std::string_view s);      // throws ValidationError

MonthIndex month_index(int year, unsigned month);
MonthIndex month_of(Date d);
int month_year(MonthIndex m);
unsigned month_number(MonthIndex m);      // 1..12
std::string format_month(MonthIndex m);   // YYYY-MM
MonthIndex parse_month(std::string_view s);

Date month_first_day(MonthIndex m);
Date month_last_day(MonthIndex m);
int days_in_month(MonthIndex m);

}  // namespace rednow
