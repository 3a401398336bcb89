#pragma once

#include <string>
#include <vector>

#include "core/dates.hpp"
#include "core/errors.hpp"

namespace rednow {

// Gap-free daily sequence: one value per calendar day (7-day week) from
// `start`. Days without posts carry 0 before smoothing.
struct DailySeries {
  Date start{};
  std::vector<double> values;
  std::string name;

  Date end() const { return start + std::chrono::days{long(values.size()) - 1}; }
  std::size_t size() const { return values.size(); }
  bool covers(Date d) const { return d >= start && d <= end(); }

  double at(Date d) const {
    if (!covers(d))
      throw CoverageError("daily series '" + name + "' does not cover " + format_date(d));
    return values[std::size_t((d - start).count())];
  }
};

// Gap-free monthly sequence starting at `first_month`.
struct MonthlySeries {
  MonthIndex first_month = 0;
  std::vector<double> values;
  std::string name;

  MonthIndex last_month() const { return first_month + int(values.size()) - 1; }
  std::size_t size() const { return values.size(); }
  bool covers(MonthIndex m) const { return m >= first_month && m <= last_month(); }

  double at(MonthIndex m) const {
    if (!covers(m))
      throw CoverageError("monthly series '" + name + "' does not cover " + format_month(m));
    return values[std::size_t(m - first_month)];
  }
};

}  // namespace rednow
