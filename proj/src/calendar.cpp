// Copyright 2026 The Stage Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stage/calendar.hpp"

#include <array>
#include <cstdio>
#include <stdexcept>

namespace stage {

namespace {

constexpr int kMinYear = 1900;
constexpr int kMaxYear = 2100;

// Days from 1970-01-01 (Howard Hinnant's civil calendar algorithm).
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int* y, int* m, int* d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  *d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  *m = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
  *y = static_cast<int>(yy + (*m <= 2));
}

const std::int64_t kEpochDays = days_from_civil(2000, 1, 1);

}  // namespace

bool is_leap_year(int year) {
  return year % 4 == 0 && (year % 100 != 0 || year % 400 == 0);
}

int days_in_month(int year, int month) {
  static constexpr std::array<int, 12> lengths = {31, 28, 31, 30, 31, 30,
                                                  31, 31, 30, 31, 30, 31};
  if (month == 2 && is_leap_year(year)) return 29;
  return lengths[month - 1];
}

bool valid_date(const DateTime& dt) {
  if (dt.year < kMinYear || dt.year > kMaxYear) return false;
  if (dt.month < 1 || dt.month > 12) return false;
  if (dt.day < 1 || dt.day > days_in_month(dt.year, dt.month)) return false;
  if (dt.hour < 0 || dt.hour > 23) return false;
  if (dt.minute < 0 || dt.minute > 59) return false;
  if (dt.second < 0 || dt.second > 59) return false;
  return true;
}

Rational position_of(const DateTime& dt) {
  if (!valid_date(dt))
    throw std::invalid_argument("position_of: date out of range or malformed: " +
                                format_iso_datetime(dt));
  std::int64_t days = days_from_civil(dt.year, dt.month, dt.day) - kEpochDays;
  std::int64_t seconds = (static_cast<std::int64_t>(dt.hour) * 60 + dt.minute) * 60 + dt.second;
  return Rational(days * 24) + Rational(seconds, 3600);
}

std::optional<DateTime> date_from_position(const Rational& hours) {
  Rational total_seconds = hours * Rational(3600);
  if (!total_seconds.is_integer()) return std::nullopt;
  std::int64_t s = total_seconds.num();
  std::int64_t days = s / 86400;
  std::int64_t rem = s % 86400;
  if (rem < 0) {
    rem += 86400;
    --days;
  }
  DateTime dt;
  civil_from_days(days + kEpochDays, &dt.year, &dt.month, &dt.day);
  dt.hour = static_cast<int>(rem / 3600);
  dt.minute = static_cast<int>((rem / 60) % 60);
  dt.second = static_cast<int>(rem % 60);
  if (dt.year < kMinYear || dt.year > kMaxYear) return std::nullopt;
  return dt;
}

int weekday_of(const DateTime& dt) {
  std::int64_t days = days_from_civil(dt.year, dt.month, dt.day);
  // 1970-01-01 was a Thursday; shift so 0 = Monday.
  std::int64_t wd = (days + 3) % 7;
  if (wd < 0) wd += 7;
  return static_cast<int>(wd);
}

DateTime snap_down(const DateTime& dt, UnitKind unit) {
  DateTime r = dt;
  switch (unit) {
    case UnitKind::kSecond:
      return r;
    case UnitKind::kMinute:
      r.second = 0;
      return r;
    case UnitKind::kHour:
      r.minute = r.second = 0;
      return r;
    case UnitKind::kDay:
      r.hour = r.minute = r.second = 0;
      return r;
    case UnitKind::kWeek: {
      r.hour = r.minute = r.second = 0;
      int back = weekday_of(r);
      std::int64_t days = days_from_civil(r.year, r.month, r.day) - back;
      civil_from_days(days, &r.year, &r.month, &r.day);
      return r;
    }
    case UnitKind::kMonth:
      r.day = 1;
      r.hour = r.minute = r.second = 0;
      return r;
    case UnitKind::kQuarter:
      r.month = ((r.month - 1) / 3) * 3 + 1;
      r.day = 1;
      r.hour = r.minute = r.second = 0;
      return r;
    case UnitKind::kYear:
      r.month = 1;
      r.day = 1;
      r.hour = r.minute = r.second = 0;
      return r;
    case UnitKind::kDecade:
      r.year -= r.year % 10;
      r.month = 1;
      r.day = 1;
      r.hour = r.minute = r.second = 0;
      return r;
  }
  return r;
}

DateTime advance(const DateTime& dt, UnitKind unit, int steps) {
  DateTime r = dt;
  switch (unit) {
    case UnitKind::kSecond:
    case UnitKind::kMinute:
    case UnitKind::kHour:
    case UnitKind::kDay:
    case UnitKind::kWeek: {
      std::int64_t seconds = 0;
      if (unit == UnitKind::kSecond) seconds = steps;
      if (unit == UnitKind::kMinute) seconds = static_cast<std::int64_t>(steps) * 60;
      if (unit == UnitKind::kHour) seconds = static_cast<std::int64_t>(steps) * 3600;
      if (unit == UnitKind::kDay) seconds = static_cast<std::int64_t>(steps) * 86400;
      if (unit == UnitKind::kWeek) seconds = static_cast<std::int64_t>(steps) * 7 * 86400;
      std::int64_t base = days_from_civil(r.year, r.month, r.day) * 86400 +
                          (static_cast<std::int64_t>(r.hour) * 60 + r.minute) * 60 + r.second +
                          seconds;
      std::int64_t days = base / 86400;
      std::int64_t rem = base % 86400;
      if (rem < 0) {
        rem += 86400;
        --days;
      }
      civil_from_days(days, &r.year, &r.month, &r.day);
      r.hour = static_cast<int>(rem / 3600);
      r.minute = static_cast<int>((rem / 60) % 60);
      r.second = static_cast<int>(rem % 60);
      return r;
    }
    case UnitKind::kMonth:
    case UnitKind::kQuarter: {
      int months = steps * (unit == UnitKind::kQuarter ? 3 : 1);
      int total = (r.year * 12 + (r.month - 1)) + months;
      int y = total / 12;
      int m = total % 12;
      if (m < 0) {
        m += 12;
        --y;
      }
      r.year = y;
      r.month = m + 1;
      if (r.day > days_in_month(r.year, r.month)) r.day = days_in_month(r.year, r.month);
      return r;
    }
    case UnitKind::kYear:
    case UnitKind::kDecade: {
      r.year += steps * (unit == UnitKind::kDecade ? 10 : 1);
      if (r.month == 2 && r.day == 29 && !is_leap_year(r.year)) r.day = 28;
      return r;
    }
  }
  return r;
}

std::optional<DateTime> parse_iso_datetime(std::string_view text) {
  DateTime dt;
  int n = 0;
  auto read_int = [&](int width, int* out) -> bool {
    if (static_cast<int>(text.size()) < n + width) return false;
    int v = 0;
    for (int i = 0; i < width; ++i) {
      char c = text[n + i];
      if (c < '0' || c > '9') return false;
      v = v * 10 + (c - '0');
    }
    n += width;
    *out = v;
    return true;
  };
  auto expect = [&](char c) -> bool {
    if (n >= static_cast<int>(text.size()) || text[n] != c) return false;
    ++n;
    return true;
  };
  if (!read_int(4, &dt.year) || !expect('-') || !read_int(2, &dt.month) || !expect('-') ||
      !read_int(2, &dt.day))
    return std::nullopt;
  if (n < static_cast<int>(text.size())) {
    if (!expect('T') && !expect(' ')) return std::nullopt;
    if (!read_int(2, &dt.hour) || !expect(':') || !read_int(2, &dt.minute)) return std::nullopt;
    if (n < static_cast<int>(text.size())) {
      if (!expect(':') || !read_int(2, &dt.second)) return std::nullopt;
    }
  }
  if (n != static_cast<int>(text.size())) return std::nullopt;
  if (!valid_date(dt)) return std::nullopt;
  return dt;
}

std::string format_iso_datetime(const DateTime& dt) {
  char buf[32];
  if (dt.second != 0) {
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d", dt.year, dt.month, dt.day,
                  dt.hour, dt.minute, dt.second);
  } else {
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d", dt.year, dt.month, dt.day, dt.hour,
                  dt.minute);
  }
  return buf;
}

}  // namespace stage
