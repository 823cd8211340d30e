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

#include <random>
#include <tuple>

#include "doctest.h"

using namespace stage;

namespace {

// Test-only oracle: walk the calendar one day at a time from the epoch.
// Deliberately independent of the civil-calendar arithmetic under test.
std::int64_t oracle_days_from_epoch(int year, int month, int day) {
  std::int64_t days = 0;
  int y = 2000, m = 1, d = 1;
  auto step_forward = [&] {
    ++d;
    if (d > days_in_month(y, m)) {
      d = 1;
      ++m;
      if (m > 12) {
        m = 1;
        ++y;
      }
    }
  };
  auto step_back = [&] {
    --d;
    if (d < 1) {
      --m;
      if (m < 1) {
        m = 12;
        --y;
      }
      d = days_in_month(y, m);
    }
  };
  while (std::tie(y, m, d) < std::tie(year, month, day)) {
    step_forward();
    ++days;
  }
  while (std::tie(y, m, d) > std::tie(year, month, day)) {
    step_back();
    --days;
  }
  return days;
}

}  // namespace

TEST_CASE("position_of epoch identities") {
  CHECK(position_of(DateTime{2000, 1, 1, 0, 0, 0}) == Rational(0));
  CHECK(position_of(DateTime{2000, 1, 2, 0, 0, 0}) == Rational(24));
  // 2000 is a leap year: 366 * 24
  CHECK(position_of(DateTime{2001, 1, 1, 0, 0, 0}) == Rational(8784));
  CHECK(position_of(DateTime{2001, 1, 10, 0, 0, 0}) == Rational(9000));
  CHECK(position_of(DateTime{1999, 12, 31, 0, 0, 0}) == Rational(-24));
  CHECK(position_of(DateTime{2000, 1, 1, 1, 30, 0}) == Rational(3, 2));
}

TEST_CASE("position_of rejects out-of-range dates") {
  CHECK_THROWS_AS(position_of(DateTime{1899, 12, 31, 0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(position_of(DateTime{2101, 1, 1, 0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(position_of(DateTime{2001, 2, 29, 0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(position_of(DateTime{2001, 13, 1, 0, 0, 0}), std::invalid_argument);
}

TEST_CASE("position_of agrees with the day-walking oracle") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> year(1900, 2100);
  std::uniform_int_distribution<int> month(1, 12);
  for (int trial = 0; trial < 300; ++trial) {
    int y = year(rng);
    int m = month(rng);
    std::uniform_int_distribution<int> day(1, days_in_month(y, m));
    int d = day(rng);
    CAPTURE(y);
    CAPTURE(m);
    CAPTURE(d);
    CHECK(position_of(DateTime{y, m, d, 0, 0, 0}) ==
          Rational(oracle_days_from_epoch(y, m, d) * 24));
  }
}

TEST_CASE("date round trip over random dates") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> year(1900, 2100);
  std::uniform_int_distribution<int> month(1, 12);
  std::uniform_int_distribution<int> hour(0, 23), minute(0, 59), second(0, 59);
  for (int trial = 0; trial < 10000; ++trial) {
    DateTime dt;
    dt.year = year(rng);
    dt.month = month(rng);
    std::uniform_int_distribution<int> day(1, days_in_month(dt.year, dt.month));
    dt.day = day(rng);
    dt.hour = hour(rng);
    dt.minute = minute(rng);
    dt.second = second(rng);
    auto back = date_from_position(position_of(dt));
    REQUIRE(back.has_value());
    CHECK(*back == dt);
  }
}

TEST_CASE("position_of is monotone") {
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> year(1900, 2100);
  std::uniform_int_distribution<int> month(1, 12);
  auto random_date = [&] {
    DateTime dt;
    dt.year = year(rng);
    dt.month = month(rng);
    std::uniform_int_distribution<int> day(1, days_in_month(dt.year, dt.month));
    dt.day = day(rng);
    return dt;
  };
  for (int trial = 0; trial < 1000; ++trial) {
    DateTime a = random_date();
    DateTime b = random_date();
    bool a_before = std::tie(a.year, a.month, a.day) < std::tie(b.year, b.month, b.day);
    if (a_before) CHECK(position_of(a) < position_of(b));
  }
}

TEST_CASE("weekday_of known anchors") {
  CHECK(weekday_of(DateTime{2000, 1, 1, 0, 0, 0}) == 5);   // Saturday
  CHECK(weekday_of(DateTime{2001, 1, 10, 0, 0, 0}) == 2);  // Wednesday
  CHECK(weekday_of(DateTime{1970, 1, 1, 0, 0, 0}) == 3);   // Thursday
}

TEST_CASE("snap_down boundaries") {
  DateTime dt{2001, 1, 10, 13, 45, 30};
  CHECK(snap_down(dt, UnitKind::kDay) == DateTime{2001, 1, 10, 0, 0, 0});
  CHECK(snap_down(dt, UnitKind::kWeek) == DateTime{2001, 1, 8, 0, 0, 0});  // Monday
  CHECK(snap_down(dt, UnitKind::kMonth) == DateTime{2001, 1, 1, 0, 0, 0});
  CHECK(snap_down(DateTime{2001, 8, 20, 0, 0, 0}, UnitKind::kQuarter) ==
        DateTime{2001, 7, 1, 0, 0, 0});
  CHECK(snap_down(dt, UnitKind::kYear) == DateTime{2001, 1, 1, 0, 0, 0});
  CHECK(snap_down(DateTime{2017, 3, 4, 0, 0, 0}, UnitKind::kDecade) ==
        DateTime{2010, 1, 1, 0, 0, 0});
  CHECK(snap_down(dt, UnitKind::kHour) == DateTime{2001, 1, 10, 13, 0, 0});
}

TEST_CASE("advance is calendar-exact") {
  CHECK(advance(DateTime{2001, 1, 31, 0, 0, 0}, UnitKind::kMonth, 1) ==
        DateTime{2001, 2, 28, 0, 0, 0});
  CHECK(advance(DateTime{2000, 1, 31, 0, 0, 0}, UnitKind::kMonth, 1) ==
        DateTime{2000, 2, 29, 0, 0, 0});
  CHECK(advance(DateTime{2001, 12, 1, 0, 0, 0}, UnitKind::kMonth, 1) ==
        DateTime{2002, 1, 1, 0, 0, 0});
  CHECK(advance(DateTime{2001, 1, 1, 0, 0, 0}, UnitKind::kMonth, -1) ==
        DateTime{2000, 12, 1, 0, 0, 0});
  CHECK(advance(DateTime{2000, 2, 29, 0, 0, 0}, UnitKind::kYear, 1) ==
        DateTime{2001, 2, 28, 0, 0, 0});
  CHECK(advance(DateTime{2001, 1, 10, 0, 0, 0}, UnitKind::kWeek, -1) ==
        DateTime{2001, 1, 3, 0, 0, 0});
  CHECK(advance(DateTime{2001, 10, 1, 0, 0, 0}, UnitKind::kQuarter, 1) ==
        DateTime{2002, 1, 1, 0, 0, 0});
}

TEST_CASE("iso parsing and formatting") {
  auto dt = parse_iso_datetime("2001-01-10");
  REQUIRE(dt.has_value());
  CHECK(*dt == DateTime{2001, 1, 10, 0, 0, 0});
  dt = parse_iso_datetime("2001-01-10T13:45");
  REQUIRE(dt.has_value());
  CHECK(*dt == DateTime{2001, 1, 10, 13, 45, 0});
  dt = parse_iso_datetime("2001-01-10T13:45:59");
  REQUIRE(dt.has_value());
  CHECK(dt->second == 59);
  CHECK(!parse_iso_datetime("2001-13-10").has_value());
  CHECK(!parse_iso_datetime("01/01/01").has_value());
  CHECK(!parse_iso_datetime("2001-01-10T25:00").has_value());
  CHECK(format_iso_datetime(DateTime{2001, 1, 7, 0, 0, 0}) == "2001-01-07T00:00");
  CHECK(format_iso_datetime(DateTime{2001, 1, 7, 8, 30, 15}) == "2001-01-07T08:30:15");
}
