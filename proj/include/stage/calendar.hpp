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

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "stage/rational.hpp"

namespace stage {

// Calendar units used for boundary snapping and calendar-exact stepping.
enum class UnitKind {
  kSecond,
  kMinute,
  kHour,
  kDay,
  kWeek,
  kMonth,
  kQuarter,
  kYear,
  kDecade,
};

// Proleptic Gregorian civil date-time, second granularity, no time zone.
struct DateTime {
  int year = 2000;
  int month = 1;  // 1..12
  int day = 1;    // 1..31
  int hour = 0;
  int minute = 0;
  int second = 0;

  friend bool operator==(const DateTime&, const DateTime&) = default;
};

bool is_leap_year(int year);
int days_in_month(int year, int month);
bool valid_date(const DateTime& dt);

// Signed hours from the global epoch 2000-01-01T00:00. Dates outside
// 1900..2100 are rejected with std::invalid_argument.
Rational position_of(const DateTime& dt);

// Inverse of position_of for positions that land on a whole second within
// the supported year range; nullopt otherwise.
std::optional<DateTime> date_from_position(const Rational& hours);

// 0 = Monday .. 6 = Sunday.
int weekday_of(const DateTime& dt);

// Start of the enclosing unit boundary (week boundaries are Mondays,
// quarter boundaries are Jan/Apr/Jul/Oct 1, decades are years ending in 0).
DateTime snap_down(const DateTime& dt, UnitKind unit);

// Calendar-exact stepping from a date; months/quarters/years/decades move
// through the civil calendar (day-of-month clamped), smaller units are
// fixed-width.
DateTime advance(const DateTime& dt, UnitKind unit, int steps);

// Accepts ISO-8601 "YYYY-MM-DD" or "YYYY-MM-DDTHH:MM[:SS]".
std::optional<DateTime> parse_iso_datetime(std::string_view text);

// "YYYY-MM-DDTHH:MM" with ":SS" appended only when nonzero.
std::string format_iso_datetime(const DateTime& dt);

}  // namespace stage
